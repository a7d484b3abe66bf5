#include "minilean/retriever.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <stdexcept>

namespace minilean {

namespace {

// FNV-1a, fixed across platforms so embeddings are reproducible everywhere.
uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

size_t bucket(const std::string& token) { return fnv1a(token) % kEmbeddingDim; }

void l2_normalize(Embedding& v) {
    double norm = 0;
    for (double x : v) norm += x * x;
    if (norm <= 0) return;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
}

const char* kConnectives[] = {"∀", "∃", "∧", "∨",
                              "¬", "→", "↔", "⊢"};

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = i;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            out.push_back(text.substr(start, i - start));
            continue;
        }
        bool matched = false;
        for (const char* sym : kConnectives) {
            size_t n = std::char_traits<char>::length(sym);
            if (text.compare(i, n, sym) == 0) {
                out.emplace_back(sym);
                i += n;
                matched = true;
                break;
            }
        }
        if (!matched) ++i;
    }
    return out;
}

Embedding embed(const std::string& text) {
    Embedding v(kEmbeddingDim, 0.0);
    for (const auto& tok : tokenize(text)) v[bucket(tok)] += 1.0;
    l2_normalize(v);
    return v;
}

double cosine_similarity(const Embedding& a, const Embedding& b) {
    if (a.size() != b.size()) throw std::invalid_argument("cosine: dimension mismatch");
    double dot = 0, na = 0, nb = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na <= 0 || nb <= 0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

PremiseIndex::PremiseIndex(std::vector<Premise> premises, size_t m, EmbedFn external)
    : premises_(std::move(premises)), m_(m), external_(std::move(external)) {
    if (m_ < 1) throw std::invalid_argument("PremiseIndex: m must be >= 1");
    std::set<std::string> names;
    for (const auto& p : premises_)
        if (!names.insert(p.name).second)
            throw std::invalid_argument("PremiseIndex: duplicate premise name '" + p.name + "'");

    if (!external_) {
        // document frequency per hashed bucket over this index's premises
        std::vector<size_t> df(kEmbeddingDim, 0);
        for (const auto& p : premises_) {
            std::set<size_t> seen;
            for (const auto& tok : tokenize(p.text)) seen.insert(bucket(tok));
            for (size_t b : seen) ++df[b];
        }
        idf_.assign(kEmbeddingDim, 0.0);
        double n = static_cast<double>(premises_.size());
        for (size_t b = 0; b < kEmbeddingDim; ++b)
            idf_[b] = std::log((n + 1.0) / (static_cast<double>(df[b]) + 1.0)) + 1.0;
    }

    vectors_.reserve(premises_.size());
    for (const auto& p : premises_)
        vectors_.push_back(external_ ? external_(p.text) : builtin_embed(p.text));
}

PremiseIndex PremiseIndex::from_theory(const Theory& theory, size_t m, EmbedFn external) {
    std::vector<Premise> ps;
    for (const auto* ax : theory.axioms())
        ps.push_back({ax->name, canonical_text(ax->formula)});
    return PremiseIndex(std::move(ps), m, std::move(external));
}

Embedding PremiseIndex::builtin_embed(const std::string& text) const {
    Embedding v(kEmbeddingDim, 0.0);
    for (const auto& tok : tokenize(text)) {
        size_t b = bucket(tok);
        v[b] += idf_[b];
    }
    l2_normalize(v);
    return v;
}

Embedding PremiseIndex::embed_query(const std::string& text) const {
    return external_ ? external_(text) : builtin_embed(text);
}

std::vector<RankedPremise> PremiseIndex::rank_all(const std::string& goal_text) const {
    Embedding q = embed_query(goal_text);
    std::vector<RankedPremise> out;
    out.reserve(premises_.size());
    for (size_t i = 0; i < premises_.size(); ++i)
        out.push_back({premises_[i].name, cosine_similarity(q, vectors_[i])});
    std::sort(out.begin(), out.end(), [](const RankedPremise& a, const RankedPremise& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        return a.name < b.name;
    });
    return out;
}

std::vector<RankedPremise> PremiseIndex::rank(const std::string& goal_text) const {
    auto out = rank_all(goal_text);
    if (out.size() > m_) out.resize(m_);
    return out;
}

double recall_at_k(const std::vector<std::string>& ground_truth,
                   const std::vector<std::string>& predicted, size_t k) {
    if (ground_truth.empty()) throw std::invalid_argument("recall_at_k: empty ground truth");
    if (k < 1) throw std::invalid_argument("recall_at_k: k must be >= 1");
    std::set<std::string> gt(ground_truth.begin(), ground_truth.end());
    size_t hit = 0;
    for (size_t i = 0; i < predicted.size() && i < k; ++i)
        if (gt.count(predicted[i])) ++hit;
    return static_cast<double>(hit) / static_cast<double>(gt.size());
}

}  // namespace minilean
