#pragma once

// Premise ranking by embedding cosine similarity. The built-in embedder is
// token-level TF-IDF over FNV-hashed buckets with L2 normalization; IDF
// statistics come from the premises of one index (each problem is a closed
// world). An external embedder can be plugged in through the scorer
// subprocess protocol ("embed" requests).

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "minilean/logic.hpp"

namespace minilean {

constexpr size_t kEmbeddingDim = 512;

using Embedding = std::vector<double>;

// Identifiers and connective symbols of a canonical text.
std::vector<std::string> tokenize(const std::string& text);

// Deterministic TF embedding (no IDF), L2-normalized; empty text gives the
// zero vector.
Embedding embed(const std::string& text);

// Cosine of two L2-normalized vectors; 0 when either is the zero vector.
double cosine_similarity(const Embedding& a, const Embedding& b);

struct Premise {
    std::string name;
    std::string text;  // canonical formula text
};

struct RankedPremise {
    std::string name;
    double similarity;
};

// Optional external embedding function (text -> vector); must be
// deterministic. Dimension may differ from the builtin one.
using EmbedFn = std::function<Embedding(const std::string&)>;

class PremiseIndex {
public:
    // m = retrieval size (>= 1). Premise names must be unique.
    PremiseIndex(std::vector<Premise> premises, size_t m = 4, EmbedFn external = nullptr);

    static PremiseIndex from_theory(const Theory& theory, size_t m = 4, EmbedFn external = nullptr);

    // Top-min(m, |P|) premises by cosine similarity, descending; ties broken
    // by premise name ascending.
    std::vector<RankedPremise> rank(const std::string& goal_text) const;

    // Full ranking, ignoring m.
    std::vector<RankedPremise> rank_all(const std::string& goal_text) const;

    Embedding embed_query(const std::string& text) const;

    size_t size() const { return premises_.size(); }
    size_t retrieval_size() const { return m_; }
    const std::vector<Premise>& premises() const { return premises_; }

private:
    std::vector<Premise> premises_;
    std::vector<Embedding> vectors_;
    std::vector<double> idf_;  // per-bucket, builtin embedder only
    size_t m_;
    EmbedFn external_;

    Embedding builtin_embed(const std::string& text) const;
};

// |ground_truth ∩ predicted[0:k]| / |ground_truth|. Throws
// std::invalid_argument when ground_truth is empty or k < 1.
double recall_at_k(const std::vector<std::string>& ground_truth,
                   const std::vector<std::string>& predicted, size_t k);

}  // namespace minilean
