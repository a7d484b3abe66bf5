#include "minilean/gateway.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "minilean/parser.hpp"

namespace minilean {

using nlohmann::json;

// ---------------------------------------------------------------------------
// HTTP client

HttpChatClient::HttpChatClient(std::string base_url, std::string api_key, std::string path)
    : base_url_(std::move(base_url)), api_key_(std::move(api_key)), path_(std::move(path)) {}

std::unique_ptr<HttpChatClient> HttpChatClient::from_environment() {
    const char* url = std::getenv("MINILEAN_CHAT_URL");
    if (!url || !*url)
        throw TransportError("MINILEAN_CHAT_URL is not set; cannot reach a chat endpoint");
    const char* key = std::getenv("MINILEAN_CHAT_API_KEY");
    return std::make_unique<HttpChatClient>(url, key ? key : "");
}

std::string HttpChatClient::send(const std::vector<ChatMessage>& messages,
                                 const GenerationParams& params) {
    json body;
    body["model"] = params.model;
    body["temperature"] = params.temperature;
    body["max_tokens"] = params.max_tokens;
    body["messages"] = json::array();
    for (const auto& m : messages)
        body["messages"].push_back({{"role", m.role}, {"content", m.content}});

    httplib::Client cli(base_url_);
    cli.set_read_timeout(120, 0);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
    auto res = cli.Post(path_, headers, body.dump(), "application/json");
    if (!res) throw TransportError("chat endpoint unreachable: " + base_url_);
    if (res->status != 200)
        throw TransportError("chat endpoint returned status " + std::to_string(res->status));
    json reply = json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("choices") || reply["choices"].empty())
        throw TransportError("malformed chat reply");
    const auto& choice = reply["choices"][0];
    if (!choice.contains("message") || !choice["message"].contains("content"))
        throw TransportError("malformed chat reply: missing message content");
    return choice["message"]["content"].get<std::string>();
}

// ---------------------------------------------------------------------------
// Replay client

ReplayChatClient::ReplayChatClient(const std::string& fixtures_path) {
    std::ifstream in(fixtures_path);
    if (!in) throw TransportError("cannot open fixtures file: " + fixtures_path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("match") || !j.contains("completion"))
            throw TransportError("malformed fixture line in " + fixtures_path);
        fixtures_.push_back({j["match"].get<std::string>(), j["completion"].get<std::string>(), false});
    }
}

std::string ReplayChatClient::send(const std::vector<ChatMessage>& messages,
                                   const GenerationParams&) {
    ++calls_;
    std::string haystack;
    for (const auto& m : messages)
        if (m.role == "user") haystack += m.content + "\n";
    for (auto& f : fixtures_) {
        if (f.consumed) continue;
        if (haystack.find(f.match) != std::string::npos) {
            f.consumed = true;
            return f.completion;
        }
    }
    throw TransportError("no replay fixture matches the prompt");
}

// ---------------------------------------------------------------------------
// Prompt templates

PromptTemplate PromptTemplate::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TransportError("cannot open prompt template: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

PromptTemplate PromptTemplate::parse(const std::string& text) {
    PromptTemplate tmpl;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::string buffer;
    FewShotExample example;
    bool in_example_output = false;

    auto flush = [&] {
        // drop one trailing newline added by the line loop
        if (!buffer.empty() && buffer.back() == '\n') buffer.pop_back();
        if (section == "system") tmpl.system_message = buffer;
        if (section == "user") tmpl.user_template = buffer;
        if (section == "example") {
            if (in_example_output)
                example.completion = buffer;
            else
                example.input = buffer;
            tmpl.examples.push_back(example);
            example = {};
            in_example_output = false;
        }
        buffer.clear();
    };

    while (std::getline(in, line)) {
        if (line == "== system ==" || line == "== user ==" || line == "== example ==") {
            if (!section.empty()) flush();
            section = line.substr(3, line.size() - 6);
            continue;
        }
        if (section == "example" && line == "-- output --") {
            if (!buffer.empty() && buffer.back() == '\n') buffer.pop_back();
            example.input = buffer;
            buffer.clear();
            in_example_output = true;
            continue;
        }
        buffer += line;
        buffer += '\n';
    }
    if (!section.empty()) flush();
    return tmpl;
}

static std::string replace_all(std::string s, const std::string& slot, const std::string& value) {
    size_t at = 0;
    while ((at = s.find(slot, at)) != std::string::npos) {
        s.replace(at, slot.size(), value);
        at += value.size();
    }
    return s;
}

std::vector<ChatMessage> render_prompt(const PromptTemplate& tmpl,
                                       const std::vector<std::string>& context_sentences,
                                       const std::vector<std::string>& questions) {
    if (context_sentences.empty())
        throw std::invalid_argument("render_prompt: empty context");
    if (questions.empty()) throw std::invalid_argument("render_prompt: no questions");
    if (tmpl.user_template.find("{{context}}") == std::string::npos ||
        tmpl.user_template.find("{{questions}}") == std::string::npos)
        throw std::invalid_argument("render_prompt: template is missing a slot");

    std::string context;
    for (size_t i = 0; i < context_sentences.size(); ++i) {
        if (i) context += " ";
        context += context_sentences[i];
    }
    std::string rendered_questions;
    if (questions.size() == 1) {
        rendered_questions = "Question: " + questions[0];
    } else {
        for (size_t i = 0; i < questions.size(); ++i) {
            if (i) rendered_questions += "\n";
            rendered_questions += "Question " + std::to_string(i + 1) + ": " + questions[i];
        }
    }

    std::vector<ChatMessage> messages;
    messages.push_back({"system", tmpl.system_message});
    for (const auto& ex : tmpl.examples) {
        messages.push_back({"user", ex.input});
        messages.push_back({"assistant", ex.completion});
    }
    std::string user = replace_all(tmpl.user_template, "{{context}}", context);
    user = replace_all(user, "{{questions}}", rendered_questions);
    messages.push_back({"user", user});
    return messages;
}

// ---------------------------------------------------------------------------
// Code extraction

namespace {

bool is_decl_start(const std::string& line) {
    static const char* kStarts[] = {"universe ", "constant ", "constants ", "axiom ", "theorem "};
    for (const char* s : kStarts)
        if (line.rfind(s, 0) == 0) return true;
    return false;
}

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

ExtractedCode extract_code(const std::string& completion) {
    ExtractedCode out;
    std::istringstream in(completion);
    std::string raw;
    std::vector<std::string> lines;
    bool in_block = false;       // between `begin` and its `end`
    bool in_statement = false;   // a declaration whose formula continues on the next line
    std::vector<std::string> pending_comments;

    auto note_marker = [&](const std::string& comment) {
        const std::string key = "The answer is ";
        size_t at = comment.find(key);
        if (at == std::string::npos) return;
        std::string rest = strip(comment.substr(at + key.size()));
        size_t end = rest.find_first_of(" .\t");
        out.answer_markers.push_back(end == std::string::npos ? rest : rest.substr(0, end));
    };

    while (std::getline(in, raw)) {
        std::string line = strip(raw);
        if (line.empty()) {
            in_statement = false;
            continue;
        }
        if (line.rfind("--", 0) == 0) {
            note_marker(line);
            pending_comments.push_back(line);
            continue;
        }
        bool keep = false;
        if (in_block) {
            keep = true;
            if (line == "end" || line.rfind("end ", 0) == 0 || line == "end," ) in_block = false;
        } else if (is_decl_start(line)) {
            keep = true;
            in_statement = true;
        } else if (in_statement) {
            // continuation of a multi-line statement (e.g. a long axiom)
            keep = true;
        } else if (line == "begin" || line.rfind("begin", 0) == 0) {
            keep = true;
        } else {
            pending_comments.clear();  // prose: drop it and any comments glued to it
        }
        if (!keep) continue;
        for (auto& c : pending_comments) lines.push_back(std::move(c));
        pending_comments.clear();
        lines.push_back(line);
        if (line.find(":= begin") != std::string::npos || line == "begin" ||
            (line.size() >= 5 && line.compare(line.size() - 5, 5, "begin") == 0))
            in_block = true;
        if (in_block && (line == "end" || line == "end,")) in_block = false;
    }

    bool any_decl = false;
    for (const auto& l : lines) any_decl = any_decl || is_decl_start(l);
    if (!any_decl) throw ExtractionError("no declarations found in the completion");

    std::string joined;
    for (const auto& l : lines) {
        joined += l;
        joined += "\n";
    }
    out.source = joined;
    return out;
}

// ---------------------------------------------------------------------------
// Formalize with one retry

static std::vector<std::string> check_source(const std::string& source) {
    std::vector<std::string> diags;
    try {
        ParsedTheory parsed = parse_theory(source);
        for (const auto& d : check_wf(parsed.theory)) diags.push_back(format_diagnostic(d));
    } catch (const ParseError& e) {
        diags.push_back(std::string("parse error: ") + e.what());
    }
    return diags;
}

FormalizationResult formalize_with_retry(ChatClient& client, const PromptTemplate& tmpl,
                                         const std::vector<std::string>& context_sentences,
                                         const std::vector<std::string>& questions,
                                         const GenerationParams& params) {
    FormalizationResult result;
    std::vector<ChatMessage> messages = render_prompt(tmpl, context_sentences, questions);

    for (int attempt = 1; attempt <= 2; ++attempt) {
        result.attempts = attempt;
        std::string completion;
        try {
            completion = client.send(messages, params);
        } catch (const TransportError& e) {
            result.status = FormalizationStatus::TransportFailed;
            result.diagnostics = {e.what()};
            return result;
        }
        result.raw_completions.push_back(completion);

        std::string source;
        std::vector<std::string> diags;
        try {
            ExtractedCode extracted = extract_code(completion);
            source = extracted.source;
            result.answer_markers = extracted.answer_markers;
            diags = check_source(source);
        } catch (const ExtractionError& e) {
            source = completion;
            diags = {e.what()};
        }
        result.theory_source = source;
        result.diagnostics = diags;
        if (diags.empty()) {
            result.status = FormalizationStatus::Ok;
            return result;
        }
        if (attempt == 2) break;

        // retry with the verbatim diagnostics and the faulty source appended
        std::string feedback = "The formalization failed to check. Errors:\n";
        for (const auto& d : diags) feedback += "  " + d + "\n";
        feedback += "\nFaulty formalization:\n" + source +
                    "\nPlease regenerate the full corrected formalization.";
        messages.push_back({"assistant", completion});
        messages.push_back({"user", feedback});
    }
    result.status = FormalizationStatus::SyntaxFailed;
    return result;
}

}  // namespace minilean
