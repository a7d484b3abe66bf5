#pragma once

// Formalization gateway: renders prompt templates, calls a chat-completion
// client, extracts theory source from the completion, syntax-checks it and
// retries once with the checker's diagnostics. A replay client serves canned
// completions from disk so the whole pipeline runs offline.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "minilean/logic.hpp"

namespace minilean {

struct ChatMessage {
    std::string role;  // "system" | "user" | "assistant"
    std::string content;
};

struct GenerationParams {
    double temperature = 0.0;
    int max_tokens = 2048;
    std::string model = "gpt-4";
};

// Transport-level failure (network, process, missing fixture); distinct from
// syntax failures, which land in FormalizationResult diagnostics.
class TransportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ChatClient {
public:
    virtual ~ChatClient() = default;
    virtual std::string send(const std::vector<ChatMessage>& messages,
                             const GenerationParams& params) = 0;
};

// Speaks the common chat-completions HTTP wire shape:
// POST {base}/v1/chat/completions with {"model","messages","temperature",
// "max_tokens"}; the completion is choices[0].message.content.
class HttpChatClient : public ChatClient {
public:
    HttpChatClient(std::string base_url, std::string api_key = "", std::string path = "/v1/chat/completions");

    // Reads MINILEAN_CHAT_URL / MINILEAN_CHAT_API_KEY; throws TransportError
    // when the URL is unset.
    static std::unique_ptr<HttpChatClient> from_environment();

    std::string send(const std::vector<ChatMessage>& messages, const GenerationParams& params) override;

private:
    std::string base_url_;
    std::string api_key_;
    std::string path_;
};

// Replays canned completions. Fixtures are JSONL records
//   {"match": <substring of the user message>, "completion": <text>}
// consumed first-match-first; repeated matches form a queue, so a retry can
// be scripted as two records with the same match key.
class ReplayChatClient : public ChatClient {
public:
    explicit ReplayChatClient(const std::string& fixtures_path);
    std::string send(const std::vector<ChatMessage>& messages, const GenerationParams& params) override;

    size_t calls() const { return calls_; }

private:
    struct Fixture {
        std::string match;
        std::string completion;
        bool consumed = false;
    };
    std::vector<Fixture> fixtures_;
    size_t calls_ = 0;
};

// ---------------------------------------------------------------------------
// Prompt templates
//
// Template files have `== system ==`, optional repeated `== example ==`
// sections (each split by a `-- output --` line) and a `== user ==` section
// whose {{context}} and {{questions}} slots are filled per problem.

struct FewShotExample {
    std::string input;
    std::string completion;
};

struct PromptTemplate {
    std::string system_message;
    std::vector<FewShotExample> examples;
    std::string user_template;

    static PromptTemplate load(const std::string& path);
    static PromptTemplate parse(const std::string& text);
};

// One user message; several questions are numbered "Question 1:", ... as in
// multi-question problems sharing a context.
std::vector<ChatMessage> render_prompt(const PromptTemplate& tmpl,
                                       const std::vector<std::string>& context_sentences,
                                       const std::vector<std::string>& questions);

// ---------------------------------------------------------------------------
// Code extraction

struct ExtractedCode {
    std::string source;                        // declaration/proof lines only
    std::vector<std::string> answer_markers;   // from "-- The answer is X" comments
};

class ExtractionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Strips prose around declarations, keeping `--` comments and begin/end
// blocks. Throws ExtractionError when no declaration is found.
ExtractedCode extract_code(const std::string& completion);

// ---------------------------------------------------------------------------
// Formalization with one retry

enum class FormalizationStatus { Ok, SyntaxFailed, TransportFailed };

struct FormalizationResult {
    FormalizationStatus status = FormalizationStatus::SyntaxFailed;
    std::string theory_source;             // extracted source of the last attempt
    std::vector<std::string> diagnostics;  // parse/check messages of the last attempt
    std::vector<std::string> answer_markers;
    int attempts = 0;  // 1 or 2
    std::vector<std::string> raw_completions;
};

// Attempt 1 parses and checks the extracted source; on any diagnostic a
// single retry embeds the verbatim diagnostics and the faulty source. Never
// makes more than two client calls.
FormalizationResult formalize_with_retry(ChatClient& client, const PromptTemplate& tmpl,
                                         const std::vector<std::string>& context_sentences,
                                         const std::vector<std::string>& questions,
                                         const GenerationParams& params = {});

}  // namespace minilean
