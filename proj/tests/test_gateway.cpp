#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "minilean/gateway.hpp"
#include "minilean/parser.hpp"
#include "support/test_util.hpp"

using namespace minilean;
using nlohmann::json;

namespace {

const char* kSystemMessage =
    "You are a logician with a background in mathematics that translates natural language "
    "reasoning text to Lean code so that these natural language reasoning problems can be solved. "
    "During the translation, please pay close attention to the predicates and entities. There is "
    "an additional requirement: I also want you to try to prove the theorem you translated to "
    "Lean. If you can prove the theorem, give me True at the end of the answer. If you can prove "
    "the negation of the theorem, write False at the end of the answer. If you can neither prove "
    "the original theorem nor the negation of the theorem, please give me Unknown at the end of "
    "the answer.";

// client scripted with a fixed completion sequence; records every call
class ScriptedClient : public ChatClient {
public:
    std::vector<std::string> completions;
    std::vector<std::vector<ChatMessage>> calls;
    size_t at = 0;

    std::string send(const std::vector<ChatMessage>& messages, const GenerationParams&) override {
        calls.push_back(messages);
        if (at >= completions.size()) throw TransportError("script exhausted");
        return completions[at++];
    }
};

std::string good_completion() {
    return "Sure. Here is the formalization.\n\n" +
           testutil::read_file(testutil::data_path("golden/hudson.thy")) +
           "\n-- The answer is True\n";
}

std::string broken_completion() {
    return "Here is my attempt.\n\n"
           "constant obj : Type\n"
           "constant Hudson : obj\n"
           "axiom A1 : is_cat Hudson\n";  // is_cat is undeclared
}

}  // namespace

TEST_CASE("the bundled template carries the expected system message") {
    PromptTemplate tmpl = PromptTemplate::load(testutil::data_path("prompts/proofwriter.tmpl"));
    CHECK(tmpl.system_message == kSystemMessage);
    auto messages = render_prompt(tmpl, {"The cat is blue."}, {"Is the cat blue?"});
    REQUIRE(messages.size() == 2);
    CHECK(messages[0].role == "system");
    CHECK(messages[0].content == kSystemMessage);
    CHECK(messages[1].role == "user");
    CHECK(messages[1].content.find("Textual context: The cat is blue.") != std::string::npos);
    CHECK(messages[1].content.find("Question: Is the cat blue?") != std::string::npos);
}

TEST_CASE("multi-question problems render as one numbered user message") {
    PromptTemplate tmpl = PromptTemplate::load(testutil::data_path("prompts/proofwriter.tmpl"));
    auto messages = render_prompt(tmpl, {"Tom is a wild turkey."},
                                  {"Tom is an Ocellated wild turkey.",
                                   "Tom is an Eastern wild turkey.", "Joey is a wild turkey."});
    REQUIRE(messages.size() == 2);
    const std::string& user = messages.back().content;
    CHECK(user.find("Question 1: Tom is an Ocellated wild turkey.") != std::string::npos);
    CHECK(user.find("Question 2: Tom is an Eastern wild turkey.") != std::string::npos);
    CHECK(user.find("Question 3: Joey is a wild turkey.") != std::string::npos);
}

TEST_CASE("rendering fails on missing slots or empty context") {
    PromptTemplate tmpl = PromptTemplate::load(testutil::data_path("prompts/proofwriter.tmpl"));
    CHECK_THROWS_AS(render_prompt(tmpl, {}, {"Q"}), std::invalid_argument);
    CHECK_THROWS_AS(render_prompt(tmpl, {"ctx"}, {}), std::invalid_argument);
    PromptTemplate broken;
    broken.system_message = "s";
    broken.user_template = "no slots here";
    CHECK_THROWS_AS(render_prompt(broken, {"ctx"}, {"Q"}), std::invalid_argument);
}

TEST_CASE("few-shot examples become user/assistant turns") {
    PromptTemplate tmpl = PromptTemplate::parse(
        "== system ==\nsys\n== example ==\nexample input\n-- output --\nexample output\n"
        "== user ==\nTextual context: {{context}}\n\n{{questions}}\n");
    REQUIRE(tmpl.examples.size() == 1);
    auto messages = render_prompt(tmpl, {"ctx."}, {"q?"});
    REQUIRE(messages.size() == 4);
    CHECK(messages[1].role == "user");
    CHECK(messages[1].content == "example input");
    CHECK(messages[2].role == "assistant");
    CHECK(messages[2].content == "example output");
}

TEST_CASE("extract_code keeps declarations and records answer markers") {
    ExtractedCode code = extract_code(good_completion());
    CHECK(code.source.find("axiom A1 : is_cat Hudson") != std::string::npos);
    CHECK(code.source.find("Sure.") == std::string::npos);
    REQUIRE(code.answer_markers.size() == 1);
    CHECK(code.answer_markers[0] == "True");

    Theory t = parse_theory(code.source).theory;
    CHECK(check_wf(t).empty());
    CHECK(t.find("hudson_often_meows") != nullptr);
    CHECK(t.find("hudson_often_meows")->script != nullptr);
}

TEST_CASE("extract_code on a full appendix-style completion keeps both theorems") {
    std::string completion = "Formalizing now.\n\n" +
                             testutil::read_file(testutil::data_path("golden/cow.thy")) +
                             "\n-- The answer is False\n\nHope this helps!\n";
    ExtractedCode code = extract_code(completion);
    Theory t = parse_theory(code.source).theory;
    CHECK(t.find("cow_chases_cow") != nullptr);
    CHECK(t.find("not_cow_chases_cow") != nullptr);
    CHECK(code.source.find("Hope this helps") == std::string::npos);
    REQUIRE(!code.answer_markers.empty());
    CHECK(code.answer_markers.back() == "False");
}

TEST_CASE("extract_code fails on prose-only completions") {
    CHECK_THROWS_AS(extract_code("I am unable to formalize this problem."), ExtractionError);
}

TEST_CASE("formalize_with_retry passes a clean first attempt through") {
    ScriptedClient client;
    client.completions = {good_completion()};
    PromptTemplate tmpl = PromptTemplate::load(testutil::data_path("prompts/proofwriter.tmpl"));
    FormalizationResult r =
        formalize_with_retry(client, tmpl, {"Hudson is a cat."}, {"Does Hudson often meow?"});
    CHECK(r.status == FormalizationStatus::Ok);
    CHECK(r.attempts == 1);
    CHECK(client.calls.size() == 1);
    CHECK(r.diagnostics.empty());
}

TEST_CASE("formalize_with_retry embeds diagnostics and the faulty source in the retry") {
    ScriptedClient client;
    client.completions = {broken_completion(), good_completion()};
    PromptTemplate tmpl = PromptTemplate::load(testutil::data_path("prompts/proofwriter.tmpl"));
    FormalizationResult r =
        formalize_with_retry(client, tmpl, {"Hudson is a cat."}, {"Does Hudson often meow?"});
    CHECK(r.status == FormalizationStatus::Ok);
    CHECK(r.attempts == 2);
    REQUIRE(client.calls.size() == 2);
    const std::string& retry = client.calls[1].back().content;
    CHECK(retry.find("is_cat") != std::string::npos);                   // faulty source
    CHECK(retry.find("unknown-symbol") != std::string::npos);           // verbatim diagnostic
    CHECK(retry.find("axiom A1 : is_cat Hudson") != std::string::npos); // full source text
}

TEST_CASE("formalize_with_retry stops after two failing attempts") {
    ScriptedClient client;
    client.completions = {broken_completion(), broken_completion(), broken_completion()};
    PromptTemplate tmpl = PromptTemplate::load(testutil::data_path("prompts/proofwriter.tmpl"));
    FormalizationResult r =
        formalize_with_retry(client, tmpl, {"Hudson is a cat."}, {"Does Hudson often meow?"});
    CHECK(r.status == FormalizationStatus::SyntaxFailed);
    CHECK(r.attempts == 2);
    CHECK(client.calls.size() == 2);  // never a third call
    CHECK(!r.diagnostics.empty());
    CHECK(r.raw_completions.size() == 2);
}

TEST_CASE("transport failures are distinct from syntax failures") {
    ScriptedClient client;  // empty script: first call throws
    PromptTemplate tmpl = PromptTemplate::load(testutil::data_path("prompts/proofwriter.tmpl"));
    FormalizationResult r = formalize_with_retry(client, tmpl, {"ctx."}, {"q?"});
    CHECK(r.status == FormalizationStatus::TransportFailed);
    CHECK(r.attempts == 1);
}

TEST_CASE("replay client serves fixtures by match substring, in order") {
    std::string path = "/tmp/minilean_test_fixtures.jsonl";
    {
        std::ofstream out(path);
        out << json{{"match", "alpha"}, {"completion", "first"}}.dump() << "\n";
        out << json{{"match", "alpha"}, {"completion", "second"}}.dump() << "\n";
        out << json{{"match", "beta"}, {"completion", "other"}}.dump() << "\n";
    }
    ReplayChatClient client(path);
    GenerationParams params;
    std::vector<ChatMessage> m1 = {{"user", "question about alpha please"}};
    CHECK(client.send(m1, params) == "first");
    CHECK(client.send(m1, params) == "second");  // queue semantics
    CHECK_THROWS_AS(client.send(m1, params), TransportError);
    std::vector<ChatMessage> m2 = {{"user", "beta?"}};
    CHECK(client.send(m2, params) == "other");
    CHECK(client.calls() == 4);
}

TEST_CASE("http client speaks the chat-completions wire shape") {
    httplib::Server server;
    std::atomic<bool> saw_auth{false};
    json captured;
    server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
        captured = json::parse(req.body);
        saw_auth = req.get_header_value("Authorization") == "Bearer test-key";
        json reply = {{"choices", {{{"message", {{"content", "pong"}}}}}}};
        res.set_content(reply.dump(), "application/json");
    });
    int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    HttpChatClient client("http://127.0.0.1:" + std::to_string(port), "test-key");
    GenerationParams params;
    params.temperature = 0.0;
    std::string completion = client.send({{"system", "sys"}, {"user", "ping"}}, params);
    CHECK(completion == "pong");
    CHECK(saw_auth.load());
    CHECK(captured["messages"].size() == 2);
    CHECK(captured["messages"][1]["content"] == "ping");
    CHECK(captured["temperature"].get<double>() == 0.0);

    server.stop();
    server_thread.join();
}
