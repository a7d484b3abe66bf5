// Test scorer speaking the line-delimited JSON protocol. Modes:
//   echo      reply with a fixed `exact A1` candidate
//   malformed reply with one valid candidate plus junk entries
//   die       exit immediately without replying
//   silent    read requests but never answer
//   embed     also answer {"kind":"embed"} requests with a toy vector

#include <iostream>
#include <string>

#include <json.hpp>

using nlohmann::json;

int main(int argc, char** argv) {
    std::string mode = argc > 1 ? argv[1] : "echo";
    if (mode == "die") return 3;

    std::string line;
    while (std::getline(std::cin, line)) {
        if (line.empty()) continue;
        if (mode == "silent") continue;
        json request = json::parse(line, nullptr, false);
        if (request.is_discarded()) {
            std::cout << "{}" << std::endl;
            continue;
        }
        if (request.value("kind", "") == "embed") {
            json reply;
            reply["embedding"] = {1.0, 0.0, 0.0, 1.0};
            std::cout << reply.dump() << std::endl;
            continue;
        }
        json reply;
        if (mode == "malformed") {
            reply["candidates"] = json::array({
                {{"tactic", "exact A1"}, {"logprob", -0.1}},
                {{"tactic", "frobnicate ++ %%"}, {"logprob", -0.2}},
                {{"tactic", "apply A2"}, {"logprob", 0.5}},   // positive logprob
                {{"tactic", "sorry"}, {"logprob", -0.3}},
            });
        } else {
            reply["candidates"] = json::array({{{"tactic", "exact A1"}, {"logprob", -0.1}}});
        }
        std::cout << reply.dump() << std::endl;
    }
    return 0;
}
