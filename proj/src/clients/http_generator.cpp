#include "semdrift/clients/http_generator.hpp"

#include <algorithm>

#include "semdrift/core/error.hpp"
#include "semdrift/core/segmenter.hpp"

namespace semdrift::clients {

using nlohmann::json;

HttpGeneratorClient::HttpGeneratorClient(Endpoint endpoint, RetryPolicy retry, std::ptrdiff_t max_in_flight)
    : poster_(std::move(endpoint), retry, max_in_flight) {}

Completion HttpGeneratorClient::complete(const GeneratorRequest& request) {
  request.validate();
  return parse_response(poster_.post("/v1/completions", request.to_json()), request);
}

Completion HttpGeneratorClient::parse_response(const json& body, const GeneratorRequest& request) {
  const auto k = static_cast<std::size_t>(request.logprobs_k);
  try {
    Completion c;
    c.text = body.at("text").get<std::string>();
    c.finish_reason = body.value("finish_reason", std::string("stop"));
    c.trace.eos_token = body.value("eos_token", c.trace.eos_token);
    c.trace.k_max = k;

    const auto tokens = body.find("tokens");
    if (k > 0 && (tokens == body.end() || !tokens->is_array())) {
      throw CapabilityError("endpoint returned no token logprobs but logprobs_k=" + std::to_string(k));
    }
    if (tokens != body.end()) {
      for (const auto& tj : *tokens) {
        core::TraceToken tok;
        tok.text = tj.at("text").get<std::string>();
        tok.logprob = std::min(0.0, tj.at("logprob").get<double>());
        if (k > 0) {
          const auto top = tj.find("top_logprobs");
          if (top == tj.end() || top->size() < k) {
            throw CapabilityError("endpoint returned fewer than logprobs_k=" + std::to_string(k) +
                                  " alternatives");
          }
          for (const auto& alt : *top) {
            tok.top.push_back({alt.at("token").get<std::string>(), std::min(0.0, alt.at("logprob").get<double>())});
          }
          std::stable_sort(tok.top.begin(), tok.top.end(),
                           [](const auto& a, const auto& b) { return a.logprob > b.logprob; });
          tok.top.resize(k);
        }
        c.trace.tokens.push_back(std::move(tok));
      }
    }
    c.trace.sentence_boundaries =
        core::derive_sentence_boundaries(c.trace.tokens, core::RuleBasedSegmenter::standard());
    c.trace.validate();
    return c;
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("malformed completion reply: ") + e.what());
  } catch (const ValidationError& e) {
    throw ProtocolError(std::string("invalid completion trace: ") + e.what());
  }
}

}  // namespace semdrift::clients
