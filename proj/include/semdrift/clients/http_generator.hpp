#pragma once

#include "semdrift/clients/generator.hpp"
#include "semdrift/clients/http.hpp"

namespace semdrift::clients {

// Completion endpoint client. Wire format (docs/protocol.md):
//   POST {base}/v1/completions
//   {"prompt", "max_tokens", "temperature", "top_p", "seed", "logprobs", "stop"}
//   -> {"text", "finish_reason", "eos_token"?,
//       "tokens": [{"text", "logprob", "top_logprobs": [{"token", "logprob"}]}]}
class HttpGeneratorClient : public GeneratorClient {
 public:
  explicit HttpGeneratorClient(Endpoint endpoint, RetryPolicy retry = {}, std::ptrdiff_t max_in_flight = 4);

  // Throws CapabilityError when logprobs_k > 0 and the reply lacks top-k
  // alternatives.
  Completion complete(const GeneratorRequest& request) override;

  static Completion parse_response(const nlohmann::json& body, const GeneratorRequest& request);

 private:
  JsonPoster poster_;
};

}  // namespace semdrift::clients
