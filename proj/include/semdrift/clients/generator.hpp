#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semdrift/core/trace.hpp"

namespace semdrift::clients {

// Sampling defaults follow the biography generation setup: temperature 0.6,
// top-p 0.9, at most 500 new tokens.
struct GeneratorRequest {
  std::string prompt;
  int max_tokens = 500;
  double temperature = 0.6;
  double top_p = 0.9;
  std::uint64_t seed = 0;
  int logprobs_k = 0;
  std::vector<std::string> stop_sequences;

  // temperature >= 0, 0 < top_p <= 1, logprobs_k >= 0, max_tokens >= 0.
  void validate() const;

  // Canonical form: object keys are sorted, so field order never affects it.
  nlohmann::json to_json() const;
  static GeneratorRequest from_json(const nlohmann::json& j);
  // SHA-256 of the canonical JSON dump.
  std::string digest() const;

  bool operator==(const GeneratorRequest&) const = default;
};

struct Completion {
  std::string text;
  std::string finish_reason;  // "stop" (EOS or stop sequence) or "length"
  core::GenerationTrace trace;

  nlohmann::json to_json() const;
  static Completion from_json(const nlohmann::json& j);

  bool operator==(const Completion&) const = default;
};

class GeneratorClient {
 public:
  virtual ~GeneratorClient() = default;
  // Throws RemoteError (and subclasses) on failure.
  virtual Completion complete(const GeneratorRequest& request) = 0;
};

// Fills a prompt template containing "{topic}".
std::string biography_prompt(std::string_view topic);

}  // namespace semdrift::clients
