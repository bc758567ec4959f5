#pragma once

#include <atomic>
#include <cstddef>
#include <string>
#include <string_view>

#include "semdrift/clients/generator.hpp"

namespace semdrift::clients {

// In-process generator for tests and offline demos. Output depends only on
// the request (prompt, seed, temperature, max_tokens, logprobs_k); at
// temperature 0 the seed is ignored.
//
// `echo` returns the prompt as the completion. `biography` continues the
// prompt with template sentences about the subject named after
// "article about " in the prompt. The EOS token enters the top-k
// alternatives of the first token after each finished sentence, at a rank
// that improves as the passage grows. Given the tool-call prompts, it asks
// up to four fixed questions about the subject ("Where was X born?", ...)
// and, for the answer prompt, repeats the answer as the continuation.
class StubGenerator : public GeneratorClient {
 public:
  enum class Mode { echo, biography };

  explicit StubGenerator(Mode mode = Mode::biography) : mode_(mode) {}

  Completion complete(const GeneratorRequest& request) override;

  std::size_t calls() const { return calls_.load(); }

 private:
  Completion echo(const GeneratorRequest& request) const;
  Completion biography(const GeneratorRequest& request) const;
  Completion call_inference(const GeneratorRequest& request, std::string_view text) const;
  Completion answer_inference(const GeneratorRequest& request, std::string_view text) const;
  Completion scripted(const GeneratorRequest& request, const std::string& text,
                      const std::string& finish_reason) const;

  Mode mode_;
  std::atomic<std::size_t> calls_{0};
};

}  // namespace semdrift::clients
