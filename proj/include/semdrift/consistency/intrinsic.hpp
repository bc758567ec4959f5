#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "semdrift/clients/generator.hpp"
#include "semdrift/core/error.hpp"
#include "semdrift/core/trace.hpp"

namespace semdrift::consistency {

// Token entropy uses the top-k alternatives renormalized to sum to 1, so it
// is a lower bound on the entropy of the full distribution.
struct IntrinsicScores {
  double mean_entropy = 0.0;
  double entropy_variance = 0.0;  // population variance over the sentence's tokens
  double neg_log_likelihood = 0.0;  // summed over the sentence's tokens

  bool operator==(const IntrinsicScores&) const = default;
};

double token_entropy(const core::TraceToken& token);

IntrinsicScores intrinsic_for_tokens(const core::GenerationTrace& trace, std::size_t begin, std::size_t end);

// One entry per sentence of the trace. Throws ConfigError when the trace has
// no alternatives (k_max = 0) and ValidationError naming the boundary when a
// sentence has no tokens.
std::vector<IntrinsicScores> intrinsic_metrics(const core::GenerationTrace& trace);

// A regeneration failed; `sample_index` says which one.
class SampleError : public RemoteError {
 public:
  SampleError(std::size_t sample_index, const std::string& what, bool retriable)
      : RemoteError("sample " + std::to_string(sample_index) + ": " + what, retriable),
        sample_index_(sample_index) {}

  std::size_t sample_index() const { return sample_index_; }

 private:
  std::size_t sample_index_;
};

struct AverageOptions {
  std::size_t n_samples = 5;
  std::uint64_t seed = 0;  // sample i uses seed + i
  double temperature = 0.6;
  double top_p = 0.9;
  int max_tokens = 100;
};

// Regenerates the next sentence after `prefix` n_samples times and averages
// the intrinsic scores of each regenerated first sentence. Requests top-k
// alternatives with k = `k`.
IntrinsicScores intrinsic_metrics_avg(std::string_view prefix, clients::GeneratorClient& generator, std::size_t k,
                                      const AverageOptions& options = {});

// Averaged scores for every sentence of `trace`, each regenerated from
// prompt + the generated text before it.
std::vector<IntrinsicScores> intrinsic_profile_avg(const core::GenerationTrace& trace, std::string_view prompt,
                                                   clients::GeneratorClient& generator,
                                                   const AverageOptions& options = {});

}  // namespace semdrift::consistency
