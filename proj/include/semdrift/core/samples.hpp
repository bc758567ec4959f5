#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace semdrift::core {

struct SampledPassage {
  std::string text;
  std::vector<std::string> sentences;
  std::uint64_t seed = 0;

  bool operator==(const SampledPassage&) const = default;
};

struct SamplingParams {
  double temperature = 0.6;
  double top_p = 0.9;

  bool operator==(const SamplingParams&) const = default;
};

// An original passage and N >= 1 passages resampled from the same prompt.
struct SamplePassageSet {
  std::string topic;
  std::vector<std::string> original_sentences;
  std::vector<SampledPassage> samples;
  SamplingParams params;

  // Throws ValidationError when there are no samples.
  void validate() const;

  bool operator==(const SamplePassageSet&) const = default;
};

}  // namespace semdrift::core
