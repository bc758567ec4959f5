#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "semdrift/core/fact_sequence.hpp"

namespace semdrift::drift {

// Semantic drift of one fact sequence.
//
// For a split point k, the split score is the mean of the supported
// proportion left of k and the unsupported proportion right of k. A split is
// admissible when k >= m, N - k >= m and N >= 2m. An empty side contributes
// a proportion of 0 (only reachable with m = 0); an empty sequence has no
// admissible split. `score` is the maximum over
// admissible splits and `drift_point` the smallest k attaining it; with no
// admissible split the score is 0 and the drift point is absent.
struct DriftResult {
  double score = 0.0;
  std::optional<std::size_t> drift_point;
  std::size_t m = 0;
  std::size_t n_facts = 0;
  // Components at the drift point (0 when absent).
  double left_precision = 0.0;
  double right_anti_precision = 0.0;
  // Split score for every k in [0, N]; 0 for inadmissible k. Filled only on
  // request.
  std::vector<double> per_split;

  bool operator==(const DriftResult&) const = default;
};

// Reference evaluation: recounts both sides for every k, O(N^2).
DriftResult sd_score(const core::FactSequence& labels, std::size_t m, bool keep_per_split = false);

// Prefix-sum evaluation, O(N). Bit-identical to sd_score on all inputs.
DriftResult sd_score_fast(const core::FactSequence& labels, std::size_t m,
                          bool keep_per_split = false);

// Split score from the side counts. Shared by both evaluators so their
// floating-point results agree exactly.
double split_score(std::size_t left_supported, std::size_t left_size,
                   std::size_t right_unsupported, std::size_t right_size);

bool admissible(std::size_t k, std::size_t n, std::size_t m);

}  // namespace semdrift::drift
