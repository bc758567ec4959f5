#pragma once

#include <cstddef>
#include <cstdint>

#include "semdrift/core/fact_sequence.hpp"

namespace semdrift::drift {

struct PermutationTestResult {
  // (shuffles scoring >= observed + 1) / (n_shuffles + 1), in (0, 1].
  double p_value = 1.0;
  // shuffles scoring >= observed / n_shuffles, may be 0.
  double raw_proportion = 1.0;
  std::size_t n_at_least = 0;
  std::size_t n_shuffles = 0;
  std::uint64_t seed = 0;
  double observed_score = 0.0;
};

struct PermutationOptions {
  std::size_t n_shuffles = 1000;
  std::uint64_t seed = 0;
  // Worker threads; 0 picks hardware concurrency. The result does not depend
  // on this value.
  std::size_t workers = 1;
};

// Estimates how likely a random ordering of the same labels scores at least
// as high as the observed order. Shuffles are split into fixed shards, each
// with its own seed derived from the master seed, so results are identical
// for any worker count. Throws ValidationError when n_shuffles == 0.
PermutationTestResult permutation_pvalue(const core::FactSequence& labels, std::size_t m,
                                         const PermutationOptions& options);

}  // namespace semdrift::drift
