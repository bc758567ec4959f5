#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "semdrift/core/fact_sequence.hpp"

namespace semdrift::testing {

// Seeded value generators for the hand-rolled property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  // Inclusive range.
  std::size_t size(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal(double mean, double sd) { return std::normal_distribution<double>(mean, sd)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  std::uint64_t u64() { return rng_(); }

  core::FactSequence labels(std::size_t n, double p = 0.5) {
    std::vector<std::uint8_t> v(n);
    for (auto& x : v) x = coin(p) ? 1 : 0;
    return core::FactSequence(std::move(v));
  }

  std::string word(std::size_t min_len = 1, std::size_t max_len = 8) {
    std::string w(size(min_len, max_len), 'a');
    for (auto& c : w) c = static_cast<char>('a' + size(0, 25));
    return w;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace semdrift::testing
