#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "semdrift/core/samples.hpp"

namespace semdrift::consistency {

// Add-one smoothed conditional n-gram model over sentence token lists:
//   p(w | h) = (c(h, w) + 1) / (c(h) + V)
// where h is the previous min(i, n - 1) tokens of the same sentence and V is
// the number of distinct training tokens plus one unknown-token slot.
class NgramModel {
 public:
  explicit NgramModel(std::size_t n);

  void train(const std::vector<std::string>& sentence_tokens);
  double neg_log_prob(const std::vector<std::string>& sentence_tokens, std::size_t i) const;
  // Mean over tokens of -log p; 0 for an empty sentence.
  double mean_nll(const std::vector<std::string>& sentence_tokens) const;

  std::size_t order() const { return n_; }
  std::size_t vocabulary_size() const { return vocab_.size() + 1; }

 private:
  std::string context_key(const std::vector<std::string>& tokens, std::size_t i) const;

  std::size_t n_;
  std::set<std::string> vocab_;
  std::map<std::string, std::size_t> context_counts_;
  std::map<std::string, std::size_t> pair_counts_;
};

// Per-sentence SelfCheck-ngram score for the original sentences of `set`,
// with the model fitted on the original plus all sampled passages. Higher
// means less consistent.
std::vector<double> selfcheck_ngram(const core::SamplePassageSet& set, std::size_t n);

}  // namespace semdrift::consistency
