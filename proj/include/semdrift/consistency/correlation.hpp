#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "semdrift/consistency/profile.hpp"
#include "semdrift/core/paragraph.hpp"

namespace semdrift::consistency {

// Sample Pearson correlation; nullopt with fewer than 2 points or zero
// variance in either variable.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

struct CorrelationRow {
  Metric metric;
  std::optional<double> r;
  std::size_t n_sentences = 0;
};

// Per-sentence fact accuracy (supported / facts in the sentence); sentences
// without facts are nullopt.
std::vector<std::optional<double>> sentence_accuracy(const core::AnnotatedParagraph& paragraph);

// Pools all sentences with at least one fact across the corpus and
// correlates their accuracy with each metric. profiles[i] belongs to
// corpus[i]; a sentence with facts but no score for the metric is a
// ValidationError.
std::vector<CorrelationRow> correlate_with_labels(const std::vector<core::AnnotatedParagraph>& corpus,
                                                  const std::vector<ConsistencyProfile>& profiles,
                                                  const std::vector<Metric>& metrics);

}  // namespace semdrift::consistency
