#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semdrift/core/fact_sequence.hpp"
#include "semdrift/core/paragraph.hpp"

namespace semdrift::metrics {

enum class Aggregation { macro, micro };

// Paragraphs without facts are no-answers and take no part in the
// precision. `value` is absent when every paragraph is a no-answer.
struct FactScoreResult {
  std::optional<double> value;
  std::size_t n_paragraphs = 0;
  std::size_t no_answer = 0;
  std::size_t n_facts = 0;
  std::size_t n_supported = 0;
};

// Macro: mean of per-paragraph precision. Micro: supported / total facts.
// Throws ValidationError on an empty corpus.
FactScoreResult factscore_star(std::span<const core::FactSequence> corpus, Aggregation agg = Aggregation::macro);
FactScoreResult factscore_star(const std::vector<core::AnnotatedParagraph>& corpus,
                               Aggregation agg = Aggregation::macro);

// A truncated paragraph and the baseline it was cut from. `kept` must be a
// prefix of `baseline`.
struct TruncationPair {
  core::FactSequence kept;
  core::FactSequence baseline;
};

// Pairs paragraphs by topic (the i-th occurrence of a topic with the i-th
// occurrence in the other corpus). Throws ValidationError naming the topic
// when it is missing on either side or when the kept labels are not a
// prefix of the baseline labels.
std::vector<TruncationPair> match_by_topic(const std::vector<core::AnnotatedParagraph>& truncated,
                                           const std::vector<core::AnnotatedParagraph>& baseline);

struct FactCounts {
  std::size_t baseline_correct = 0;
  std::size_t baseline_incorrect = 0;
  std::size_t remaining_correct = 0;
  std::size_t remaining_incorrect = 0;
  std::size_t removed_correct = 0;
  std::size_t removed_incorrect = 0;
};

FactCounts count_facts(std::span<const TruncationPair> pairs);

// Correct facts kept / correct facts in the baseline; absent when the
// baseline has no correct facts.
std::optional<double> recall_vs_baseline(std::span<const TruncationPair> pairs);

// Absent fields had a zero denominator.
struct FactPRBreakdown {
  std::optional<double> incorrect_precision;  // removed incorrect / removed
  std::optional<double> incorrect_recall;     // removed incorrect / baseline incorrect
  std::optional<double> correct_precision;    // remaining correct / remaining
  std::optional<double> correct_recall;       // remaining correct / baseline correct
  FactCounts counts;
};

FactPRBreakdown fact_pr_breakdown(std::span<const TruncationPair> pairs);

}  // namespace semdrift::metrics
