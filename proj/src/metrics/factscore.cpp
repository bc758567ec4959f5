#include "semdrift/metrics/factscore.hpp"

#include <algorithm>
#include <map>

#include "semdrift/core/error.hpp"

namespace semdrift::metrics {
namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

FactScoreResult factscore_star(std::span<const core::FactSequence> corpus, Aggregation agg) {
  if (corpus.empty()) throw ValidationError("empty corpus", "corpus");
  FactScoreResult out;
  out.n_paragraphs = corpus.size();
  double sum = 0.0;
  for (const auto& labels : corpus) {
    if (labels.empty()) {
      ++out.no_answer;
      continue;
    }
    const auto good = labels.supported();
    out.n_facts += labels.size();
    out.n_supported += good;
    sum += static_cast<double>(good) / static_cast<double>(labels.size());
  }
  const std::size_t answered = out.n_paragraphs - out.no_answer;
  if (answered == 0) return out;
  out.value = agg == Aggregation::macro ? sum / static_cast<double>(answered)
                                        : static_cast<double>(out.n_supported) / static_cast<double>(out.n_facts);
  return out;
}

FactScoreResult factscore_star(const std::vector<core::AnnotatedParagraph>& corpus, Aggregation agg) {
  std::vector<core::FactSequence> labels;
  labels.reserve(corpus.size());
  for (const auto& p : corpus) labels.push_back(p.labels());
  return factscore_star(labels, agg);
}

std::vector<TruncationPair> match_by_topic(const std::vector<core::AnnotatedParagraph>& truncated,
                                           const std::vector<core::AnnotatedParagraph>& baseline) {
  std::map<std::string, std::vector<const core::AnnotatedParagraph*>> by_topic;
  for (const auto& p : truncated) by_topic[p.topic].push_back(&p);
  std::map<std::string, std::size_t> used;
  std::vector<TruncationPair> out;
  for (const auto& b : baseline) {
    auto it = by_topic.find(b.topic);
    std::size_t& n = used[b.topic];
    if (it == by_topic.end() || n >= it->second.size()) {
      throw ValidationError("no truncated paragraph for baseline topic", "topic[" + b.topic + "]");
    }
    const auto kept = it->second[n++]->labels();
    const auto base = b.labels();
    if (kept.size() > base.size() || !std::equal(kept.labels().begin(), kept.labels().end(), base.labels().begin())) {
      throw ValidationError("truncated facts are not a prefix of the baseline facts", "topic[" + b.topic + "]");
    }
    out.push_back({kept, base});
  }
  for (const auto& [topic, ps] : by_topic) {
    if (used[topic] < ps.size()) {
      throw ValidationError("truncated paragraph has no baseline", "topic[" + topic + "]");
    }
  }
  return out;
}

FactCounts count_facts(std::span<const TruncationPair> pairs) {
  FactCounts c;
  for (const auto& p : pairs) {
    if (p.kept.size() > p.baseline.size()) throw ValidationError("kept facts exceed baseline", "pairs");
    for (std::size_t i = 0; i < p.baseline.size(); ++i) {
      const bool ok = p.baseline[i] == 1;
      const bool kept = i < p.kept.size();
      (ok ? c.baseline_correct : c.baseline_incorrect)++;
      if (kept) (ok ? c.remaining_correct : c.remaining_incorrect)++;
      else (ok ? c.removed_correct : c.removed_incorrect)++;
    }
  }
  return c;
}

std::optional<double> recall_vs_baseline(std::span<const TruncationPair> pairs) {
  const auto c = count_facts(pairs);
  return ratio(c.remaining_correct, c.baseline_correct);
}

FactPRBreakdown fact_pr_breakdown(std::span<const TruncationPair> pairs) {
  FactPRBreakdown out;
  out.counts = count_facts(pairs);
  const auto& c = out.counts;
  out.incorrect_precision = ratio(c.removed_incorrect, c.removed_incorrect + c.removed_correct);
  out.incorrect_recall = ratio(c.removed_incorrect, c.baseline_incorrect);
  out.correct_precision = ratio(c.remaining_correct, c.remaining_correct + c.remaining_incorrect);
  out.correct_recall = ratio(c.remaining_correct, c.baseline_correct);
  return out;
}

}  // namespace semdrift::metrics
