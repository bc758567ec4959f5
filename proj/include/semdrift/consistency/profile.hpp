#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace semdrift::consistency {

enum class Metric {
  mean_entropy,
  entropy_variance,
  neg_log_likelihood,
  mean_entropy_avg5,
  entropy_variance_avg5,
  nll_avg5,
  selfcheck_ngram_1,
  selfcheck_ngram_5,
  selfcheck_ngram_10,
  selfcheck_similarity,
};

std::string_view to_string(Metric m);
std::optional<Metric> parse_metric(std::string_view s);
const std::vector<Metric>& all_metrics();

struct SentenceScore {
  std::size_t sentence_index = 0;
  Metric metric = Metric::selfcheck_similarity;
  double value = 0.0;
};

// Per-sentence uncertainty/consistency scores for one passage, at most one
// value per (sentence, metric).
class ConsistencyProfile {
 public:
  ConsistencyProfile() = default;
  ConsistencyProfile(std::size_t sample_count, std::string similarity_backend)
      : sample_count_(sample_count), similarity_backend_(std::move(similarity_backend)) {}

  // Throws ValidationError if the pair is already set or the value breaks
  // the metric's range (similarity in [0, 1], everything else >= 0).
  void set(std::size_t sentence, Metric metric, double value);
  std::optional<double> get(std::size_t sentence, Metric metric) const;
  // Values for sentences 0..n-1 in order; throws ValidationError when a
  // sentence in that range is missing the metric.
  std::vector<double> series(Metric metric) const;
  std::vector<SentenceScore> scores() const;

  std::size_t sentence_count() const;
  std::size_t sample_count() const { return sample_count_; }
  const std::string& similarity_backend() const { return similarity_backend_; }
  std::size_t k_max = 0;

  static ConsistencyProfile from_similarity(const std::vector<double>& scores, std::size_t sample_count,
                                            std::string backend);

 private:
  std::size_t sample_count_ = 0;
  std::string similarity_backend_;
  std::map<std::pair<std::size_t, Metric>, double> values_;
};

}  // namespace semdrift::consistency
