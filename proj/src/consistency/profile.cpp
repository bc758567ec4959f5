#include "semdrift/consistency/profile.hpp"

#include <array>
#include <cmath>

#include "semdrift/core/error.hpp"

namespace semdrift::consistency {
namespace {

constexpr std::array<std::pair<Metric, std::string_view>, 10> kNames{{
    {Metric::mean_entropy, "mean-entropy"},
    {Metric::entropy_variance, "entropy-variance"},
    {Metric::neg_log_likelihood, "neg-log-likelihood"},
    {Metric::mean_entropy_avg5, "mean-entropy-avg5"},
    {Metric::entropy_variance_avg5, "entropy-variance-avg5"},
    {Metric::nll_avg5, "nll-avg5"},
    {Metric::selfcheck_ngram_1, "selfcheck-ngram-1"},
    {Metric::selfcheck_ngram_5, "selfcheck-ngram-5"},
    {Metric::selfcheck_ngram_10, "selfcheck-ngram-10"},
    {Metric::selfcheck_similarity, "selfcheck-similarity"},
}};

}  // namespace

std::string_view to_string(Metric m) {
  for (const auto& [metric, name] : kNames) {
    if (metric == m) return name;
  }
  return "?";
}

std::optional<Metric> parse_metric(std::string_view s) {
  for (const auto& [metric, name] : kNames) {
    if (name == s) return metric;
  }
  return std::nullopt;
}

const std::vector<Metric>& all_metrics() {
  static const std::vector<Metric> all = [] {
    std::vector<Metric> v;
    for (const auto& [metric, name] : kNames) v.push_back(metric);
    return v;
  }();
  return all;
}

void ConsistencyProfile::set(std::size_t sentence, Metric metric, double value) {
  const std::string field = std::string(to_string(metric)) + "[" + std::to_string(sentence) + "]";
  if (std::isnan(value)) throw ValidationError("score is NaN", field);
  if (metric == Metric::selfcheck_similarity ? (value < 0.0 || value > 1.0) : value < 0.0) {
    throw ValidationError("score " + std::to_string(value) + " out of range", field);
  }
  if (!values_.try_emplace({sentence, metric}, value).second) {
    throw ValidationError("score already set", field);
  }
}

std::optional<double> ConsistencyProfile::get(std::size_t sentence, Metric metric) const {
  auto it = values_.find({sentence, metric});
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::size_t ConsistencyProfile::sentence_count() const {
  std::size_t n = 0;
  for (const auto& [key, v] : values_) n = std::max(n, key.first + 1);
  return n;
}

std::vector<double> ConsistencyProfile::series(Metric metric) const {
  std::vector<double> out;
  const std::size_t n = sentence_count();
  for (std::size_t s = 0; s < n; ++s) {
    auto v = get(s, metric);
    if (!v) {
      throw ValidationError("missing score", std::string(to_string(metric)) + "[" + std::to_string(s) + "]");
    }
    out.push_back(*v);
  }
  return out;
}

std::vector<SentenceScore> ConsistencyProfile::scores() const {
  std::vector<SentenceScore> out;
  for (const auto& [key, v] : values_) out.push_back({key.first, key.second, v});
  return out;
}

ConsistencyProfile ConsistencyProfile::from_similarity(const std::vector<double>& scores,
                                                       std::size_t sample_count, std::string backend) {
  ConsistencyProfile p(sample_count, std::move(backend));
  for (std::size_t s = 0; s < scores.size(); ++s) p.set(s, Metric::selfcheck_similarity, scores[s]);
  return p;
}

}  // namespace semdrift::consistency
