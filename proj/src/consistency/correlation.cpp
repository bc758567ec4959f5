#include "semdrift/consistency/correlation.hpp"

#include <algorithm>
#include <cmath>

#include "semdrift/core/error.hpp"

namespace semdrift::consistency {

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("length mismatch", "pearson");
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / (std::sqrt(sxx) * std::sqrt(syy)), -1.0, 1.0);
}

std::vector<std::optional<double>> sentence_accuracy(const core::AnnotatedParagraph& paragraph) {
  std::vector<std::size_t> total(paragraph.sentences.size()), good(paragraph.sentences.size());
  for (const auto& f : paragraph.facts) {
    ++total.at(f.sentence_index);
    if (f.supported) ++good[f.sentence_index];
  }
  std::vector<std::optional<double>> out;
  for (std::size_t s = 0; s < total.size(); ++s) {
    if (total[s] == 0) out.emplace_back();
    else out.emplace_back(static_cast<double>(good[s]) / static_cast<double>(total[s]));
  }
  return out;
}

std::vector<CorrelationRow> correlate_with_labels(const std::vector<core::AnnotatedParagraph>& corpus,
                                                  const std::vector<ConsistencyProfile>& profiles,
                                                  const std::vector<Metric>& metrics) {
  if (corpus.size() != profiles.size()) {
    throw ValidationError("corpus has " + std::to_string(corpus.size()) + " paragraphs but " +
                              std::to_string(profiles.size()) + " profiles",
                          "profiles");
  }
  std::vector<CorrelationRow> rows;
  for (Metric metric : metrics) {
    std::vector<double> acc, score;
    for (std::size_t p = 0; p < corpus.size(); ++p) {
      const auto a = sentence_accuracy(corpus[p]);
      for (std::size_t s = 0; s < a.size(); ++s) {
        if (!a[s]) continue;
        const auto v = profiles[p].get(s, metric);
        if (!v) {
          throw ValidationError("missing score",
                                "profiles[" + std::to_string(p) + "]." + std::string(to_string(metric)) + "[" +
                                    std::to_string(s) + "]");
        }
        acc.push_back(*a[s]);
        score.push_back(*v);
      }
    }
    rows.push_back({metric, pearson(score, acc), acc.size()});
  }
  return rows;
}

}  // namespace semdrift::consistency
