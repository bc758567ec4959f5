#include "semdrift/drift/distribution.hpp"

#include <string>

#include "semdrift/core/error.hpp"
#include "semdrift/util/csv.hpp"

namespace semdrift::drift {

using util::fmt_real;

util::Histogram make_score_histogram() { return util::Histogram(0.0, 1.0, 20); }
util::Histogram make_position_histogram() { return util::Histogram(0.0, 1.0, 10); }

namespace {

double relative_position(const DriftResult& r) {
  return static_cast<double>(*r.drift_point) / static_cast<double>(r.n_facts);
}

}  // namespace

std::vector<SweepRow> truncation_sweep(const std::vector<core::FactSequence>& corpus,
                                       const std::vector<std::size_t>& m_values) {
  if (corpus.empty()) throw ValidationError("truncation sweep needs a non-empty corpus", "corpus");
  std::vector<SweepRow> rows;
  for (std::size_t m : m_values) {
    SweepRow row;
    row.m = m;
    row.n_sequences = corpus.size();
    double sum = 0, pos_sum = 0, rel_sum = 0;
    std::size_t high = 0;
    for (const auto& seq : corpus) {
      const auto r = sd_score_fast(seq, m);
      row.scores.push_back(r.score);
      row.score_hist.add(r.score);
      sum += r.score;
      if (r.score > kHighDriftThreshold) ++high;
      if (r.drift_point) {
        row.drift_positions.push_back(*r.drift_point);
        row.relative_position_hist.add(relative_position(r));
        pos_sum += static_cast<double>(*r.drift_point);
        rel_sum += relative_position(r);
      }
    }
    row.n_with_drift_point = row.drift_positions.size();
    row.mean_score = sum / static_cast<double>(corpus.size());
    row.fraction_high = static_cast<double>(high) / static_cast<double>(corpus.size());
    if (row.n_with_drift_point > 0) {
      row.mean_drift_position = pos_sum / static_cast<double>(row.n_with_drift_point);
      row.mean_relative_position = rel_sum / static_cast<double>(row.n_with_drift_point);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

DriftDistributionReport drift_distribution_report(const std::vector<core::AnnotatedParagraph>& corpus,
                                                  std::size_t m) {
  DriftDistributionReport report;
  report.m = m;
  std::size_t first_decile = 0;
  double sum = 0;
  for (const auto& p : corpus) {
    auto r = sd_score_fast(p.labels(), m);
    report.scores.add(r.score);
    sum += r.score;
    report.by_class.try_emplace(p.popularity, make_score_histogram()).first->second.add(r.score);
    if (r.drift_point) {
      ++report.n_with_drift_point;
      const double rel = relative_position(r);
      report.relative_positions.add(rel);
      if (rel < 0.1) ++first_decile;
    }
    report.per_paragraph.push_back(std::move(r));
  }
  if (!corpus.empty()) report.mean_score = sum / static_cast<double>(corpus.size());
  if (report.n_with_drift_point > 0) {
    report.first_decile_fraction =
        static_cast<double>(first_decile) / static_cast<double>(report.n_with_drift_point);
  }
  return report;
}

void write_per_paragraph_csv(std::ostream& out, const std::vector<core::AnnotatedParagraph>& corpus,
                             const DriftDistributionReport& report) {
  util::CsvWriter csv(out, {"index", "topic", "popularity_class", "n_facts", "m", "score",
                            "drift_point", "relative_position", "left_precision",
                            "right_anti_precision"});
  for (std::size_t i = 0; i < report.per_paragraph.size(); ++i) {
    const auto& r = report.per_paragraph[i];
    const bool has_k = r.drift_point.has_value();
    csv.row({std::to_string(i), corpus.at(i).topic, std::string(core::to_string(corpus[i].popularity)),
             std::to_string(r.n_facts), std::to_string(r.m), fmt_real(r.score),
             has_k ? std::to_string(*r.drift_point) : "NA",
             has_k ? fmt_real(relative_position(r)) : "NA", fmt_real(r.left_precision),
             fmt_real(r.right_anti_precision)});
  }
}

void write_histogram_csv(std::ostream& out, const util::Histogram& h) {
  util::CsvWriter csv(out, {"bin_lo", "bin_hi", "count", "density"});
  for (std::size_t b = 0; b < h.bins(); ++b) {
    csv.row({fmt_real(h.lower_edge(b), 2), fmt_real(h.upper_edge(b), 2), std::to_string(h.count(b)),
             fmt_real(h.density(b))});
  }
}

void write_class_density_csv(std::ostream& out, const DriftDistributionReport& report) {
  util::CsvWriter csv(out, {"popularity_class", "n", "bin_lo", "bin_hi", "count", "density"});
  for (const auto& [cls, h] : report.by_class) {
    for (std::size_t b = 0; b < h.bins(); ++b) {
      csv.row({std::string(core::to_string(cls)), std::to_string(h.total()), fmt_real(h.lower_edge(b), 2),
               fmt_real(h.upper_edge(b), 2), std::to_string(h.count(b)), fmt_real(h.density(b))});
    }
  }
}

void write_summary_csv(std::ostream& out, const DriftDistributionReport& report) {
  util::CsvWriter csv(out, {"m", "n_paragraphs", "n_with_drift_point", "mean_score",
                            "first_decile_fraction"});
  csv.row({std::to_string(report.m), std::to_string(report.per_paragraph.size()),
           std::to_string(report.n_with_drift_point), fmt_real(report.mean_score),
           fmt_real(report.first_decile_fraction)});
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  util::CsvWriter csv(out, {"m", "n_sequences", "n_with_drift_point", "mean_score",
                            "fraction_score_gt_0.75", "mean_drift_position",
                            "mean_relative_position"});
  for (const auto& r : rows) {
    csv.row({std::to_string(r.m), std::to_string(r.n_sequences), std::to_string(r.n_with_drift_point),
             fmt_real(r.mean_score), fmt_real(r.fraction_high), fmt_real(r.mean_drift_position),
             fmt_real(r.mean_relative_position)});
  }
}

void write_sweep_histograms_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  util::CsvWriter csv(out, {"m", "kind", "bin_lo", "bin_hi", "count"});
  for (const auto& r : rows) {
    for (const auto* kind : {"score", "relative_position"}) {
      const auto& h = std::string(kind) == "score" ? r.score_hist : r.relative_position_hist;
      for (std::size_t b = 0; b < h.bins(); ++b) {
        csv.row({std::to_string(r.m), kind, fmt_real(h.lower_edge(b), 2), fmt_real(h.upper_edge(b), 2),
                 std::to_string(h.count(b))});
      }
    }
  }
}

}  // namespace semdrift::drift
