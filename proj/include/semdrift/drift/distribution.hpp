#pragma once

#include <cstddef>
#include <map>
#include <ostream>
#include <vector>

#include "semdrift/core/fact_sequence.hpp"
#include "semdrift/core/paragraph.hpp"
#include "semdrift/drift/sd_score.hpp"
#include "semdrift/util/histogram.hpp"

namespace semdrift::drift {

inline constexpr double kScoreBinWidth = 0.05;
inline constexpr double kPositionBinWidth = 0.1;
inline constexpr double kHighDriftThreshold = 0.75;

util::Histogram make_score_histogram();
util::Histogram make_position_histogram();

inline const core::FactSequence& labels_of(const core::FactSequence& s) { return s; }
inline core::FactSequence labels_of(const core::AnnotatedParagraph& p) { return p.labels(); }

template <typename Record>
struct FilterResult {
  std::vector<Record> kept;
  std::size_t all_incorrect = 0;
  std::size_t all_correct = 0;
};

// Removes (and counts) paragraphs whose labels are all 1 or all 0. Empty
// paragraphs are kept.
template <typename Record>
FilterResult<Record> filter_degenerate(const std::vector<Record>& corpus) {
  FilterResult<Record> out;
  for (const auto& r : corpus) {
    const auto labels = labels_of(r);
    if (labels.is_constant()) {
      if (labels[0] == 1) ++out.all_correct; else ++out.all_incorrect;
    } else {
      out.kept.push_back(r);
    }
  }
  return out;
}

struct SweepRow {
  std::size_t m = 0;
  std::size_t n_sequences = 0;
  std::size_t n_with_drift_point = 0;
  double mean_score = 0.0;
  double fraction_high = 0.0;  // score > kHighDriftThreshold
  double mean_drift_position = 0.0;
  double mean_relative_position = 0.0;
  std::vector<double> scores;
  std::vector<std::size_t> drift_positions;  // absolute k, sequences with a drift point only
  util::Histogram score_hist = make_score_histogram();
  util::Histogram relative_position_hist = make_position_histogram();
};

// One row per m. Throws ValidationError on an empty corpus.
std::vector<SweepRow> truncation_sweep(const std::vector<core::FactSequence>& corpus,
                                       const std::vector<std::size_t>& m_values);

struct DriftDistributionReport {
  std::size_t m = 0;
  std::vector<DriftResult> per_paragraph;
  util::Histogram scores = make_score_histogram();
  util::Histogram relative_positions = make_position_histogram();
  // Score histogram per popularity class present in the corpus.
  std::map<core::PopularityClass, util::Histogram> by_class;
  std::size_t n_with_drift_point = 0;
  // Among paragraphs with a drift point: relative position k/N < 0.1.
  double first_decile_fraction = 0.0;
  double mean_score = 0.0;
};

DriftDistributionReport drift_distribution_report(const std::vector<core::AnnotatedParagraph>& corpus,
                                                  std::size_t m);

// CSV emitters; column orders are documented in docs/formats.md.
void write_per_paragraph_csv(std::ostream& out, const std::vector<core::AnnotatedParagraph>& corpus,
                             const DriftDistributionReport& report);
void write_histogram_csv(std::ostream& out, const util::Histogram& h);
void write_class_density_csv(std::ostream& out, const DriftDistributionReport& report);
void write_summary_csv(std::ostream& out, const DriftDistributionReport& report);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_sweep_histograms_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace semdrift::drift
