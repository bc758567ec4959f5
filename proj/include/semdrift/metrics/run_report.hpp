#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semdrift/core/paragraph.hpp"
#include "semdrift/metrics/factscore.hpp"
#include "semdrift/metrics/flops.hpp"

namespace semdrift::metrics {

// Aggregates for one strategy over a corpus. facts_per_gen and sd_score
// average over answered paragraphs only.
struct RunReport {
  std::string strategy;
  std::size_t n_paragraphs = 0;
  double facts_per_gen = 0.0;
  std::size_t no_answer_count = 0;
  std::optional<double> factscore_star;        // macro
  std::optional<double> factscore_star_micro;
  std::optional<double> recall_vs_baseline;
  double sd_score = 0.0;
  std::size_t m = 0;
  double flops_internal = 0.0;
  double flops_external = 0.0;
  SessionLog session;

  void validate() const;
  nlohmann::json to_json() const;
  static RunReport from_json(const nlohmann::json& j);
};

struct ReportInputs {
  std::string strategy;
  std::vector<core::FactSequence> labels;
  // Same order as `labels`; enables recall_vs_baseline.
  std::optional<std::vector<core::FactSequence>> baseline;
  std::size_t m = 0;
  SessionLog session;
  CostModel cost = CostModel::standard();
};

RunReport make_run_report(const ReportInputs& in);

nlohmann::json to_json(const FactPRBreakdown& b);

// "NA" for absent values, fmt_real otherwise.
std::string fmt_optional(const std::optional<double>& v);

// Rows sorted by strategy name; equal names keep their input order.
std::vector<RunReport> sorted_by_strategy(std::vector<RunReport> reports);

// Columns: strategy, n_paragraphs, facts_per_gen, no_answer, factscore_star,
// factscore_star_micro, recall_vs_baseline, sd_score, m, flops_internal,
// flops_external.
void write_tradeoff_csv(std::ostream& out, const std::vector<RunReport>& reports);
// facts/gen (y) against FActScore* (x); strategies without a FActScore* are
// left out of the plot.
std::string tradeoff_svg(const std::vector<RunReport>& reports);

// Columns: strategy, incorrect_precision, incorrect_recall, correct_precision,
// correct_recall, baseline_correct, baseline_incorrect, removed_correct,
// removed_incorrect.
void write_pr_csv(std::ostream& out, const std::string& strategy, const FactPRBreakdown& b);

}  // namespace semdrift::metrics
