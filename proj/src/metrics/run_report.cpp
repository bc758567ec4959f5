#include "semdrift/metrics/run_report.hpp"

#include <algorithm>
#include <cstdio>

#include "semdrift/core/error.hpp"
#include "semdrift/drift/sd_score.hpp"
#include "semdrift/util/csv.hpp"
#include "semdrift/util/svg.hpp"

namespace semdrift::metrics {
namespace {

nlohmann::json opt_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

std::optional<double> opt_from(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

std::string fmt_sci(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

bool in_unit(const std::optional<double>& v) { return !v || (*v >= 0.0 && *v <= 1.0); }

}  // namespace

void RunReport::validate() const {
  if (no_answer_count > n_paragraphs) throw ValidationError("exceeds n_paragraphs", "no_answer_count");
  if (!in_unit(factscore_star)) throw ValidationError("outside [0, 1]", "factscore_star");
  if (!in_unit(factscore_star_micro)) throw ValidationError("outside [0, 1]", "factscore_star_micro");
  if (!in_unit(recall_vs_baseline)) throw ValidationError("outside [0, 1]", "recall_vs_baseline");
  if (sd_score < 0.0 || sd_score > 1.0) throw ValidationError("outside [0, 1]", "sd_score");
  if (facts_per_gen < 0.0) throw ValidationError("negative", "facts_per_gen");
}

nlohmann::json RunReport::to_json() const {
  return {{"strategy", strategy},
          {"n_paragraphs", n_paragraphs},
          {"facts_per_gen", facts_per_gen},
          {"no_answer_count", no_answer_count},
          {"factscore_star", opt_json(factscore_star)},
          {"factscore_star_micro", opt_json(factscore_star_micro)},
          {"recall_vs_baseline", opt_json(recall_vs_baseline)},
          {"sd_score", sd_score},
          {"m", m},
          {"flops_internal", flops_internal},
          {"flops_external", flops_external},
          {"session", session.to_json()}};
}

RunReport RunReport::from_json(const nlohmann::json& j) {
  RunReport r;
  try {
    r.strategy = j.at("strategy").get<std::string>();
    r.n_paragraphs = j.at("n_paragraphs").get<std::size_t>();
    r.facts_per_gen = j.at("facts_per_gen").get<double>();
    r.no_answer_count = j.at("no_answer_count").get<std::size_t>();
    r.factscore_star = opt_from(j, "factscore_star");
    r.factscore_star_micro = opt_from(j, "factscore_star_micro");
    r.recall_vs_baseline = opt_from(j, "recall_vs_baseline");
    r.sd_score = j.at("sd_score").get<double>();
    r.m = j.value("m", std::size_t{0});
    r.flops_internal = j.at("flops_internal").get<double>();
    r.flops_external = j.at("flops_external").get<double>();
    if (j.contains("session")) r.session = SessionLog::from_json(j.at("session"));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(e.what(), "run_report");
  }
  r.validate();
  return r;
}

RunReport make_run_report(const ReportInputs& in) {
  RunReport r;
  r.strategy = in.strategy;
  r.m = in.m;
  r.session = in.session;
  const auto macro = factscore_star(in.labels, Aggregation::macro);
  r.n_paragraphs = macro.n_paragraphs;
  r.no_answer_count = macro.no_answer;
  r.factscore_star = macro.value;
  r.factscore_star_micro = factscore_star(in.labels, Aggregation::micro).value;
  const std::size_t answered = r.n_paragraphs - r.no_answer_count;
  if (answered > 0) {
    double sd = 0.0;
    for (const auto& l : in.labels) {
      if (!l.empty()) sd += drift::sd_score_fast(l, in.m).score;
    }
    r.facts_per_gen = static_cast<double>(macro.n_facts) / static_cast<double>(answered);
    r.sd_score = sd / static_cast<double>(answered);
  }
  if (in.baseline) {
    if (in.baseline->size() != in.labels.size()) throw ValidationError("size differs from labels", "baseline");
    std::vector<TruncationPair> pairs;
    for (std::size_t i = 0; i < in.labels.size(); ++i) pairs.push_back({in.labels[i], (*in.baseline)[i]});
    r.recall_vs_baseline = recall_vs_baseline(pairs);
  }
  const auto f = flops_estimate(in.session, in.cost);
  r.flops_internal = f.internal;
  r.flops_external = f.external;
  return r;
}

nlohmann::json to_json(const FactPRBreakdown& b) {
  const auto& c = b.counts;
  return {{"incorrect_precision", opt_json(b.incorrect_precision)},
          {"incorrect_recall", opt_json(b.incorrect_recall)},
          {"correct_precision", opt_json(b.correct_precision)},
          {"correct_recall", opt_json(b.correct_recall)},
          {"baseline_correct", c.baseline_correct},
          {"baseline_incorrect", c.baseline_incorrect},
          {"remaining_correct", c.remaining_correct},
          {"remaining_incorrect", c.remaining_incorrect},
          {"removed_correct", c.removed_correct},
          {"removed_incorrect", c.removed_incorrect}};
}

std::string fmt_optional(const std::optional<double>& v) { return v ? util::fmt_real(*v) : "NA"; }

std::vector<RunReport> sorted_by_strategy(std::vector<RunReport> reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const RunReport& a, const RunReport& b) { return a.strategy < b.strategy; });
  return reports;
}

void write_tradeoff_csv(std::ostream& out, const std::vector<RunReport>& reports) {
  util::CsvWriter w(out, {"strategy", "n_paragraphs", "facts_per_gen", "no_answer", "factscore_star",
                          "factscore_star_micro", "recall_vs_baseline", "sd_score", "m", "flops_internal",
                          "flops_external"});
  for (const auto& r : sorted_by_strategy(reports)) {
    w.row({r.strategy, std::to_string(r.n_paragraphs), util::fmt_real(r.facts_per_gen),
           std::to_string(r.no_answer_count), fmt_optional(r.factscore_star), fmt_optional(r.factscore_star_micro),
           fmt_optional(r.recall_vs_baseline), util::fmt_real(r.sd_score), std::to_string(r.m),
           fmt_sci(r.flops_internal), fmt_sci(r.flops_external)});
  }
}

std::string tradeoff_svg(const std::vector<RunReport>& reports) {
  std::vector<util::ScatterPoint> pts;
  for (const auto& r : sorted_by_strategy(reports)) {
    if (r.factscore_star) pts.push_back({*r.factscore_star, r.facts_per_gen, r.strategy});
  }
  return util::svg_scatter(pts, "Informativeness vs factuality", "FActScore*", "facts/gen");
}

void write_pr_csv(std::ostream& out, const std::string& strategy, const FactPRBreakdown& b) {
  util::CsvWriter w(out, {"strategy", "incorrect_precision", "incorrect_recall", "correct_precision",
                          "correct_recall", "baseline_correct", "baseline_incorrect", "removed_correct",
                          "removed_incorrect"});
  const auto& c = b.counts;
  w.row({strategy, fmt_optional(b.incorrect_precision), fmt_optional(b.incorrect_recall),
         fmt_optional(b.correct_precision), fmt_optional(b.correct_recall), std::to_string(c.baseline_correct),
         std::to_string(c.baseline_incorrect), std::to_string(c.removed_correct),
         std::to_string(c.removed_incorrect)});
}

}  // namespace semdrift::metrics
