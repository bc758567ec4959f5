#include "cli/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "semdrift/clients/cache.hpp"
#include "semdrift/clients/http_generator.hpp"
#include "semdrift/clients/qa.hpp"
#include "semdrift/clients/similarity.hpp"
#include "semdrift/clients/stub_generator.hpp"
#include "semdrift/consistency/selfcheck.hpp"
#include "semdrift/core/corpus_io.hpp"
#include "semdrift/core/error.hpp"
#include "semdrift/core/segmenter.hpp"
#include "semdrift/core/text.hpp"
#include "semdrift/decoding/rerank.hpp"
#include "semdrift/decoding/stop_policy.hpp"
#include "semdrift/decoding/toolcall_generate.hpp"
#include "semdrift/drift/distribution.hpp"
#include "semdrift/drift/permutation.hpp"
#include "semdrift/metrics/run_report.hpp"
#include "semdrift/util/csv.hpp"
#include "semdrift/util/parallel.hpp"
#include "semdrift/util/svg.hpp"

namespace semdrift::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using util::fmt_real;

fs::path prepare_run_directory(const RunConfig& cfg, std::ostream& out) {
  const auto dir = cfg.run_directory();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  out << "output: " << dir.generic_string() << "\n";
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path.string());
  f << content;
  if (!f) throw IoError("write failed: " + path.string());
}

template <typename Fn>
void write_with(const fs::path& path, Fn&& fn) {
  std::ostringstream s;
  fn(s);
  write_file(path, s.str());
}

std::string required_path(const RunConfig& cfg, std::string_view key) {
  if (!cfg.has(key)) throw ConfigError(std::string(key) + " is required for " + std::string(to_string(cfg.command)));
  return cfg.str(key);
}

template <typename Record>
bool report_errors(const core::IngestResult<Record>& r, const std::string& source, std::ostream& err) {
  for (const auto& e : r.errors) {
    err << source << ":" << e.line << ": " << (e.field.empty() ? "" : e.field + ": ") << e.message << "\n";
  }
  return !r.errors.empty();
}

std::string env_or(const RunConfig& cfg, std::string_view key, const char* var) {
  if (cfg.has(key)) return cfg.str(key);
  const char* v = std::getenv(var);
  if (!v || !*v) throw ConfigError(std::string(key) + " is not set and $" + var + " is empty");
  return v;
}

clients::Endpoint endpoint(const RunConfig& cfg, std::string_view key, const char* var) {
  clients::Endpoint e;
  e.base_url = env_or(cfg, key, var);
  if (const char* k = std::getenv("SEMDRIFT_API_KEY")) e.api_key = k;
  return e;
}

std::unique_ptr<clients::SimilarityBackend> make_scorer(const RunConfig& cfg) {
  const auto kind = cfg.str("similarity");
  if (kind == "token-overlap") return std::make_unique<clients::TokenOverlapBackend>();
  if (kind == "http") {
    if (cfg.flag("offline")) throw ConfigError("similarity=http needs the network but offline is set");
    return std::make_unique<clients::HttpSimilarityClient>(endpoint(cfg, "similarity_url", "SEMDRIFT_SIMILARITY_URL"));
  }
  throw ValidationError("expected token-overlap or http", "similarity");
}

std::shared_ptr<clients::GeneratorClient> make_generator(const RunConfig& cfg) {
  const auto kind = cfg.str("generator");
  const bool offline = cfg.flag("offline");
  std::shared_ptr<clients::GeneratorClient> upstream;
  if (kind == "stub") {
    upstream = std::make_shared<clients::StubGenerator>();
  } else if (kind == "http") {
    if (!offline) {
      upstream = std::make_shared<clients::HttpGeneratorClient>(endpoint(cfg, "generator_url", "SEMDRIFT_GENERATOR_URL"));
    } else if (!cfg.has("cache")) {
      throw ConfigError("generator=http with offline set needs a cache");
    }
  } else {
    throw ValidationError("expected stub or http", "generator");
  }
  if (!cfg.has("cache")) return upstream;
  auto cache = std::make_shared<clients::SampleCache>(cfg.str("cache"));
  return std::make_shared<clients::CachingGenerator>(cache, upstream, offline && kind == "http");
}

metrics::CostModel cost_model(const RunConfig& cfg) {
  return cfg.has("cost_model") ? metrics::CostModel::from_file(cfg.str("cost_model")) : metrics::CostModel::standard();
}

std::optional<decoding::StopPolicy> policy_from(const RunConfig& cfg) {
  if (!cfg.has("policy")) return std::nullopt;
  const auto kind = decoding::parse_stop_kind(cfg.str("policy"));
  if (!kind) throw ValidationError("unknown policy '" + cfg.str("policy") + "'", "policy");
  const std::string_view own = *kind == decoding::StopKind::eos_top_k              ? "k"
                              : *kind == decoding::StopKind::sc_relative_increase ? "T"
                              : *kind == decoding::StopKind::sc_absolute          ? "A"
                                                                                  : "";
  for (const std::string_view key : {"k", "T", "A"}) {
    if (key != own && cfg.has(key))
      throw ValidationError("not used by policy " + cfg.str("policy"), std::string(key));
  }
  decoding::StopPolicy p;
  switch (*kind) {
    case decoding::StopKind::oracle_drift_point: p = decoding::StopPolicy::oracle(cfg.count("m")); break;
    case decoding::StopKind::eos_top_k: p = decoding::StopPolicy::eos(cfg.count("k")); break;
    case decoding::StopKind::sc_relative_increase: p = decoding::StopPolicy::sc_relative(cfg.real("T")); break;
    case decoding::StopKind::sc_absolute: {
      const auto mode = cfg.str("first_sentence");
      if (mode != "keep" && mode != "delete") throw ValidationError("expected keep or delete", "first_sentence");
      p = decoding::StopPolicy::sc_absolute(cfg.real("A"), mode == "keep" ? decoding::FirstSentenceMode::keep
                                                                           : decoding::FirstSentenceMode::drop);
      break;
    }
  }
  p.validate();
  return p;
}

std::vector<std::string> read_topics(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::vector<std::string> topics;
  std::string line;
  while (std::getline(in, line)) {
    auto t = core::trim(line);
    if (!t.empty()) topics.emplace_back(t);
  }
  return topics;
}

std::string json_lines(const std::vector<json>& rows) {
  std::string s;
  for (const auto& r : rows) s += r.dump() + "\n";
  return s;
}

std::size_t text_tokens(const core::AnnotatedParagraph& p) { return core::word_and_punct_tokens(p.text()).size(); }

}  // namespace

int cmd_score(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto path = required_path(cfg, "corpus");
  const auto ingest = core::ingest_annotated(path);
  const bool bad = report_errors(ingest, path, err);
  const auto dir = prepare_run_directory(cfg, out);
  auto corpus = ingest.records;
  if (cfg.flag("filter_degenerate")) {
    const auto f = drift::filter_degenerate(corpus);
    write_with(dir / "filter.csv", [&](std::ostream& s) {
      util::CsvWriter w(s, {"n_input", "all_incorrect", "all_correct", "n_kept"});
      w.row({std::to_string(corpus.size()), std::to_string(f.all_incorrect), std::to_string(f.all_correct),
             std::to_string(f.kept.size())});
    });
    out << "filtered: " << f.all_incorrect << " all-incorrect, " << f.all_correct << " all-correct\n";
    corpus = f.kept;
  }
  const auto m = cfg.count("m");
  const auto report = drift::drift_distribution_report(corpus, m);
  write_with(dir / "per_paragraph.csv", [&](std::ostream& s) { drift::write_per_paragraph_csv(s, corpus, report); });
  write_with(dir / "score_histogram.csv", [&](std::ostream& s) { drift::write_histogram_csv(s, report.scores); });
  write_with(dir / "position_histogram.csv",
             [&](std::ostream& s) { drift::write_histogram_csv(s, report.relative_positions); });
  write_with(dir / "class_density.csv", [&](std::ostream& s) { drift::write_class_density_csv(s, report); });
  write_with(dir / "summary.csv", [&](std::ostream& s) { drift::write_summary_csv(s, report); });
  std::vector<util::Bar> bars;
  for (std::size_t b = 0; b < report.scores.bins(); ++b) {
    bars.push_back({report.scores.lower_edge(b), report.scores.upper_edge(b), report.scores.density(b)});
  }
  write_file(dir / "score_histogram.svg", util::svg_bar_chart(bars, "SD score distribution", "SD score", "density"));

  const auto sweep = cfg.counts("sweep");
  if (!sweep.empty()) {
    std::vector<core::FactSequence> labels;
    for (const auto& p : corpus) labels.push_back(p.labels());
    const auto rows = drift::truncation_sweep(labels, sweep);
    write_with(dir / "sweep.csv", [&](std::ostream& s) { drift::write_sweep_csv(s, rows); });
    write_with(dir / "sweep_histograms.csv", [&](std::ostream& s) { drift::write_sweep_histograms_csv(s, rows); });
    for (const auto& r : rows) {
      out << "sweep m=" << r.m << ": mean_score " << fmt_real(r.mean_score) << ", fraction>0.75 "
          << fmt_real(r.fraction_high) << "\n";
    }
  }
  out << "paragraphs: " << corpus.size() << "\n"
      << "mean_score: " << fmt_real(report.mean_score) << "\n"
      << "with_drift_point: " << report.n_with_drift_point << "\n"
      << "first_decile_fraction: " << fmt_real(report.first_decile_fraction) << "\n";
  return bad ? 1 : 0;
}

int cmd_permtest(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto path = required_path(cfg, "corpus");
  const auto ingest = core::ingest_annotated(path);
  const bool bad = report_errors(ingest, path, err);
  auto corpus = ingest.records;
  if (cfg.flag("filter_degenerate")) corpus = drift::filter_degenerate(corpus).kept;
  const auto m = cfg.count("m");
  const auto shuffles = cfg.count("n_shuffles");
  const auto seed = static_cast<std::uint64_t>(cfg.integer("seed"));
  const double alpha = cfg.real("alpha");
  if (shuffles == 0) throw ValidationError("must be positive", "n_shuffles");
  const auto dir = prepare_run_directory(cfg, out);

  std::vector<drift::PermutationTestResult> results(corpus.size());
  util::parallel_for(corpus.size(), cfg.count("workers"), [&](std::size_t i) {
    results[i] = drift::permutation_pvalue(corpus[i].labels(), m, {shuffles, seed + i, 1});
  });
  std::size_t below = 0;
  double sum_p = 0.0, sum_raw = 0.0;
  write_with(dir / "pvalues.csv", [&](std::ostream& s) {
    util::CsvWriter w(s, {"index", "topic", "n_facts", "observed_score", "n_at_least", "n_shuffles",
                          "raw_proportion", "p_value", "seed"});
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto& r = results[i];
      if (r.p_value < alpha) ++below;
      sum_p += r.p_value;
      sum_raw += r.raw_proportion;
      w.row({std::to_string(i), corpus[i].topic, std::to_string(corpus[i].facts.size()), fmt_real(r.observed_score),
             std::to_string(r.n_at_least), std::to_string(r.n_shuffles), fmt_real(r.raw_proportion),
             fmt_real(r.p_value), std::to_string(r.seed)});
    }
  });
  const double n = static_cast<double>(corpus.size());
  const double frac = corpus.empty() ? 0.0 : static_cast<double>(below) / n;
  write_with(dir / "summary.csv", [&](std::ostream& s) {
    util::CsvWriter w(s, {"n_paragraphs", "m", "n_shuffles", "alpha", "n_below_alpha", "fraction_below_alpha",
                          "mean_p_value", "mean_raw_proportion"});
    w.row({std::to_string(corpus.size()), std::to_string(m), std::to_string(shuffles), fmt_real(alpha),
           std::to_string(below), fmt_real(frac), corpus.empty() ? "NA" : fmt_real(sum_p / n),
           corpus.empty() ? "NA" : fmt_real(sum_raw / n)});
  });
  out << "paragraphs: " << corpus.size() << "\n"
      << "below_alpha: " << below << " (" << fmt_real(frac) << ")\n";
  return bad ? 1 : 0;
}

int cmd_stop_sim(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto policy = policy_from(cfg);
  if (!policy) throw ConfigError("policy is required for stop-sim");
  const auto path = required_path(cfg, "corpus");
  const auto ingest = core::ingest_annotated(path);
  bool bad = report_errors(ingest, path, err);
  const auto& corpus = ingest.records;
  const auto n_samples = cfg.count("n_samples");

  std::vector<core::GenerationTrace> traces;
  if (policy->kind == decoding::StopKind::eos_top_k) {
    const auto tpath = required_path(cfg, "traces");
    auto t = core::ingest_traces(tpath);
    bad = report_errors(t, tpath, err) || bad;
    if (t.records.size() != corpus.size()) {
      throw ValidationError(std::to_string(t.records.size()) + " traces for " + std::to_string(corpus.size()) +
                                " paragraphs",
                            "traces");
    }
    traces = std::move(t.records);
  }

  const bool score_based = policy->kind == decoding::StopKind::sc_relative_increase ||
                           policy->kind == decoding::StopKind::sc_absolute;
  std::map<std::string, core::SamplePassageSet> sample_sets;
  std::unique_ptr<clients::SimilarityBackend> scorer;
  if (score_based && cfg.has("samples")) {
    std::ifstream in(cfg.str("samples"));
    if (!in) throw IoError("cannot read " + cfg.str("samples"));
    auto sets = core::read_sample_sets(in, core::RuleBasedSegmenter::standard());
    bad = report_errors(sets, cfg.str("samples"), err) || bad;
    for (auto& s : sets.records) sample_sets.emplace(s.topic, std::move(s));
    scorer = make_scorer(cfg);
  }

  const auto dir = prepare_run_directory(cfg, out);
  std::vector<decoding::StopDecision> decisions(corpus.size());
  std::vector<metrics::SessionLog> sessions(corpus.size());
  util::parallel_for(corpus.size(), cfg.count("workers"), [&](std::size_t i) {
    const auto& p = corpus[i];
    auto& session = sessions[i];
    switch (policy->kind) {
      case decoding::StopKind::oracle_drift_point:
        decisions[i] = decoding::oracle_stop(p, *policy->m);
        break;
      case decoding::StopKind::eos_top_k: {
        const auto& t = traces[i];
        if (t.sentence_count() != p.sentences.size()) {
          throw ValidationError("trace has " + std::to_string(t.sentence_count()) + " sentences, paragraph has " +
                                    std::to_string(p.sentences.size()),
                                "traces[" + std::to_string(i) + "]");
        }
        decisions[i] = decoding::eos_stop(t, *policy->k);
        break;
      }
      default: {
        std::vector<double> scores;
        std::size_t n = n_samples;
        if (p.extra.contains("selfcheck_similarity")) {
          scores = p.extra.at("selfcheck_similarity").get<std::vector<double>>();
        } else if (auto it = sample_sets.find(p.topic); it != sample_sets.end()) {
          auto set = it->second;
          set.original_sentences = p.sentences;
          scores = consistency::selfcheck_similarity_all(set, *scorer);
          n = set.samples.size();
          for (const auto& s : set.samples) session.generator_tokens += core::word_and_punct_tokens(s.text).size();
          session.generator_passes += set.samples.size();
        } else {
          throw ValidationError("no selfcheck_similarity scores and no sample set for topic '" + p.topic + "'",
                                "corpus[" + std::to_string(i) + "]");
        }
        if (scores.size() != p.sentences.size()) {
          throw ValidationError("expected one score per sentence", "corpus[" + std::to_string(i) + "]");
        }
        decisions[i] = decoding::score_stop(scores, *policy);
        const auto evaluated = decisions[i].stop_sentence_index
                                   ? std::min(*decisions[i].stop_sentence_index + 1, scores.size())
                                   : scores.size();
        session.scorer_passes += evaluated * n;
      }
    }
  });

  std::vector<core::AnnotatedParagraph> truncated;
  std::vector<core::FactSequence> kept_labels, base_labels;
  metrics::SessionLog session, baseline_session;
  std::vector<metrics::TruncationPair> pairs;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    truncated.push_back(decoding::apply(corpus[i], decisions[i]));
    kept_labels.push_back(truncated.back().labels());
    base_labels.push_back(corpus[i].labels());
    pairs.push_back({kept_labels.back(), base_labels.back()});
    ++baseline_session.generator_passes;
    baseline_session.generator_tokens += text_tokens(corpus[i]);
    sessions[i].generator_passes += 1;
    sessions[i].generator_tokens += text_tokens(truncated.back());
    session += sessions[i];
  }

  const auto cost = cost_model(cfg);
  const std::string strategy = cfg.has("strategy") ? cfg.str("strategy") : policy->describe();
  const auto report = metrics::make_run_report({strategy, kept_labels, base_labels, policy->m.value_or(0), session, cost});
  const auto baseline = metrics::make_run_report({"baseline", base_labels, base_labels, 0, baseline_session, cost});
  const auto pr = metrics::fact_pr_breakdown(pairs);

  write_with(dir / "decisions.csv", [&](std::ostream& s) {
    util::CsvWriter w(s, {"index", "topic", "n_sentences", "kept_sentences", "stop_sentence_index",
                          "stop_token_offset", "trigger_value", "no_answer"});
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto& d = decisions[i];
      w.row({std::to_string(i), corpus[i].topic, std::to_string(corpus[i].sentences.size()),
             std::to_string(truncated[i].sentences.size()),
             d.stop_sentence_index ? std::to_string(*d.stop_sentence_index) : "NA",
             d.stop_token_offset ? std::to_string(*d.stop_token_offset) : "NA", fmt_real(d.trigger_value),
             d.no_answer || truncated[i].facts.empty() ? "1" : "0"});
    }
  });
  write_with(dir / "truncated.jsonl", [&](std::ostream& s) { core::write_annotated(s, truncated); });
  write_file(dir / "run_report.json", report.to_json().dump(2) + "\n");
  write_file(dir / "baseline_report.json", baseline.to_json().dump(2) + "\n");
  write_with(dir / "pr_breakdown.csv", [&](std::ostream& s) { metrics::write_pr_csv(s, strategy, pr); });
  write_with(dir / "tradeoff.csv", [&](std::ostream& s) { metrics::write_tradeoff_csv(s, {baseline, report}); });

  out << "strategy: " << strategy << "\n"
      << "facts_per_gen: " << fmt_real(report.facts_per_gen) << " (baseline " << fmt_real(baseline.facts_per_gen)
      << ")\n"
      << "factscore_star: " << metrics::fmt_optional(report.factscore_star) << " (baseline "
      << metrics::fmt_optional(baseline.factscore_star) << ")\n"
      << "no_answer: " << report.no_answer_count << "\n"
      << "incorrect_recall: " << metrics::fmt_optional(pr.incorrect_recall) << "\n";
  return bad ? 1 : 0;
}

int cmd_rerank(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto topics = read_topics(required_path(cfg, "topics"));
  decoding::RerankOptions opts;
  opts.options_per_sentence = cfg.count("options_per_sentence");
  opts.n_reference = cfg.count("n_samples");
  opts.max_tokens = static_cast<int>(cfg.integer("max_tokens"));
  opts.sentence_max_tokens = static_cast<int>(cfg.integer("sentence_max_tokens"));
  opts.temperature = cfg.real("temperature");
  opts.top_p = cfg.real("top_p");
  opts.stop_policy = policy_from(cfg);
  const auto generator = make_generator(cfg);
  const auto scorer = make_scorer(cfg);
  const auto cost = cost_model(cfg);
  const auto seed = static_cast<std::uint64_t>(cfg.integer("seed"));
  const auto dir = prepare_run_directory(cfg, out);

  std::vector<decoding::RerankResult> results(topics.size());
  util::parallel_for(topics.size(), cfg.count("workers"), [&](std::size_t i) {
    auto o = opts;
    o.seed = seed + i * 1'000'003ULL;
    results[i] = decoding::rerank_generate(topics[i], *generator, *scorer, o);
  });

  metrics::SessionLog total;
  std::vector<json> rows;
  std::size_t failures = 0;
  for (std::size_t i = 0; i < topics.size(); ++i) {
    const auto& r = results[i];
    total += r.session;
    if (r.error) {
      ++failures;
      err << "rerank '" << topics[i] << "': " << *r.error << "\n";
    }
    rows.push_back({{"topic", topics[i]},
                    {"passage", r.passage},
                    {"sentences", r.sentences},
                    {"scores", r.scores},
                    {"termination", std::string(decoding::to_string(r.termination))},
                    {"error", r.error ? json(*r.error) : json()},
                    {"references", core::to_json(r.references)},
                    {"session", r.session.to_json()}});
  }
  write_file(dir / "passages.jsonl", json_lines(rows));
  write_with(dir / "steps.csv", [&](std::ostream& s) {
    util::CsvWriter w(s, {"topic", "sentence", "seed", "finished", "duplicate", "score", "chosen", "text"});
    for (std::size_t i = 0; i < topics.size(); ++i) {
      for (std::size_t st = 0; st < results[i].steps.size(); ++st) {
        const auto& step = results[i].steps[st];
        for (std::size_t c = 0; c < step.candidates.size(); ++c) {
          const auto& cand = step.candidates[c];
          w.row({topics[i], std::to_string(st), std::to_string(cand.seed), cand.finished ? "1" : "0",
                 cand.duplicate ? "1" : "0", cand.score ? fmt_real(*cand.score) : "NA",
                 step.chosen == c ? "1" : "0", cand.sentence});
        }
      }
    }
  });
  const auto f = metrics::flops_estimate(total, cost);
  json session = {{"session", total.to_json()},
                  {"flops_internal", f.internal},
                  {"flops_external", f.external},
                  {"cost_model", cost.to_json()}};
  write_file(dir / "session.json", session.dump(2) + "\n");
  std::size_t sentences = 0;
  for (const auto& r : results) sentences += r.sentences.size();
  out << "topics: " << topics.size() << "\n"
      << "sentences: " << sentences << "\n"
      << "failures: " << failures << "\n";
  return failures > 0 ? 3 : 0;
}

int cmd_toolcall(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto topics = read_topics(required_path(cfg, "topics"));
  std::unique_ptr<clients::QaClient> qa;
  if (cfg.has("qa_fixture")) {
    qa = std::make_unique<clients::FixtureQaClient>(clients::FixtureQaClient::from_file(cfg.str("qa_fixture")));
  } else {
    if (cfg.flag("offline")) throw ConfigError("offline toolcall needs qa_fixture");
    qa = std::make_unique<clients::HttpQaClient>(endpoint(cfg, "qa_url", "SEMDRIFT_QA_URL"));
  }
  decoding::ToolcallOptions opts;
  const auto max_calls = cfg.count("max_calls");
  opts.max_calls = max_calls == 0 ? std::nullopt : std::optional<std::size_t>(max_calls);
  opts.max_tokens = static_cast<int>(cfg.integer("max_tokens"));
  opts.temperature = cfg.real("temperature");
  opts.top_p = cfg.real("top_p");
  const auto generator = make_generator(cfg);
  const auto cost = cost_model(cfg);
  const auto seed = static_cast<std::uint64_t>(cfg.integer("seed"));
  const auto dir = prepare_run_directory(cfg, out);

  std::vector<decoding::ToolcallResult> results(topics.size());
  util::parallel_for(topics.size(), cfg.count("workers"), [&](std::size_t i) {
    auto o = opts;
    o.seed = seed + i * 1'000'003ULL;
    results[i] = decoding::toolcall_generate(topics[i], *generator, *qa, o);
  });
  metrics::SessionLog total;
  std::vector<json> rows;
  std::size_t failed_calls = 0;
  for (std::size_t i = 0; i < topics.size(); ++i) {
    const auto& r = results[i];
    total += r.session;
    json calls = json::array();
    for (const auto& c : r.calls) {
      if (!c.answer) {
        ++failed_calls;
        err << "toolcall '" << topics[i] << "': QA failed for '" << c.question << "': " << c.error << "\n";
      }
      calls.push_back({{"question", c.question}, {"answer", c.answer ? json(*c.answer) : json()}, {"error", c.error}});
    }
    rows.push_back({{"topic", topics[i]},
                    {"passage", r.passage},
                    {"calls", calls},
                    {"stripped_paragraphs", r.stripped_paragraphs},
                    {"session", r.session.to_json()}});
  }
  write_file(dir / "passages.jsonl", json_lines(rows));
  const auto f = metrics::flops_estimate(total, cost);
  json session = {{"session", total.to_json()},
                  {"flops_internal", f.internal},
                  {"flops_external", f.external},
                  {"cost_model", cost.to_json()}};
  write_file(dir / "session.json", session.dump(2) + "\n");
  out << "topics: " << topics.size() << "\n"
      << "qa_calls: " << total.api_calls << "\n"
      << "failed_calls: " << failed_calls << "\n";
  return 0;
}

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto inputs = cfg.strings("inputs");
  if (inputs.empty()) throw ConfigError("report needs at least one input");
  std::vector<metrics::RunReport> reports;
  for (const auto& in : inputs) {
    fs::path p = in;
    if (fs::is_directory(p)) p /= "run_report.json";
    std::ifstream f(p);
    if (!f) throw IoError("cannot read " + p.string());
    json j;
    try {
      f >> j;
    } catch (const json::exception& e) {
      throw ValidationError(e.what(), p.string());
    }
    reports.push_back(metrics::RunReport::from_json(j));
  }
  const auto dir = prepare_run_directory(cfg, out);
  write_with(dir / "tradeoff.csv", [&](std::ostream& s) { metrics::write_tradeoff_csv(s, reports); });
  write_file(dir / "tradeoff.svg", metrics::tradeoff_svg(reports));
  out << "rows: " << reports.size() << "\n";
  return 0;
}

}  // namespace semdrift::cli
