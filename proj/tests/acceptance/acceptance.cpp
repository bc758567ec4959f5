// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and case counts are fixed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "properties.hpp"
#include "random.hpp"
#include "semdrift/decoding/stop_policy.hpp"
#include "semdrift/decoding/tool_call.hpp"
#include "semdrift/drift/permutation.hpp"
#include "semdrift/drift/sd_score.hpp"
#include "semdrift/metrics/factscore.hpp"
#include "synthetic.hpp"

namespace fs = std::filesystem;
using namespace semdrift;
using core::FactSequence;

namespace {

constexpr double kExampleMaxMs = 1.0;
constexpr double kEquivalenceMaxS = 5.0;
constexpr std::size_t kEquivalenceCases = 1000;
constexpr std::size_t kPropertyCases = testing::kDefaultCases;
constexpr std::size_t kRoundTripCases = 500;
constexpr double kPermutationMaxS = 60.0;
constexpr double kSeparatedPMax = 0.005;
constexpr std::size_t kSeparatedShuffles = 10000;
constexpr std::size_t kNullSequences = 200;
constexpr std::size_t kNullLength = 60;
constexpr std::size_t kNullShuffles = 1000;
// Critical value of the one-sample KS statistic at alpha = 0.01, with the
// finite-sample correction sqrt(n) + 0.12 + 0.11 / sqrt(n).
constexpr double kKsCoefficient = 1.628;
constexpr double kFactscoreGain = 0.25;
constexpr double kIncorrectRecallMin = 0.80;
constexpr std::size_t kOracleM = 3;
constexpr double kScorerNoise = 0.05;
constexpr std::uint64_t kSeed = 20240501;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string round2(double v) { return fixed(std::round(v * 100.0) / 100.0, 2); }

Outcome seventeen_facts() {
  const FactSequence labels{1, 1, 1, 0, 1, 1, 1, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0};
  const auto t0 = Clock::now();
  const auto r = drift::sd_score(labels, 1);
  const double ms = seconds_since(t0) * 1000.0;
  const auto oracle = testing::oracle_sd(labels, 1);
  const bool exact = r.score == 0.5 * (7.0 / 8.0 + 7.0 / 9.0) && oracle.num * 144 == 119 * oracle.den;
  const bool rounded = round2(r.left_precision) == "0.88" && round2(r.right_anti_precision) == "0.78" &&
                       round2(r.score) == "0.83";
  const bool pass = exact && r.drift_point == 8 && oracle.k == 8 && rounded && ms < kExampleMaxMs;
  return {pass, "k=" + (r.drift_point ? std::to_string(*r.drift_point) : std::string("none")) +
                    " score=" + fixed(r.score, 6) + " left=" + round2(r.left_precision) +
                    " right=" + round2(r.right_anti_precision) + " time=" + fixed(ms, 3) + "ms (< " +
                    fixed(kExampleMaxMs, 0) + "ms)"};
}

std::string literal_sequence_info() {
  const FactSequence literal{1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0};
  const auto r = drift::sd_score(literal, 1);
  return "sequence 11111110000100010 (m=1) splits at k=" + std::to_string(r.drift_point.value_or(0)) +
         " with score " + fixed(r.score, 6) + "; the 119/144 sequence is 11101111000100010";
}

Outcome equivalence() {
  testing::Gen gen(kSeed);
  std::size_t mismatches = 0;
  const auto t0 = Clock::now();
  for (std::size_t c = 0; c < kEquivalenceCases; ++c) {
    const auto labels = gen.labels(gen.size(0, 100), gen.real(0.0, 1.0));
    const std::size_t m = gen.size(0, 5);
    if (!(drift::sd_score(labels, m, true) == drift::sd_score_fast(labels, m, true))) ++mismatches;
  }
  const double s = seconds_since(t0);
  return {mismatches == 0 && s < kEquivalenceMaxS,
          std::to_string(kEquivalenceCases) + " sequences, " + std::to_string(mismatches) + " mismatches, time=" +
              fixed(s, 3) + "s (< " + fixed(kEquivalenceMaxS, 0) + "s)"};
}

Outcome properties() {
  std::size_t failed = 0;
  std::string failures;
  std::size_t min_cases = SIZE_MAX;
  const auto& specs = testing::all_properties();
  for (const auto& spec : specs) {
    const auto o = spec.run(kPropertyCases, kSeed);
    min_cases = std::min(min_cases, o.cases);
    if (!o.passed()) {
      ++failed;
      failures += " " + o.name + "[" + o.counterexample + "]";
    }
  }
  return {failed == 0 && min_cases >= kPropertyCases,
          std::to_string(specs.size()) + " properties, >= " + std::to_string(min_cases) + " cases each, " +
              std::to_string(failed) + " failing" + failures};
}

// One-sample KS distance to the uniform distribution on [0, 1].
double ks_uniform(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    d = std::max(d, static_cast<double>(i + 1) / n - xs[i]);
    d = std::max(d, xs[i] - static_cast<double>(i) / n);
  }
  return d;
}

Outcome permutation() {
  const auto t0 = Clock::now();
  std::vector<std::uint8_t> v(20, 1);
  v.resize(40, 0);
  const FactSequence separated(std::move(v));
  const auto sep = drift::permutation_pvalue(separated, 1, {kSeparatedShuffles, kSeed, 0});

  testing::Gen gen(kSeed + 1);
  std::vector<double> null_p;
  for (std::size_t i = 0; i < kNullSequences; ++i) {
    const auto labels = gen.labels(kNullLength);
    null_p.push_back(drift::permutation_pvalue(labels, 0, {kNullShuffles, gen.u64(), 0}).p_value);
  }
  const double d = ks_uniform(null_p);
  const double root = std::sqrt(static_cast<double>(kNullSequences));
  const double critical = kKsCoefficient / (root + 0.12 + 0.11 / root);
  const double s = seconds_since(t0);
  return {sep.p_value < kSeparatedPMax && d < critical && s < kPermutationMaxS,
          "p(20x1+20x0, m=1)=" + fixed(sep.p_value, 5) + " (< " + fixed(kSeparatedPMax, 3) + "), KS D=" + fixed(d) +
              " over " + std::to_string(kNullSequences) + " null p-values (critical " + fixed(critical) +
              " at alpha=0.01), time=" + fixed(s, 2) + "s (< " + fixed(kPermutationMaxS, 0) + "s)"};
}

// Same null sequences and shuffle counts as the criterion, but ties with
// the observed score are broken uniformly at random. Separates tie-induced
// conservativeness from a broken shuffle.
std::string permutation_ties_info() {
  testing::Gen gen(kSeed + 1);
  std::vector<double> randomized;
  double tie_fraction = 0.0;
  for (std::size_t i = 0; i < kNullSequences; ++i) {
    const auto labels = gen.labels(kNullLength);
    const double observed = drift::sd_score_fast(labels, 0).score;
    const auto span = labels.labels();
    std::vector<std::uint8_t> v(span.begin(), span.end());
    std::size_t greater = 0;
    std::size_t equal = 0;
    for (std::size_t s = 0; s < kNullShuffles; ++s) {
      std::shuffle(v.begin(), v.end(), gen.engine());
      const double x = drift::sd_score_fast(FactSequence(v), 0).score;
      greater += x > observed;
      equal += x == observed;
    }
    tie_fraction += static_cast<double>(equal) / kNullShuffles / kNullSequences;
    randomized.push_back((static_cast<double>(greater) + gen.real(0.0, 1.0) * static_cast<double>(equal + 1)) /
                         static_cast<double>(kNullShuffles + 1));
  }
  return "null shuffles tie the observed score " + fixed(100.0 * tie_fraction, 1) +
         "% of the time; with random tie-breaking KS D=" + fixed(ks_uniform(randomized));
}

struct Point {
  double facts_per_gen = 0.0;
  double precision = 0.0;
};

Point point_of(const std::vector<FactSequence>& labels) {
  const auto fs = metrics::factscore_star(labels);
  const std::size_t answered = fs.n_paragraphs - fs.no_answer;
  return {answered ? static_cast<double>(fs.n_facts) / static_cast<double>(answered) : 0.0, fs.value.value_or(0.0)};
}

std::string synthetic_info;

Outcome synthetic() {
  testing::PlantedOptions po;
  po.seed = kSeed;
  const auto corpus = testing::planted_corpus(po);

  std::vector<FactSequence> baseline;
  std::vector<FactSequence> oracle;
  std::vector<metrics::TruncationPair> pairs;
  for (const auto& planted : corpus) {
    const auto& p = planted.paragraph;
    baseline.push_back(p.labels());
    oracle.push_back(decoding::apply(p, decoding::oracle_stop(p, kOracleM)).labels());
    pairs.push_back({oracle.back(), baseline.back()});
  }
  const Point base = point_of(baseline);
  const Point orc = point_of(oracle);
  const auto recall = metrics::fact_pr_breakdown(pairs).incorrect_recall.value_or(0.0);
  bool pass = orc.precision >= base.precision + kFactscoreGain && recall >= kIncorrectRecallMin;

  // Scores are drawn once per paragraph and shared by all thresholds.
  testing::Gen gen(kSeed + 2);
  std::vector<std::vector<double>> scores;
  for (const auto& planted : corpus) scores.push_back(testing::label_derived_scores(planted.paragraph, kScorerNoise, gen));
  std::string frontier;
  std::vector<Point> points;
  for (const double T : {0.3, 0.5, 0.7}) {
    std::vector<FactSequence> kept;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto& p = corpus[i].paragraph;
      kept.push_back(decoding::apply(p, decoding::sc_relative_stop(scores[i], T)).labels());
    }
    points.push_back(point_of(kept));
    frontier += " T=" + fixed(T, 1) + ":" + fixed(points.back().facts_per_gen, 2) + "/" +
                fixed(points.back().precision, 3);
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    // Every threshold is more precise and shorter than the untruncated
    // baseline.
    pass = pass && points[i].precision >= base.precision && points[i].facts_per_gen <= base.facts_per_gen;
    if (i > 0) {
      pass = pass && points[i].facts_per_gen >= points[i - 1].facts_per_gen &&
             points[i].precision <= points[i - 1].precision;
    }
  }
  const double best_sc = std::max_element(points.begin(), points.end(), [](const Point& a, const Point& b) {
                           return a.precision < b.precision;
                         })->precision;
  synthetic_info = "oracle precision " + fixed(orc.precision, 3) + " vs best sc-relative " + fixed(best_sc, 3) +
                   " (the planted scorer sees sentence accuracy)";
  return {pass, "baseline " + fixed(base.facts_per_gen, 2) + "/" + fixed(base.precision, 3) + ", oracle(m=" +
                    std::to_string(kOracleM) + ") " + fixed(orc.facts_per_gen, 2) + "/" + fixed(orc.precision, 3) +
                    " (gain " + fixed(orc.precision - base.precision, 3) + " >= " + fixed(kFactscoreGain, 2) +
                    "), incorrect recall " + fixed(recall, 3) + " (>= " + fixed(kIncorrectRecallMin, 2) +
                    "), sc-relative facts/precision" + frontier};
}

Outcome tool_calls() {
  const std::string p1_head =
      "Your task is to add calls to a Question Answering API to a piece of text. The questions should help you get "
      "information required to complete the text. You can call the API by writing [QA(question)] where question is "
      "the question you want to ask. Here are some examples of API calls:";
  const std::string p1_example = "Joe Biden was born in [QA(Where was Joe Biden born?)]";
  const std::string p1_input = "This is a Wikipedia article about Napoleon. Napoleon ";
  const std::string inference1 = "was born in [QA(Where was Napoleon born?)]";
  const std::string p2_head =
      "Your task is to complete a piece of text, by using answers from an API call. APIs are called by writing "
      "[QA(question) -> answer] where question is what was sent to the API and answer is the response. Here are some "
      "examples of texts with API calls:";
  const std::string p2_example =
      "Joe Biden was born in [QA(Where was Joe Biden born?) -> Scranton] Scranton, Pennsylvania.";
  const std::string p2_input = "Napoleon was born in [QA(Where was Napoleon born?) -> Ajaccio]";
  const std::string inference2 = "was born in [QA(Where was Napoleon born?) -> Ajaccio] Ajaccio, Corsica.";

  std::vector<std::string> failed;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  };
  expect(decoding::call_prompt(p1_input) == p1_head + "\n" + p1_example + "\n" + p1_input, "prompt1");
  expect(decoding::answer_prompt(p2_input) == p2_head + "\n" + p2_example + "\n" + p2_input, "prompt2");

  const auto i1 = decoding::parse_tool_calls(inference1);
  expect(i1.calls.size() == 1 && i1.calls[0].question == "Where was Napoleon born?" && i1.calls[0].pending() &&
             i1.malformed.empty() && i1.cleaned == "was born in",
         "inference1");
  const auto i2 = decoding::parse_tool_calls(inference2);
  expect(i2.calls.size() == 1 && i2.calls[0].answer == "Ajaccio" && i2.cleaned == "was born in Ajaccio, Corsica.",
         "inference2");
  const auto ex = decoding::parse_tool_calls("Napoleon was born in [QA(Where was Napoleon born?) -> Ajaccio] Ajaccio, Corsica.");
  expect(ex.cleaned == "Napoleon was born in Ajaccio, Corsica.", "cleaned passage");
  expect(decoding::unfinished_sentence(p1_input) == "Napoleon ", "unfinished sentence");
  const decoding::ToolCall answered{"Where was Napoleon born?", "Ajaccio", 0, 0};
  expect(decoding::render(answered) == "[QA(Where was Napoleon born?) -> Ajaccio]", "render");
  expect(decoding::splice_answer("This is a Wikipedia article about Napoleon. Napoleon", " was born in ", answered,
                                 " " + inference2) ==
             "This is a Wikipedia article about Napoleon. Napoleon was born in Ajaccio, Corsica.",
         "splice");

  const auto fuzz = testing::run_property("toolcall-render-parse-round-trip", kRoundTripCases, kSeed);
  std::string detail = "prompt and inference strings " + std::string(failed.empty() ? "bit-exact" : "differ:");
  for (const auto& f : failed) detail += " " + f;
  detail += ", round trip " + std::to_string(fuzz.cases - fuzz.failures) + "/" + std::to_string(fuzz.cases) +
            " fuzzed call lists";
  return {failed.empty() && fuzz.passed() && fuzz.cases >= 200, detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

// Runs the CLI into `out` and returns the run directory it reports.
std::optional<fs::path> run_cli(const std::string& args, const fs::path& out) {
  fs::create_directories(out);
  const auto log = out / "stdout.txt";
  const std::string cmd = quoted(SEMDRIFT_BIN) + " " + args + " --out " + quoted(out.string()) + " > " +
                          quoted(log.string()) + " 2> /dev/null";
  if (std::system(cmd.c_str()) != 0) return std::nullopt;
  std::istringstream in(slurp(log));
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("output: ", 0) == 0) return fs::path(line.substr(8));
  }
  return std::nullopt;
}

Outcome determinism() {
  const std::string fx = SEMDRIFT_FIXTURES;
  const fs::path scratch = fs::path(SEMDRIFT_SCRATCH) / "acceptance_determinism";
  fs::remove_all(scratch);
  const std::string topics = quoted(fx + "/topics.txt");
  const std::string qa = quoted(fx + "/qa_fixture.json");
  const std::string corpus = quoted(fx + "/toy_corpus.jsonl");
  const std::vector<std::pair<std::string, std::string>> runs{
      {"rerank", "rerank --topics " + topics + " --offline --seed 7 --policy sc-relative-increase --T 0.5"},
      {"toolcall", "toolcall --topics " + topics + " --offline --seed 7 --qa-fixture " + qa + " --max-calls 0"},
      {"permtest", "permtest --corpus " + corpus + " --m 1 --seed 7 --n-shuffles 500 --workers 4"},
      {"stop-sim", "stop-sim --corpus " + corpus + " --policy sc-absolute --A 0.5 --offline"},
  };
  std::size_t files = 0;
  std::vector<std::string> diffs;
  for (const auto& [name, args] : runs) {
    const auto a = run_cli(args, scratch / name / "a");
    const auto b = run_cli(args, scratch / name / "b");
    if (!a || !b) {
      diffs.push_back(name + ":run failed");
      continue;
    }
    std::map<std::string, std::string> left;
    for (const auto& e : fs::directory_iterator(*a)) left[e.path().filename().string()] = slurp(e.path());
    std::size_t right = 0;
    for (const auto& e : fs::directory_iterator(*b)) {
      ++right;
      const auto it = left.find(e.path().filename().string());
      if (it == left.end() || it->second != slurp(e.path())) diffs.push_back(name + ":" + e.path().filename().string());
    }
    if (right != left.size() || left.empty()) diffs.push_back(name + ":file set");
    files += left.size();
  }
  std::string detail = std::to_string(runs.size()) + " offline commands, " + std::to_string(files) +
                       " output files compared across two executions";
  for (const auto& d : diffs) detail += " " + d;
  return {diffs.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"seventeen-fact-example", seventeen_facts},
      {"oracle-equivalence", equivalence},
      {"property-suites", properties},
      {"permutation-calibration", permutation},
      {"synthetic-end-to-end", synthetic},
      {"tool-call-round-trip", tool_calls},
      {"cli-determinism", determinism},
  };
  // Optional argument: run a single criterion.
  const std::string only = argc > 1 ? argv[1] : "";
  if (!only.empty() && std::none_of(criteria.begin(), criteria.end(), [&](const auto& c) { return c.first == only; })) {
    std::cerr << "unknown criterion " << only << "\n";
    return 2;
  }
  int failures = 0;
  int ran = 0;
  for (const auto& [name, check] : criteria) {
    if (!only.empty() && name != only) continue;
    ++ran;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    if (name == "seventeen-fact-example") std::cout << "INFO " << name << ": " << literal_sequence_info() << "\n";
    if (name == "permutation-calibration") std::cout << "INFO " << name << ": " << permutation_ties_info() << "\n";
    if (name == "synthetic-end-to-end") std::cout << "INFO " << name << ": " << synthetic_info << "\n";
  }
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << ran - failures << "/" << ran << "\n";
  return failures ? 1 : 0;
}
