#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "cli/app.hpp"
#include "cli/config.hpp"
#include "paths.hpp"

namespace fs = std::filesystem;
using semdrift::testing::scratch_dir;
using semdrift::testing::slurp;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
  fs::path dir;  // from the "output:" line
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "semdrift");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = semdrift::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  const auto at = r.out.find("output: ");
  if (at != std::string::npos) r.dir = r.out.substr(at + 8, r.out.find('\n', at) - at - 8);
  return r;
}

std::string fx(const std::string& name) { return fixture(name).string(); }

// Compares every file of `dir` with tests/golden/<name>/. Set
// SEMDRIFT_UPDATE_GOLDEN=1 to rewrite the golden copy instead.
void check_golden(const std::string& name, const fs::path& dir) {
  REQUIRE(fs::is_directory(dir));
  const fs::path golden = fs::path(SEMDRIFT_GOLDEN) / name;
  std::set<std::string> produced;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file()) produced.insert(e.path().filename().string());
  }
  if (const char* u = std::getenv("SEMDRIFT_UPDATE_GOLDEN"); u && std::string(u) == "1") {
    fs::remove_all(golden);
    fs::create_directories(golden);
    for (const auto& f : produced) fs::copy_file(dir / f, golden / f);
    return;
  }
  REQUIRE_MESSAGE(fs::is_directory(golden), "missing golden directory " << golden);
  std::set<std::string> expected;
  for (const auto& e : fs::directory_iterator(golden)) expected.insert(e.path().filename().string());
  CHECK(produced == expected);
  for (const auto& f : produced) {
    if (!expected.count(f)) continue;
    INFO(name << "/" << f);
    CHECK(slurp(dir / f) == slurp(golden / f));
  }
}

CliRun golden_run(const std::string& name, std::vector<std::string> args) {
  const auto out = scratch_dir("cli_" + name);
  args.push_back("--out");
  args.push_back(out.string());
  auto r = run(args);
  INFO(r.err);
  REQUIRE(r.code == 0);
  check_golden(name, r.dir);
  return r;
}

std::size_t line_count(const fs::path& p) {
  const auto s = slurp(p);
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("score goldens") {
  golden_run("score_m1", {"score", "--corpus", fx("toy_corpus.jsonl"), "--m", "1"});
  golden_run("score_sweep", {"score", "--corpus", fx("toy_corpus.jsonl"), "--sweep", "0,1,2,3"});
  const auto r = golden_run("score_filter", {"score", "--corpus", fx("toy_corpus.jsonl"), "--m", "2", "--filter-degenerate"});
  CHECK(r.out.find("paragraphs:") != std::string::npos);
}

TEST_CASE("score: per-paragraph rows match the corpus") {
  const auto r = golden_run("score_m0", {"score", "--corpus", fx("toy_corpus.jsonl")});
  CHECK(line_count(r.dir / "per_paragraph.csv") == 1 + line_count(fixture("toy_corpus.jsonl")));
}

TEST_CASE("permtest goldens, workers do not change results") {
  golden_run("permtest_m1", {"permtest", "--corpus", fx("toy_corpus.jsonl"), "--m", "1", "--n-shuffles", "300",
                             "--seed", "1"});
  golden_run("permtest_m1", {"permtest", "--corpus", fx("toy_corpus.jsonl"), "--m", "1", "--n-shuffles", "300",
                             "--seed", "1", "--workers", "4"});
  golden_run("permtest_alpha", {"permtest", "--corpus", fx("toy_corpus.jsonl"), "--n-shuffles", "200", "--alpha",
                                "0.5", "--seed", "2"});
  golden_run("permtest_filter", {"permtest", "--corpus", fx("toy_corpus.jsonl"), "--n-shuffles", "100",
                                 "--filter-degenerate", "--seed", "3"});
}

TEST_CASE("stop-sim goldens") {
  golden_run("stop_oracle", {"stop-sim", "--corpus", fx("toy_corpus.jsonl"), "--policy", "oracle-drift-point", "--m", "1"});
  golden_run("stop_eos", {"stop-sim", "--corpus", fx("toy_corpus.jsonl"), "--policy", "eos-top-k", "--k", "5",
                          "--traces", fx("toy_traces.jsonl")});
  golden_run("stop_relative", {"stop-sim", "--corpus", fx("toy_corpus.jsonl"), "--policy", "sc-relative-increase",
                               "--T", "0.5"});
  golden_run("stop_absolute", {"stop-sim", "--corpus", fx("toy_corpus_noscores.jsonl"), "--samples",
                               fx("toy_samples.jsonl"), "--policy", "sc-absolute", "--A", "0.5", "--first-sentence",
                               "delete"});
}

TEST_CASE("stop-sim: missing policy parameters are configuration errors") {
  const auto out = scratch_dir("cli_stop_bad");
  CHECK(run({"stop-sim", "--corpus", fx("toy_corpus.jsonl"), "--policy", "eos-top-k", "--out", out.string()}).code == 1);
  CHECK(run({"stop-sim", "--corpus", fx("toy_corpus.jsonl"), "--policy", "sc-relative-increase", "--T", "0.5", "--k",
             "3", "--out", out.string()})
            .code == 1);
  CHECK(run({"stop-sim", "--corpus", fx("toy_corpus.jsonl"), "--policy", "nonsense", "--out", out.string()}).code == 1);
}

TEST_CASE("rerank goldens") {
  golden_run("rerank_plain", {"rerank", "--topics", fx("topics.txt"), "--max-tokens", "60"});
  golden_run("rerank_relative", {"rerank", "--topics", fx("topics.txt"), "--max-tokens", "80", "--policy",
                                 "sc-relative-increase", "--T", "0.5", "--seed", "4"});
  golden_run("rerank_eos", {"rerank", "--topics", fx("topics.txt"), "--max-tokens", "80", "--policy", "eos-top-k",
                            "--k", "5", "--options-per-sentence", "3"});
}

TEST_CASE("toolcall goldens") {
  golden_run("toolcall_one", {"toolcall", "--topics", fx("topics.txt"), "--qa-fixture", fx("qa_fixture.json")});
  golden_run("toolcall_unlimited", {"toolcall", "--topics", fx("topics.txt"), "--qa-fixture", fx("qa_fixture.json"),
                                    "--max-calls", "0", "--max-tokens", "200"});
  golden_run("toolcall_seeded", {"toolcall", "--topics", fx("topics.txt"), "--qa-fixture", fx("qa_fixture.json"),
                                 "--seed", "9", "--max-calls", "2"});
}

TEST_CASE("report goldens") {
  const auto a = golden_run("stop_oracle", {"stop-sim", "--corpus", fx("toy_corpus.jsonl"), "--policy",
                                            "oracle-drift-point", "--m", "1"});
  const auto b = golden_run("stop_relative", {"stop-sim", "--corpus", fx("toy_corpus.jsonl"), "--policy",
                                              "sc-relative-increase", "--T", "0.5"});
  const auto c = golden_run("stop_eos", {"stop-sim", "--corpus", fx("toy_corpus.jsonl"), "--policy", "eos-top-k",
                                         "--k", "5", "--traces", fx("toy_traces.jsonl")});
  const auto two = golden_run("report_two", {"report", a.dir.string(), b.dir.string()});
  CHECK(line_count(two.dir / "tradeoff.csv") == 3);
  golden_run("report_one", {"report", (c.dir / "run_report.json").string()});
  // Input order does not matter: rows are sorted by strategy.
  const auto three = golden_run("report_three", {"report", c.dir.string(), b.dir.string(), a.dir.string()});
  CHECK(line_count(three.dir / "tradeoff.csv") == 4);
  golden_run("report_three", {"report", a.dir.string(), c.dir.string(), b.dir.string()});
}

TEST_CASE("config file and flags: flags win") {
  const auto dir = scratch_dir("cli_config");
  const auto cfg = dir / "cfg.json";
  std::ofstream(cfg) << R"({"corpus": ")" << fx("toy_corpus.jsonl") << R"(", "m": 3})";
  const auto via_file = run({"score", "--config", cfg.string(), "--m", "1", "--out", dir.string()});
  const auto via_flags = run({"score", "--corpus", fx("toy_corpus.jsonl"), "--m", "1", "--out", dir.string()});
  REQUIRE(via_file.code == 0);
  CHECK(via_file.dir == via_flags.dir);

  std::ofstream(dir / "bad.json") << R"({"no_such_key": 1})";
  CHECK(run({"score", "--config", (dir / "bad.json").string(), "--out", dir.string()}).code == 1);
  CHECK(run({"score", "--config", (dir / "missing.json").string(), "--out", dir.string()}).code == 2);
  CHECK(run({"score", "--corpus", fx("toy_corpus.jsonl"), "--m", "x", "--out", dir.string()}).code == 1);
}

TEST_CASE("exit codes") {
  const auto dir = scratch_dir("cli_exit");
  const auto invalid = run({"score", "--corpus", fx("toy_corpus_invalid.jsonl"), "--out", dir.string()});
  CHECK(invalid.code == 1);
  CHECK(invalid.err.find("toy_corpus_invalid.jsonl:2:") != std::string::npos);
  CHECK(run({"score", "--corpus", fx("does_not_exist.jsonl"), "--out", dir.string()}).code == 2);
  CHECK(run({"bogus"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"rerank", "--topics", fx("topics.txt"), "--generator", "http", "--generator-url", "http://127.0.0.1:1",
             "--out", dir.string()})
            .code == 3);
  CHECK(run({"toolcall", "--topics", fx("topics.txt"), "--offline", "--out", dir.string()}).code == 1);
  CHECK(run({"toolcall", "--topics", fx("topics.txt"), "--offline", "--qa-fixture", fx("qa_fixture.json"), "--generator",
             "http", "--generator-url", "http://127.0.0.1:1", "--cache", (dir / "empty_cache.jsonl").string(), "--out",
             dir.string()})
            .code == 3);
}

TEST_CASE("help lists every config key") {
  const auto r = run({"score", "--help"});
  CHECK(r.code == 0);
  const std::string text = r.out + r.err;
  for (const auto& k : semdrift::cli::config_keys()) {
    INFO(k.key);
    CHECK(text.find("  " + std::string(k.key) + " ") != std::string::npos);
  }
  const auto top = run({"--help"});
  CHECK(top.code == 0);
  for (const char* c : {"score", "permtest", "stop-sim", "rerank", "toolcall", "report"}) {
    CHECK((top.out + top.err).find(c) != std::string::npos);
  }
}

TEST_CASE("offline replay from the cache is byte-identical") {
  const auto dir = scratch_dir("cli_cache");
  const auto cache = (dir / "cache.jsonl").string();
  const auto online = run({"rerank", "--topics", fx("topics.txt"), "--max-tokens", "40", "--cache", cache, "--out",
                           (dir / "a").string()});
  REQUIRE(online.code == 0);
  const auto offline = run({"rerank", "--topics", fx("topics.txt"), "--max-tokens", "40", "--cache", cache,
                            "--offline", "--out", (dir / "b").string()});
  REQUIRE(offline.code == 0);
  for (const char* f : {"passages.jsonl", "steps.csv"}) {
    CHECK(slurp(online.dir / f) == slurp(offline.dir / f));
  }
}

TEST_CASE("two executions of the binary are byte-identical") {
  const auto dir = scratch_dir("cli_determinism");
  std::string outputs[2];
  for (int i = 0; i < 2; ++i) {
    const auto out = dir / std::to_string(i);
    const std::string cmd = std::string("\"") + SEMDRIFT_BIN + "\" toolcall --topics \"" + fx("topics.txt") +
                            "\" --qa-fixture \"" + fx("qa_fixture.json") + "\" --seed 5 --out \"" + out.string() +
                            "\" > /dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    for (const auto& run_dir : fs::directory_iterator(out)) {
      outputs[i] = slurp(run_dir.path() / "passages.jsonl") + slurp(run_dir.path() / "session.json");
    }
  }
  CHECK_FALSE(outputs[0].empty());
  CHECK(outputs[0] == outputs[1]);
}

}  // TEST_SUITE
