#include <doctest.h>

#include <cmath>
#include <map>

#include "semdrift/consistency/correlation.hpp"
#include "semdrift/consistency/intrinsic.hpp"
#include "semdrift/consistency/ngram.hpp"
#include "semdrift/consistency/profile.hpp"
#include "semdrift/consistency/selfcheck.hpp"
#include "semdrift/clients/stub_generator.hpp"
#include "semdrift/core/error.hpp"
#include "semdrift/util/diagnostics.hpp"
#include "synthetic.hpp"

using namespace semdrift;
using consistency::Metric;

namespace {

core::TraceToken token(std::string text, double logprob, std::vector<double> top) {
  core::TraceToken t;
  t.text = std::move(text);
  t.logprob = logprob;
  for (std::size_t i = 0; i < top.size(); ++i) t.top.push_back({"t" + std::to_string(i), top[i]});
  return t;
}

core::GenerationTrace trace_of(std::vector<core::TraceToken> tokens, std::vector<std::size_t> boundaries) {
  core::GenerationTrace t;
  t.topic = "x";
  t.k_max = tokens.empty() ? 0 : tokens.front().top.size();
  t.tokens = std::move(tokens);
  t.sentence_boundaries = std::move(boundaries);
  return t;
}

core::SamplePassageSet sample_set(std::vector<std::string> original, std::vector<std::vector<std::string>> samples) {
  core::SamplePassageSet set;
  set.topic = "x";
  set.original_sentences = std::move(original);
  std::uint64_t seed = 0;
  for (auto& s : samples) {
    core::SampledPassage p;
    p.sentences = std::move(s);
    p.seed = seed++;
    set.samples.push_back(std::move(p));
  }
  return set;
}

}  // namespace

TEST_SUITE("consistency") {

TEST_CASE("intrinsic: one certain token gives all zeros") {
  const auto t = trace_of({token("A.", 0.0, {0.0})}, {1});
  const auto r = consistency::intrinsic_metrics(t);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == consistency::IntrinsicScores{0.0, 0.0, 0.0});
}

TEST_CASE("intrinsic: uniform two-way alternatives give ln 2 with zero variance") {
  const double h = std::log(0.5);
  const auto t = trace_of({token("A", h, {h, h}), token(".", h, {h, h})}, {2});
  const auto r = consistency::intrinsic_metrics(t);
  CHECK(r[0].mean_entropy == doctest::Approx(std::log(2.0)));
  CHECK(r[0].entropy_variance == doctest::Approx(0.0));
  CHECK(r[0].neg_log_likelihood == doctest::Approx(2.0 * std::log(2.0)));
}

TEST_CASE("intrinsic: three tokens against direct summation") {
  // Alternatives are renormalized over the top-k mass.
  const std::vector<std::vector<double>> probs{{0.5, 0.3}, {0.9, 0.05}, {0.4, 0.4}};
  std::vector<core::TraceToken> toks;
  const double chosen[] = {0.5, 0.05, 0.4};
  for (std::size_t i = 0; i < 3; ++i) {
    toks.push_back(token(i == 2 ? "." : "w", std::log(chosen[i]), {std::log(probs[i][0]), std::log(probs[i][1])}));
  }
  const auto t = trace_of(toks, {3});
  std::vector<double> h;
  for (const auto& p : probs) {
    const double z = p[0] + p[1];
    h.push_back(-(p[0] / z) * std::log(p[0] / z) - (p[1] / z) * std::log(p[1] / z));
  }
  const double mean = (h[0] + h[1] + h[2]) / 3.0;
  const double var = ((h[0] - mean) * (h[0] - mean) + (h[1] - mean) * (h[1] - mean) + (h[2] - mean) * (h[2] - mean)) / 3.0;
  const auto r = consistency::intrinsic_metrics(t)[0];
  CHECK(r.mean_entropy == doctest::Approx(mean).epsilon(1e-12));
  CHECK(r.entropy_variance == doctest::Approx(var).epsilon(1e-12));
  CHECK(r.neg_log_likelihood == doctest::Approx(-std::log(0.5) - std::log(0.05) - std::log(0.4)).epsilon(1e-12));
}

TEST_CASE("intrinsic: one entry per sentence, errors name the boundary") {
  const auto t = trace_of({token("A.", -0.1, {-0.1}), token(" B.", -0.2, {-0.2}), token(" c", -0.3, {-0.3})}, {1, 2});
  const auto r = consistency::intrinsic_metrics(t);
  REQUIRE(r.size() == 2);
  CHECK(r[1].neg_log_likelihood == doctest::Approx(0.2));

  auto empty = trace_of({token("A.", -0.1, {-0.1})}, {1, 1});
  try {
    consistency::intrinsic_metrics(empty);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "sentence_boundaries[1]");
  }
  auto bare = trace_of({token("A.", -0.1, {})}, {1});
  CHECK_THROWS_AS(consistency::intrinsic_metrics(bare), ConfigError);
}

TEST_CASE("intrinsic_avg: identical samples equal the single-sample value") {
  clients::StubGenerator stub;
  clients::GeneratorRequest probe;
  probe.prompt = "This is a Wikipedia article about Ada Lovelace. Ada Lovelace";
  probe.logprobs_k = 5;
  probe.temperature = 0.0;
  const auto single = stub.complete(probe);
  const auto first = consistency::intrinsic_for_tokens(single.trace, 0, single.trace.sentence_boundaries.at(0));

  consistency::AverageOptions opt;
  opt.temperature = 0.0;  // the stub ignores the seed
  opt.max_tokens = probe.max_tokens;
  opt.n_samples = 5;
  const auto avg = consistency::intrinsic_metrics_avg(probe.prompt, stub, 5, opt);
  CHECK(avg.mean_entropy == doctest::Approx(first.mean_entropy));
  CHECK(avg.entropy_variance == doctest::Approx(first.entropy_variance));
  CHECK(avg.neg_log_likelihood == doctest::Approx(first.neg_log_likelihood));

  opt.n_samples = 1;
  CHECK(consistency::intrinsic_metrics_avg(probe.prompt, stub, 5, opt) == first);
}

TEST_CASE("intrinsic_avg: alternating traces average to the midpoint") {
  const double h = std::log(0.5);
  const auto a = trace_of({token("A.", h, {h, h})}, {1});
  const auto b = trace_of({token("B.", 0.0, {0.0, -50.0})}, {1});
  testing::LambdaGenerator gen([&](const clients::GeneratorRequest& req) {
    clients::Completion c;
    c.trace = req.seed % 2 == 0 ? a : b;
    c.text = c.trace.text();
    return c;
  });
  consistency::AverageOptions opt;
  opt.n_samples = 4;
  const auto r = consistency::intrinsic_metrics_avg("p", gen, 2, opt);
  const auto sa = consistency::intrinsic_metrics(a)[0];
  const auto sb = consistency::intrinsic_metrics(b)[0];
  CHECK(r.mean_entropy == doctest::Approx((sa.mean_entropy + sb.mean_entropy) / 2));
  CHECK(r.neg_log_likelihood == doctest::Approx((sa.neg_log_likelihood + sb.neg_log_likelihood) / 2));
}

TEST_CASE("intrinsic_avg: generator failure carries the sample index") {
  int calls = 0;
  testing::LambdaGenerator gen([&](const clients::GeneratorRequest&) -> clients::Completion {
    if (++calls == 3) throw RemoteError("boom", true);
    clients::Completion c;
    c.trace = trace_of({token("A.", 0.0, {0.0})}, {1});
    return c;
  });
  try {
    consistency::intrinsic_metrics_avg("p", gen, 1);
    FAIL("expected SampleError");
  } catch (const consistency::SampleError& e) {
    CHECK(e.sample_index() == 2);
    CHECK(e.retriable());
  }
  CHECK_THROWS_AS(consistency::intrinsic_metrics_avg("p", gen, 0), ConfigError);
}

TEST_CASE("intrinsic_profile_avg conditions on the generated prefix") {
  std::vector<std::string> prompts;
  testing::LambdaGenerator gen([&](const clients::GeneratorRequest& req) {
    prompts.push_back(req.prompt);
    clients::Completion c;
    c.trace = trace_of({token("A.", 0.0, {0.0})}, {1});
    return c;
  });
  const auto t = trace_of({token("X.", -0.1, {-0.1}), token(" Y.", -0.2, {-0.2})}, {1, 2});
  consistency::AverageOptions opt;
  opt.n_samples = 1;
  const auto r = consistency::intrinsic_profile_avg(t, "P: ", gen, opt);
  CHECK(r.size() == 2);
  CHECK(prompts == std::vector<std::string>{"P: ", "P: X."});
}

TEST_CASE("selfcheck similarity: verbatim sentence scores 0") {
  const auto set = sample_set({"Ada was born in London."},
                              {{"Ada was born in London.", "Other."}, {"Ada was born in London."}});
  clients::TokenOverlapBackend backend;
  CHECK(consistency::selfcheck_similarity("Ada was born in London.", set, backend) == 0.0);
}

TEST_CASE("selfcheck similarity: constant backend 0.25 gives 0.75") {
  const auto set = sample_set({"A."}, {{"B.", "C."}, {"D."}, {"E."}});
  testing::LambdaBackend backend([](const clients::SentencePair&) { return 0.25; });
  CHECK(consistency::selfcheck_similarity("A.", set, backend) == doctest::Approx(0.75));
}

TEST_CASE("selfcheck similarity: best matches 1, 0.5, 0 give 0.5") {
  CHECK(consistency::selfcheck_from_best({1.0, 0.5, 0.0}) == doctest::Approx(0.5));
  const std::map<std::string, double> sim{{"p1", 1.0}, {"p2", 0.5}, {"p2b", 0.2}, {"p3", 0.0}};
  testing::LambdaBackend backend([&](const clients::SentencePair& p) { return sim.at(p.candidate); });
  const auto set = sample_set({"S."}, {{"p1"}, {"p2b", "p2"}, {"p3"}});
  CHECK(consistency::selfcheck_similarity("S.", set, backend) == doctest::Approx(0.5));
}

TEST_CASE("selfcheck similarity: empty sample passage counts as 0 and warns") {
  std::vector<std::string> warnings;
  util::ScopedWarningHandler guard([&](std::string_view w) { warnings.emplace_back(w); });
  const auto set = sample_set({"S."}, {{"S."}, {}});
  clients::TokenOverlapBackend backend;
  CHECK(consistency::selfcheck_similarity("S.", set, backend) == doctest::Approx(0.5));
  CHECK(warnings.size() == 1);
  CHECK(warnings[0].find("sample 1") != std::string::npos);
}

TEST_CASE("selfcheck similarity: all sentences in one batch, no samples is an error") {
  testing::LambdaBackend backend([](const clients::SentencePair&) { return 0.5; });
  const auto set = sample_set({"A.", "B.", "C."}, {{"x", "y"}, {"z"}});
  const auto all = consistency::selfcheck_similarity_all(set, backend);
  CHECK(all == std::vector<double>{0.5, 0.5, 0.5});
  CHECK(backend.batches == 1);
  CHECK_THROWS_AS(consistency::selfcheck_similarity_all(sample_set({"A."}, {}), backend), ValidationError);
}

TEST_CASE("ngram: single-token vocabulary by hand") {
  // "a a" plus "a a a": five tokens, V = 1 + unknown slot.
  const auto set = sample_set({"a a"}, {{"a a a"}});
  const auto r = consistency::selfcheck_ngram(set, 1);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == doctest::Approx(-std::log((5.0 + 1.0) / (5.0 + 2.0))));
}

TEST_CASE("ngram: bigram context by hand") {
  consistency::NgramModel m(2);
  m.train({"a", "b"});
  m.train({"a", "c"});
  CHECK(m.vocabulary_size() == 4);
  // First token: empty context seen twice, "a" twice.
  CHECK(m.neg_log_prob({"a", "b"}, 0) == doctest::Approx(-std::log(3.0 / 6.0)));
  // Second: context "a" seen twice, ("a", "b") once.
  CHECK(m.neg_log_prob({"a", "b"}, 1) == doctest::Approx(-std::log(2.0 / 6.0)));
  CHECK(m.neg_log_prob({"a", "z"}, 1) == doctest::Approx(-std::log(1.0 / 6.0)));
  CHECK(m.mean_nll({}) == 0.0);
  CHECK_THROWS_AS(consistency::NgramModel(0), ConfigError);
}

TEST_CASE("ngram: identical passages give equal scores on duplicate sentences") {
  const std::vector<std::string> passage{"Ada wrote notes.", "Ada met Babbage.", "Ada wrote notes."};
  const auto set = sample_set(passage, {passage, passage});
  for (std::size_t n : {1, 5, 10}) {
    const auto r = consistency::selfcheck_ngram(set, n);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == r[2]);
    for (double v : r) CHECK(std::isfinite(v));
  }
}

TEST_CASE("ngram: order above sentence length stays finite") {
  const auto set = sample_set({"a b"}, {{"a b c"}});
  const auto r = consistency::selfcheck_ngram(set, 10);
  CHECK(std::isfinite(r[0]));
  CHECK(r[0] > 0.0);
}

TEST_CASE("profile: one value per pair, ranges enforced") {
  consistency::ConsistencyProfile p(3, "b");
  p.set(0, Metric::selfcheck_similarity, 0.2);
  CHECK_THROWS_AS(p.set(0, Metric::selfcheck_similarity, 0.3), ValidationError);
  CHECK_THROWS_AS(p.set(1, Metric::selfcheck_similarity, 1.5), ValidationError);
  CHECK_THROWS_AS(p.set(1, Metric::mean_entropy, -0.1), ValidationError);
  p.set(2, Metric::selfcheck_similarity, 0.4);
  CHECK(p.sentence_count() == 3);
  CHECK_THROWS_AS(p.series(Metric::selfcheck_similarity), ValidationError);
  CHECK(p.get(2, Metric::selfcheck_similarity) == 0.4);
  CHECK_FALSE(p.get(2, Metric::mean_entropy).has_value());
  CHECK(p.sample_count() == 3);
}

TEST_CASE("metric names round-trip") {
  for (Metric m : consistency::all_metrics()) CHECK(consistency::parse_metric(consistency::to_string(m)) == m);
  CHECK_FALSE(consistency::parse_metric("bogus").has_value());
  CHECK(consistency::all_metrics().size() == 10);
}

TEST_CASE("selfcheck_profile fills similarity and three n-gram orders") {
  const auto set = sample_set({"Ada wrote notes.", "Ada met Babbage."}, {{"Ada wrote notes."}, {"Ada sailed."}});
  clients::TokenOverlapBackend backend;
  const auto p = consistency::selfcheck_profile(set, backend);
  for (Metric m : {Metric::selfcheck_similarity, Metric::selfcheck_ngram_1, Metric::selfcheck_ngram_5,
                   Metric::selfcheck_ngram_10}) {
    CHECK(p.series(m).size() == 2);
  }
  CHECK(p.similarity_backend() == "token-overlap-f1");
  CHECK(p.sample_count() == 2);
}

TEST_CASE("pearson: identity, negation, five-point formula") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const std::vector<double> y{2, 4, 5, 4, 5};
  CHECK(*consistency::pearson(x, x) == doctest::Approx(1.0));
  std::vector<double> neg;
  for (double v : x) neg.push_back(1.0 - v);
  CHECK(*consistency::pearson(x, neg) == doctest::Approx(-1.0));

  // r = (n Σxy - Σx Σy) / sqrt((n Σx² - (Σx)²)(n Σy² - (Σy)²))
  double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    sx += x[i];
    sy += y[i];
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
  }
  const double r = (5 * sxy - sx * sy) / std::sqrt((5 * sxx - sx * sx) * (5 * syy - sy * sy));
  CHECK(*consistency::pearson(x, y) == doctest::Approx(r).epsilon(1e-12));

  CHECK_FALSE(consistency::pearson(std::vector<double>{1}, std::vector<double>{1}).has_value());
  CHECK_FALSE(consistency::pearson(x, std::vector<double>{3, 3, 3, 3, 3}).has_value());
}

TEST_CASE("correlate_with_labels pools sentences with facts") {
  core::AnnotatedParagraph para;
  para.topic = "T";
  para.sentences = {"A.", "B.", "C.", "D."};
  // Accuracies 1, 0.5, 0, and none for sentence 3.
  para.facts = {{"a", true, 0, 0, {}}, {"b1", true, 1, 1, {}}, {"b2", false, 1, 2, {}}, {"c", false, 2, 3, {}}};
  const auto acc = consistency::sentence_accuracy(para);
  REQUIRE(acc.size() == 4);
  CHECK(acc[1] == 0.5);
  CHECK_FALSE(acc[3].has_value());

  consistency::ConsistencyProfile prof(3, "b");
  for (std::size_t s = 0; s < 3; ++s) {
    prof.set(s, Metric::selfcheck_similarity, 1.0 - *acc[s]);
    prof.set(s, Metric::mean_entropy, *acc[s]);
    prof.set(s, Metric::nll_avg5, 2.0);
  }
  const auto rows = consistency::correlate_with_labels(
      {para}, {prof}, {Metric::selfcheck_similarity, Metric::mean_entropy, Metric::nll_avg5});
  REQUIRE(rows.size() == 3);
  CHECK(*rows[0].r == doctest::Approx(-1.0));
  CHECK(*rows[1].r == doctest::Approx(1.0));
  CHECK_FALSE(rows[2].r.has_value());
  CHECK(rows[0].n_sentences == 3);

  CHECK_THROWS_AS(consistency::correlate_with_labels({para}, {prof}, {Metric::entropy_variance}), ValidationError);
}

}  // TEST_SUITE
