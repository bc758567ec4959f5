#include "semdrift/consistency/intrinsic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace semdrift::consistency {

double token_entropy(const core::TraceToken& token) {
  if (token.top.empty()) return 0.0;
  const double max_lp = token.top.front().logprob;
  double z = 0.0;
  for (const auto& alt : token.top) z += std::exp(alt.logprob - max_lp);
  double h = 0.0;
  for (const auto& alt : token.top) {
    const double p = std::exp(alt.logprob - max_lp) / z;
    if (p > 0.0) h -= p * std::log(p);
  }
  return std::max(h, 0.0);
}

IntrinsicScores intrinsic_for_tokens(const core::GenerationTrace& trace, std::size_t begin, std::size_t end) {
  IntrinsicScores out;
  if (end <= begin) return out;
  std::vector<double> h;
  for (std::size_t t = begin; t < end; ++t) {
    h.push_back(token_entropy(trace.tokens[t]));
    out.neg_log_likelihood -= trace.tokens[t].logprob;
  }
  double sum = 0.0;
  for (double v : h) sum += v;
  out.mean_entropy = sum / static_cast<double>(h.size());
  double ss = 0.0;
  for (double v : h) ss += (v - out.mean_entropy) * (v - out.mean_entropy);
  out.entropy_variance = ss / static_cast<double>(h.size());
  out.neg_log_likelihood = std::max(out.neg_log_likelihood, 0.0);
  return out;
}

std::vector<IntrinsicScores> intrinsic_metrics(const core::GenerationTrace& trace) {
  if (trace.k_max == 0) throw ConfigError("trace has no top-k alternatives (k_max = 0)");
  std::vector<IntrinsicScores> out;
  for (std::size_t s = 0; s < trace.sentence_count(); ++s) {
    auto [b, e] = trace.sentence_tokens(s);
    if (e <= b) throw ValidationError("sentence has no tokens", "sentence_boundaries[" + std::to_string(s) + "]");
    out.push_back(intrinsic_for_tokens(trace, b, e));
  }
  return out;
}

namespace {

IntrinsicScores first_sentence_scores(const core::GenerationTrace& trace) {
  const std::size_t end = trace.sentence_count() > 0 ? trace.sentence_boundaries.front() : trace.tokens.size();
  return intrinsic_for_tokens(trace, 0, end);
}

}  // namespace

IntrinsicScores intrinsic_metrics_avg(std::string_view prefix, clients::GeneratorClient& generator, std::size_t k,
                                      const AverageOptions& options) {
  if (options.n_samples == 0) throw ConfigError("n_samples must be positive");
  if (k == 0) throw ConfigError("intrinsic metrics need top-k alternatives (k = 0)");
  IntrinsicScores sum;
  for (std::size_t i = 0; i < options.n_samples; ++i) {
    clients::GeneratorRequest req;
    req.prompt = std::string(prefix);
    req.max_tokens = options.max_tokens;
    req.temperature = options.temperature;
    req.top_p = options.top_p;
    req.seed = options.seed + i;
    req.logprobs_k = static_cast<int>(k);
    clients::Completion c;
    try {
      c = generator.complete(req);
    } catch (const RemoteError& e) {
      throw SampleError(i, e.what(), e.retriable());
    }
    if (c.trace.tokens.empty()) throw SampleError(i, "empty regeneration", false);
    const auto s = first_sentence_scores(c.trace);
    sum.mean_entropy += s.mean_entropy;
    sum.entropy_variance += s.entropy_variance;
    sum.neg_log_likelihood += s.neg_log_likelihood;
  }
  const auto n = static_cast<double>(options.n_samples);
  return {sum.mean_entropy / n, sum.entropy_variance / n, sum.neg_log_likelihood / n};
}

std::vector<IntrinsicScores> intrinsic_profile_avg(const core::GenerationTrace& trace, std::string_view prompt,
                                                   clients::GeneratorClient& generator,
                                                   const AverageOptions& options) {
  std::vector<IntrinsicScores> out;
  for (std::size_t s = 0; s < trace.sentence_count(); ++s) {
    const auto begin = trace.sentence_tokens(s).first;
    const std::string prefix = std::string(prompt) + trace.text(0, begin);
    out.push_back(intrinsic_metrics_avg(prefix, generator, trace.k_max, options));
  }
  return out;
}

}  // namespace semdrift::consistency
