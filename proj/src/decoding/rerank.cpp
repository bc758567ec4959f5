#include "semdrift/decoding/rerank.hpp"

#include <algorithm>
#include <future>

#include "semdrift/consistency/selfcheck.hpp"
#include "semdrift/core/error.hpp"
#include "semdrift/core/segmenter.hpp"
#include "semdrift/core/text.hpp"
#include "semdrift/decoding/tool_call.hpp"
#include "semdrift/util/diagnostics.hpp"

namespace semdrift::decoding {
namespace {

std::size_t tokens_before(const core::GenerationTrace& trace, std::size_t chars) {
  std::size_t at = 0;
  for (std::size_t t = 0; t < trace.tokens.size(); ++t) {
    if (at >= chars) return t;
    at += trace.tokens[t].text.size();
  }
  return trace.tokens.size();
}

bool eos_within(const core::GenerationTrace& trace, std::size_t n_tokens, std::size_t k) {
  for (std::size_t t = 0; t < n_tokens && t < trace.tokens.size(); ++t) {
    const auto& top = trace.tokens[t].top;
    for (std::size_t r = 0; r < k && r < top.size(); ++r) {
      if (top[r].text == trace.eos_token) return true;
    }
  }
  return false;
}

RerankCandidate make_candidate(const clients::Completion& c, std::uint64_t seed, const std::string& open_sentence,
                               std::size_t eos_k) {
  RerankCandidate cand;
  cand.seed = seed;
  const std::string joined = open_sentence + c.text;
  const auto spans = core::RuleBasedSegmenter::standard().split(joined);
  if (spans.empty() || !spans.front().terminated || spans.front().end <= open_sentence.size()) return cand;
  cand.finished = true;
  cand.continuation = c.text.substr(0, spans.front().end - open_sentence.size());
  cand.sentence = std::string(core::trim(std::string_view(joined).substr(0, spans.front().end)));
  cand.tokens = c.trace.tokens.empty() ? core::word_and_punct_tokens(cand.continuation).size()
                                       : tokens_before(c.trace, cand.continuation.size());
  if (eos_k > 0) cand.eos_in_top_k = eos_within(c.trace, cand.tokens, eos_k);
  return cand;
}

}  // namespace

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::no_novel_candidates: return "no-novel-candidates";
    case Termination::max_tokens: return "max-tokens";
    case Termination::stop_policy: return "stop-policy";
    case Termination::error: return "error";
  }
  return "?";
}

RerankResult rerank_generate(std::string_view topic, clients::GeneratorClient& generator,
                             clients::SimilarityBackend& scorer, const RerankOptions& options) {
  if (options.options_per_sentence == 0) throw ConfigError("options_per_sentence must be positive");
  if (options.n_reference == 0) throw ConfigError("n_reference must be positive");
  if (options.max_tokens <= 0) throw ConfigError("max_tokens must be positive");
  std::size_t eos_k = 0;
  if (options.stop_policy) {
    options.stop_policy->validate();
    if (options.stop_policy->kind == StopKind::oracle_drift_point) {
      throw ConfigError("the oracle policy needs fact labels and cannot steer generation");
    }
    if (options.stop_policy->kind == StopKind::eos_top_k) eos_k = *options.stop_policy->k;
  }

  RerankResult out;
  const std::string prompt = clients::biography_prompt(topic);
  const auto lead_pos = prompt.rfind(std::string(topic));
  const std::string lead = prompt.substr(lead_pos == std::string::npos ? prompt.size() : lead_pos);
  out.references.topic = std::string(topic);
  out.references.params = {options.temperature, options.top_p};

  auto request = [&](const std::string& p, std::uint64_t seed, int max_tokens) {
    clients::GeneratorRequest req;
    req.prompt = p;
    req.max_tokens = max_tokens;
    req.temperature = options.temperature;
    req.top_p = options.top_p;
    req.seed = seed;
    req.logprobs_k = static_cast<int>(eos_k);
    return req;
  };
  auto count = [&](const clients::Completion& c) {
    ++out.session.generator_passes;
    out.session.generator_tokens +=
        c.trace.tokens.empty() ? core::word_and_punct_tokens(c.text).size() : c.trace.tokens.size();
  };

  try {
    for (std::size_t j = 0; j < options.n_reference; ++j) {
      const auto c = generator.complete(request(prompt, options.seed + j, options.max_tokens));
      count(c);
      core::SampledPassage s;
      s.seed = options.seed + j;
      s.text = core::strip_unfinished_tail(lead + c.text);
      s.sentences = core::RuleBasedSegmenter::standard().sentences(s.text);
      out.references.samples.push_back(std::move(s));
    }
  } catch (const RemoteError& e) {
    out.termination = Termination::error;
    out.error = std::string("reference sampling: ") + e.what();
    return out;
  }

  std::string continuation;  // text after the prompt
  std::vector<std::string> seen;
  std::size_t kept_tokens = 0;
  bool warned_seeds = false;
  for (std::size_t i = 0;; ++i) {
    const std::string context = prompt + continuation;
    const std::string open = unfinished_sentence(context);
    RerankStep step;

    std::vector<std::future<clients::Completion>> pending;
    for (std::size_t j = 0; j < options.options_per_sentence; ++j) {
      const auto seed = options.seed + options.n_reference + i * options.options_per_sentence + j;
      pending.push_back(std::async(std::launch::async, [&generator, req = request(context, seed, options.sentence_max_tokens)] {
        return generator.complete(req);
      }));
    }
    std::optional<std::string> failure;
    std::vector<std::string> raw;
    for (std::size_t j = 0; j < pending.size(); ++j) {
      const auto seed = options.seed + options.n_reference + i * options.options_per_sentence + j;
      try {
        const auto c = pending[j].get();
        count(c);
        raw.push_back(c.text);
        step.candidates.push_back(make_candidate(c, seed, open, eos_k));
      } catch (const RemoteError& e) {
        if (!failure) failure = "sentence " + std::to_string(i) + ", seed " + std::to_string(seed) + ": " + e.what();
      }
    }
    if (failure) {
      out.steps.push_back(std::move(step));
      out.termination = Termination::error;
      out.error = *failure;
      break;
    }
    if (!warned_seeds && options.temperature > 0.0 && raw.size() > 1 &&
        std::all_of(raw.begin(), raw.end(), [&](const std::string& r) { return r == raw.front(); })) {
      util::warn("generator returned identical candidates for different seeds at temperature > 0; "
                 "seeds may be ignored");
      warned_seeds = true;
    }

    core::SamplePassageSet scoring = out.references;
    std::vector<std::size_t> survivors;
    for (std::size_t j = 0; j < step.candidates.size(); ++j) {
      auto& cand = step.candidates[j];
      if (!cand.finished) continue;
      const auto norm = core::normalize_for_match(cand.sentence);
      cand.duplicate = std::find(seen.begin(), seen.end(), norm) != seen.end();
      if (cand.duplicate) continue;
      survivors.push_back(j);
      scoring.original_sentences.push_back(cand.sentence);
    }
    if (survivors.empty()) {
      out.steps.push_back(std::move(step));
      out.termination = Termination::no_novel_candidates;
      break;
    }
    std::vector<double> scores;
    try {
      scores = consistency::selfcheck_similarity_all(scoring, scorer);
    } catch (const RemoteError& e) {
      out.steps.push_back(std::move(step));
      out.termination = Termination::error;
      out.error = "sentence " + std::to_string(i) + " scoring: " + e.what();
      break;
    }
    out.session.scorer_passes += survivors.size() * out.references.samples.size();
    std::size_t best = survivors[0];
    for (std::size_t s = 0; s < survivors.size(); ++s) {
      auto& cand = step.candidates[survivors[s]];
      cand.score = scores[s];
      const auto& b = step.candidates[best];
      if (*cand.score < *b.score || (*cand.score == *b.score && cand.seed < b.seed)) best = survivors[s];
    }
    step.chosen = best;
    const RerankCandidate chosen = step.candidates[best];
    out.steps.push_back(std::move(step));

    if (options.stop_policy) {
      bool stop = false;
      if (options.stop_policy->kind == StopKind::eos_top_k) {
        stop = chosen.eos_in_top_k;
      } else {
        auto series = out.scores;
        series.push_back(*chosen.score);
        const auto d = score_stop(series, *options.stop_policy);
        stop = d.stop_sentence_index && *d.stop_sentence_index <= i;
      }
      if (stop) {
        out.termination = Termination::stop_policy;
        break;
      }
    }

    continuation += chosen.continuation;
    out.sentences.push_back(chosen.sentence);
    out.scores.push_back(*chosen.score);
    seen.push_back(core::normalize_for_match(chosen.sentence));
    kept_tokens += chosen.tokens;
    if (kept_tokens >= static_cast<std::size_t>(options.max_tokens)) {
      out.termination = Termination::max_tokens;
      break;
    }
  }
  if (!out.sentences.empty()) out.passage = std::string(core::trim(lead + continuation));
  return out;
}

}  // namespace semdrift::decoding
