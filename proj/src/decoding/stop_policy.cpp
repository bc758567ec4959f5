#include "semdrift/decoding/stop_policy.hpp"

#include <sstream>

#include "semdrift/core/error.hpp"
#include "semdrift/core/segmenter.hpp"
#include "semdrift/drift/sd_score.hpp"

namespace semdrift::decoding {

std::string_view to_string(StopKind k) {
  switch (k) {
    case StopKind::oracle_drift_point: return "oracle-drift-point";
    case StopKind::eos_top_k: return "eos-top-k";
    case StopKind::sc_relative_increase: return "sc-relative-increase";
    case StopKind::sc_absolute: return "sc-absolute";
  }
  return "?";
}

std::optional<StopKind> parse_stop_kind(std::string_view s) {
  for (auto k : {StopKind::oracle_drift_point, StopKind::eos_top_k, StopKind::sc_relative_increase,
                 StopKind::sc_absolute}) {
    if (to_string(k) == s) return k;
  }
  if (s == "oracle") return StopKind::oracle_drift_point;
  if (s == "eos") return StopKind::eos_top_k;
  if (s == "sc-relative") return StopKind::sc_relative_increase;
  return std::nullopt;
}

std::string_view to_string(FirstSentenceMode m) { return m == FirstSentenceMode::keep ? "keep" : "delete"; }

StopPolicy StopPolicy::oracle(std::size_t m) {
  StopPolicy p;
  p.kind = StopKind::oracle_drift_point;
  p.m = m;
  return p;
}

StopPolicy StopPolicy::eos(std::size_t k) {
  StopPolicy p;
  p.kind = StopKind::eos_top_k;
  p.k = k;
  return p;
}

StopPolicy StopPolicy::sc_relative(double T) {
  StopPolicy p;
  p.kind = StopKind::sc_relative_increase;
  p.T = T;
  return p;
}

StopPolicy StopPolicy::sc_absolute(double A, FirstSentenceMode mode) {
  StopPolicy p;
  p.kind = StopKind::sc_absolute;
  p.A = A;
  p.first_sentence = mode;
  return p;
}

void StopPolicy::validate() const {
  const std::string name(to_string(kind));
  const bool want_m = kind == StopKind::oracle_drift_point;
  const bool want_k = kind == StopKind::eos_top_k;
  const bool want_T = kind == StopKind::sc_relative_increase;
  const bool want_A = kind == StopKind::sc_absolute;
  auto check = [&](bool want, bool has, const char* field) {
    if (want && !has) throw ConfigError(name + " needs parameter " + field);
    if (!want && has) throw ConfigError(name + " does not take parameter " + field);
  };
  check(want_m, m.has_value(), "m");
  check(want_k, k.has_value(), "k");
  check(want_T, T.has_value(), "T");
  check(want_A, A.has_value(), "A");
  check(want_A, first_sentence.has_value(), "first_sentence");
  if (k && *k == 0) throw ConfigError("eos-top-k needs k >= 1");
  if (T && !(*T > 0.0)) throw ConfigError("sc-relative-increase needs T > 0");
  if (A && !(*A > 0.0 && *A < 1.0)) throw ConfigError("sc-absolute needs 0 < A < 1");
}

std::string StopPolicy::describe() const {
  std::ostringstream s;
  s << to_string(kind) << '(';
  if (m) s << "m=" << *m;
  if (k) s << "k=" << *k;
  if (T) s << "T=" << *T;
  if (A) s << "A=" << *A << ",first=" << to_string(*first_sentence);
  s << ')';
  return s.str();
}

StopDecision oracle_stop(const core::AnnotatedParagraph& paragraph, std::size_t m) {
  StopDecision d;
  d.kind = StopKind::oracle_drift_point;
  const auto r = drift::sd_score_fast(paragraph.labels(), m);
  if (!r.drift_point || r.right_anti_precision == 0.0) return d;
  d.stop_sentence_index = paragraph.sentence_of_fact(*r.drift_point);
  d.trigger_value = r.score;
  return d;
}

StopDecision eos_stop(const core::GenerationTrace& trace, std::size_t k) {
  if (k == 0) throw ConfigError("eos-top-k needs k >= 1");
  if (k > trace.k_max) {
    throw ConfigError("eos-top-k with k=" + std::to_string(k) + " exceeds the trace's k_max=" +
                      std::to_string(trace.k_max));
  }
  StopDecision d;
  d.kind = StopKind::eos_top_k;
  for (std::size_t t = 0; t < trace.tokens.size(); ++t) {
    const auto& top = trace.tokens[t].top;
    for (std::size_t r = 0; r < k && r < top.size(); ++r) {
      if (top[r].text == trace.eos_token) {
        d.stop_token_offset = t;
        d.stop_sentence_index = trace.sentence_of_token(t);
        d.trigger_value = static_cast<double>(r + 1);
        return d;
      }
    }
  }
  return d;
}

StopDecision sc_relative_stop(const std::vector<double>& scores, double T) {
  StopDecision d;
  d.kind = StopKind::sc_relative_increase;
  if (scores.empty()) return d;
  const double s0 = scores[0];
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (s0 > 0.0) {
      const double inc = (scores[i] - s0) / s0;
      if (inc > T) {
        d.stop_sentence_index = i;
        d.trigger_value = inc;
        return d;
      }
    } else if (scores[i] > kZeroBaselineEpsilon) {
      d.stop_sentence_index = i;
      d.trigger_value = scores[i];
      return d;
    }
  }
  return d;
}

StopDecision sc_relative_stop(const consistency::ConsistencyProfile& profile, double T) {
  return sc_relative_stop(profile.series(consistency::Metric::selfcheck_similarity), T);
}

StopDecision sc_absolute_stop(const std::vector<double>& scores, double A, FirstSentenceMode mode) {
  StopDecision d;
  d.kind = StopKind::sc_absolute;
  if (scores.empty()) return d;
  if (scores[0] > A && mode == FirstSentenceMode::drop) {
    d.stop_sentence_index = 0;
    d.trigger_value = scores[0];
    d.no_answer = true;
    return d;
  }
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > A) {
      d.stop_sentence_index = i;
      d.trigger_value = scores[i];
      return d;
    }
  }
  return d;
}

StopDecision sc_absolute_stop(const consistency::ConsistencyProfile& profile, double A, FirstSentenceMode mode) {
  return sc_absolute_stop(profile.series(consistency::Metric::selfcheck_similarity), A, mode);
}

StopDecision score_stop(const std::vector<double>& scores, const StopPolicy& policy) {
  policy.validate();
  switch (policy.kind) {
    case StopKind::sc_relative_increase: return sc_relative_stop(scores, *policy.T);
    case StopKind::sc_absolute: return sc_absolute_stop(scores, *policy.A, *policy.first_sentence);
    default: throw ConfigError(policy.describe() + " is not a score-based policy");
  }
}

core::AnnotatedParagraph apply(const core::AnnotatedParagraph& paragraph, const StopDecision& d) {
  return paragraph.keep_sentences(d.kept_sentences(paragraph.sentences.size()));
}

std::string apply(const core::GenerationTrace& trace, const StopDecision& d) {
  std::size_t end = trace.tokens.size();
  if (d.stop_token_offset) {
    end = *d.stop_token_offset;
  } else if (d.stop_sentence_index) {
    const auto kept = d.kept_sentences(trace.sentence_count());
    end = kept == 0 ? 0 : trace.sentence_tokens(kept - 1).second;
  }
  return core::strip_unfinished_tail(trace.text(0, end));
}

}  // namespace semdrift::decoding
