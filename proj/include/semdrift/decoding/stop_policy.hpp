#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semdrift/consistency/profile.hpp"
#include "semdrift/core/paragraph.hpp"
#include "semdrift/core/trace.hpp"

namespace semdrift::decoding {

enum class StopKind { oracle_drift_point, eos_top_k, sc_relative_increase, sc_absolute };
enum class FirstSentenceMode { keep, drop };

std::string_view to_string(StopKind k);
std::optional<StopKind> parse_stop_kind(std::string_view s);
std::string_view to_string(FirstSentenceMode m);  // "keep" / "delete"

inline constexpr double kZeroBaselineEpsilon = 1e-6;

// Exactly the parameters used by `kind` are set: m (oracle), k (eos-top-k),
// T (sc-relative-increase), A and first_sentence (sc-absolute).
struct StopPolicy {
  StopKind kind = StopKind::oracle_drift_point;
  std::optional<std::size_t> m;
  std::optional<std::size_t> k;
  std::optional<double> T;
  std::optional<double> A;
  std::optional<FirstSentenceMode> first_sentence;

  static StopPolicy oracle(std::size_t m);
  static StopPolicy eos(std::size_t k);
  static StopPolicy sc_relative(double T);
  static StopPolicy sc_absolute(double A, FirstSentenceMode mode);

  // Throws ConfigError.
  void validate() const;
  // e.g. "eos-top-k(k=5)"
  std::string describe() const;

  bool operator==(const StopPolicy&) const = default;
};

// Keep sentences [0, stop_sentence_index). Both indices absent means no
// stop. stop_token_offset is set by eos-top-k only and lies in the stop
// sentence (or in the unfinished tail when the index equals the sentence
// count).
struct StopDecision {
  std::optional<std::size_t> stop_sentence_index;
  std::optional<std::size_t> stop_token_offset;
  StopKind kind = StopKind::oracle_drift_point;
  double trigger_value = 0.0;
  bool no_answer = false;

  bool stops() const { return stop_sentence_index.has_value(); }
  std::size_t kept_sentences(std::size_t total) const {
    return stop_sentence_index ? std::min(*stop_sentence_index, total) : total;
  }
};

// Stops before the sentence holding fact k, the drift point of
// sd_score(labels, m). No stop without a drift point or when nothing right
// of it is unsupported.
StopDecision oracle_stop(const core::AnnotatedParagraph& paragraph, std::size_t m);

// First token whose top-k alternatives contain the trace's EOS token. Throws
// ConfigError when k is 0 or exceeds the trace's k_max.
StopDecision eos_stop(const core::GenerationTrace& trace, std::size_t k);

// Stops before the first i >= 1 with (s_i - s_0) / s_0 > T; with s_0 = 0 any
// s_i > kZeroBaselineEpsilon triggers.
StopDecision sc_relative_stop(const std::vector<double>& scores, double T);
StopDecision sc_relative_stop(const consistency::ConsistencyProfile& profile, double T);

// s_0 > A: `drop` gives an empty (no-answer) output, `keep` retains S_0.
// Afterwards stops before the first i >= 1 with s_i > A.
StopDecision sc_absolute_stop(const std::vector<double>& scores, double A, FirstSentenceMode mode);
StopDecision sc_absolute_stop(const consistency::ConsistencyProfile& profile, double A, FirstSentenceMode mode);

// Dispatch on the policy kind for score-based policies. Throws ConfigError
// for oracle and eos-top-k, which need labels or a trace.
StopDecision score_stop(const std::vector<double>& scores, const StopPolicy& policy);

core::AnnotatedParagraph apply(const core::AnnotatedParagraph& paragraph, const StopDecision& d);

// Text of the trace up to the stop token (or the stop sentence), passed
// through strip_unfinished_tail.
std::string apply(const core::GenerationTrace& trace, const StopDecision& d);

}  // namespace semdrift::decoding
