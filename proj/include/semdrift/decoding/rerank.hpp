#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semdrift/clients/generator.hpp"
#include "semdrift/clients/similarity.hpp"
#include "semdrift/core/samples.hpp"
#include "semdrift/decoding/stop_policy.hpp"
#include "semdrift/metrics/flops.hpp"

namespace semdrift::decoding {

// Seeds: reference passage j uses seed + j; option j of sentence i uses
// seed + n_reference + i * options_per_sentence + j.
struct RerankOptions {
  std::size_t options_per_sentence = 5;
  std::size_t n_reference = 3;
  int max_tokens = 500;          // tokens of the kept passage
  int sentence_max_tokens = 60;  // per candidate request
  double temperature = 0.6;
  double top_p = 0.9;
  std::uint64_t seed = 0;
  // Checked after each selection: sc-relative-increase, sc-absolute or
  // eos-top-k (the chosen sentence has EOS in the top-k of one of its
  // tokens). The oracle is evaluation-only and rejected.
  std::optional<StopPolicy> stop_policy;
};

struct RerankCandidate {
  std::uint64_t seed = 0;
  std::string sentence;       // full sentence text, trimmed
  std::string continuation;   // text appended to the passage if chosen
  std::size_t tokens = 0;     // tokens of the continuation
  bool finished = false;      // contains a terminated sentence
  bool duplicate = false;
  std::optional<double> score;
  bool eos_in_top_k = false;
};

struct RerankStep {
  std::vector<RerankCandidate> candidates;
  std::optional<std::size_t> chosen;  // index into candidates
};

enum class Termination { no_novel_candidates, max_tokens, stop_policy, error };
std::string_view to_string(Termination t);

struct RerankResult {
  std::string passage;  // starts at the topic; empty when nothing was kept
  std::vector<std::string> sentences;
  std::vector<double> scores;  // selfcheck-similarity of each kept sentence
  std::vector<RerankStep> steps;
  Termination termination = Termination::no_novel_candidates;
  std::optional<std::string> error;
  core::SamplePassageSet references;
  metrics::SessionLog session;  // scorer pass = one sentence vs one reference passage
};

// Sentence-by-sentence resample-then-rerank. Candidate requests for one
// sentence run concurrently (the generator must be thread-safe); selection
// waits for all of them. A generator or scorer failure ends the loop with
// the passage built so far and `error` set.
RerankResult rerank_generate(std::string_view topic, clients::GeneratorClient& generator,
                             clients::SimilarityBackend& scorer, const RerankOptions& options = {});

}  // namespace semdrift::decoding
