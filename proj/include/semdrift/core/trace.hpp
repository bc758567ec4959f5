#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace semdrift::core {

struct TokenAlternative {
  std::string text;
  double logprob = 0.0;

  bool operator==(const TokenAlternative&) const = default;
};

struct TraceToken {
  std::string text;
  double logprob = 0.0;
  // Sorted by descending logprob; the same length (k_max) for every token.
  std::vector<TokenAlternative> top;

  bool operator==(const TraceToken&) const = default;
};

// Per-token record of one generation. Sentence s covers tokens
// [boundary[s-1], boundary[s]) with boundary[-1] = 0; tokens past the last
// boundary form an unfinished tail.
struct GenerationTrace {
  std::string topic;
  std::vector<TraceToken> tokens;
  std::vector<std::size_t> sentence_boundaries;
  std::string eos_token = "</s>";
  std::size_t k_max = 0;
  nlohmann::json extra = nlohmann::json::object();

  void validate() const;

  std::size_t sentence_count() const { return sentence_boundaries.size(); }
  std::pair<std::size_t, std::size_t> sentence_tokens(std::size_t s) const;
  // Sentence containing token `t`; sentence_count() when t lies in the tail.
  std::size_t sentence_of_token(std::size_t t) const;

  std::string text() const;
  std::string text(std::size_t begin_token, std::size_t end_token) const;
  std::string sentence_text(std::size_t s) const;

  bool operator==(const GenerationTrace&) const = default;
};

class SentenceSegmenter;

// Recomputes sentence_boundaries from the token texts: a boundary is placed
// after the token that contains the end of each terminated sentence.
std::vector<std::size_t> derive_sentence_boundaries(const std::vector<TraceToken>& tokens,
                                                    const SentenceSegmenter& segmenter);

}  // namespace semdrift::core
