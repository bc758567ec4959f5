#include "semdrift/core/trace.hpp"

#include <algorithm>
#include <string>

#include "semdrift/core/error.hpp"
#include "semdrift/core/segmenter.hpp"

namespace semdrift::core {

void GenerationTrace::validate() const {
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    const auto& tok = tokens[t];
    const std::string where = "tokens[" + std::to_string(t) + "]";
    if (!(tok.logprob <= 0.0)) throw ValidationError("logprob must be <= 0", where + ".logprob");
    if (tok.top.size() != k_max) {
      throw ValidationError("expected " + std::to_string(k_max) + " alternatives, got " +
                                std::to_string(tok.top.size()),
                            where + ".top");
    }
    for (std::size_t j = 0; j < tok.top.size(); ++j) {
      if (!(tok.top[j].logprob <= 0.0)) {
        throw ValidationError("logprob must be <= 0",
                              where + ".top[" + std::to_string(j) + "].logprob");
      }
      if (j > 0 && tok.top[j].logprob > tok.top[j - 1].logprob) {
        throw ValidationError("alternatives must be sorted by descending logprob",
                              where + ".top[" + std::to_string(j) + "]");
      }
    }
  }
  for (std::size_t s = 0; s < sentence_boundaries.size(); ++s) {
    const std::size_t b = sentence_boundaries[s];
    const std::string where = "sentence_boundaries[" + std::to_string(s) + "]";
    if (b > tokens.size()) throw ValidationError("boundary exceeds token count", where);
    if (s > 0 && b <= sentence_boundaries[s - 1]) {
      throw ValidationError("boundaries must be strictly increasing", where);
    }
  }
}

std::pair<std::size_t, std::size_t> GenerationTrace::sentence_tokens(std::size_t s) const {
  const std::size_t begin = s == 0 ? 0 : sentence_boundaries.at(s - 1);
  return {begin, sentence_boundaries.at(s)};
}

std::size_t GenerationTrace::sentence_of_token(std::size_t t) const {
  auto it = std::upper_bound(sentence_boundaries.begin(), sentence_boundaries.end(), t);
  return static_cast<std::size_t>(it - sentence_boundaries.begin());
}

std::string GenerationTrace::text() const { return text(0, tokens.size()); }

std::string GenerationTrace::text(std::size_t begin_token, std::size_t end_token) const {
  std::string out;
  end_token = std::min(end_token, tokens.size());
  for (std::size_t t = begin_token; t < end_token; ++t) out += tokens[t].text;
  return out;
}

std::string GenerationTrace::sentence_text(std::size_t s) const {
  auto [b, e] = sentence_tokens(s);
  return text(b, e);
}

std::vector<std::size_t> derive_sentence_boundaries(const std::vector<TraceToken>& tokens,
                                                    const SentenceSegmenter& segmenter) {
  std::string text;
  std::vector<std::size_t> token_end;  // char offset one past each token
  for (const auto& t : tokens) {
    text += t.text;
    token_end.push_back(text.size());
  }
  std::vector<std::size_t> out;
  for (const auto& span : segmenter.split(text)) {
    if (!span.terminated) continue;
    // First token whose end reaches the sentence end.
    auto it = std::lower_bound(token_end.begin(), token_end.end(), span.end);
    const auto b = static_cast<std::size_t>(it - token_end.begin()) + 1;
    if (b <= tokens.size() && (out.empty() || b > out.back())) out.push_back(b);
  }
  return out;
}

}  // namespace semdrift::core
