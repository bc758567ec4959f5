#pragma once

#include <span>
#include <string>
#include <vector>

#include "semdrift/clients/http.hpp"

namespace semdrift::clients {

// Directional: called as similarity(reference, candidate).
struct SentencePair {
  std::string reference;
  std::string candidate;
};

class SimilarityBackend {
 public:
  virtual ~SimilarityBackend() = default;
  // Raw backend scores, one per pair. Use similarity_batch() to get the
  // validated, clamped view.
  virtual std::vector<double> score(std::span<const SentencePair> pairs) = 0;
  virtual std::string id() const = 0;
};

// Scores in request order, clamped to [0, 1] with a warning per clamped
// value. Throws ProtocolError when the backend returns the wrong count.
std::vector<double> similarity_batch(SimilarityBackend& backend, std::span<const SentencePair> pairs);

// Deterministic in-process backend: F1 of the multiset overlap of
// word_tokens(reference) and word_tokens(candidate). Two empty token lists
// score 1; exactly one empty list scores 0.
class TokenOverlapBackend : public SimilarityBackend {
 public:
  std::vector<double> score(std::span<const SentencePair> pairs) override;
  std::string id() const override { return "token-overlap-f1"; }

  static double f1(const std::string& reference, const std::string& candidate);
};

// POST {base}/v1/similarity {"pairs": [{"reference", "candidate"}]}
//   -> {"scores": [...]}
class HttpSimilarityClient : public SimilarityBackend {
 public:
  explicit HttpSimilarityClient(Endpoint endpoint, RetryPolicy retry = {}, std::ptrdiff_t max_in_flight = 4);

  std::vector<double> score(std::span<const SentencePair> pairs) override;
  std::string id() const override { return "http:" + poster_.endpoint().base_url; }

 private:
  JsonPoster poster_;
};

}  // namespace semdrift::clients
