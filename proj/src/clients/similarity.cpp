#include "semdrift/clients/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "semdrift/core/error.hpp"
#include "semdrift/core/text.hpp"
#include "semdrift/util/diagnostics.hpp"

namespace semdrift::clients {

std::vector<double> similarity_batch(SimilarityBackend& backend, std::span<const SentencePair> pairs) {
  auto scores = backend.score(pairs);
  if (scores.size() != pairs.size()) {
    throw ProtocolError("similarity backend " + backend.id() + " returned " + std::to_string(scores.size()) +
                        " scores for " + std::to_string(pairs.size()) + " pairs");
  }
  for (std::size_t i = 0; i < scores.size(); ++i) {
    double& s = scores[i];
    if (std::isnan(s) || s < 0.0 || s > 1.0) {
      const double clamped = std::isnan(s) ? 0.0 : std::clamp(s, 0.0, 1.0);
      util::warn("similarity score " + std::to_string(s) + " for pair " + std::to_string(i) +
                 " clamped to " + std::to_string(clamped));
      s = clamped;
    }
  }
  return scores;
}

double TokenOverlapBackend::f1(const std::string& reference, const std::string& candidate) {
  const auto ref = core::word_tokens(reference);
  const auto cand = core::word_tokens(candidate);
  if (ref.empty() && cand.empty()) return 1.0;
  if (ref.empty() || cand.empty()) return 0.0;
  std::map<std::string, std::size_t> counts;
  for (const auto& t : ref) ++counts[t];
  std::size_t overlap = 0;
  for (const auto& t : cand) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  if (overlap == 0) return 0.0;
  const double precision = static_cast<double>(overlap) / static_cast<double>(cand.size());
  const double recall = static_cast<double>(overlap) / static_cast<double>(ref.size());
  return 2.0 * precision * recall / (precision + recall);
}

std::vector<double> TokenOverlapBackend::score(std::span<const SentencePair> pairs) {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(f1(p.reference, p.candidate));
  return out;
}

HttpSimilarityClient::HttpSimilarityClient(Endpoint endpoint, RetryPolicy retry, std::ptrdiff_t max_in_flight)
    : poster_(std::move(endpoint), retry, max_in_flight) {}

std::vector<double> HttpSimilarityClient::score(std::span<const SentencePair> pairs) {
  nlohmann::json body{{"pairs", nlohmann::json::array()}};
  for (const auto& p : pairs) body["pairs"].push_back({{"reference", p.reference}, {"candidate", p.candidate}});
  const auto reply = poster_.post("/v1/similarity", body);
  try {
    return reply.at("scores").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("malformed similarity reply: ") + e.what());
  }
}

}  // namespace semdrift::clients
