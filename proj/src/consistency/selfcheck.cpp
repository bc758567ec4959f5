#include "semdrift/consistency/selfcheck.hpp"

#include <algorithm>

#include "semdrift/consistency/ngram.hpp"
#include "semdrift/util/diagnostics.hpp"

namespace semdrift::consistency {

double selfcheck_from_best(const std::vector<double>& best_per_sample) {
  if (best_per_sample.empty()) return 1.0;
  double sum = 0.0;
  for (double v : best_per_sample) sum += v;
  return std::clamp(1.0 - sum / static_cast<double>(best_per_sample.size()), 0.0, 1.0);
}

std::vector<double> selfcheck_similarity_all(const core::SamplePassageSet& samples,
                                             clients::SimilarityBackend& backend) {
  samples.validate();
  const auto& originals = samples.original_sentences;
  std::vector<clients::SentencePair> pairs;
  for (const auto& s : originals) {
    for (const auto& sample : samples.samples) {
      for (const auto& cand : sample.sentences) pairs.push_back({s, cand});
    }
  }
  for (std::size_t i = 0; i < samples.samples.size(); ++i) {
    if (samples.samples[i].sentences.empty() && !originals.empty()) {
      util::warn("sample " + std::to_string(i) + " (seed " + std::to_string(samples.samples[i].seed) +
                 ") has no sentences; counted as similarity 0");
    }
  }
  const auto scores = pairs.empty() ? std::vector<double>{} : clients::similarity_batch(backend, pairs);
  std::vector<double> out;
  std::size_t at = 0;
  for (std::size_t s = 0; s < originals.size(); ++s) {
    std::vector<double> best;
    for (const auto& sample : samples.samples) {
      double b = 0.0;
      for (std::size_t j = 0; j < sample.sentences.size(); ++j) b = std::max(b, scores[at++]);
      best.push_back(b);
    }
    out.push_back(selfcheck_from_best(best));
  }
  return out;
}

double selfcheck_similarity(const std::string& sentence, const core::SamplePassageSet& samples,
                            clients::SimilarityBackend& backend) {
  core::SamplePassageSet one = samples;
  one.original_sentences = {sentence};
  return selfcheck_similarity_all(one, backend).front();
}

ConsistencyProfile selfcheck_profile(const core::SamplePassageSet& samples, clients::SimilarityBackend& backend) {
  ConsistencyProfile p(samples.samples.size(), backend.id());
  const auto sim = selfcheck_similarity_all(samples, backend);
  for (std::size_t s = 0; s < sim.size(); ++s) p.set(s, Metric::selfcheck_similarity, sim[s]);
  const std::pair<std::size_t, Metric> orders[] = {
      {1, Metric::selfcheck_ngram_1}, {5, Metric::selfcheck_ngram_5}, {10, Metric::selfcheck_ngram_10}};
  for (const auto& [n, metric] : orders) {
    const auto v = selfcheck_ngram(samples, n);
    for (std::size_t s = 0; s < v.size(); ++s) p.set(s, metric, v[s]);
  }
  return p;
}

}  // namespace semdrift::consistency
