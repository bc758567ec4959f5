#pragma once

#include <string>
#include <vector>

#include "semdrift/clients/similarity.hpp"
#include "semdrift/consistency/profile.hpp"
#include "semdrift/core/samples.hpp"

namespace semdrift::consistency {

// 1 - mean over sample passages of the best similarity between `sentence`
// and any sentence of that passage. A passage without sentences counts as
// similarity 0 and triggers a warning. 0 = fully consistent.
double selfcheck_similarity(const std::string& sentence, const core::SamplePassageSet& samples,
                            clients::SimilarityBackend& backend);

// Scores every original sentence of `samples` in one backend batch.
std::vector<double> selfcheck_similarity_all(const core::SamplePassageSet& samples,
                                             clients::SimilarityBackend& backend);

// Score from a precomputed best-match similarity per sample.
double selfcheck_from_best(const std::vector<double>& best_per_sample);

// selfcheck-similarity and selfcheck-ngram-{1,5,10} for every original
// sentence.
ConsistencyProfile selfcheck_profile(const core::SamplePassageSet& samples, clients::SimilarityBackend& backend);

}  // namespace semdrift::consistency
