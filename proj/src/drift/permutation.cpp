#include "semdrift/drift/permutation.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>
#include <vector>

#include "semdrift/core/error.hpp"
#include "semdrift/drift/sd_score.hpp"

namespace semdrift::drift {
namespace {

constexpr std::size_t kShards = 16;

std::mt19937_64 shard_engine(std::uint64_t master, std::size_t shard) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(shard), 0x5d1f7u};
  return std::mt19937_64(seq);
}

std::size_t run_shard(const core::FactSequence& labels, std::size_t m, double observed,
                      std::uint64_t master, std::size_t shard, std::size_t count) {
  auto rng = shard_engine(master, shard);
  std::vector<std::uint8_t> work(labels.labels().begin(), labels.labels().end());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < count; ++i) {
    std::shuffle(work.begin(), work.end(), rng);
    if (sd_score_fast(core::FactSequence(work), m).score >= observed) ++hits;
  }
  return hits;
}

}  // namespace

PermutationTestResult permutation_pvalue(const core::FactSequence& labels, std::size_t m,
                                         const PermutationOptions& options) {
  if (options.n_shuffles == 0) throw ValidationError("n_shuffles must be positive", "n_shuffles");

  PermutationTestResult result;
  result.n_shuffles = options.n_shuffles;
  result.seed = options.seed;
  result.observed_score = sd_score_fast(labels, m).score;

  std::vector<std::size_t> counts(kShards), hits(kShards, 0);
  for (std::size_t s = 0; s < kShards; ++s) {
    counts[s] = options.n_shuffles / kShards + (s < options.n_shuffles % kShards ? 1 : 0);
  }

  std::size_t workers = options.workers == 0 ? std::thread::hardware_concurrency() : options.workers;
  workers = std::clamp<std::size_t>(workers, 1, kShards);
  if (workers == 1) {
    for (std::size_t s = 0; s < kShards; ++s) {
      hits[s] = run_shard(labels, m, result.observed_score, options.seed, s, counts[s]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t s = next++; s < kShards; s = next++) {
          hits[s] = run_shard(labels, m, result.observed_score, options.seed, s, counts[s]);
        }
      });
    }
  }

  for (std::size_t h : hits) result.n_at_least += h;
  result.p_value = static_cast<double>(result.n_at_least + 1) /
                   static_cast<double>(options.n_shuffles + 1);
  result.raw_proportion =
      static_cast<double>(result.n_at_least) / static_cast<double>(options.n_shuffles);
  return result;
}

}  // namespace semdrift::drift
