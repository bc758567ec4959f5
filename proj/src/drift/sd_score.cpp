#include "semdrift/drift/sd_score.hpp"

namespace semdrift::drift {
namespace {

double proportion(std::size_t count, std::size_t size) {
  return size == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(size);
}

__extension__ typedef unsigned __int128 Wide;

// The split score as an exact fraction, so that ties are detected exactly
// and smallest-k tie breaking does not depend on rounding.
struct Fraction {
  Wide num = 0;
  Wide den = 1;
};

Fraction exact_split(std::size_t left_supported, std::size_t left_size, std::size_t right_unsupported,
                     std::size_t right_size) {
  if (left_size == 0) return {right_unsupported, Wide{2} * right_size};
  if (right_size == 0) return {left_supported, Wide{2} * left_size};
  return {Wide{left_supported} * right_size + Wide{right_unsupported} * left_size,
          Wide{2} * left_size * right_size};
}

struct Tracker {
  DriftResult& best;
  Fraction best_exact;

  // Folds split k into `best` with smallest-k tie breaking.
  void consider(std::size_t k, std::size_t left_supported, std::size_t n, std::size_t right_unsupported) {
    const double s = split_score(left_supported, k, right_unsupported, n - k);
    const Fraction f = exact_split(left_supported, k, right_unsupported, n - k);
    if (!best.drift_point || f.num * best_exact.den > best_exact.num * f.den) {
      best_exact = f;
      best.score = s;
      best.drift_point = k;
      best.left_precision = proportion(left_supported, k);
      best.right_anti_precision = proportion(right_unsupported, n - k);
    }
    if (!best.per_split.empty()) best.per_split[k] = s;
  }
};

}  // namespace

bool admissible(std::size_t k, std::size_t n, std::size_t m) {
  return n > 0 && k <= n && k >= m && n - k >= m && n >= 2 * m;
}

double split_score(std::size_t left_supported, std::size_t left_size,
                   std::size_t right_unsupported, std::size_t right_size) {
  return 0.5 * (proportion(left_supported, left_size) + proportion(right_unsupported, right_size));
}

DriftResult sd_score(const core::FactSequence& labels, std::size_t m, bool keep_per_split) {
  const std::size_t n = labels.size();
  DriftResult best;
  best.m = m;
  best.n_facts = n;
  if (keep_per_split) best.per_split.assign(n + 1, 0.0);
  Tracker tracker{best, {}};
  for (std::size_t k = 0; k <= n; ++k) {
    if (!admissible(k, n, m)) continue;
    std::size_t left = 0;
    for (std::size_t i = 0; i < k; ++i) left += labels[i];
    std::size_t right = 0;
    for (std::size_t i = k; i < n; ++i) right += 1 - labels[i];
    tracker.consider(k, left, n, right);
  }
  if (!best.drift_point) best.score = 0.0;
  return best;
}

DriftResult sd_score_fast(const core::FactSequence& labels, std::size_t m, bool keep_per_split) {
  const std::size_t n = labels.size();
  DriftResult best;
  best.m = m;
  best.n_facts = n;
  if (keep_per_split) best.per_split.assign(n + 1, 0.0);
  if (n == 0 || n < 2 * m) return best;

  Tracker tracker{best, {}};
  const std::size_t total_supported = labels.supported();
  std::size_t left = 0;  // supported facts in [0, k)
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) left += labels[k - 1];
    if (k < m || n - k < m) continue;
    const std::size_t right_supported = total_supported - left;
    tracker.consider(k, left, n, (n - k) - right_supported);
  }
  return best;
}

}  // namespace semdrift::drift
