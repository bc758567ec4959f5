#pragma once

#include <cstddef>
#include <vector>

namespace semdrift::util {

// Fixed-width bins over [lo, hi]. The value hi lands in the last bin;
// values outside the range are clamped into the edge bins.
class Histogram {
 public:
  Histogram(double lo, double hi, std::size_t bins);

  void add(double value);

  std::size_t bins() const { return counts_.size(); }
  std::size_t total() const { return total_; }
  double lower_edge(std::size_t bin) const;
  double upper_edge(std::size_t bin) const;
  std::size_t count(std::size_t bin) const { return counts_[bin]; }
  // count / (total * width); 0 when empty.
  double density(std::size_t bin) const;
  std::size_t bin_of(double value) const;
  // Bin with the highest count, smallest index on ties.
  std::size_t mode() const;

 private:
  double lo_;
  double width_;
  std::vector<std::size_t> counts_;
  std::size_t total_ = 0;
};

}  // namespace semdrift::util
