#include "semdrift/util/histogram.hpp"

#include <algorithm>
#include <cmath>

namespace semdrift::util {

Histogram::Histogram(double lo, double hi, std::size_t bins)
    : lo_(lo), width_((hi - lo) / static_cast<double>(bins)), counts_(bins, 0) {}

std::size_t Histogram::bin_of(double value) const {
  const double pos = std::floor((value - lo_) / width_ + 1e-9);
  if (pos < 0) return 0;
  return std::min(static_cast<std::size_t>(pos), counts_.size() - 1);
}

void Histogram::add(double value) {
  ++counts_[bin_of(value)];
  ++total_;
}

double Histogram::lower_edge(std::size_t bin) const { return lo_ + width_ * static_cast<double>(bin); }
double Histogram::upper_edge(std::size_t bin) const { return lo_ + width_ * static_cast<double>(bin + 1); }

double Histogram::density(std::size_t bin) const {
  if (total_ == 0) return 0.0;
  return static_cast<double>(counts_[bin]) / (static_cast<double>(total_) * width_);
}

std::size_t Histogram::mode() const {
  return static_cast<std::size_t>(std::max_element(counts_.begin(), counts_.end()) - counts_.begin());
}

}  // namespace semdrift::util
