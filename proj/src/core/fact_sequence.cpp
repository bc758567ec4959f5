#include "semdrift/core/fact_sequence.hpp"

#include <algorithm>
#include <string>

#include "semdrift/core/error.hpp"

namespace semdrift::core {

FactSequence::FactSequence(std::vector<std::uint8_t> labels) : labels_(std::move(labels)) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] > 1) {
      throw ValidationError("label must be 0 or 1, got " + std::to_string(labels_[i]),
                            "labels[" + std::to_string(i) + "]");
    }
  }
}

FactSequence::FactSequence(std::initializer_list<int> labels) {
  labels_.reserve(labels.size());
  std::size_t i = 0;
  for (int v : labels) {
    if (v != 0 && v != 1) {
      throw ValidationError("label must be 0 or 1, got " + std::to_string(v),
                            "labels[" + std::to_string(i) + "]");
    }
    labels_.push_back(static_cast<std::uint8_t>(v));
    ++i;
  }
}

std::size_t FactSequence::supported() const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), std::uint8_t{1}));
}

bool FactSequence::is_constant() const {
  if (labels_.empty()) return false;
  return std::all_of(labels_.begin(), labels_.end(),
                     [&](std::uint8_t v) { return v == labels_.front(); });
}

FactSequence FactSequence::prefix(std::size_t n) const {
  n = std::min(n, labels_.size());
  return FactSequence(std::vector<std::uint8_t>(labels_.begin(), labels_.begin() + n));
}

}  // namespace semdrift::core
