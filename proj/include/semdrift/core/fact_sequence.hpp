#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace semdrift::core {

// Ordered correctness labels of one paragraph's atomic facts
// (1 = supported, 0 = not supported). Every element is exactly 0 or 1.
class FactSequence {
 public:
  FactSequence() = default;
  explicit FactSequence(std::vector<std::uint8_t> labels);
  FactSequence(std::initializer_list<int> labels);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return labels_[i]; }
  std::span<const std::uint8_t> labels() const { return labels_; }

  std::size_t supported() const;
  std::size_t unsupported() const { return size() - supported(); }

  // All-correct or all-incorrect (and non-empty).
  bool is_constant() const;

  FactSequence prefix(std::size_t n) const;

  auto operator<=>(const FactSequence&) const = default;

 private:
  std::vector<std::uint8_t> labels_;
};

}  // namespace semdrift::core
