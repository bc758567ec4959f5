#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace semdrift::testing {

struct PropertyOutcome {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string counterexample;  // first failing case

  bool passed() const { return cases > 0 && failures == 0; }
};

struct PropertySpec {
  std::string_view name;
  PropertyOutcome (*run)(std::size_t cases, std::uint64_t seed);
};

inline constexpr std::size_t kDefaultCases = 500;

// Every fuzzed property of the library. Shared by the unit suite and the
// acceptance binary.
const std::vector<PropertySpec>& all_properties();

PropertyOutcome run_property(std::string_view name, std::size_t cases = kDefaultCases, std::uint64_t seed = 20240501);

}  // namespace semdrift::testing
