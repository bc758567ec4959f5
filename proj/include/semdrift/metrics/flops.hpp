#pragma once

#include <cstddef>
#include <filesystem>
#include <string_view>

#include <nlohmann/json.hpp>

namespace semdrift::metrics {

// Unit costs in floating point operations. Every key is required.
struct CostModel {
  double generator_token_cost = 0.0;  // one generated token, one model pass
  double scorer_pass_cost = 0.0;      // one sentence scored against one passage
  double api_call_cost = 0.0;         // one external QA call

  static CostModel from_json(const nlohmann::json& j);  // ConfigError on a missing key
  static CostModel from_file(const std::filesystem::path& path);
  // Defaults compiled in from assets/cost_model.json.
  static CostModel standard();
  nlohmann::json to_json() const;
};

// Work done by one or more generation sessions. Concatenating sessions adds
// the logs.
struct SessionLog {
  std::size_t generator_passes = 0;
  std::size_t generator_tokens = 0;  // summed over all passes
  std::size_t scorer_passes = 0;
  std::size_t api_calls = 0;

  SessionLog& operator+=(const SessionLog& o);
  friend SessionLog operator+(SessionLog a, const SessionLog& b) { return a += b; }
  bool operator==(const SessionLog&) const = default;

  nlohmann::json to_json() const;
  static SessionLog from_json(const nlohmann::json& j);
};

struct Flops {
  double internal = 0.0;
  double external = 0.0;
};

// internal = generator_token_cost * generator_tokens
// external = scorer_pass_cost * scorer_passes + api_call_cost * api_calls
Flops flops_estimate(const SessionLog& log, const CostModel& cost);

}  // namespace semdrift::metrics
