#include "semdrift/metrics/flops.hpp"

#include <fstream>

#include "semdrift/core/error.hpp"
#include "semdrift/util/assets.hpp"

namespace semdrift::metrics {
namespace {

double required(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("cost model is missing '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number() || v.get<double>() < 0.0) {
    throw ConfigError(std::string("cost model entry '") + key + "' must be a non-negative number");
  }
  return v.get<double>();
}

std::size_t count(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) return 0;
  const auto& v = j.at(key);
  if (!v.is_number_unsigned()) throw ValidationError("must be a non-negative integer", key);
  return v.get<std::size_t>();
}

}  // namespace

CostModel CostModel::from_json(const nlohmann::json& j) {
  return {required(j, "generator_token_cost"), required(j, "scorer_pass_cost"), required(j, "api_call_cost")};
}

CostModel CostModel::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read cost model " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cost model " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

CostModel CostModel::standard() { return from_json(nlohmann::json::parse(assets::cost_model())); }

nlohmann::json CostModel::to_json() const {
  return {{"generator_token_cost", generator_token_cost},
          {"scorer_pass_cost", scorer_pass_cost},
          {"api_call_cost", api_call_cost}};
}

SessionLog& SessionLog::operator+=(const SessionLog& o) {
  generator_passes += o.generator_passes;
  generator_tokens += o.generator_tokens;
  scorer_passes += o.scorer_passes;
  api_calls += o.api_calls;
  return *this;
}

nlohmann::json SessionLog::to_json() const {
  return {{"generator_passes", generator_passes},
          {"generator_tokens", generator_tokens},
          {"scorer_passes", scorer_passes},
          {"api_calls", api_calls}};
}

SessionLog SessionLog::from_json(const nlohmann::json& j) {
  return {count(j, "generator_passes"), count(j, "generator_tokens"), count(j, "scorer_passes"),
          count(j, "api_calls")};
}

Flops flops_estimate(const SessionLog& log, const CostModel& cost) {
  return {cost.generator_token_cost * static_cast<double>(log.generator_tokens),
          cost.scorer_pass_cost * static_cast<double>(log.scorer_passes) +
              cost.api_call_cost * static_cast<double>(log.api_calls)};
}

}  // namespace semdrift::metrics
