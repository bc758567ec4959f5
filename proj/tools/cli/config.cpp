#include "cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "semdrift/core/error.hpp"
#include "semdrift/util/digest.hpp"

namespace semdrift::cli {
namespace {

using C = Command;
using nlohmann::json;

const std::vector<Command> kCorpus{C::score, C::permtest, C::stop_sim};
const std::vector<Command> kGenerate{C::rerank, C::toolcall};
const std::vector<Command> kAll{C::score, C::permtest, C::stop_sim, C::rerank, C::toolcall, C::report};

const KeySpec* find_key(std::string_view key) {
  for (const auto& k : config_keys()) {
    if (k.key == key) return &k;
  }
  return nullptr;
}

bool applies(const KeySpec& k, Command c) {
  return std::find(k.commands.begin(), k.commands.end(), c) != k.commands.end();
}

bool type_ok(const KeySpec& k, const json& v) {
  if (v.is_null()) return true;
  switch (k.type) {
    case KeyType::string: return v.is_string();
    case KeyType::integer: return v.is_number_integer();
    case KeyType::real: return v.is_number();
    case KeyType::boolean: return v.is_boolean();
    case KeyType::integer_list:
      return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number_unsigned(); });
    case KeyType::string_list:
      return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_string(); });
  }
  return false;
}

std::int64_t parse_int(std::string_view key, std::string_view text) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size()) {
    throw ValidationError("not an integer: '" + std::string(text) + "'", std::string(key));
  }
  return v;
}

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> out;
  while (!text.empty()) {
    const auto pos = text.find(',');
    out.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return out;
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case C::score: return "score";
    case C::permtest: return "permtest";
    case C::stop_sim: return "stop-sim";
    case C::rerank: return "rerank";
    case C::toolcall: return "toolcall";
    case C::report: return "report";
  }
  return "?";
}

const std::vector<KeySpec>& config_keys() {
  static const std::vector<KeySpec> keys{
      {"corpus", KeyType::string, "", "annotated-jsonl corpus", kCorpus},
      {"traces", KeyType::string, "", "trace-jsonl aligned line by line with the corpus (eos-top-k)", {C::stop_sim}},
      {"samples", KeyType::string, "",
       "samples-jsonl with resampled passages per topic (sc policies without stored scores)", {C::stop_sim}},
      {"topics", KeyType::string, "", "text file with one topic per line", kGenerate},
      {"inputs", KeyType::string_list, json::array(), "run_report.json files or run directories to merge",
       {C::report}},
      {"m", KeyType::integer, 0, "truncation parameter: minimum facts on each side of a split",
       {C::score, C::permtest, C::stop_sim}},
      {"sweep", KeyType::integer_list, json::array(), "m values for a truncation sweep table", {C::score}},
      {"filter_degenerate", KeyType::boolean, false, "drop all-correct and all-incorrect paragraphs first",
       {C::score, C::permtest}},
      {"n_shuffles", KeyType::integer, 1000, "label shuffles per paragraph", {C::permtest}},
      {"alpha", KeyType::real, 0.05, "p-value threshold for the reported fraction", {C::permtest}},
      {"seed", KeyType::integer, 0, "master seed", {C::permtest, C::rerank, C::toolcall}},
      {"policy", KeyType::string, "",
       "stop policy: oracle-drift-point, eos-top-k, sc-relative-increase or sc-absolute",
       {C::stop_sim, C::rerank}},
      {"k", KeyType::integer, nullptr, "eos-top-k: EOS rank limit", {C::stop_sim, C::rerank}},
      {"T", KeyType::real, nullptr, "sc-relative-increase: relative increase threshold", {C::stop_sim, C::rerank}},
      {"A", KeyType::real, nullptr, "sc-absolute: absolute score threshold in (0, 1)", {C::stop_sim, C::rerank}},
      {"first_sentence", KeyType::string, "keep", "sc-absolute: keep or delete a first sentence above A",
       {C::stop_sim, C::rerank}},
      {"strategy", KeyType::string, "", "strategy name in reports (default: the policy description)",
       {C::stop_sim, C::rerank}},
      {"generator", KeyType::string, "stub", "generator backend: stub or http", kGenerate},
      {"generator_url", KeyType::string, "", "completion endpoint (default $SEMDRIFT_GENERATOR_URL)", kGenerate},
      {"similarity", KeyType::string, "token-overlap", "similarity backend: token-overlap or http",
       {C::stop_sim, C::rerank}},
      {"similarity_url", KeyType::string, "", "similarity endpoint (default $SEMDRIFT_SIMILARITY_URL)",
       {C::stop_sim, C::rerank}},
      {"qa_url", KeyType::string, "", "QA endpoint (default $SEMDRIFT_QA_URL)", {C::toolcall}},
      {"qa_fixture", KeyType::string, "", "JSON question -> answer table used instead of a QA endpoint",
       {C::toolcall}},
      {"max_calls", KeyType::integer, 1, "QA calls per passage; 0 = unlimited", {C::toolcall}},
      {"cache", KeyType::string, "", "sample cache file (append-only JSONL)", kGenerate},
      {"offline", KeyType::boolean, false, "serve generator requests from the cache only; no network",
       {C::stop_sim, C::rerank, C::toolcall}},
      {"temperature", KeyType::real, 0.6, "sampling temperature", kGenerate},
      {"top_p", KeyType::real, 0.9, "nucleus sampling mass", kGenerate},
      {"max_tokens", KeyType::integer, 500, "token budget per passage", kGenerate},
      {"sentence_max_tokens", KeyType::integer, 60, "token limit per candidate request", {C::rerank}},
      {"n_samples", KeyType::integer, 3, "N, resampled passages used for SelfCheck scores",
       {C::stop_sim, C::rerank}},
      {"options_per_sentence", KeyType::integer, 5, "candidates sampled per sentence", {C::rerank}},
      {"cost_model", KeyType::string, "", "JSON unit costs (default: built-in cost model)",
       {C::stop_sim, C::rerank, C::toolcall}},
      {"workers", KeyType::integer, 1, "worker threads for per-paragraph work (does not change results)",
       {C::permtest, C::stop_sim, C::rerank, C::toolcall}},
      {"out", KeyType::string, ".", "parent directory of the run-<digest> output directory", kAll},
  };
  return keys;
}

RunConfig RunConfig::defaults(Command c) {
  RunConfig cfg;
  cfg.command = c;
  for (const auto& k : config_keys()) {
    if (applies(k, c)) cfg.values[std::string(k.key)] = k.default_value;
  }
  return cfg;
}

void RunConfig::merge(const json& overrides) {
  if (!overrides.is_object()) throw ValidationError("config must be a JSON object", "config");
  for (const auto& [key, v] : overrides.items()) {
    const auto* spec = find_key(key);
    if (!spec) throw ValidationError("unknown config key", key);
    if (!applies(*spec, command)) {
      throw ValidationError("not used by '" + std::string(to_string(command)) + "'", key);
    }
    if (!type_ok(*spec, v)) throw ValidationError("wrong type: " + v.dump(), key);
    values[key] = v;
  }
}

void RunConfig::merge_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError(e.what(), "config");
  }
  merge(j);
}

bool RunConfig::has(std::string_view key) const {
  auto it = values.find(std::string(key));
  return it != values.end() && !it->is_null() && !(it->is_string() && it->get<std::string>().empty());
}

std::string RunConfig::str(std::string_view key) const {
  const auto& v = values.at(std::string(key));
  return v.is_null() ? std::string() : v.get<std::string>();
}

std::int64_t RunConfig::integer(std::string_view key) const {
  const auto& v = values.at(std::string(key));
  if (v.is_null()) throw ConfigError(std::string(key) + " is required");
  return v.get<std::int64_t>();
}

std::size_t RunConfig::count(std::string_view key) const {
  const auto v = integer(key);
  if (v < 0) throw ValidationError("must be non-negative", std::string(key));
  return static_cast<std::size_t>(v);
}

double RunConfig::real(std::string_view key) const {
  const auto& v = values.at(std::string(key));
  if (v.is_null()) throw ConfigError(std::string(key) + " is required");
  return v.get<double>();
}

bool RunConfig::flag(std::string_view key) const { return values.at(std::string(key)).get<bool>(); }

std::vector<std::size_t> RunConfig::counts(std::string_view key) const {
  return values.at(std::string(key)).get<std::vector<std::size_t>>();
}

std::vector<std::string> RunConfig::strings(std::string_view key) const {
  return values.at(std::string(key)).get<std::vector<std::string>>();
}

std::string RunConfig::canonical() const {
  json j = values;
  j.erase("out");
  j.erase("workers");
  return j.dump();
}

std::filesystem::path RunConfig::run_directory() const {
  const auto digest = util::sha256_hex(std::string(to_string(command)) + "\n" + canonical());
  return std::filesystem::path(str("out")) / ("run-" + digest.substr(0, 12));
}

json parse_value(const KeySpec& spec, std::string_view text) {
  const std::string key(spec.key);
  switch (spec.type) {
    case KeyType::string: return std::string(text);
    case KeyType::integer: return parse_int(key, text);
    case KeyType::real: {
      std::istringstream in{std::string(text)};
      double v = 0.0;
      if (!(in >> v) || !in.eof()) throw ValidationError("not a number: '" + std::string(text) + "'", key);
      return v;
    }
    case KeyType::boolean:
      if (text == "true" || text == "1") return true;
      if (text == "false" || text == "0") return false;
      throw ValidationError("not a boolean: '" + std::string(text) + "'", key);
    case KeyType::integer_list: {
      json arr = json::array();
      for (auto part : split_commas(text)) {
        const auto v = parse_int(key, part);
        if (v < 0) throw ValidationError("must be non-negative", key);
        arr.push_back(static_cast<std::uint64_t>(v));
      }
      return arr;
    }
    case KeyType::string_list: {
      json arr = json::array();
      for (auto part : split_commas(text)) arr.push_back(std::string(part));
      return arr;
    }
  }
  return nullptr;
}

}  // namespace semdrift::cli
