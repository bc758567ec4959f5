#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace semdrift::cli {

enum class Command { score, permtest, stop_sim, rerank, toolcall, report };

std::string_view to_string(Command c);

enum class KeyType { string, integer, real, boolean, integer_list, string_list };

struct KeySpec {
  std::string_view key;
  KeyType type;
  nlohmann::json default_value;  // null = unset
  std::string_view help;
  std::vector<Command> commands;
};

// Every config key, in documentation order.
const std::vector<KeySpec>& config_keys();

// Effective settings for one command: defaults, then the --config file,
// then explicit flags. Keys are the config-file names.
struct RunConfig {
  Command command = Command::score;
  nlohmann::json values = nlohmann::json::object();

  static RunConfig defaults(Command c);
  // Throws ValidationError on unknown keys or mistyped values.
  void merge(const nlohmann::json& overrides);
  void merge_file(const std::filesystem::path& path);

  std::string str(std::string_view key) const;
  std::int64_t integer(std::string_view key) const;
  std::size_t count(std::string_view key) const;  // non-negative integer
  double real(std::string_view key) const;
  bool flag(std::string_view key) const;
  bool has(std::string_view key) const;
  std::vector<std::size_t> counts(std::string_view key) const;
  std::vector<std::string> strings(std::string_view key) const;

  // Canonical JSON of the keys that affect results (out and workers are
  // left out).
  std::string canonical() const;
  // <out>/run-<first 12 hex digits of sha256(command + canonical())>.
  std::filesystem::path run_directory() const;
};

// Parses a flag value given as text into the key's JSON type.
nlohmann::json parse_value(const KeySpec& spec, std::string_view text);

}  // namespace semdrift::cli
