#include "cli/app.hpp"

#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "semdrift/core/error.hpp"

namespace semdrift::cli {
namespace {

constexpr Command kCommands[] = {Command::score,  Command::permtest, Command::stop_sim,
                                 Command::rerank, Command::toolcall, Command::report};

std::string_view describe(Command c) {
  switch (c) {
    case Command::score: return "SD scores, drift points and distribution tables for an annotated corpus";
    case Command::permtest: return "permutation p-values of each paragraph's SD score";
    case Command::stop_sim: return "apply a stop policy offline and report precision, recall and cost";
    case Command::rerank: return "resample-then-rerank generation for a list of topics";
    case Command::toolcall: return "generation with QA tool calls for a list of topics";
    case Command::report: return "merge run reports into a trade-off table and plot";
  }
  return "";
}

std::string flag_name(std::string_view key) {
  std::string s = "--";
  for (char c : key) s.push_back(c == '_' ? '-' : c);
  return s;
}

std::string type_name(KeyType t) {
  switch (t) {
    case KeyType::string: return "TEXT";
    case KeyType::integer: return "INT";
    case KeyType::real: return "REAL";
    case KeyType::boolean: return "BOOL";
    case KeyType::integer_list: return "INT,...";
    case KeyType::string_list: return "TEXT,...";
  }
  return "";
}

std::string keys_footer() {
  std::ostringstream s;
  s << "Config keys (set in a --config JSON object or with --key-name flags; flags win):\n";
  for (const auto& k : config_keys()) {
    s << "  " << k.key << " " << type_name(k.type) << " [default: "
      << (k.default_value.is_null() ? "unset" : k.default_value.dump()) << "] " << k.help << " (";
    for (std::size_t i = 0; i < k.commands.size(); ++i) s << (i ? ", " : "") << to_string(k.commands[i]);
    s << ")\n";
  }
  s << "Endpoints fall back to $SEMDRIFT_GENERATOR_URL, $SEMDRIFT_SIMILARITY_URL and $SEMDRIFT_QA_URL;\n"
       "$SEMDRIFT_API_KEY is sent as a bearer token.\n"
       "Exit codes: 0 ok, 1 validation or configuration error, 2 I/O error, 3 remote endpoint failure.";
  return s.str();
}

struct SubcommandState {
  CLI::App* app = nullptr;
  std::string config_path;
  std::map<std::string, std::string> text;
  std::map<std::string, bool> flags;
  std::map<std::string, CLI::Option*> options;
  std::vector<std::string> inputs;
};

int dispatch(Command c, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (c) {
    case Command::score: return cmd_score(cfg, out, err);
    case Command::permtest: return cmd_permtest(cfg, out, err);
    case Command::stop_sim: return cmd_stop_sim(cfg, out, err);
    case Command::rerank: return cmd_rerank(cfg, out, err);
    case Command::toolcall: return cmd_toolcall(cfg, out, err);
    case Command::report: return cmd_report(cfg, out, err);
  }
  return 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("semdrift: semantic drift scoring, stop policies and decoding control", "semdrift");
  app.require_subcommand(1);
  app.footer(keys_footer());

  std::map<Command, std::unique_ptr<SubcommandState>> subs;
  for (Command c : kCommands) {
    auto st = std::make_unique<SubcommandState>();
    st->app = app.add_subcommand(std::string(to_string(c)), std::string(describe(c)));
    st->app->add_option("--config", st->config_path, "JSON object with config keys");
    for (const auto& k : config_keys()) {
      if (std::find(k.commands.begin(), k.commands.end(), c) == k.commands.end()) continue;
      const std::string key(k.key);
      const std::string help = std::string(k.help) + " [" + key + ", default " +
                               (k.default_value.is_null() ? "unset" : k.default_value.dump()) + "]";
      if (k.type == KeyType::boolean) {
        st->options[key] = st->app->add_flag(flag_name(key), st->flags[key], help);
      } else if (key == "inputs") {
        st->options[key] = st->app->add_option("inputs", st->inputs, help);
      } else {
        st->options[key] = st->app->add_option(flag_name(key), st->text[key], help)->type_name(type_name(k.type));
      }
    }
    subs.emplace(c, std::move(st));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  for (const auto& [c, st] : subs) {
    if (!st->app->parsed()) continue;
    try {
      auto cfg = RunConfig::defaults(c);
      if (!st->config_path.empty()) cfg.merge_file(st->config_path);
      nlohmann::json overrides = nlohmann::json::object();
      for (const auto& k : config_keys()) {
        const std::string key(k.key);
        auto it = st->options.find(key);
        if (it == st->options.end() || it->second->count() == 0) continue;
        if (k.type == KeyType::boolean) overrides[key] = st->flags[key];
        else if (key == "inputs") overrides[key] = st->inputs;
        else overrides[key] = parse_value(k, st->text[key]);
      }
      cfg.merge(overrides);
      return dispatch(c, cfg, out, err);
    } catch (const ValidationError& e) {
      err << "validation error: " << e.what() << "\n";
      return 1;
    } catch (const ConfigError& e) {
      err << "configuration error: " << e.what() << "\n";
      return 1;
    } catch (const IoError& e) {
      err << "I/O error: " << e.what() << "\n";
      return 2;
    } catch (const RemoteError& e) {
      err << "remote error: " << e.what() << "\n";
      return 3;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return 1;
}

}  // namespace semdrift::cli
