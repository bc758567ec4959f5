#pragma once

#include <ostream>

#include "cli/config.hpp"

namespace semdrift::cli {

// Each command writes its files into cfg.run_directory(), prints that path
// and a short summary to `out`, and returns the exit status. Record-level
// validation problems are printed to `err` and yield status 1 after the
// outputs for the valid records are written.
int cmd_score(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_permtest(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_stop_sim(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_rerank(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_toolcall(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace semdrift::cli
