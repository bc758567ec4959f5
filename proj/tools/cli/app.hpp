#pragma once

#include <ostream>

namespace semdrift::cli {

// Exit codes: 0 success, 1 validation or configuration error, 2 I/O error,
// 3 remote endpoint failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace semdrift::cli
