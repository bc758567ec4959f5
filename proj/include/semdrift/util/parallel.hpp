#pragma once

#include <cstddef>
#include <functional>

namespace semdrift::util {

// Calls fn(i) for i in [0, n) on up to `workers` threads (0 = hardware
// concurrency). The first exception thrown by any call is rethrown after all
// threads have joined; remaining indices are skipped once one has failed.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn);

}  // namespace semdrift::util
