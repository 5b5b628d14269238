#pragma once

#include <cstddef>
#include <functional>

namespace bregman::cli {

/// Worker count from BREGMAN_ACCEL_THREADS, else the machine's hardware
/// concurrency (at least 1). Throws InputError if the variable is set but is
/// not a positive integer.
std::size_t resolve_thread_count();

/// Calls body(i) for i in [0, count) on up to `threads` workers. Each index
/// runs exactly once; exceptions thrown by body are rethrown after all
/// workers finish (the first one by index wins).
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace bregman::cli
