#pragma once

#include <cstddef>
#include <functional>

namespace nlssh {

/// Hardware concurrency, capped by NONLOCAL_SSH_THREADS when set to a positive integer.
std::size_t worker_count();

/// Runs fn(0..n-1) over up to worker_count() threads. Each index runs exactly once;
/// the first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace nlssh
