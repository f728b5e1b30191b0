#pragma once

#include <functional>

namespace plap {

/// Thread cap for parallel_map: PLAP_THREADS when set, hardware count
/// otherwise, always at least 1.
int max_threads();

/// Runs fn(i) for i in [0, count) on up to max_threads() workers. Each index
/// owns its output slot, so results are deterministic regardless of
/// scheduling. Exceptions are captured and rethrown (first index wins).
void parallel_map(int count, const std::function<void(int)>& fn);

}  // namespace plap
