#pragma once

#include <cstddef>
#include <functional>

namespace combsim {

/// Worker count: COMBSIM_THREADS when set to a positive integer, otherwise
/// std::thread::hardware_concurrency() (at least 1).
unsigned worker_count();

/// Calls body(i) for i in [0, n) split into contiguous chunks across workers.
/// Each index is visited exactly once; results written by index are
/// independent of the worker count. Calls made from inside a worker run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace combsim
