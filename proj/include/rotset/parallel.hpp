#ifndef ROTSET_PARALLEL_HPP
#define ROTSET_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace rotset {

/// Worker count: ROTSET_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Calls body(i) for i in [0, n), split into contiguous chunks over
/// worker_count() threads. body must only write to slot i of its outputs;
/// results are then independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace rotset

#endif  // ROTSET_PARALLEL_HPP
