#ifndef RAYFORGE_PARALLEL_HPP_
#define RAYFORGE_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace rayforge {

// Worker count: min(hardware, RAYFORGE_THREADS) with an optional per-call
// cap. The env var is re-read on every call so tests can toggle it.
int worker_count(int cap = 0);

// Runs fn(i) for i in [0, n). Work items must be independent and write only
// to their own output slots; the partition of indices across workers is
// unspecified, so byte-reproducibility of the result must not depend on it.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  int worker_cap = 0);

}  // namespace rayforge

#endif  // RAYFORGE_PARALLEL_HPP_
