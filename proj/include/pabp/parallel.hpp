#pragma once

#include <cstdint>
#include <functional>

namespace pabp {

/// Worker count actually used for `requested` (0 = auto): honors the
/// PABP_THREADS environment variable, then hardware concurrency.
int effective_threads(int requested);

/// Runs fn(i) for i in [0, n) on a small thread pool. Work items must write
/// only to their own slots; results are then deterministic regardless of
/// scheduling order. Exceptions from workers are rethrown on the caller.
void parallel_for(std::uint64_t n, int threads, const std::function<void(std::uint64_t)>& fn);

}  // namespace pabp
