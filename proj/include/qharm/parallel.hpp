#pragma once

#include <cstddef>
#include <functional>

namespace qharm {

// Worker count: min(hardware concurrency, QHARM_THREADS when set).
unsigned worker_count();

// Static partition of [0, n) over workers; fn(i) must only touch slot i of
// any shared output so results are identical regardless of thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qharm
