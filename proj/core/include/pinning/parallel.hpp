#pragma once

#include <functional>

namespace pinning {

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Work items are
/// claimed dynamically, so callers must write results by index only.
void parallel_for(long count, int threads, const std::function<void(long)>& fn);

}  // namespace pinning
