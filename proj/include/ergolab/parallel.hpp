#pragma once

#include <cstddef>
#include <functional>

namespace ergolab {

/// Worker count: ERGOLAB_THREADS if set and positive, else hardware concurrency.
std::size_t thread_count();

/// Calls body(i) for i in [0, n). Indices are split into contiguous blocks,
/// one per worker; body must only write state owned by index i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ergolab
