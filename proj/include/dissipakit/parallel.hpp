#pragma once

#include <cstddef>
#include <functional>

namespace dk {

/// Global worker cap for parallel_for (CLI --threads). 0 = hardware default.
void set_max_threads(unsigned n);
unsigned max_threads();

/// Runs fn(i) for i in [0, n). Work is split into contiguous index ranges, one
/// per worker; fn must write only to slots owned by index i, which makes the
/// result identical for every thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace dk
