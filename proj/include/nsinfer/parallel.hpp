#pragma once

#include <functional>

namespace nsinfer {

// Run fn(0..total-1), splitting indices across the requested thread count.
// Each index must be independent; results land wherever fn writes them, so
// output is identical for any thread count.
void parallel_for(int total, int threads, const std::function<void(int)>& fn);

}  // namespace nsinfer
