#pragma once

#include <cstddef>
#include <functional>

namespace rmt {

// Runs body(0..count-1), possibly across threads.  Results must be written to
// per-index slots by the caller; index-to-work assignment is deterministic by
// construction (each index owns its RNG stream), so thread count never
// affects output.  The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace rmt
