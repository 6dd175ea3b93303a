#pragma once

#include <cstddef>
#include <functional>

namespace isoforge {

/// Worker count: hardware concurrency, capped by ISOMER_FORGE_THREADS when set.
unsigned thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads using static
/// contiguous chunks. Each index must write only its own output slot, which
/// keeps results independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace isoforge
