#pragma once

#include <cstddef>
#include <functional>

namespace qrate {

/// Thread cap: QRATE_THREADS environment variable, 0 or unset = hardware
/// concurrency.
std::size_t thread_budget();

/// Runs body(i) for i in [0, count) across up to thread_budget() threads.
/// body must be safe to call concurrently for distinct i.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace qrate
