#pragma once

#include <cstddef>
#include <functional>

namespace homog {

/// Worker cap: HOMOG_THREADS when set (>= 1), otherwise the hardware
/// concurrency.
unsigned worker_cap();

/// Runs body(0..count-1) on up to worker_cap() threads. Bodies must write
/// only to their own index slot; exceptions are rethrown in index order, so
/// the outcome is independent of scheduling.
void parallel_for_indexed(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace homog
