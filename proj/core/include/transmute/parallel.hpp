#pragma once

#include <cstddef>
#include <functional>

namespace transmute
{
	/// Worker count used by parallel_for (hardware concurrency, at least 1).
	/// TRANSMUTE_THREADS overrides it.
	unsigned worker_count();

	/// Calls body(i) for i in [0, n) on a static partition of the index range.
	/// Each index is written by exactly one worker, so results stored per index
	/// do not depend on the thread count.
	void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);
} // namespace transmute
