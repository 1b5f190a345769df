#include "transmute/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace transmute
{
	unsigned worker_count()
	{
		if (const char *env = std::getenv("TRANSMUTE_THREADS"))
		{
			const int n = std::atoi(env);
			if (n > 0)
				return static_cast<unsigned>(n);
		}
		return std::max(1u, std::thread::hardware_concurrency());
	}

	void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body)
	{
		const std::size_t workers = std::min<std::size_t>(worker_count(), n);
		if (workers <= 1)
		{
			for (std::size_t i = 0; i < n; ++i)
				body(i);
			return;
		}

		std::exception_ptr first_error;
		std::mutex error_mtx;
		std::vector<std::thread> pool;
		pool.reserve(workers);
		for (std::size_t w = 0; w < workers; ++w)
		{
			const std::size_t begin = n * w / workers;
			const std::size_t end = n * (w + 1) / workers;
			pool.emplace_back([&, begin, end] {
				try
				{
					for (std::size_t i = begin; i < end; ++i)
						body(i);
				}
				catch (...)
				{
					std::lock_guard lock(error_mtx);
					if (!first_error)
						first_error = std::current_exception();
				}
			});
		}
		for (auto &t : pool)
			t.join();
		if (first_error)
			std::rethrow_exception(first_error);
	}
} // namespace transmute
