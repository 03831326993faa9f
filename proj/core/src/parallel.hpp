#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace varcorp::detail
{
	/// Calls fn(i) for i in [0, n), splitting the range into contiguous chunks.
	/// Each index is handled exactly once, so results written to slot i are
	/// independent of the thread count. The first exception is rethrown.
	template<class Fn>
	void parallel_for(std::size_t n, unsigned threads, Fn&& fn)
	{
		threads = std::max(1u, threads);
		if (threads == 1 || n < 2)
		{
			for (std::size_t i = 0; i < n; ++i) fn(i);
			return;
		}
		const std::size_t workers = std::min<std::size_t>(threads, n);
		const std::size_t chunk = (n + workers - 1) / workers;
		std::exception_ptr error;
		std::mutex error_mutex;
		{
			std::vector<std::jthread> pool;
			pool.reserve(workers);
			for (std::size_t w = 0; w < workers; ++w)
			{
				const auto begin = w * chunk, end = std::min(n, begin + chunk);
				pool.emplace_back([&, begin, end]
				{
					try
					{
						for (std::size_t i = begin; i < end; ++i) fn(i);
					}
					catch (...)
					{
						std::lock_guard lock{ error_mutex };
						if (!error) error = std::current_exception();
					}
				});
			}
		}
		if (error) std::rethrow_exception(error);
	}
}
