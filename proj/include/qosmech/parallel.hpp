// Copyright 2026 The qosmech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QOSMECH_PARALLEL_HPP
#define QOSMECH_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qosmech {

/// Trials per reduction chunk. Fixed so chunk boundaries do not depend on
/// the worker count.
inline constexpr std::uint64_t reduction_chunk = 4096;

inline unsigned resolve_threads(unsigned requested) noexcept
{
	if (requested != 0)
	{
		return requested;
	}
	return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs `trial(acc, i)` for i in [0, n) and folds the per-chunk
/// accumulators with `merge` in chunk order. The result is bit-identical
/// for any `threads`.
template <typename Acc, typename Trial, typename Merge>
Acc deterministic_reduce(std::uint64_t n, unsigned threads, const Acc& empty, Trial trial, Merge merge)
{
	const std::uint64_t chunks = (n + reduction_chunk - 1) / reduction_chunk;
	std::vector<Acc> partial(chunks, empty);

	std::atomic<std::uint64_t> next{0};
	std::exception_ptr failure;
	std::mutex failure_mutex;
	auto worker = [&] {
		for (std::uint64_t c = next++; c < chunks; c = next++)
		{
			try
			{
				const std::uint64_t end = std::min(n, (c + 1) * reduction_chunk);
				for (std::uint64_t i = c * reduction_chunk; i < end; ++i)
				{
					trial(partial[c], i);
				}
			}
			catch (...)
			{
				std::lock_guard lock(failure_mutex);
				if (!failure)
				{
					failure = std::current_exception();
				}
			}
		}
	};

	const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), chunks));
	if (workers <= 1)
	{
		worker();
	}
	else
	{
		std::vector<std::jthread> pool;
		pool.reserve(workers);
		for (unsigned t = 0; t < workers; ++t)
		{
			pool.emplace_back(worker);
		}
	}
	if (failure)
	{
		std::rethrow_exception(failure);
	}

	Acc total = empty;
	for (const Acc& p : partial)
	{
		merge(total, p);
	}
	return total;
}

} // namespace qosmech

#endif // QOSMECH_PARALLEL_HPP
