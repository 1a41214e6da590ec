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

#ifndef QOSMECH_RNG_HPP
#define QOSMECH_RNG_HPP

#include <cstdint>
#include <limits>

namespace qosmech {

/// SplitMix64 finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
	z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
	z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
	return z ^ (z >> 31);
}

/// Random stream for one trial, keyed by (seed, trial index). The stream
/// depends only on the key, never on which worker draws it or when.
class TrialStream
{
public:
	using result_type = std::uint64_t;

	constexpr TrialStream(std::uint64_t seed, std::uint64_t trial) noexcept
	: state_(mix64(seed ^ mix64(trial + 0x632BE59BD9B4E019ULL)))
	{
	}

	static constexpr result_type min() noexcept { return 0; }
	static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

	constexpr result_type operator()() noexcept
	{
		state_ += 0x9E3779B97F4A7C15ULL;
		return mix64(state_);
	}

	/// Uniform on [0, 1) with 53 random bits.
	constexpr double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

	/// True with probability p; p = 0 never fires, p = 1 always does.
	constexpr bool bernoulli(double p) noexcept { return uniform() < p; }

private:
	std::uint64_t state_;
};

} // namespace qosmech

#endif // QOSMECH_RNG_HPP
