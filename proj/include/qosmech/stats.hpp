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

#ifndef QOSMECH_STATS_HPP
#define QOSMECH_STATS_HPP

#include <cmath>
#include <cstdint>

namespace qosmech {

/// Welford accumulator with Chan's pairwise merge.
class RunningStats
{
public:
	void add(double x) noexcept
	{
		++count_;
		const double delta = x - mean_;
		mean_ += delta / static_cast<double>(count_);
		m2_ += delta * (x - mean_);
	}

	void merge(const RunningStats& o) noexcept
	{
		if (o.count_ == 0)
		{
			return;
		}
		if (count_ == 0)
		{
			*this = o;
			return;
		}
		const double n1 = static_cast<double>(count_);
		const double n2 = static_cast<double>(o.count_);
		const double delta = o.mean_ - mean_;
		const double n = n1 + n2;
		mean_ += delta * n2 / n;
		m2_ += o.m2_ + delta * delta * n1 * n2 / n;
		count_ += o.count_;
	}

	std::uint64_t count() const noexcept { return count_; }
	double mean() const noexcept { return mean_; }

	/// Unbiased sample variance; zero below two samples.
	double variance() const noexcept { return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0; }

	double standard_error() const noexcept
	{
		return count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
	}

	double ci95_half_width() const noexcept { return 1.96 * standard_error(); }

private:
	std::uint64_t count_ = 0;
	double mean_ = 0.0;
	double m2_ = 0.0;
};

} // namespace qosmech

#endif // QOSMECH_STATS_HPP
