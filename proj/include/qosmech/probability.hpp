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

#ifndef QOSMECH_PROBABILITY_HPP
#define QOSMECH_PROBABILITY_HPP

#include <charconv>
#include <cmath>
#include <compare>
#include <string>

#include "qosmech/error.hpp"

namespace qosmech {

/// A value in [0, 1]. Construction outside that range throws domain_error.
class Probability
{
public:
	constexpr Probability() noexcept = default;

	explicit Probability(double value)
	: value_(value)
	{
		if (!(value >= 0.0 && value <= 1.0))
		{
			char buf[32];
			const auto res = std::to_chars(buf, buf + sizeof buf, value);
			throw domain_error("probability out of range: " + std::string(buf, res.ptr));
		}
	}

	constexpr double value() const noexcept { return value_; }
	constexpr double complement() const noexcept { return 1.0 - value_; }

	constexpr auto operator<=>(const Probability&) const noexcept = default;

private:
	double value_ = 0.0;
};

/// Distance from 1 below which the logarithmic compensation is not evaluated.
inline constexpr double log_epsilon = 1e-12;

/// Largest report the logarithmic scheme accepts.
inline constexpr double log_domain_upper = 1.0 - log_epsilon;

/// Closed interval of admissible reports.
struct Interval
{
	double lower = 0.0;
	double upper = 1.0;

	constexpr double width() const noexcept { return upper - lower; }
	constexpr bool contains(double x) const noexcept { return x >= lower && x <= upper; }

	friend constexpr bool operator==(const Interval&, const Interval&) = default;
};

} // namespace qosmech

#endif // QOSMECH_PROBABILITY_HPP
