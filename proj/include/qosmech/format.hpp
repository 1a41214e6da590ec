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

#ifndef QOSMECH_FORMAT_HPP
#define QOSMECH_FORMAT_HPP

#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace qosmech {

inline constexpr int money_decimals = 6;
inline constexpr int probability_decimals = 12;

/// Fixed-point text, correctly rounded from the binary value with exact
/// ties going to even. A result that rounds to zero is printed unsigned.
inline std::string format_fixed(double x, int decimals)
{
	if (!std::isfinite(x))
	{
		return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
	}
	std::array<char, 400> buf{};
	const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::fixed, decimals);
	std::string s(buf.data(), res.ptr);
	if (!s.empty() && s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos)
	{
		s.erase(0, 1);
	}
	return s;
}

inline std::string format_money(double x) { return format_fixed(x, money_decimals); }
inline std::string format_probability(double x) { return format_fixed(x, probability_decimals); }

/// x rounded the way format_fixed prints it.
inline double round_to(double x, int decimals)
{
	if (!std::isfinite(x))
	{
		return x;
	}
	return std::stod(format_fixed(x, decimals));
}

} // namespace qosmech

#endif // QOSMECH_FORMAT_HPP
