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

/**
 * \file qosmech/mechanisms.hpp
 *
 * \brief Contingent-contract pricing schemes.
 *
 * Three schemes are provided. The two QoS schemes price a single exchange in
 * which the provider reports a delivery probability q' and is paid a premium
 * g(q') up front, refunding a compensation h(q') if delivery fails. The
 * reservation scheme adds a usage probability p' reported by the user and a
 * usage price f(p') paid when a reserved unit is consumed.
 *
 * All functions are pure. Money is a plain double; rounding happens only when
 * values are printed.
 */

#ifndef QOSMECH_MECHANISMS_HPP
#define QOSMECH_MECHANISMS_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qosmech/error.hpp"
#include "qosmech/probability.hpp"

namespace qosmech {

/// The exogenous economy: the user's value of one delivered unit and the
/// provider's ex-ante cost.
struct MarketParams
{
	double v = 0.0;
	double c = 0.0;
};

/// g(q) = -k q^2 + 2 k q + c1, h(q) = 2 k q.
struct LinearQosScheme
{
	double k = 0.0;
	double c1 = 0.0;
};

/// g(q) = k q + c1, h(q) = -k ln(1 - q).
struct LogQosScheme
{
	double k = 0.0;
	double c1 = 0.0;
};

/// g(p,q) = k1 p^2 - k2 q^2 + 2 k2 q + c1, f(p) = -2 k1 p + c2,
/// h(p,q) = k1 p^2 + 2 k2 q + c3.
struct ReservationScheme
{
	double k1 = 0.0;
	double k2 = 0.0;
	double c1 = 0.0;
	double c2 = 0.0;
	double c3 = 0.0;
};

struct Quote
{
	double premium = 0.0;
	double compensation = 0.0;
	std::optional<double> usage_price;
};

// ---------------------------------------------------------------------------
// QoS schemes

inline Quote linear_quote(const LinearQosScheme& s, Probability q_reported)
{
	const double q = q_reported.value();
	return Quote{-s.k * q * q + 2.0 * s.k * q + s.c1, 2.0 * s.k * q, std::nullopt};
}

inline Quote log_quote(const LogQosScheme& s, Probability q_reported)
{
	const double q = q_reported.value();
	if (q > log_domain_upper)
	{
		std::ostringstream oss;
		oss << "report " << q << " exceeds the logarithmic domain upper bound 1 - eps_log (eps_log = "
		    << log_epsilon << ")";
		throw domain_error(oss.str());
	}
	return Quote{s.k * q + s.c1, -s.k * std::log1p(-q), std::nullopt};
}

inline Quote quote(const LinearQosScheme& s, Probability q) { return linear_quote(s, q); }
inline Quote quote(const LogQosScheme& s, Probability q) { return log_quote(s, q); }

inline constexpr Interval report_domain(const LinearQosScheme&) noexcept { return {0.0, 1.0}; }
inline constexpr Interval report_domain(const LogQosScheme&) noexcept { return {0.0, log_domain_upper}; }

/// Anything that prices a single QoS exchange from a reported q'.
template <typename S>
concept QosPricing = requires(const S& s, Probability q) {
	{ quote(s, q) } -> std::same_as<Quote>;
	{ report_domain(s) } -> std::same_as<Interval>;
};

/// g(q') - (1 - q) h(q'). Equals w(q) when q' = q.
inline double provider_income(double premium, double compensation, Probability q_true) noexcept
{
	return premium - q_true.complement() * compensation;
}

template <QosPricing S>
double provider_income(const S& s, Probability q_true, Probability q_reported)
{
	const Quote qt = quote(s, q_reported);
	return provider_income(qt.premium, qt.compensation, q_true);
}

/// q v - g(q') + (1 - q) h(q').
template <QosPricing S>
double user_expected_utility(const S& s, Probability q_true, Probability q_reported, double v)
{
	return q_true.value() * v - provider_income(s, q_true, q_reported);
}

template <QosPricing S>
double provider_expected_utility(const S& s, Probability q_true, Probability q_reported, const MarketParams& m)
{
	return provider_income(s, q_true, q_reported) - m.c;
}

/// Left end of the interval on which the linear scheme is incentive
/// compatible: the smaller root of k q^2 - v q + c1.
inline Probability qos_ic_lower_bound(const LinearQosScheme& s, const MarketParams& m)
{
	const double disc = m.v * m.v - 4.0 * s.k * s.c1;
	if (disc < 0.0)
	{
		throw parameter_error("linear scheme: v^2 - 4 k c1 < 0, no incentive compatible interval");
	}
	if (!(s.k > 0.0))
	{
		throw parameter_error("linear scheme: k must be positive");
	}
	// Rationalized form of (v - sqrt(disc)) / 2k; avoids cancellation for large v.
	double q0 = 2.0 * s.c1 / (m.v + std::sqrt(disc));
	if (q0 > 1.0 && q0 <= 1.0 + 1e-12)
	{
		q0 = 1.0; // c1 = v - k lands here up to rounding
	}
	if (!(q0 >= 0.0 && q0 <= 1.0))
	{
		throw parameter_error("linear scheme: q0 outside [0, 1]");
	}
	return Probability(q0);
}

/// (c1 + k) / v. Sufficient, not tight: w(q) <= c1 + k <= q v for q >= q0.
inline Probability qos_ic_lower_bound(const LogQosScheme& s, const MarketParams& m)
{
	const double q0 = (s.c1 + s.k) / m.v;
	if (!(q0 > 0.0 && q0 <= 1.0))
	{
		throw parameter_error("logarithmic scheme: q0 = (c1 + k) / v outside (0, 1]");
	}
	return Probability(q0);
}

// ---------------------------------------------------------------------------
// Reservation scheme

inline Quote reservation_quote(const ReservationScheme& s, Probability p_reported, Probability q_reported) noexcept
{
	const double p = p_reported.value();
	const double q = q_reported.value();
	return Quote{s.k1 * p * p - s.k2 * q * q + 2.0 * s.k2 * q + s.c1,
	             s.k1 * p * p + 2.0 * s.k2 * q + s.c3,
	             -2.0 * s.k1 * p + s.c2};
}

/// E C = g(p',q') + p q f(p') - (1 - q) h(p',q'), straight from the protocol.
inline double reservation_expected_cost_protocol(const ReservationScheme& s, Probability p, Probability q,
                                                 Probability p_reported, Probability q_reported) noexcept
{
	const Quote qt = reservation_quote(s, p_reported, q_reported);
	return qt.premium + p.value() * q.value() * *qt.usage_price - q.complement() * qt.compensation;
}

/// Same quantity rearranged around the truthful point:
/// k1 q (p'-p)^2 - k2 (q'-q)^2 + w(p,q).
inline double reservation_expected_cost_expanded(const ReservationScheme& s, Probability p, Probability q,
                                                 Probability p_reported, Probability q_reported) noexcept
{
	const double pv = p.value(), qv = q.value();
	const double dp = p_reported.value() - pv;
	const double dq = q_reported.value() - qv;
	return s.k1 * qv * dp * dp - s.k2 * dq * dq - s.k1 * pv * pv * qv + s.k2 * qv * qv + s.c3 * qv
	       + s.c2 * pv * qv + s.c1 - s.c3;
}

inline constexpr double expected_cost_tolerance = 1e-9;

/// The user's expected cost, evaluated by both routes. Throws
/// consistency_error if they disagree beyond expected_cost_tolerance
/// (relative, floored at 1).
inline double reservation_expected_cost(const ReservationScheme& s, Probability p, Probability q,
                                        Probability p_reported, Probability q_reported)
{
	const double a = reservation_expected_cost_protocol(s, p, q, p_reported, q_reported);
	const double b = reservation_expected_cost_expanded(s, p, q, p_reported, q_reported);
	const double scale = std::max({1.0, std::abs(a), std::abs(b)});
	if (!(std::abs(a - b) <= expected_cost_tolerance * scale))
	{
		std::ostringstream oss;
		oss.precision(17);
		oss << "expected cost routes disagree: protocol " << a << " vs expanded " << b;
		throw consistency_error(oss.str());
	}
	return a;
}

/// Truthful expected payment -k1 p^2 q + k2 q^2 + c3 q + c2 p q + c1 - c3.
inline double reservation_w(const ReservationScheme& s, Probability p, Probability q) noexcept
{
	const double pv = p.value(), qv = q.value();
	return -s.k1 * pv * pv * qv + s.k2 * qv * qv + s.c3 * qv + s.c2 * pv * qv + s.c1 - s.c3;
}

// ---------------------------------------------------------------------------
// Validation

struct Violation
{
	std::string constraint;
	std::string source;
};

struct ValidationReport
{
	std::vector<Violation> violations;

	bool ok() const noexcept { return violations.empty(); }

	std::string str() const
	{
		std::string out;
		for (const auto& v : violations)
		{
			out += v.constraint + " fails (" + v.source + ")\n";
		}
		return out;
	}
};

namespace detail {

inline void require(ValidationReport& r, bool holds, const char* constraint, const char* source)
{
	if (!holds)
	{
		r.violations.push_back({constraint, source});
	}
}

inline constexpr const char* market_source = "market assumptions";
inline constexpr const char* linear_source = "linear scheme conditions";
inline constexpr const char* log_source = "logarithmic scheme conditions";
inline constexpr const char* reservation_source = "reservation scheme conditions";

} // namespace detail

inline ValidationReport validate(const MarketParams& m)
{
	ValidationReport r;
	detail::require(r, std::isfinite(m.v) && std::isfinite(m.c), "market parameters finite", detail::market_source);
	detail::require(r, m.v > 0.0, "v > 0", detail::market_source);
	detail::require(r, m.c >= 0.0, "c >= 0", detail::market_source);
	detail::require(r, m.c < m.v, "c < v", detail::market_source);
	return r;
}

inline ValidationReport validate(const LinearQosScheme& s, const MarketParams& m)
{
	ValidationReport r = validate(m);
	const char* src = detail::linear_source;
	detail::require(r, std::isfinite(s.k) && std::isfinite(s.c1), "scheme parameters finite", src);
	detail::require(r, s.k > 0.0, "k > 0", src);
	detail::require(r, s.c1 > 0.0, "c1 > 0", src);
	detail::require(r, m.c <= s.c1, "c <= c1", src);
	detail::require(r, s.c1 <= m.v - s.k, "c1 <= v - k", src);
	const double disc = m.v * m.v - 4.0 * s.k * s.c1;
	detail::require(r, disc >= 0.0, "v^2 - 4 k c1 >= 0", src);
	if (disc >= 0.0 && s.k > 0.0)
	{
		const double q0 = 2.0 * s.c1 / (m.v + std::sqrt(disc));
		detail::require(r, q0 >= 0.0 && q0 <= 1.0, "0 <= q0 <= 1", src);
	}
	return r;
}

inline ValidationReport validate(const LogQosScheme& s, const MarketParams& m)
{
	ValidationReport r = validate(m);
	const char* src = detail::log_source;
	detail::require(r, std::isfinite(s.k) && std::isfinite(s.c1), "scheme parameters finite", src);
	detail::require(r, s.k > 0.0, "k > 0", src);
	detail::require(r, s.c1 > 0.0, "c1 > 0", src);
	detail::require(r, m.c <= s.c1, "c <= c1", src);
	detail::require(r, s.c1 <= m.v - s.k, "c1 <= v - k", src);
	if (m.v > 0.0)
	{
		const double q0 = (s.c1 + s.k) / m.v;
		detail::require(r, q0 > 0.0 && q0 <= 1.0, "0 < q0 <= 1", src);
	}
	return r;
}

inline ValidationReport validate(const ReservationScheme& s, const MarketParams& m)
{
	ValidationReport r = validate(m);
	const char* src = detail::reservation_source;
	detail::require(r,
	                std::isfinite(s.k1) && std::isfinite(s.k2) && std::isfinite(s.c1) && std::isfinite(s.c2)
	                    && std::isfinite(s.c3),
	                "scheme parameters finite", src);
	detail::require(r, s.k1 > 0.0, "k1 > 0", src);
	detail::require(r, s.k2 > 0.0, "k2 > 0", src);
	detail::require(r, s.c1 > 0.0, "c1 > 0", src);
	detail::require(r, s.c2 > 0.0, "c2 > 0", src);
	detail::require(r, s.c3 > 0.0, "c3 > 0", src);
	detail::require(r, s.c2 >= 2.0 * s.k1, "c2 >= 2k1", src);
	detail::require(r, s.c1 - s.c3 >= m.c, "c1 - c3 >= c", src);
	const double corner = s.c1 + s.c2 - s.k1 + s.k2;
	detail::require(r, m.c < corner, "c < c1 + c2 - k1 + k2", src);
	detail::require(r, corner < m.v, "c1 + c2 - k1 + k2 < v", src);
	return r;
}

} // namespace qosmech

#endif // QOSMECH_MECHANISMS_HPP
