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
 * \file qosmech/verification.hpp
 *
 * \brief Numerical checks of truth-telling and incentive compatibility.
 *
 * Nothing here uses the closed-form incomes or bounds. Every check evaluates
 * the quotes at reported values and searches over a grid, so a wrong closed
 * form in mechanisms.hpp shows up as a disagreement rather than being
 * silently reused.
 */

#ifndef QOSMECH_VERIFICATION_HPP
#define QOSMECH_VERIFICATION_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "qosmech/error.hpp"
#include "qosmech/mechanisms.hpp"
#include "qosmech/probability.hpp"

namespace qosmech {

/// Evenly spaced points lower, ..., upper; both endpoints are hit exactly.
struct GridSpec
{
	double lower = 0.0;
	double upper = 1.0;
	std::size_t steps = 101;

	static GridSpec over(const Interval& domain, std::size_t steps) { return {domain.lower, domain.upper, steps}; }

	void validate() const
	{
		if (!(lower >= 0.0 && upper <= 1.0 && lower < upper))
		{
			throw config_error("grid bounds must satisfy 0 <= lower < upper <= 1");
		}
		if (steps < 3)
		{
			throw config_error("grid needs at least 3 points");
		}
	}

	double step() const noexcept { return (upper - lower) / static_cast<double>(steps - 1); }

	double point(std::size_t i) const noexcept
	{
		if (i + 1 >= steps)
		{
			return upper;
		}
		return lower + static_cast<double>(i) * step();
	}
};

inline constexpr std::size_t default_report_steps = 101;
inline constexpr std::size_t default_acceptance_steps = 1001;

// ---------------------------------------------------------------------------
// Best response oracle

struct BestResponse
{
	double report = 0.0;
	double value = 0.0;
	/// Two non-adjacent grid cells tie for the maximum; the objective may
	/// be multimodal and the refined answer is only grid-accurate.
	bool ambiguous = false;
};

namespace detail {

template <typename F>
double checked_eval(F& f, double x)
{
	const double y = f(x);
	if (!std::isfinite(y))
	{
		std::ostringstream oss;
		oss.precision(17);
		oss << "objective is not finite at report " << x;
		throw evaluation_error(oss.str(), x);
	}
	return y;
}

/// Golden-section maximization on [a, b], assuming unimodality.
template <typename F>
std::pair<double, double> golden_maximize(F& f, double a, double b, double tol)
{
	constexpr double inv_phi = 0.6180339887498948482;
	double x1 = b - inv_phi * (b - a);
	double x2 = a + inv_phi * (b - a);
	double f1 = checked_eval(f, x1);
	double f2 = checked_eval(f, x2);
	for (int it = 0; it < 200 && (b - a) > tol; ++it)
	{
		if (f1 < f2)
		{
			a = x1;
			x1 = x2;
			f1 = f2;
			x2 = a + inv_phi * (b - a);
			f2 = checked_eval(f, x2);
		}
		else
		{
			b = x2;
			x2 = x1;
			f2 = f1;
			x1 = b - inv_phi * (b - a);
			f1 = checked_eval(f, x1);
		}
	}
	const double x = 0.5 * (a + b);
	return {x, checked_eval(f, x)};
}

} // namespace detail

inline constexpr double golden_tolerance = 1e-10;

/// Maximizer of `income` over the grid domain: coarse scan, then
/// golden-section refinement between the neighbours of the best cell.
/// Exact ties on the grid resolve to the smallest report.
template <typename F>
    requires std::invocable<F&, double>
BestResponse best_response_report(F&& income, const GridSpec& grid)
{
	grid.validate();
	std::vector<double> values(grid.steps);
	std::size_t best = 0;
	for (std::size_t i = 0; i < grid.steps; ++i)
	{
		values[i] = detail::checked_eval(income, grid.point(i));
		if (values[i] > values[best])
		{
			best = i;
		}
	}

	BestResponse out{grid.point(best), values[best], false};
	const double tie_tol = 1e-12 * std::max(1.0, std::abs(values[best]));
	for (std::size_t i = 0; i < grid.steps; ++i)
	{
		const std::size_t gap = i > best ? i - best : best - i;
		if (gap > 1 && values[best] - values[i] <= tie_tol)
		{
			out.ambiguous = true;
			break;
		}
	}

	const double lo = grid.point(best == 0 ? 0 : best - 1);
	const double hi = grid.point(std::min(best + 1, grid.steps - 1));
	const auto [x, fx] = detail::golden_maximize(income, lo, hi, golden_tolerance);
	if (fx > out.value)
	{
		out.report = x;
		out.value = fx;
	}
	return out;
}

// ---------------------------------------------------------------------------
// Piecewise-linear pricing, for checking arbitrary tabulated (g, h) pairs

struct TabulatedPricing
{
	std::vector<double> q;
	std::vector<double> g;
	std::vector<double> h;

	void validate() const
	{
		if (q.size() < 2 || g.size() != q.size() || h.size() != q.size())
		{
			throw config_error("tabulated pricing needs at least two rows of equal length q, g, h");
		}
		for (std::size_t i = 0; i < q.size(); ++i)
		{
			if (!(q[i] >= 0.0 && q[i] <= 1.0) || (i > 0 && !(q[i] > q[i - 1])))
			{
				throw config_error("tabulated q must be strictly increasing within [0, 1]");
			}
			if (!std::isfinite(g[i]) || !std::isfinite(h[i]))
			{
				throw config_error("tabulated g and h must be finite");
			}
		}
	}

	double interpolate(const std::vector<double>& ys, double x) const
	{
		const auto it = std::upper_bound(q.begin(), q.end(), x);
		if (it == q.begin())
		{
			return ys.front();
		}
		if (it == q.end())
		{
			return ys.back();
		}
		const std::size_t j = static_cast<std::size_t>(it - q.begin());
		const double t = (x - q[j - 1]) / (q[j] - q[j - 1]);
		return ys[j - 1] + t * (ys[j] - ys[j - 1]);
	}
};

inline Quote quote(const TabulatedPricing& s, Probability q)
{
	const double x = q.value();
	if (x < s.q.front() || x > s.q.back())
	{
		throw domain_error("report outside the tabulated range");
	}
	return Quote{s.interpolate(s.g, x), s.interpolate(s.h, x), std::nullopt};
}

inline Interval report_domain(const TabulatedPricing& s) { return {s.q.front(), s.q.back()}; }

// ---------------------------------------------------------------------------
// Truth-telling for QoS schemes

struct TruthTellingRecord
{
	double q_true = 0.0;
	double q_best_response = 0.0;
	/// Truthful income minus the best income at any other grid report.
	double income_gap = 0.0;
};

struct TruthTellingReport
{
	std::vector<TruthTellingRecord> records;
	bool pass = true;
	double max_deviation = 0.0;
	double step = 0.0;
	bool ambiguous = false;

	/// First record that breaks the pass condition, if any.
	std::optional<TruthTellingRecord> witness() const
	{
		for (const auto& r : records)
		{
			if (std::abs(r.q_best_response - r.q_true) > step || !(r.income_gap > 0.0))
			{
				return r;
			}
		}
		return std::nullopt;
	}
};

template <QosPricing S>
TruthTellingReport check_truth_telling_qos(const S& scheme, const GridSpec& grid)
{
	grid.validate();
	TruthTellingReport rep;
	rep.step = grid.step();
	rep.records.reserve(grid.steps);
	for (std::size_t i = 0; i < grid.steps; ++i)
	{
		const Probability q(grid.point(i));
		auto income = [&](double qr) { return provider_income(scheme, q, Probability(qr)); };

		const BestResponse br = best_response_report(income, grid);
		const double truthful = income(q.value());
		double rival = -std::numeric_limits<double>::infinity();
		for (std::size_t j = 0; j < grid.steps; ++j)
		{
			if (j != i)
			{
				rival = std::max(rival, income(grid.point(j)));
			}
		}

		TruthTellingRecord rec{q.value(), br.report, truthful - rival};
		const double dev = std::abs(rec.q_best_response - rec.q_true);
		rep.max_deviation = std::max(rep.max_deviation, dev);
		rep.ambiguous = rep.ambiguous || br.ambiguous;
		if (dev > rep.step || !(rec.income_gap > 0.0))
		{
			rep.pass = false;
		}
		rep.records.push_back(rec);
	}
	return rep;
}

// ---------------------------------------------------------------------------
// Incentive compatible interval (QoS)

struct IcIntervalReport
{
	/// Maximal runs of grid points where c <= w(q) <= q v.
	std::vector<Interval> intervals;
	std::vector<std::uint8_t> mask;
	std::optional<double> analytic_q0;
	double step = 0.0;

	std::optional<double> scanned_lower() const
	{
		if (intervals.empty())
		{
			return std::nullopt;
		}
		return intervals.front().lower;
	}

	/// Closed-form and scanned lower endpoints differ by at most one step.
	bool endpoint_agrees() const
	{
		const auto lo = scanned_lower();
		return lo && analytic_q0 && std::abs(*lo - *analytic_q0) <= step * (1.0 + 1e-9);
	}
};

namespace detail {

inline IcIntervalReport scan_interval(const std::vector<double>& xs, const std::vector<std::uint8_t>& ok)
{
	IcIntervalReport rep;
	rep.mask = ok;
	std::optional<std::size_t> start;
	for (std::size_t i = 0; i <= xs.size(); ++i)
	{
		const bool in = i < xs.size() && ok[i];
		if (in && !start)
		{
			start = i;
		}
		else if (!in && start)
		{
			rep.intervals.push_back({xs[*start], xs[i - 1]});
			start.reset();
		}
	}
	return rep;
}

} // namespace detail

/// Scans c <= w(q) <= q v with w evaluated as the truthful provider income.
template <QosPricing S>
IcIntervalReport scan_ic_interval(const S& scheme, const MarketParams& market, const GridSpec& grid,
                                  std::optional<double> analytic_q0 = std::nullopt)
{
	grid.validate();
	std::vector<double> xs(grid.steps);
	std::vector<std::uint8_t> ok(grid.steps);
	for (std::size_t i = 0; i < grid.steps; ++i)
	{
		xs[i] = grid.point(i);
		const Probability q(xs[i]);
		const double w = provider_income(scheme, q, q);
		ok[i] = market.c <= w && w <= q.value() * market.v;
	}
	IcIntervalReport rep = detail::scan_interval(xs, ok);
	rep.analytic_q0 = analytic_q0;
	rep.step = grid.step();
	return rep;
}

inline IcIntervalReport scan_ic_interval(const LinearQosScheme& s, const MarketParams& m, const GridSpec& grid)
{
	return scan_ic_interval<LinearQosScheme>(s, m, grid, qos_ic_lower_bound(s, m).value());
}

inline IcIntervalReport scan_ic_interval(const LogQosScheme& s, const MarketParams& m, const GridSpec& grid)
{
	return scan_ic_interval<LogQosScheme>(s, m, grid, qos_ic_lower_bound(s, m).value());
}

/// Every grid point at or above q0 satisfies both participation bounds.
inline bool covers_closed_form_interval(const IcIntervalReport& rep, const GridSpec& grid)
{
	if (!rep.analytic_q0)
	{
		return false;
	}
	for (std::size_t i = 0; i < rep.mask.size(); ++i)
	{
		if (grid.point(i) >= *rep.analytic_q0 && !rep.mask[i])
		{
			return false;
		}
	}
	return true;
}

// ---------------------------------------------------------------------------
// Reservation saddle point

struct SaddleWitness
{
	/// 'p' when a user deviation lowers the cost, 'q' when a provider
	/// deviation raises it.
	char axis = 'q';
	double report = 0.0;
	/// Amount by which the inequality is violated (positive).
	double gap = 0.0;
};

struct SaddleReport
{
	bool pass = true;
	double truthful_cost = 0.0;
	std::optional<SaddleWitness> witness;
};

/// Checks EC(p, q') <= EC(p, q) <= EC(p', q) for all grid p', q'. Weak
/// inequalities hold up to 1e-12 relative slack.
inline SaddleReport check_saddle(const ReservationScheme& s, Probability p, Probability q, const GridSpec& grid)
{
	grid.validate();
	SaddleReport rep;
	rep.truthful_cost = reservation_expected_cost(s, p, q, p, q);
	const double slack = 1e-12 * std::max(1.0, std::abs(rep.truthful_cost));

	auto consider = [&](char axis, double report, double gap) {
		if (gap > slack && (!rep.witness || gap > rep.witness->gap))
		{
			rep.pass = false;
			rep.witness = SaddleWitness{axis, report, gap};
		}
	};

	for (std::size_t i = 0; i < grid.steps; ++i)
	{
		const Probability x(grid.point(i));
		consider('q', x.value(), reservation_expected_cost(s, p, q, p, x) - rep.truthful_cost);
		consider('p', x.value(), rep.truthful_cost - reservation_expected_cost(s, p, q, x, q));
	}
	return rep;
}

// ---------------------------------------------------------------------------
// Incentive compatible region (reservation)

struct IcRectangle
{
	double p0 = 1.0;
	double q0 = 1.0;
};

struct IcRegionReport
{
	GridSpec grid;
	/// Row-major over (p index, q index): c p <= w(p,q) <= v p q.
	std::vector<std::uint8_t> mask;
	/// Largest anchored rectangle [p0, upper] x [q0, upper]; empty when the
	/// corner cell itself fails.
	std::optional<IcRectangle> rectangle;

	bool at(std::size_t ip, std::size_t iq) const { return mask[ip * grid.steps + iq] != 0; }
};

namespace detail {

/// Grows [ip, n) x [iq, n) from the top corner, alternating axes and
/// skipping an axis once it can no longer extend.
inline std::pair<std::size_t, std::size_t> grow_rectangle(const IcRegionReport& rep, bool p_first)
{
	const std::size_t n = rep.grid.steps;
	std::size_t ip = n - 1, iq = n - 1;
	bool axis_p = p_first;
	int stalled = 0;
	while (stalled < 2)
	{
		bool grew = false;
		if (axis_p && ip > 0)
		{
			bool all = true;
			for (std::size_t j = iq; j < n && all; ++j)
			{
				all = rep.at(ip - 1, j);
			}
			if (all)
			{
				--ip;
				grew = true;
			}
		}
		else if (!axis_p && iq > 0)
		{
			bool all = true;
			for (std::size_t i = ip; i < n && all; ++i)
			{
				all = rep.at(i, iq - 1);
			}
			if (all)
			{
				--iq;
				grew = true;
			}
		}
		stalled = grew ? 0 : stalled + 1;
		axis_p = !axis_p;
	}
	return {ip, iq};
}

} // namespace detail

inline IcRegionReport scan_ic_region(const ReservationScheme& s, const MarketParams& m, const GridSpec& grid)
{
	grid.validate();
	IcRegionReport rep;
	rep.grid = grid;
	const std::size_t n = grid.steps;
	rep.mask.resize(n * n);
	for (std::size_t i = 0; i < n; ++i)
	{
		const Probability p(grid.point(i));
		for (std::size_t j = 0; j < n; ++j)
		{
			const Probability q(grid.point(j));
			const double w = reservation_w(s, p, q);
			rep.mask[i * n + j] = m.c * p.value() <= w && w <= m.v * p.value() * q.value();
		}
	}
	if (!rep.at(n - 1, n - 1))
	{
		return rep;
	}

	const auto a = detail::grow_rectangle(rep, true);
	const auto b = detail::grow_rectangle(rep, false);
	const auto area = [n](std::pair<std::size_t, std::size_t> r) { return (n - r.first) * (n - r.second); };
	const auto best = area(b) > area(a) ? b : a;
	rep.rectangle = IcRectangle{grid.point(best.first), grid.point(best.second)};
	return rep;
}

} // namespace qosmech

#endif // QOSMECH_VERIFICATION_HPP
