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
 * \file qosmech/overbooking.hpp
 *
 * \brief Sequential reservations against a finite capacity.
 *
 * Users arrive one at a time and report their usage probability. With m
 * units, the first m arrivals get a sure option (q = 1). Arrival k > m is
 * served in period 2 only if fewer than m of the k - 1 earlier users claim,
 * so it is quoted
 *
 *     q_k = P(X_{k-1} <= m - 1),  X_{k-1} = sum of Bernoulli(p_i), i < k,
 *
 * which for k = m + 1 is 1 - p_1 ... p_m. Claims are settled in arrival
 * order until capacity runs out.
 */

#ifndef QOSMECH_OVERBOOKING_HPP
#define QOSMECH_OVERBOOKING_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qosmech/error.hpp"
#include "qosmech/mechanisms.hpp"
#include "qosmech/parallel.hpp"
#include "qosmech/probability.hpp"
#include "qosmech/rng.hpp"
#include "qosmech/simulation.hpp"
#include "qosmech/stats.hpp"

namespace qosmech {

/// Distribution of the number of successes among independent, non-identical
/// Bernoulli trials, extended one trial at a time.
class PoissonBinomialTable
{
public:
	PoissonBinomialTable() = default;

	explicit PoissonBinomialTable(std::span<const Probability> ps)
	{
		for (const Probability& p : ps)
		{
			append(p);
		}
	}

	void append(Probability p)
	{
		const double s = p.value();
		const double f = p.complement();
		row_.push_back(0.0);
		for (std::size_t j = row_.size() - 1; j > 0; --j)
		{
			row_[j] = row_[j] * f + row_[j - 1] * s;
		}
		row_[0] *= f;
		probs_.push_back(p);
	}

	std::size_t size() const noexcept { return probs_.size(); }
	const std::vector<Probability>& probabilities() const noexcept { return probs_; }

	/// P(X = j) for j = 0..size().
	const std::vector<double>& row() const noexcept { return row_; }

	double at_most(std::size_t j) const noexcept
	{
		double s = 0.0;
		for (std::size_t i = 0; i <= j && i < row_.size(); ++i)
		{
			s += row_[i];
		}
		return s;
	}

private:
	std::vector<Probability> probs_;
	std::vector<double> row_{1.0};
};

/// Quoted QoS for the k-th arrival (1-based), from the reports of the first
/// k - 1 arrivals. O(k m): only P(X = j) for j < m is tracked.
inline Probability qos_for_arrival(std::size_t k, std::span<const Probability> reported, std::size_t capacity)
{
	if (k == 0)
	{
		throw state_error("arrival index is 1-based");
	}
	if (capacity == 0)
	{
		throw config_error("capacity must be at least 1");
	}
	if (k <= capacity)
	{
		return Probability(1.0);
	}
	if (reported.size() < k - 1)
	{
		throw state_error("fewer reports than earlier arrivals");
	}
	std::vector<double> below(capacity, 0.0);
	below[0] = 1.0;
	for (std::size_t i = 0; i + 1 < k; ++i)
	{
		const double s = reported[i].value();
		const double f = reported[i].complement();
		for (std::size_t j = capacity - 1; j > 0; --j)
		{
			below[j] = below[j] * f + below[j - 1] * s;
		}
		below[0] *= f;
	}
	double q = 0.0;
	for (double x : below)
	{
		q += x;
	}
	return Probability(std::clamp(q, 0.0, 1.0));
}

struct Arrival
{
	std::size_t index = 0;
	Probability p_reported;
	Probability q_quoted;
	Quote quote;
};

struct UserSettlement
{
	bool claimed = false;
	bool served = false;
	Transfers transfers;
};

struct Settlement
{
	std::vector<UserSettlement> users;
	std::size_t served_count = 0;
	double provider_revenue = 0.0;
	double total_compensation = 0.0;
};

class CapacityLedger
{
public:
	explicit CapacityLedger(std::size_t capacity)
	: capacity_(capacity)
	{
		if (capacity == 0)
		{
			throw config_error("capacity must be at least 1");
		}
	}

	std::size_t capacity() const noexcept { return capacity_; }
	const std::vector<Arrival>& arrivals() const noexcept { return arrivals_; }
	std::size_t next_index() const noexcept { return arrivals_.size() + 1; }

	std::vector<Probability> reported() const
	{
		std::vector<Probability> out;
		out.reserve(arrivals_.size());
		for (const auto& a : arrivals_)
		{
			out.push_back(a.p_reported);
		}
		return out;
	}

private:
	friend Arrival sequential_quote(CapacityLedger&, std::size_t, Probability, const ReservationScheme&);

	std::size_t capacity_;
	std::vector<Arrival> arrivals_;
};

/// Quotes the next arrival and appends it. Arrivals within capacity get the
/// reservation option at q' = 1; later ones get it at their quoted q_k.
inline Arrival sequential_quote(CapacityLedger& ledger, std::size_t user_index, Probability p_reported,
                                const ReservationScheme& scheme)
{
	if (user_index != ledger.next_index())
	{
		throw state_error("arrival " + std::to_string(user_index) + " out of order; expected "
		                  + std::to_string(ledger.next_index()));
	}
	const std::vector<Probability> earlier = ledger.reported();
	const Probability q = qos_for_arrival(user_index, earlier, ledger.capacity());
	Arrival a{user_index, p_reported, q, reservation_quote(scheme, p_reported, q)};
	ledger.arrivals_.push_back(a);
	return a;
}

/// Serves claimants in arrival order while capacity remains. Denied
/// claimants are compensated; non-claimants only paid their premium.
inline Settlement settle_period2(const CapacityLedger& ledger, const std::vector<bool>& needs)
{
	const auto& arrivals = ledger.arrivals();
	if (needs.size() != arrivals.size())
	{
		throw state_error("needs vector does not match the number of arrivals");
	}
	Settlement out;
	out.users.resize(arrivals.size());
	for (std::size_t i = 0; i < arrivals.size(); ++i)
	{
		UserSettlement& u = out.users[i];
		u.claimed = needs[i];
		u.transfers.premium = arrivals[i].quote.premium;
		if (u.claimed)
		{
			if (out.served_count < ledger.capacity())
			{
				u.served = true;
				++out.served_count;
				u.transfers.usage_payment = *arrivals[i].quote.usage_price;
			}
			else
			{
				u.transfers.compensation = arrivals[i].quote.compensation;
				out.total_compensation += u.transfers.compensation;
			}
		}
		out.provider_revenue += u.transfers.net_to_provider();
	}
	return out;
}

// ---------------------------------------------------------------------------
// Campaigns

struct OverbookingConfig
{
	std::vector<Probability> p_true;
	/// Defaults to p_true (truthful reports).
	std::optional<std::vector<Probability>> p_reported;
	std::size_t capacity = 1;
	ReservationScheme scheme;
	std::uint64_t trials = 0;
	std::uint64_t seed = 0;
	unsigned threads = 1;
};

struct OverbookingUserRow
{
	std::size_t index = 0;
	double p_true = 0.0;
	double p_reported = 0.0;
	double q_quoted = 0.0;
	std::uint64_t claims = 0;
	std::uint64_t served = 0;
	/// served / claims; absent if the user never claimed.
	std::optional<double> served_given_claim;
	/// Binomial standard error of served_given_claim under the quoted q.
	double standard_error = 0.0;
	/// Mean net payment from this user to the provider per trial.
	double mean_transfers = 0.0;
	/// Empirical rate more than 4 standard errors from the quote.
	bool miscalibrated = false;
};

struct OverbookingReport
{
	std::size_t capacity = 0;
	std::uint64_t trials = 0;
	std::vector<OverbookingUserRow> users;
	RunningStats revenue;
	RunningStats compensation;
	std::size_t max_served = 0;
	bool any_miscalibrated = false;
};

inline constexpr double calibration_sigmas = 4.0;

inline OverbookingReport overbooking_campaign(const OverbookingConfig& cfg)
{
	const std::size_t n = cfg.p_true.size();
	if (n < 1)
	{
		throw config_error("overbooking needs at least one user");
	}
	if (cfg.capacity < 1)
	{
		throw config_error("capacity must be at least 1");
	}
	if (cfg.trials < 1)
	{
		throw config_error("campaign needs at least one trial");
	}
	const std::vector<Probability>& reported = cfg.p_reported ? *cfg.p_reported : cfg.p_true;
	if (reported.size() != n)
	{
		throw config_error("p_reported must have one entry per user");
	}

	CapacityLedger ledger(cfg.capacity);
	for (std::size_t i = 0; i < n; ++i)
	{
		sequential_quote(ledger, i + 1, reported[i], cfg.scheme);
	}

	struct Acc
	{
		std::vector<std::uint64_t> claims, served;
		std::vector<RunningStats> transfers;
		RunningStats revenue, compensation;
		std::size_t max_served = 0;
	};
	Acc empty{std::vector<std::uint64_t>(n, 0), std::vector<std::uint64_t>(n, 0), std::vector<RunningStats>(n), {}, {}, 0};

	const Acc acc = deterministic_reduce(
	    cfg.trials, cfg.threads, empty,
	    [&](Acc& a, std::uint64_t t) {
		    TrialStream rng(cfg.seed, t);
		    std::vector<bool> needs(n);
		    for (std::size_t i = 0; i < n; ++i)
		    {
			    needs[i] = rng.bernoulli(cfg.p_true[i].value());
		    }
		    const Settlement s = settle_period2(ledger, needs);
		    for (std::size_t i = 0; i < n; ++i)
		    {
			    a.claims[i] += s.users[i].claimed;
			    a.served[i] += s.users[i].served;
			    a.transfers[i].add(s.users[i].transfers.net_to_provider());
		    }
		    a.revenue.add(s.provider_revenue);
		    a.compensation.add(s.total_compensation);
		    a.max_served = std::max(a.max_served, s.served_count);
	    },
	    [n](Acc& into, const Acc& from) {
		    for (std::size_t i = 0; i < n; ++i)
		    {
			    into.claims[i] += from.claims[i];
			    into.served[i] += from.served[i];
			    into.transfers[i].merge(from.transfers[i]);
		    }
		    into.revenue.merge(from.revenue);
		    into.compensation.merge(from.compensation);
		    into.max_served = std::max(into.max_served, from.max_served);
	    });

	OverbookingReport rep;
	rep.capacity = cfg.capacity;
	rep.trials = cfg.trials;
	rep.revenue = acc.revenue;
	rep.compensation = acc.compensation;
	rep.max_served = acc.max_served;
	for (std::size_t i = 0; i < n; ++i)
	{
		const Arrival& a = ledger.arrivals()[i];
		OverbookingUserRow row;
		row.index = i + 1;
		row.p_true = cfg.p_true[i].value();
		row.p_reported = a.p_reported.value();
		row.q_quoted = a.q_quoted.value();
		row.claims = acc.claims[i];
		row.served = acc.served[i];
		row.mean_transfers = acc.transfers[i].mean();
		if (row.claims > 0)
		{
			const double rate = static_cast<double>(row.served) / static_cast<double>(row.claims);
			row.served_given_claim = rate;
			row.standard_error = std::sqrt(row.q_quoted * (1.0 - row.q_quoted) / static_cast<double>(row.claims));
			row.miscalibrated = std::abs(rate - row.q_quoted) > calibration_sigmas * row.standard_error;
		}
		rep.any_miscalibrated = rep.any_miscalibrated || row.miscalibrated;
		rep.users.push_back(row);
	}
	return rep;
}

} // namespace qosmech

#endif // QOSMECH_OVERBOOKING_HPP
