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
 * \file qosmech/simulation.hpp
 *
 * \brief Monte Carlo exchanges under the QoS and reservation contracts.
 *
 * A trial draws the realized events (delivery, and for reservations the
 * user's need) from the true probabilities, applies the contract's
 * transfers for the reported probabilities, and records both parties'
 * realized utilities. Campaigns aggregate trials with a fixed-order
 * reduction, so the output depends only on (config, seed).
 *
 * In reservation trials the provider is charged c p' for the capacity it
 * prepares, while the analytic provider utility is EC - c p. The two agree
 * under truthful reporting; CampaignStats carries both.
 */

#ifndef QOSMECH_SIMULATION_HPP
#define QOSMECH_SIMULATION_HPP

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>

#include "qosmech/error.hpp"
#include "qosmech/mechanisms.hpp"
#include "qosmech/parallel.hpp"
#include "qosmech/probability.hpp"
#include "qosmech/rng.hpp"
#include "qosmech/stats.hpp"
#include "qosmech/verification.hpp"

namespace qosmech {

struct Truthful
{
};

struct FixedReport
{
	Probability report;
};

/// Report whatever maximizes the party's own expected utility, found with
/// the grid + golden-section oracle.
struct BestResponseNumeric
{
	std::size_t steps = default_report_steps;
};

using ReportStrategy = std::variant<Truthful, FixedReport, BestResponseNumeric>;

inline std::string describe(const ReportStrategy& s)
{
	return std::visit(
	    [](const auto& x) -> std::string {
		    using T = std::decay_t<decltype(x)>;
		    if constexpr (std::is_same_v<T, Truthful>)
		    {
			    return "truthful";
		    }
		    else if constexpr (std::is_same_v<T, FixedReport>)
		    {
			    std::ostringstream oss;
			    oss << "fixed:" << x.report.value();
			    return oss.str();
		    }
		    else
		    {
			    return "best_response";
		    }
	    },
	    s);
}

struct ProviderAgent
{
	Probability q_true;
	double cost_c = 0.0;
	ReportStrategy strategy = Truthful{};
};

struct UserAgent
{
	Probability p_true{1.0};
	double value_v = 0.0;
	ReportStrategy strategy = Truthful{};
};

struct Transfers
{
	double premium = 0.0;
	double usage_payment = 0.0;
	double compensation = 0.0;

	/// Net flow from user to provider.
	double net_to_provider() const noexcept { return premium + usage_payment - compensation; }
};

struct TrialOutcome
{
	std::optional<double> p_reported;
	double q_reported = 0.0;
	bool service_available = false;
	bool user_needs = true;
	Transfers transfers;
	double provider_cost = 0.0;
	double user_utility = 0.0;
	double provider_utility = 0.0;
};

// ---------------------------------------------------------------------------
// Report resolution

template <QosPricing S>
Probability resolve_provider_report(const S& scheme, const ProviderAgent& provider)
{
	if (std::holds_alternative<FixedReport>(provider.strategy))
	{
		return std::get<FixedReport>(provider.strategy).report;
	}
	if (const auto* br = std::get_if<BestResponseNumeric>(&provider.strategy))
	{
		auto income = [&](double qr) { return provider_income(scheme, provider.q_true, Probability(qr)); };
		return Probability(best_response_report(income, GridSpec::over(report_domain(scheme), br->steps)).report);
	}
	return provider.q_true;
}

struct ReservationReports
{
	Probability p;
	Probability q;
};

/// EC separates into a p' part and a q' part, so each party's best response
/// does not depend on the other's report; truthful values stand in for the
/// counterpart when one is needed.
inline ReservationReports resolve_reservation_reports(const ReservationScheme& s, const ProviderAgent& provider,
                                                      const UserAgent& user)
{
	const Probability p = user.p_true;
	const Probability q = provider.q_true;

	Probability q_rep = q;
	if (const auto* f = std::get_if<FixedReport>(&provider.strategy))
	{
		q_rep = f->report;
	}
	else if (const auto* br = std::get_if<BestResponseNumeric>(&provider.strategy))
	{
		auto income = [&](double qr) { return reservation_expected_cost(s, p, q, p, Probability(qr)); };
		q_rep = Probability(best_response_report(income, GridSpec{0.0, 1.0, br->steps}).report);
	}

	Probability p_rep = p;
	if (const auto* f = std::get_if<FixedReport>(&user.strategy))
	{
		p_rep = f->report;
	}
	else if (const auto* br = std::get_if<BestResponseNumeric>(&user.strategy))
	{
		auto saving = [&](double pr) { return -reservation_expected_cost(s, p, q, Probability(pr), q_rep); };
		p_rep = Probability(best_response_report(saving, GridSpec{0.0, 1.0, br->steps}).report);
	}
	return {p_rep, q_rep};
}

// ---------------------------------------------------------------------------
// Single trials

template <QosPricing S>
TrialOutcome play_qos_exchange(const S& scheme, Probability q_true, Probability q_reported, double cost_c,
                               double value_v, TrialStream& rng)
{
	const Quote qt = quote(scheme, q_reported);
	TrialOutcome out;
	out.q_reported = q_reported.value();
	out.service_available = rng.bernoulli(q_true.value());
	out.transfers.premium = qt.premium;
	if (!out.service_available)
	{
		out.transfers.compensation = qt.compensation;
	}
	out.provider_cost = cost_c;
	const double net = out.transfers.net_to_provider();
	out.user_utility = (out.service_available ? value_v : 0.0) - net;
	out.provider_utility = net - cost_c;
	return out;
}

template <QosPricing S>
TrialOutcome simulate_qos_exchange(const S& scheme, const ProviderAgent& provider, double user_value,
                                   TrialStream& rng)
{
	return play_qos_exchange(scheme, provider.q_true, resolve_provider_report(scheme, provider), provider.cost_c,
	                         user_value, rng);
}

inline TrialOutcome play_reservation(const ReservationScheme& s, Probability p_true, Probability q_true,
                                     const ReservationReports& reports, double cost_c, double value_v,
                                     TrialStream& rng)
{
	const Quote qt = reservation_quote(s, reports.p, reports.q);
	TrialOutcome out;
	out.p_reported = reports.p.value();
	out.q_reported = reports.q.value();
	out.user_needs = rng.bernoulli(p_true.value());
	out.service_available = rng.bernoulli(q_true.value());
	out.transfers.premium = qt.premium;
	bool consumed = false;
	if (!out.service_available)
	{
		out.transfers.compensation = qt.compensation;
	}
	else if (out.user_needs)
	{
		out.transfers.usage_payment = *qt.usage_price;
		consumed = true;
	}
	out.provider_cost = cost_c * reports.p.value();
	const double net = out.transfers.net_to_provider();
	out.user_utility = (consumed ? value_v : 0.0) - net;
	out.provider_utility = net - out.provider_cost;
	return out;
}

inline TrialOutcome simulate_reservation(const ReservationScheme& s, const ProviderAgent& provider,
                                         const UserAgent& user, TrialStream& rng)
{
	return play_reservation(s, user.p_true, provider.q_true, resolve_reservation_reports(s, provider, user),
	                        provider.cost_c, user.value_v, rng);
}

// ---------------------------------------------------------------------------
// Campaigns

using Mechanism = std::variant<LinearQosScheme, LogQosScheme, ReservationScheme>;

inline std::string mechanism_name(const Mechanism& m)
{
	switch (m.index())
	{
	case 0: return "linear";
	case 1: return "log";
	default: return "reservation";
	}
}

struct CampaignConfig
{
	Mechanism mechanism;
	ProviderAgent provider;
	/// For QoS mechanisms only value_v is used.
	UserAgent user;
	std::uint64_t trials = 0;
	std::uint64_t seed = 0;
	/// 0 picks the hardware concurrency. Never changes the result.
	unsigned threads = 1;
};

struct CampaignStats
{
	std::uint64_t trials = 0;
	std::optional<double> p_reported;
	double q_reported = 0.0;

	RunningStats user;
	RunningStats provider;
	/// user + provider per trial.
	RunningStats total;
	/// Net payment from user to provider per trial.
	RunningStats user_cost;

	double analytic_user = 0.0;
	/// Analytic provider utility; for reservations this charges c p.
	double analytic_provider = 0.0;
	/// Reservation only: provider utility when charged c p', matching the
	/// simulated cost model. Equal to analytic_provider for QoS.
	double analytic_provider_reported_cost = 0.0;
	double analytic_total = 0.0;
	double analytic_user_cost = 0.0;
};

namespace detail {

struct CampaignAcc
{
	RunningStats user, provider, total, user_cost;

	void add(const TrialOutcome& t)
	{
		user.add(t.user_utility);
		provider.add(t.provider_utility);
		total.add(t.user_utility + t.provider_utility);
		user_cost.add(t.transfers.net_to_provider());
	}

	void merge(const CampaignAcc& o)
	{
		user.merge(o.user);
		provider.merge(o.provider);
		total.merge(o.total);
		user_cost.merge(o.user_cost);
	}
};

template <typename Play>
CampaignStats run_trials(const CampaignConfig& cfg, Play play)
{
	const auto acc = deterministic_reduce(
	    cfg.trials, cfg.threads, CampaignAcc{},
	    [&](CampaignAcc& a, std::uint64_t i) {
		    TrialStream rng(cfg.seed, i);
		    a.add(play(rng));
	    },
	    [](CampaignAcc& into, const CampaignAcc& from) { into.merge(from); });
	CampaignStats st;
	st.trials = cfg.trials;
	st.user = acc.user;
	st.provider = acc.provider;
	st.total = acc.total;
	st.user_cost = acc.user_cost;
	return st;
}

} // namespace detail

inline CampaignStats run_campaign(const CampaignConfig& cfg)
{
	if (cfg.trials < 1)
	{
		throw config_error("campaign needs at least one trial");
	}
	const double v = cfg.user.value_v;
	const double c = cfg.provider.cost_c;
	const Probability q = cfg.provider.q_true;

	if (const auto* res = std::get_if<ReservationScheme>(&cfg.mechanism))
	{
		const Probability p = cfg.user.p_true;
		const ReservationReports reports = resolve_reservation_reports(*res, cfg.provider, cfg.user);
		CampaignStats st = detail::run_trials(
		    cfg, [&](TrialStream& rng) { return play_reservation(*res, p, q, reports, c, v, rng); });
		const double ec = reservation_expected_cost(*res, p, q, reports.p, reports.q);
		st.p_reported = reports.p.value();
		st.q_reported = reports.q.value();
		st.analytic_user_cost = ec;
		st.analytic_user = p.value() * q.value() * v - ec;
		st.analytic_provider = ec - c * p.value();
		st.analytic_provider_reported_cost = ec - c * reports.p.value();
		st.analytic_total = p.value() * q.value() * v - c * p.value();
		return st;
	}

	return std::visit(
	    [&](const auto& scheme) -> CampaignStats {
		    using S = std::decay_t<decltype(scheme)>;
		    if constexpr (std::is_same_v<S, ReservationScheme>)
		    {
			    throw state_error("unreachable");
		    }
		    else
		    {
			    const Probability q_rep = resolve_provider_report(scheme, cfg.provider);
			    CampaignStats st = detail::run_trials(
			        cfg, [&](TrialStream& rng) { return play_qos_exchange(scheme, q, q_rep, c, v, rng); });
			    const double income = provider_income(scheme, q, q_rep);
			    st.q_reported = q_rep.value();
			    st.analytic_user_cost = income;
			    st.analytic_user = q.value() * v - income;
			    st.analytic_provider = income - c;
			    st.analytic_provider_reported_cost = st.analytic_provider;
			    st.analytic_total = q.value() * v - c;
			    return st;
		    }
	    },
	    cfg.mechanism);
}

} // namespace qosmech

#endif // QOSMECH_SIMULATION_HPP
