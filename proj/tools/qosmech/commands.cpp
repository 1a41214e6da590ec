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

#include "commands.hpp"

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace qosmech::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr std::uint64_t default_trials = 100000;
constexpr std::size_t figure_samples = 1001;

double money(double x) { return round_to(x, money_decimals); }
double prob(double x) { return round_to(x, probability_decimals); }

void write_file(const std::string& path, const std::string& text)
{
	std::ofstream f(path, std::ios::binary | std::ios::trunc);
	if (!f)
	{
		throw config_error("cannot write output file " + path);
	}
	f << text;
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text)
{
	if (cfg.output.empty())
	{
		out << text;
	}
	else
	{
		write_file(cfg.output, text);
	}
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

bool want_json(const RunConfig& cfg)
{
	if (cfg.format == "json")
	{
		return true;
	}
	if (cfg.format == "csv")
	{
		return false;
	}
	throw config_error("unknown output format '" + cfg.format + "' (csv | json)");
}

/// Maps library exceptions onto the exit-code contract.
int guarded(std::ostream& err, const std::function<int()>& body)
{
	try
	{
		return body();
	}
	catch (const config_error& e)
	{
		err << "configuration error: " << e.what() << "\n";
	}
	catch (const qosmech::domain_error& e)
	{
		err << "configuration error: " << e.what() << "\n";
	}
	catch (const parameter_error& e)
	{
		err << "configuration error: " << e.what() << "\n";
	}
	catch (const evaluation_error& e)
	{
		err << "evaluation error: " << e.what() << "\n";
	}
	catch (const std::exception& e)
	{
		err << "error: " << e.what() << "\n";
	}
	return exit_config;
}

/// Scheme plus market, validated. Returns nullopt after printing the
/// violated constraints.
std::optional<std::pair<AnyScheme, MarketParams>> validated(const RunConfig& cfg, std::ostream& err)
{
	AnyScheme scheme = scheme_of(cfg);
	const MarketParams market = market_of(cfg);
	const ValidationReport rep = validate(scheme, market);
	if (!rep.ok())
	{
		err << "invalid configuration:\n" << rep.str();
		return std::nullopt;
	}
	return std::make_pair(std::move(scheme), market);
}

Probability require_probability(const std::optional<double>& x, const char* name)
{
	if (!x)
	{
		throw config_error(std::string(name) + " is required");
	}
	return Probability(*x);
}

std::uint64_t require_seed(const RunConfig& cfg)
{
	if (!cfg.seed)
	{
		throw config_error("seed is required for stochastic commands");
	}
	return *cfg.seed;
}

ojson interval_json(const Interval& i) { return ojson::array({prob(i.lower), prob(i.upper)}); }

// ---------------------------------------------------------------------------

template <QosPricing S>
ojson verify_qos(const S& scheme, const MarketParams& market, std::size_t steps, std::optional<double> q0,
                 bool& pass)
{
	const GridSpec grid = GridSpec::over(report_domain(scheme), steps);
	const TruthTellingReport tt = check_truth_telling_qos(scheme, grid);
	const IcIntervalReport ic = scan_ic_interval(scheme, market, grid, q0);

	ojson j;
	ojson t;
	t["pass"] = tt.pass;
	t["max_deviation"] = prob(tt.max_deviation);
	t["grid_step"] = prob(tt.step);
	t["ambiguous"] = tt.ambiguous;
	if (const auto w = tt.witness())
	{
		t["witness"] = {{"q_true", prob(w->q_true)},
		                {"q_best_response", prob(w->q_best_response)},
		                {"income_gap", money(w->income_gap)}};
	}
	else
	{
		t["witness"] = nullptr;
	}
	j["truth_telling"] = t;

	ojson i;
	ojson intervals = ojson::array();
	for (const auto& iv : ic.intervals)
	{
		intervals.push_back(interval_json(iv));
	}
	i["intervals"] = intervals;
	const auto lo = ic.scanned_lower();
	i["scanned_lower"] = lo ? ojson(prob(*lo)) : ojson(nullptr);
	i["analytic_q0"] = q0 ? ojson(prob(*q0)) : ojson(nullptr);
	bool covered = true;
	if (q0)
	{
		covered = covers_closed_form_interval(ic, grid);
		i["endpoint_within_one_step"] = ic.endpoint_agrees();
		i["closed_form_interval_covered"] = covered;
	}
	j["ic_interval"] = i;
	pass = tt.pass && covered;
	return j;
}

ojson verify_reservation(const ReservationScheme& s, const MarketParams& m, const RunConfig& cfg, bool& pass)
{
	const GridSpec grid{0.0, 1.0, cfg.grid_steps};
	std::vector<std::array<double, 2>> points = cfg.saddle_points;
	if (points.empty())
	{
		for (double p : {0.0, 0.25, 0.5, 0.75, 1.0})
		{
			for (double q : {0.0, 0.25, 0.5, 0.75, 1.0})
			{
				points.push_back({p, q});
			}
		}
	}

	pass = true;
	ojson saddle = ojson::array();
	bool saddle_pass = true;
	for (const auto& [p, q] : points)
	{
		const SaddleReport r = check_saddle(s, Probability(p), Probability(q), grid);
		ojson e{{"p", prob(p)}, {"q", prob(q)}, {"pass", r.pass}, {"truthful_cost", money(r.truthful_cost)}};
		if (r.witness)
		{
			e["witness"] = {{"axis", std::string(1, r.witness->axis)},
			                {"report", prob(r.witness->report)},
			                {"gap", money(r.witness->gap)}};
		}
		saddle.push_back(e);
		saddle_pass = saddle_pass && r.pass;
	}

	const IcRegionReport region = scan_ic_region(s, m, grid);
	ojson reg;
	reg["corner_ok"] = region.rectangle.has_value();
	if (region.rectangle)
	{
		reg["p0"] = prob(region.rectangle->p0);
		reg["q0"] = prob(region.rectangle->q0);
	}
	else
	{
		reg["p0"] = nullptr;
		reg["q0"] = nullptr;
	}

	pass = saddle_pass && region.rectangle.has_value();
	return ojson{{"saddle", {{"pass", saddle_pass}, {"points", saddle}}}, {"ic_region", reg}};
}

std::string simulate_header()
{
	return "mechanism,p_true,q_true,strategy_user,strategy_provider,trials,mean_u_user,ci_user,mean_u_provider,"
	       "ci_provider,analytic_u_user,analytic_u_provider,p_reported,q_reported,mean_cost_user,ci_cost_user,"
	       "analytic_cost_user,mean_u_total,ci_total,analytic_u_total,analytic_u_provider_reported_cost\n";
}

} // namespace

// ---------------------------------------------------------------------------

int cmd_quote(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
	return guarded(err, [&] {
		const bool json = want_json(cfg);
		const auto sm = validated(cfg, err);
		if (!sm)
		{
			return int(exit_config);
		}
		const auto& [scheme, market] = *sm;
		const Quote qt = std::visit(
		    [&](const auto& s) -> Quote {
			    if constexpr (std::is_same_v<std::decay_t<decltype(s)>, ReservationScheme>)
			    {
				    return reservation_quote(s, require_probability(cfg.p, "report p"),
				                             require_probability(cfg.q, "report q"));
			    }
			    else
			    {
				    return quote(s, require_probability(cfg.q, "report q"));
			    }
		    },
		    scheme);

		if (json)
		{
			ojson j{{"mechanism", cfg.mechanism},
			        {"premium", money(qt.premium)},
			        {"compensation", money(qt.compensation)},
			        {"usage_price", qt.usage_price ? ojson(money(*qt.usage_price)) : ojson(nullptr)}};
			emit(cfg, out, dump(j));
		}
		else
		{
			std::string text = "premium,compensation,usage_price\n" + format_money(qt.premium) + ","
			                   + format_money(qt.compensation) + ","
			                   + (qt.usage_price ? format_money(*qt.usage_price) : std::string()) + "\n";
			emit(cfg, out, text);
		}
		return int(exit_ok);
	});
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
	return guarded(err, [&] {
		const auto sm = validated(cfg, err);
		if (!sm)
		{
			return int(exit_config);
		}
		const auto& [scheme, market] = *sm;
		bool pass = true;
		ojson body = std::visit(
		    [&](const auto& s) -> ojson {
			    using S = std::decay_t<decltype(s)>;
			    if constexpr (std::is_same_v<S, ReservationScheme>)
			    {
				    return verify_reservation(s, market, cfg, pass);
			    }
			    else if constexpr (std::is_same_v<S, TabulatedPricing>)
			    {
				    return verify_qos(s, market, cfg.grid_steps, std::nullopt, pass);
			    }
			    else
			    {
				    return verify_qos(s, market, cfg.grid_steps, qos_ic_lower_bound(s, market).value(), pass);
			    }
		    },
		    scheme);

		ojson j{{"mechanism", cfg.mechanism}, {"grid_steps", cfg.grid_steps}, {"pass", pass}};
		for (auto& [key, value] : body.items())
		{
			j[key] = value;
		}
		emit(cfg, out, dump(j));
		if (!pass)
		{
			err << "property violation found; see report\n";
		}
		return int(pass ? exit_ok : exit_violation);
	});
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
	return guarded(err, [&] {
		const bool json = want_json(cfg);
		const std::uint64_t seed = require_seed(cfg);
		const auto sm = validated(cfg, err);
		if (!sm)
		{
			return int(exit_config);
		}
		const auto& [scheme, market] = *sm;

		CampaignConfig cc;
		cc.trials = cfg.trials.value_or(default_trials);
		cc.seed = seed;
		cc.threads = cfg.threads;
		cc.provider = ProviderAgent{require_probability(cfg.q_true, "q_true"), market.c,
		                            parse_strategy(cfg.provider_strategy)};
		cc.user.value_v = market.v;
		const bool reservation = std::holds_alternative<ReservationScheme>(scheme);
		if (reservation)
		{
			cc.user.p_true = require_probability(cfg.p_true, "p_true");
			cc.user.strategy = parse_strategy(cfg.user_strategy);
		}
		cc.mechanism = std::visit(
		    [](const auto& s) -> Mechanism {
			    if constexpr (std::is_same_v<std::decay_t<decltype(s)>, TabulatedPricing>)
			    {
				    throw config_error("simulate supports linear, log and reservation mechanisms");
			    }
			    else
			    {
				    return s;
			    }
		    },
		    scheme);

		const CampaignStats st = run_campaign(cc);
		const std::string user_strategy = reservation ? describe(cc.user.strategy) : "none";
		const std::string provider_strategy = describe(cc.provider.strategy);

		if (json)
		{
			ojson j;
			j["mechanism"] = cfg.mechanism;
			j["p_true"] = reservation ? ojson(prob(cc.user.p_true.value())) : ojson(nullptr);
			j["q_true"] = prob(cc.provider.q_true.value());
			j["strategy_user"] = user_strategy;
			j["strategy_provider"] = provider_strategy;
			j["trials"] = st.trials;
			j["seed"] = seed;
			j["mean_u_user"] = money(st.user.mean());
			j["ci_user"] = money(st.user.ci95_half_width());
			j["mean_u_provider"] = money(st.provider.mean());
			j["ci_provider"] = money(st.provider.ci95_half_width());
			j["analytic_u_user"] = money(st.analytic_user);
			j["analytic_u_provider"] = money(st.analytic_provider);
			j["p_reported"] = st.p_reported ? ojson(prob(*st.p_reported)) : ojson(nullptr);
			j["q_reported"] = prob(st.q_reported);
			j["mean_cost_user"] = money(st.user_cost.mean());
			j["ci_cost_user"] = money(st.user_cost.ci95_half_width());
			j["analytic_cost_user"] = money(st.analytic_user_cost);
			j["mean_u_total"] = money(st.total.mean());
			j["ci_total"] = money(st.total.ci95_half_width());
			j["analytic_u_total"] = money(st.analytic_total);
			j["analytic_u_provider_reported_cost"] = money(st.analytic_provider_reported_cost);
			emit(cfg, out, dump(j));
		}
		else
		{
			std::ostringstream row;
			row << cfg.mechanism << "," << (reservation ? format_probability(cc.user.p_true.value()) : "") << ","
			    << format_probability(cc.provider.q_true.value()) << "," << user_strategy << ","
			    << provider_strategy << "," << st.trials << "," << format_money(st.user.mean()) << ","
			    << format_money(st.user.ci95_half_width()) << "," << format_money(st.provider.mean()) << ","
			    << format_money(st.provider.ci95_half_width()) << "," << format_money(st.analytic_user) << ","
			    << format_money(st.analytic_provider) << ","
			    << (st.p_reported ? format_probability(*st.p_reported) : "") << ","
			    << format_probability(st.q_reported) << "," << format_money(st.user_cost.mean()) << ","
			    << format_money(st.user_cost.ci95_half_width()) << "," << format_money(st.analytic_user_cost)
			    << "," << format_money(st.total.mean()) << "," << format_money(st.total.ci95_half_width()) << ","
			    << format_money(st.analytic_total) << "," << format_money(st.analytic_provider_reported_cost)
			    << "\n";
			emit(cfg, out, simulate_header() + row.str());
		}
		return int(exit_ok);
	});
}

int cmd_overbook(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
	return guarded(err, [&] {
		const bool json = want_json(cfg);
		if (cfg.mechanism != "reservation" && !cfg.mechanism.empty())
		{
			throw config_error("overbook uses the reservation mechanism");
		}
		RunConfig rc = cfg;
		rc.mechanism = "reservation";
		if (!rc.capacity || *rc.capacity < 1)
		{
			throw config_error("capacity m must be at least 1");
		}
		if (rc.users.empty())
		{
			throw config_error("at least one user probability is required");
		}
		const std::uint64_t seed = require_seed(rc);
		const auto sm = validated(rc, err);
		if (!sm)
		{
			return int(exit_config);
		}

		OverbookingConfig oc;
		oc.capacity = *rc.capacity;
		oc.scheme = std::get<ReservationScheme>(sm->first);
		oc.trials = rc.trials.value_or(default_trials);
		oc.seed = seed;
		oc.threads = rc.threads;
		for (double p : rc.users)
		{
			oc.p_true.emplace_back(p);
		}
		if (rc.users_reported)
		{
			std::vector<Probability> reps;
			for (double p : *rc.users_reported)
			{
				reps.emplace_back(p);
			}
			oc.p_reported = std::move(reps);
		}
		const OverbookingReport rep = overbooking_campaign(oc);

		ojson summary;
		summary["capacity"] = rep.capacity;
		summary["users"] = rep.users.size();
		summary["trials"] = rep.trials;
		summary["seed"] = seed;
		summary["mean_revenue"] = money(rep.revenue.mean());
		summary["revenue_variance"] = money(rep.revenue.variance());
		summary["ci_revenue"] = money(rep.revenue.ci95_half_width());
		summary["mean_compensation"] = money(rep.compensation.mean());
		summary["max_served"] = rep.max_served;
		ojson flagged = ojson::array();
		for (const auto& u : rep.users)
		{
			if (u.miscalibrated)
			{
				flagged.push_back(u.index);
			}
		}
		summary["miscalibrated_users"] = flagged;
		summary["any_miscalibrated"] = rep.any_miscalibrated;

		if (json)
		{
			ojson users = ojson::array();
			for (const auto& u : rep.users)
			{
				users.push_back({{"user_index", u.index},
				                 {"p_true", prob(u.p_true)},
				                 {"p_reported", prob(u.p_reported)},
				                 {"q_quoted", prob(u.q_quoted)},
				                 {"empirical_served_given_claim",
				                  u.served_given_claim ? ojson(prob(*u.served_given_claim)) : ojson(nullptr)},
				                 {"mean_transfers", money(u.mean_transfers)}});
			}
			emit(rc, out, dump(ojson{{"users", users}, {"summary", summary}}));
		}
		else
		{
			std::string text = "user_index,p_true,p_reported,q_quoted,empirical_served_given_claim,mean_transfers\n";
			for (const auto& u : rep.users)
			{
				text += std::to_string(u.index) + "," + format_probability(u.p_true) + ","
				        + format_probability(u.p_reported) + "," + format_probability(u.q_quoted) + ","
				        + (u.served_given_claim ? format_probability(*u.served_given_claim) : std::string()) + ","
				        + format_money(u.mean_transfers) + "\n";
			}
			emit(rc, out, text);
			if (!rc.summary.empty())
			{
				write_file(rc.summary, dump(summary));
			}
		}
		if (rep.any_miscalibrated)
		{
			err << "quoted QoS miscalibrated for " << flagged.size() << " user(s)\n";
			return int(exit_violation);
		}
		return int(exit_ok);
	});
}

int cmd_figure_data(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
	return guarded(err, [&] {
		const bool json = want_json(cfg);
		const auto sm = validated(cfg, err);
		if (!sm)
		{
			return int(exit_config);
		}
		const auto& [scheme, market] = *sm;

		struct Row
		{
			std::string kind;
			double q, g, h;
		};
		const std::vector<Row> rows = std::visit(
		    [&](const auto& s) -> std::vector<Row> {
			    using S = std::decay_t<decltype(s)>;
			    if constexpr (std::is_same_v<S, LinearQosScheme> || std::is_same_v<S, LogQosScheme>)
			    {
				    const GridSpec grid = GridSpec::over(report_domain(s), figure_samples);
				    std::vector<Row> r;
				    r.reserve(figure_samples + 1);
				    for (std::size_t i = 0; i < grid.steps; ++i)
				    {
					    const Probability q(grid.point(i));
					    const Quote qt = quote(s, q);
					    r.push_back({"sample", q.value(), qt.premium, qt.compensation});
				    }
				    const Probability q0 = qos_ic_lower_bound(s, market);
				    const Quote qt = quote(s, q0);
				    r.push_back({"q0", q0.value(), qt.premium, qt.compensation});
				    return r;
			    }
			    else
			    {
				    throw config_error("figure-data supports the linear and log mechanisms");
			    }
		    },
		    scheme);

		if (json)
		{
			ojson samples = ojson::array();
			ojson marker;
			for (const auto& r : rows)
			{
				ojson e{{"q", prob(r.q)}, {"g", money(r.g)}, {"h", money(r.h)}};
				if (r.kind == "q0")
				{
					marker = e;
				}
				else
				{
					samples.push_back(e);
				}
			}
			emit(cfg, out, dump(ojson{{"mechanism", cfg.mechanism}, {"samples", samples}, {"q0", marker}}));
		}
		else
		{
			std::string text = "kind,q,g,h\n";
			for (const auto& r : rows)
			{
				text += r.kind + "," + format_probability(r.q) + "," + format_money(r.g) + "," + format_money(r.h)
				        + "\n";
			}
			emit(cfg, out, text);
		}
		return int(exit_ok);
	});
}

} // namespace qosmech::cli
