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

#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qosmech::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where)
{
	for (const auto& [key, _] : obj.items())
	{
		if (!known.count(key))
		{
			throw config_error("unknown key '" + key + "' in " + where);
		}
	}
}

template <typename T>
void read(const json& obj, const char* key, std::optional<T>& into)
{
	if (obj.contains(key))
	{
		into = obj.at(key).get<T>();
	}
}

template <typename T>
void read(const json& obj, const char* key, T& into)
{
	if (obj.contains(key))
	{
		into = obj.at(key).get<T>();
	}
}

const json& section(const json& root, const char* key)
{
	static const json empty = json::object();
	if (!root.contains(key))
	{
		return empty;
	}
	const json& s = root.at(key);
	if (!s.is_object())
	{
		throw config_error(std::string("'") + key + "' must be an object");
	}
	return s;
}

} // namespace

RunConfig parse_config(const std::string& json_text)
{
	json root;
	try
	{
		root = json::parse(json_text);
	}
	catch (const json::parse_error& e)
	{
		throw config_error(std::string("config is not valid JSON: ") + e.what());
	}
	if (!root.is_object())
	{
		throw config_error("config must be a JSON object");
	}
	reject_unknown(root,
	               {"version", "mechanism", "scheme", "market", "grid", "trials", "seed", "threads", "format",
	                "output", "summary", "quote", "simulate", "verify", "overbook"},
	               "config");

	RunConfig cfg;
	try
	{
		read(root, "version", cfg.version);
		if (cfg.version != config_version)
		{
			throw config_error("unsupported config version " + std::to_string(cfg.version));
		}
		read(root, "mechanism", cfg.mechanism);

		const json& scheme = section(root, "scheme");
		reject_unknown(scheme, {"k", "c1", "k1", "k2", "c2", "c3", "q", "g", "h"}, "scheme");
		read(scheme, "k", cfg.k);
		read(scheme, "c1", cfg.c1);
		read(scheme, "k1", cfg.k1);
		read(scheme, "k2", cfg.k2);
		read(scheme, "c2", cfg.c2);
		read(scheme, "c3", cfg.c3);
		if (scheme.contains("q") || scheme.contains("g") || scheme.contains("h"))
		{
			TabulatedPricing t;
			read(scheme, "q", t.q);
			read(scheme, "g", t.g);
			read(scheme, "h", t.h);
			cfg.table = std::move(t);
		}

		const json& market = section(root, "market");
		reject_unknown(market, {"v", "c"}, "market");
		read(market, "v", cfg.v);
		read(market, "c", cfg.c);

		const json& grid = section(root, "grid");
		reject_unknown(grid, {"steps"}, "grid");
		read(grid, "steps", cfg.grid_steps);

		read(root, "trials", cfg.trials);
		read(root, "seed", cfg.seed);
		read(root, "threads", cfg.threads);
		read(root, "format", cfg.format);
		read(root, "output", cfg.output);
		read(root, "summary", cfg.summary);

		const json& quote = section(root, "quote");
		reject_unknown(quote, {"p", "q"}, "quote");
		read(quote, "p", cfg.p);
		read(quote, "q", cfg.q);

		const json& sim = section(root, "simulate");
		reject_unknown(sim, {"p_true", "q_true", "provider_strategy", "user_strategy"}, "simulate");
		read(sim, "p_true", cfg.p_true);
		read(sim, "q_true", cfg.q_true);
		read(sim, "provider_strategy", cfg.provider_strategy);
		read(sim, "user_strategy", cfg.user_strategy);

		const json& verify = section(root, "verify");
		reject_unknown(verify, {"saddle_points"}, "verify");
		read(verify, "saddle_points", cfg.saddle_points);

		const json& ob = section(root, "overbook");
		reject_unknown(ob, {"capacity", "p_true", "p_reported"}, "overbook");
		read(ob, "capacity", cfg.capacity);
		read(ob, "p_true", cfg.users);
		read(ob, "p_reported", cfg.users_reported);
	}
	catch (const json::exception& e)
	{
		throw config_error(std::string("bad config value: ") + e.what());
	}
	return cfg;
}

RunConfig load_config(const std::string& path)
{
	std::ifstream in(path);
	if (!in)
	{
		throw config_error("cannot read config file " + path);
	}
	std::ostringstream ss;
	ss << in.rdbuf();
	return parse_config(ss.str());
}

void apply(const Overrides& o, RunConfig& cfg)
{
	auto set = [](const auto& from, auto& to) {
		if (from)
		{
			to = *from;
		}
	};
	set(o.mechanism, cfg.mechanism);
	set(o.k, cfg.k);
	set(o.c1, cfg.c1);
	set(o.k1, cfg.k1);
	set(o.k2, cfg.k2);
	set(o.c2, cfg.c2);
	set(o.c3, cfg.c3);
	set(o.v, cfg.v);
	set(o.c, cfg.c);
	set(o.grid_steps, cfg.grid_steps);
	set(o.trials, cfg.trials);
	set(o.seed, cfg.seed);
	set(o.threads, cfg.threads);
	set(o.format, cfg.format);
	set(o.output, cfg.output);
	set(o.summary, cfg.summary);
	set(o.p, cfg.p);
	set(o.q, cfg.q);
	set(o.p_true, cfg.p_true);
	set(o.q_true, cfg.q_true);
	set(o.provider_strategy, cfg.provider_strategy);
	set(o.user_strategy, cfg.user_strategy);
	set(o.capacity, cfg.capacity);
	if (!o.users.empty())
	{
		cfg.users = o.users;
	}
	if (!o.users_reported.empty())
	{
		cfg.users_reported = o.users_reported;
	}
}

MarketParams market_of(const RunConfig& cfg)
{
	if (!cfg.v || !cfg.c)
	{
		throw config_error("market parameters v and c are required");
	}
	return {*cfg.v, *cfg.c};
}

namespace {

double need(const std::optional<double>& x, const char* name, const std::string& mechanism)
{
	if (!x)
	{
		throw config_error(std::string("scheme parameter ") + name + " is required for mechanism " + mechanism);
	}
	return *x;
}

} // namespace

AnyScheme scheme_of(const RunConfig& cfg)
{
	const std::string& m = cfg.mechanism;
	if (m == "linear")
	{
		return LinearQosScheme{need(cfg.k, "k", m), need(cfg.c1, "c1", m)};
	}
	if (m == "log")
	{
		return LogQosScheme{need(cfg.k, "k", m), need(cfg.c1, "c1", m)};
	}
	if (m == "reservation")
	{
		return ReservationScheme{need(cfg.k1, "k1", m), need(cfg.k2, "k2", m), need(cfg.c1, "c1", m),
		                         need(cfg.c2, "c2", m), need(cfg.c3, "c3", m)};
	}
	if (m == "tabulated")
	{
		if (!cfg.table)
		{
			throw config_error("tabulated mechanism needs scheme.q, scheme.g and scheme.h");
		}
		cfg.table->validate();
		return *cfg.table;
	}
	if (m.empty())
	{
		throw config_error("mechanism is required (linear | log | reservation | tabulated)");
	}
	throw config_error("unknown mechanism '" + m + "'");
}

ValidationReport validate(const AnyScheme& scheme, const MarketParams& market)
{
	return std::visit(
	    [&](const auto& s) -> ValidationReport {
		    if constexpr (std::is_same_v<std::decay_t<decltype(s)>, TabulatedPricing>)
		    {
			    return qosmech::validate(market);
		    }
		    else
		    {
			    return qosmech::validate(s, market);
		    }
	    },
	    scheme);
}

ReportStrategy parse_strategy(const std::string& text)
{
	if (text == "truthful")
	{
		return Truthful{};
	}
	if (text == "best_response")
	{
		return BestResponseNumeric{};
	}
	const std::string prefix = "fixed:";
	if (text.rfind(prefix, 0) == 0)
	{
		std::size_t used = 0;
		double x = 0.0;
		try
		{
			x = std::stod(text.substr(prefix.size()), &used);
		}
		catch (const std::exception&)
		{
			throw config_error("bad fixed report in strategy '" + text + "'");
		}
		if (used != text.size() - prefix.size())
		{
			throw config_error("bad fixed report in strategy '" + text + "'");
		}
		return FixedReport{Probability(x)};
	}
	throw config_error("unknown strategy '" + text + "' (truthful | best_response | fixed:<p>)");
}

} // namespace qosmech::cli
