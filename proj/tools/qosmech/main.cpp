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

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

using namespace qosmech::cli;

void add_common(CLI::App& cmd, std::string& config_path, Overrides& o)
{
	cmd.add_option("--config", config_path, "JSON run configuration; flags override it");
	cmd.add_option("--mechanism", o.mechanism, "linear | log | reservation | tabulated");
	cmd.add_option("--k", o.k, "QoS scheme curvature/scale k");
	cmd.add_option("--c1", o.c1, "base premium c1");
	cmd.add_option("--k1", o.k1, "reservation k1");
	cmd.add_option("--k2", o.k2, "reservation k2");
	cmd.add_option("--c2", o.c2, "reservation c2");
	cmd.add_option("--c3", o.c3, "reservation c3");
	cmd.add_option("--v", o.v, "user value v");
	cmd.add_option("--c", o.c, "provider cost c");
	cmd.add_option("--format", o.format, "csv | json");
	cmd.add_option("--output", o.output, "output path (default stdout)");
}

void add_stochastic(CLI::App& cmd, Overrides& o)
{
	cmd.add_option("--trials", o.trials, "number of trials");
	cmd.add_option("--seed", o.seed, "random seed (required)");
	cmd.add_option("--threads", o.threads, "worker threads; 0 = all cores; output is identical for any value");
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Contingent-contract pricing: quotes, verification, simulation and overbooking"};
	app.require_subcommand(1);

	std::string config_path;
	Overrides o;

	auto* quote = app.add_subcommand("quote", "price a report under a scheme");
	add_common(*quote, config_path, o);
	quote->add_option("--q", o.q, "reported QoS q'");
	quote->add_option("--p", o.p, "reported usage probability p' (reservation)");

	auto* verify = app.add_subcommand("verify", "numerically check truth-telling and incentive compatibility");
	add_common(*verify, config_path, o);
	verify->add_option("--grid-steps", o.grid_steps, "grid points per axis (default 101)");

	auto* simulate = app.add_subcommand("simulate", "Monte Carlo campaign of one exchange configuration");
	add_common(*simulate, config_path, o);
	add_stochastic(*simulate, o);
	simulate->add_option("--q-true", o.q_true, "provider's true QoS");
	simulate->add_option("--p-true", o.p_true, "user's true usage probability (reservation)");
	simulate->add_option("--provider-strategy", o.provider_strategy, "truthful | best_response | fixed:<q>");
	simulate->add_option("--user-strategy", o.user_strategy, "truthful | best_response | fixed:<p>");

	auto* overbook = app.add_subcommand("overbook", "sequential reservations against finite capacity");
	add_common(*overbook, config_path, o);
	add_stochastic(*overbook, o);
	overbook->add_option("--capacity,-m", o.capacity, "units of capacity m");
	overbook->add_option("--users", o.users, "true usage probabilities in arrival order")->delimiter(',');
	overbook->add_option("--reported", o.users_reported, "reported probabilities (default: truthful)")
	    ->delimiter(',');
	overbook->add_option("--summary", o.summary, "summary JSON path (csv format)");

	auto* figure = app.add_subcommand("figure-data", "premium and compensation curves for plotting");
	add_common(*figure, config_path, o);

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::ParseError& e)
	{
		const int code = app.exit(e);
		return code == 0 ? exit_ok : exit_config;
	}

	RunConfig cfg;
	try
	{
		if (!config_path.empty())
		{
			cfg = load_config(config_path);
		}
		apply(o, cfg);
	}
	catch (const std::exception& e)
	{
		std::cerr << "configuration error: " << e.what() << "\n";
		return exit_config;
	}

	const std::map<CLI::App*, int (*)(const RunConfig&, std::ostream&, std::ostream&)> commands{
	    {quote, cmd_quote}, {verify, cmd_verify}, {simulate, cmd_simulate},
	    {overbook, cmd_overbook}, {figure, cmd_figure_data}};
	for (const auto& [sub, run] : commands)
	{
		if (sub->parsed())
		{
			return run(cfg, std::cout, std::cerr);
		}
	}
	return exit_config;
}
