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

#ifndef QOSMECH_TOOLS_CONFIG_HPP
#define QOSMECH_TOOLS_CONFIG_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <qosmech/qosmech.hpp>

namespace qosmech::cli {

inline constexpr int config_version = 1;

/// Everything a subcommand may need. Fields a command does not use are
/// ignored; fields it needs and lacks are a configuration error.
struct RunConfig
{
	int version = config_version;
	std::string mechanism;

	std::optional<double> k, c1, k1, k2, c2, c3;
	std::optional<TabulatedPricing> table;
	std::optional<double> v, c;

	std::size_t grid_steps = default_report_steps;
	std::optional<std::uint64_t> trials;
	std::optional<std::uint64_t> seed;
	unsigned threads = 1;
	std::string format = "csv";
	std::string output;
	std::string summary;

	// quote
	std::optional<double> p, q;
	// simulate
	std::optional<double> p_true, q_true;
	std::string provider_strategy = "truthful";
	std::string user_strategy = "truthful";
	// verify
	std::vector<std::array<double, 2>> saddle_points;
	// overbook
	std::optional<std::size_t> capacity;
	std::vector<double> users;
	std::optional<std::vector<double>> users_reported;
};

/// Flag values; only those given on the command line are set.
struct Overrides
{
	std::optional<std::string> mechanism;
	std::optional<double> k, c1, k1, k2, c2, c3, v, c;
	std::optional<std::size_t> grid_steps;
	std::optional<std::uint64_t> trials, seed;
	std::optional<unsigned> threads;
	std::optional<std::string> format, output, summary;
	std::optional<double> p, q, p_true, q_true;
	std::optional<std::string> provider_strategy, user_strategy;
	std::optional<std::size_t> capacity;
	std::vector<double> users;
	std::vector<double> users_reported;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
void apply(const Overrides& o, RunConfig& cfg);

using AnyScheme = std::variant<LinearQosScheme, LogQosScheme, ReservationScheme, TabulatedPricing>;

MarketParams market_of(const RunConfig& cfg);
AnyScheme scheme_of(const RunConfig& cfg);

/// Validation report of the scheme against the market; empty when valid.
ValidationReport validate(const AnyScheme& scheme, const MarketParams& market);

/// "truthful", "best_response" or "fixed:<probability>".
ReportStrategy parse_strategy(const std::string& text);

} // namespace qosmech::cli

#endif // QOSMECH_TOOLS_CONFIG_HPP
