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

// Prices both QoS schemes for c = 1, v = 5, k = 2, c1 = 1 and compares the
// closed-form lower end of the incentive compatible interval with a scan.

#include <iostream>

#include <qosmech/qosmech.hpp>

using namespace qosmech;

template <typename S>
void report(const char* name, const S& scheme, const MarketParams& market)
{
	const GridSpec grid = GridSpec::over(report_domain(scheme), default_acceptance_steps);
	const auto tt = check_truth_telling_qos(scheme, grid);
	const auto ic = scan_ic_interval(scheme, market, grid);

	std::cout << name << ": truth-telling " << (tt.pass ? "holds" : "FAILS") << " (max deviation "
	          << tt.max_deviation << ")\n";
	std::cout << "  closed-form q0 = " << format_probability(*ic.analytic_q0) << "\n";
	for (const auto& iv : ic.intervals)
	{
		std::cout << "  scanned c <= w(q) <= q v on [" << format_probability(iv.lower) << ", "
		          << format_probability(iv.upper) << "]\n";
	}
	for (double q : {0.0, 0.5, 0.9})
	{
		const Quote qt = quote(scheme, Probability(q));
		std::cout << "  q' = " << q << ": premium " << format_money(qt.premium) << ", compensation "
		          << format_money(qt.compensation) << "\n";
	}
}

int main()
{
	const MarketParams market{5.0, 1.0};
	report("linear", LinearQosScheme{2.0, 1.0}, market);
	report("log", LogQosScheme{2.0, 1.0}, market);
}
