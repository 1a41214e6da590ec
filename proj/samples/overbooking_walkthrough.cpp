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

// Two seats, four travellers who each fly with probability one half.

#include <iostream>

#include <qosmech/qosmech.hpp>

using namespace qosmech;

int main()
{
	const ReservationScheme scheme{1.0, 1.0, 2.0, 2.0, 1.0};
	CapacityLedger ledger(2);
	for (std::size_t k = 1; k <= 4; ++k)
	{
		const Arrival a = sequential_quote(ledger, k, Probability(0.5), scheme);
		std::cout << "user " << a.index << ": quoted q = " << format_probability(a.q_quoted.value())
		          << ", premium " << format_money(a.quote.premium) << ", usage price "
		          << format_money(*a.quote.usage_price) << ", compensation " << format_money(a.quote.compensation)
		          << "\n";
	}

	const Settlement s = settle_period2(ledger, {true, true, true, false});
	std::cout << "users 1-3 claim: served " << s.served_count << ", compensation paid "
	          << format_money(s.total_compensation) << ", provider revenue " << format_money(s.provider_revenue)
	          << "\n";

	OverbookingConfig cfg;
	cfg.p_true.assign(4, Probability(0.5));
	cfg.capacity = 2;
	cfg.scheme = scheme;
	cfg.trials = 200000;
	cfg.seed = 1;
	const OverbookingReport rep = overbooking_campaign(cfg);
	for (const auto& u : rep.users)
	{
		std::cout << "user " << u.index << ": quoted " << format_probability(u.q_quoted) << ", served given claim "
		          << format_probability(u.served_given_claim.value_or(0.0)) << "\n";
	}
}
