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

#include <gtest/gtest.h>

#include <cmath>

#include <qosmech/mechanisms.hpp>

#include "generators.hpp"

using namespace qosmech;
using namespace qosmech::testing;

namespace {

const LinearQosScheme base_linear{2.0, 1.0};
const LogQosScheme base_log{2.0, 1.0};
const MarketParams base_market{5.0, 1.0};
const ReservationScheme example_res{1.0, 1.0, 2.0, 2.0, 1.0};
const MarketParams res_market{10.0, 1.0};

Probability P(double x) { return Probability(x); }

} // namespace

TEST(Probability, RejectsOutOfRange)
{
	EXPECT_THROW(Probability(-0.1), qosmech::domain_error);
	EXPECT_THROW(Probability(1.2), qosmech::domain_error);
	EXPECT_THROW(Probability(std::nan("")), qosmech::domain_error);
	EXPECT_NO_THROW(Probability(0.0));
	EXPECT_NO_THROW(Probability(1.0));
}

TEST(LinearQuote, Examples)
{
	auto q = linear_quote(base_linear, P(0.5));
	EXPECT_DOUBLE_EQ(q.premium, 2.5);
	EXPECT_DOUBLE_EQ(q.compensation, 2.0);
	EXPECT_FALSE(q.usage_price);

	q = linear_quote(base_linear, P(0.0));
	EXPECT_DOUBLE_EQ(q.premium, 1.0);
	EXPECT_DOUBLE_EQ(q.compensation, 0.0);

	q = linear_quote(base_linear, P(1.0));
	EXPECT_DOUBLE_EQ(q.premium, 3.0);
	EXPECT_DOUBLE_EQ(q.compensation, 4.0);
}

TEST(LogQuote, Examples)
{
	auto q = log_quote(base_log, P(0.5));
	EXPECT_DOUBLE_EQ(q.premium, 2.0);
	EXPECT_NEAR(q.compensation, 2.0 * std::log(2.0), 1e-15);

	q = log_quote(base_log, P(0.0));
	EXPECT_DOUBLE_EQ(q.premium, 1.0);
	EXPECT_DOUBLE_EQ(q.compensation, 0.0);

	// five nines
	q = log_quote(base_log, P(0.99999));
	EXPECT_NEAR(q.compensation, 23.025850929940457, 1e-6);
}

TEST(LogQuote, RejectsReportsNearOne)
{
	EXPECT_NO_THROW(log_quote(base_log, P(log_domain_upper)));
	EXPECT_TRUE(std::isfinite(log_quote(base_log, P(log_domain_upper)).compensation));
	try
	{
		log_quote(base_log, P(1.0));
		FAIL() << "expected domain_error";
	}
	catch (const qosmech::domain_error& e)
	{
		EXPECT_NE(std::string(e.what()).find("eps_log"), std::string::npos);
	}
	EXPECT_THROW(log_quote(base_log, P(1.0 - 1e-13)), qosmech::domain_error);
}

TEST(ProviderIncome, Examples)
{
	EXPECT_DOUBLE_EQ(provider_income(base_linear, P(0.5), P(0.5)), 1.5);
	EXPECT_DOUBLE_EQ(provider_income(base_log, P(0.0), P(0.0)), 1.0);
	EXPECT_NEAR(provider_income(base_linear, P(0.5), P(0.8)), 1.32, 1e-12);
	EXPECT_LT(provider_income(base_linear, P(0.5), P(0.8)), 1.5);

	const Quote qt = linear_quote(base_linear, P(0.8));
	EXPECT_NEAR(provider_income(qt.premium, qt.compensation, P(0.5)), 2.92 - 1.6, 1e-12);
}

TEST(UserExpectedUtility, Examples)
{
	EXPECT_DOUBLE_EQ(user_expected_utility(base_linear, P(1.0), P(1.0), 5.0), 2.0);
	EXPECT_DOUBLE_EQ(user_expected_utility(base_linear, P(0.0), P(0.0), 5.0), -1.0);
	EXPECT_DOUBLE_EQ(user_expected_utility(base_log, P(0.0), P(0.0), 5.0), -1.0);
	EXPECT_DOUBLE_EQ(user_expected_utility(base_linear, P(0.5), P(0.5), 5.0), 1.0);
}

TEST(ProviderExpectedUtility, Examples)
{
	EXPECT_DOUBLE_EQ(provider_expected_utility(base_linear, P(0.5), P(0.5), base_market), 0.5);
	EXPECT_DOUBLE_EQ(provider_expected_utility(base_log, P(0.0), P(0.0), base_market), 0.0);
	EXPECT_NEAR(provider_expected_utility(base_linear, P(0.5), P(0.8), base_market), 0.32, 1e-12);
}

TEST(QosIcLowerBound, BaselineValues)
{
	EXPECT_NEAR(qos_ic_lower_bound(base_linear, base_market).value(), 0.219, 5e-4);
	EXPECT_NEAR(qos_ic_lower_bound(base_linear, base_market).value(), (5.0 - std::sqrt(17.0)) / 4.0, 1e-15);
	EXPECT_DOUBLE_EQ(qos_ic_lower_bound(base_log, base_market).value(), 0.6);
}

TEST(QosIcLowerBound, LinearTendsToC1OverV)
{
	for (double v : {1e3, 1e5, 1e7})
	{
		const double q0 = qos_ic_lower_bound(base_linear, MarketParams{v, 1.0}).value();
		EXPECT_NEAR(q0 * v / base_linear.c1, 1.0, 10.0 / (v * v));
	}
}

TEST(QosIcLowerBound, NegativeDiscriminantIsParameterError)
{
	EXPECT_THROW(qos_ic_lower_bound(LinearQosScheme{2.0, 4.0}, base_market), parameter_error);
}

TEST(ReservationQuote, Examples)
{
	auto q = reservation_quote(example_res, P(1.0), P(1.0));
	EXPECT_DOUBLE_EQ(q.premium, 4.0);
	EXPECT_DOUBLE_EQ(*q.usage_price, 0.0);
	EXPECT_DOUBLE_EQ(q.compensation, 4.0);

	q = reservation_quote(example_res, P(0.0), P(0.0));
	EXPECT_DOUBLE_EQ(q.premium, 2.0);
	EXPECT_DOUBLE_EQ(*q.usage_price, 2.0);
	EXPECT_DOUBLE_EQ(q.compensation, 1.0);

	q = reservation_quote(example_res, P(0.5), P(0.5));
	EXPECT_DOUBLE_EQ(q.premium, 3.0);
	EXPECT_DOUBLE_EQ(*q.usage_price, 1.0);
	EXPECT_DOUBLE_EQ(q.compensation, 2.25);
}

TEST(ReservationExpectedCost, Examples)
{
	EXPECT_NEAR(reservation_expected_cost(example_res, P(1), P(1), P(1), P(1)), 4.0, 1e-12);
	EXPECT_NEAR(reservation_expected_cost(example_res, P(0), P(0), P(0), P(0)), 1.0, 1e-12);

	const double truthful = reservation_expected_cost(example_res, P(0.8), P(0.9), P(0.8), P(0.9));
	const double deviated = reservation_expected_cost(example_res, P(0.8), P(0.9), P(0.5), P(0.9));
	EXPECT_NEAR(deviated - truthful, 0.081, 1e-12);
}

TEST(ReservationW, Examples)
{
	EXPECT_DOUBLE_EQ(reservation_w(example_res, P(1), P(1)), 4.0);
	for (double p : {0.0, 0.3, 1.0})
	{
		EXPECT_DOUBLE_EQ(reservation_w(example_res, P(p), P(0)), 1.0);
	}
	EXPECT_DOUBLE_EQ(reservation_w(example_res, P(0.5), P(0.5)), 2.125);
}

TEST(ReservationExpectedCost, RoutesDisagreeingIsAConsistencyError)
{
	// A NaN parameter makes the agreement comparison fail.
	const ReservationScheme broken{1.0, 1.0, std::nan(""), 2.0, 1.0};
	EXPECT_THROW(reservation_expected_cost(broken, P(0.5), P(0.5), P(0.5), P(0.5)), consistency_error);
}

TEST(Validate, Examples)
{
	EXPECT_TRUE(validate(base_linear, base_market).ok());
	EXPECT_TRUE(validate(base_log, base_market).ok());
	EXPECT_TRUE(validate(example_res, res_market).ok());

	const auto bad_linear = validate(LinearQosScheme{5.0, 1.0}, base_market);
	ASSERT_FALSE(bad_linear.ok());
	EXPECT_NE(bad_linear.str().find("c1 <= v - k fails"), std::string::npos);
	EXPECT_NE(bad_linear.str().find("linear scheme conditions"), std::string::npos);

	ReservationScheme bad_res = example_res;
	bad_res.c2 = 1.0;
	const auto r = validate(bad_res, res_market);
	ASSERT_FALSE(r.ok());
	EXPECT_NE(r.str().find("c2 >= 2k1 fails"), std::string::npos);
}

TEST(Validate, MarketAndCornerConstraints)
{
	EXPECT_FALSE(validate(MarketParams{1.0, 1.0}).ok());
	EXPECT_FALSE(validate(MarketParams{0.0, 0.0}).ok());
	EXPECT_FALSE(validate(MarketParams{5.0, -1.0}).ok());
	// v below c1 + c2 - k1 + k2 = 4
	const auto r = validate(example_res, MarketParams{3.5, 1.0});
	ASSERT_FALSE(r.ok());
	EXPECT_NE(r.str().find("c1 + c2 - k1 + k2 < v"), std::string::npos);
	// c above c1 on the QoS schemes
	EXPECT_FALSE(validate(base_log, MarketParams{5.0, 1.5}).ok());
}

// ---------------------------------------------------------------------------
// Properties over random valid parameter draws

TEST(Properties, TruthfulIncomeMatchesClosedForms)
{
	Engine e(101);
	for (int trial = 0; trial < 200; ++trial)
	{
		const auto lin = draw_qos<LinearQosScheme>(e);
		const auto lg = draw_qos<LogQosScheme>(e);
		for (int i = 0; i <= 200; ++i)
		{
			const double q = i / 200.0;
			EXPECT_TRUE(close_rel(provider_income(lin.scheme, P(q), P(q)),
			                      linear_w_reference(lin.scheme.k, lin.scheme.c1, q), 1e-9));
			const double ql = std::min(q, log_domain_upper);
			EXPECT_TRUE(close_rel(provider_income(lg.scheme, P(ql), P(ql)),
			                      log_w_reference(lg.scheme.k, lg.scheme.c1, ql), 1e-9));
		}
	}
}

TEST(Properties, IncentiveCompatibleOnClosedFormInterval)
{
	Engine e(102);
	for (int trial = 0; trial < 100; ++trial)
	{
		const auto lin = draw_qos<LinearQosScheme>(e);
		const double q0 = qos_ic_lower_bound(lin.scheme, lin.market).value();
		const double w0 = provider_income(lin.scheme, P(q0), P(q0));
		EXPECT_NEAR(w0, q0 * lin.market.v, 1e-12 * std::max(1.0, w0)) << "binding endpoint";
		for (int i = 0; i <= 100; ++i)
		{
			const double q = std::min(1.0, q0 + (1.0 - q0) * i / 100.0);
			const double w = provider_income(lin.scheme, P(q), P(q));
			EXPECT_LE(lin.market.c, w);
			EXPECT_LE(w, q * lin.market.v * (1.0 + 1e-12));
		}

		const auto lg = draw_qos<LogQosScheme>(e);
		const double l0 = qos_ic_lower_bound(lg.scheme, lg.market).value();
		double prev = -1e300;
		for (int i = 0; i <= 1000; ++i)
		{
			const double q = std::min(i / 1000.0, log_domain_upper);
			const double w = provider_income(lg.scheme, P(q), P(q));
			EXPECT_GE(w - prev, -1e-12) << "w nondecreasing at q=" << q;
			prev = w;
			if (q >= l0)
			{
				EXPECT_LE(lg.market.c, w);
				EXPECT_LE(w, q * lg.market.v);
			}
		}
	}
}

TEST(Properties, ExpectedCostRoutesAgreeWithEnumeration)
{
	Engine e(103);
	for (int trial = 0; trial < 100; ++trial)
	{
		const auto d = draw_reservation(e);
		for (int i = 0; i < 50; ++i)
		{
			const double p = uniform(e, 0, 1), q = uniform(e, 0, 1), pr = uniform(e, 0, 1), qr = uniform(e, 0, 1);
			const double a = reservation_expected_cost_protocol(d.scheme, P(p), P(q), P(pr), P(qr));
			const double b = reservation_expected_cost_expanded(d.scheme, P(p), P(q), P(pr), P(qr));
			const double oracle = reservation_cost_by_enumeration(d.scheme, p, q, pr, qr);
			EXPECT_TRUE(close_rel(a, b, 1e-9));
			EXPECT_TRUE(close_rel(a, oracle, 1e-9));
			EXPECT_NO_THROW(reservation_expected_cost(d.scheme, P(p), P(q), P(pr), P(qr)));
		}
		const double p = uniform(e, 0, 1), q = uniform(e, 0, 1);
		EXPECT_TRUE(close_rel(reservation_w(d.scheme, P(p), P(q)),
		                      reservation_cost_by_enumeration(d.scheme, p, q, p, q), 1e-9));
	}
}

TEST(Properties, ReservationWIncreasingInQ)
{
	Engine e(104);
	const double h = 1e-6;
	for (int trial = 0; trial < 100; ++trial)
	{
		const auto d = draw_reservation(e);
		for (int i = 1; i <= 20; ++i)
		{
			for (int j = 1; j <= 20; ++j)
			{
				const double p = i / 20.0, q = j / 20.0;
				const double slope = (reservation_w(d.scheme, P(p), P(q)) - reservation_w(d.scheme, P(p), P(q - h))) / h;
				EXPECT_GT(slope, 0.0) << "p=" << p << " q=" << q;
			}
		}
	}
}

TEST(Properties, UsagePriceNonnegativeForValidSchemes)
{
	Engine e(105);
	for (int trial = 0; trial < 200; ++trial)
	{
		const auto d = draw_reservation(e);
		for (double p : {0.0, 0.5, 1.0})
		{
			const Quote q = reservation_quote(d.scheme, P(p), P(p));
			EXPECT_GE(*q.usage_price, 0.0);
			EXPECT_GE(q.premium, 0.0);
			EXPECT_GE(q.compensation, 0.0);
		}
	}
}
