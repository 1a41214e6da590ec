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
#include <random>
#include <stdexcept>

#include <qosmech/format.hpp>
#include <qosmech/parallel.hpp>
#include <qosmech/probability.hpp>
#include <qosmech/rng.hpp>
#include <qosmech/stats.hpp>

using namespace qosmech;

TEST(Format, RoundsExactTiesToEven)
{
	EXPECT_EQ(format_money(1.0 / 128.0), "0.007812");
	EXPECT_EQ(format_money(3.0 / 128.0), "0.023438");
	EXPECT_EQ(format_money(2.5), "2.500000");
	EXPECT_EQ(format_money(std::log(2.5) * 2.0), "1.832581");
	EXPECT_EQ(format_probability(0.999999999999), "0.999999999999");
}

TEST(Format, NegativeZeroIsUnsigned)
{
	EXPECT_EQ(format_money(-0.0), "0.000000");
	EXPECT_EQ(format_money(-1e-9), "0.000000");
	EXPECT_EQ(format_money(-1e-3), "-0.001000");
	EXPECT_EQ(round_to(0.1234565, 6), 0.123456);
}

TEST(ProbabilityType, RejectsOutOfRange)
{
	EXPECT_THROW(Probability(1.2), domain_error);
	EXPECT_THROW(Probability(-0.1), domain_error);
	EXPECT_THROW(Probability(std::nan("")), domain_error);
	try
	{
		Probability p(1.2);
		(void)p;
	}
	catch (const std::exception& e)
	{
		EXPECT_STREQ(e.what(), "probability out of range: 1.2");
	}
	EXPECT_EQ(Probability(0.25).complement(), 0.75);
	EXPECT_LT(log_domain_upper, 1.0);
	EXPECT_EQ(1.0 - log_domain_upper, 1e-12 + (1.0 - log_domain_upper - 1e-12));
}

TEST(RunningStatsTest, MergeMatchesSequential)
{
	std::mt19937_64 e(7);
	std::normal_distribution<double> nd(3.0, 2.0);
	RunningStats all, a, b;
	for (int i = 0; i < 1000; ++i)
	{
		const double x = nd(e);
		all.add(x);
		(i < 377 ? a : b).add(x);
	}
	a.merge(b);
	EXPECT_EQ(a.count(), all.count());
	EXPECT_NEAR(a.mean(), all.mean(), 1e-12);
	EXPECT_NEAR(a.variance(), all.variance(), 1e-10);
	EXPECT_NEAR(all.ci95_half_width(), 1.96 * std::sqrt(all.variance() / 1000.0), 1e-15);

	RunningStats empty;
	a.merge(empty);
	EXPECT_EQ(a.count(), 1000u);
	empty.merge(all);
	EXPECT_EQ(empty.mean(), all.mean());
}

TEST(RunningStatsTest, KnownMoments)
{
	RunningStats s;
	for (double x : {2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0})
	{
		s.add(x);
	}
	EXPECT_DOUBLE_EQ(s.mean(), 5.0);
	EXPECT_DOUBLE_EQ(s.variance(), 32.0 / 7.0);
}

TEST(TrialStreamTest, KeyedByPair)
{
	TrialStream a(1, 2), b(1, 2), c(1, 3), d(2, 2);
	const auto x = a();
	EXPECT_EQ(x, b());
	EXPECT_NE(x, c());
	EXPECT_NE(x, d());
	for (int i = 0; i < 1000; ++i)
	{
		const double u = a.uniform();
		EXPECT_GE(u, 0.0);
		EXPECT_LT(u, 1.0);
		EXPECT_FALSE(a.bernoulli(0.0));
		EXPECT_TRUE(a.bernoulli(1.0));
	}
}

TEST(TrialStreamTest, UniformMeanIsHalf)
{
	RunningStats s;
	for (std::uint64_t t = 0; t < 100000; ++t)
	{
		TrialStream r(77, t);
		s.add(r.uniform());
	}
	EXPECT_NEAR(s.mean(), 0.5, 4.0 * s.standard_error());
	EXPECT_NEAR(s.variance(), 1.0 / 12.0, 1e-3);
}

TEST(DeterministicReduce, IndependentOfThreadCount)
{
	auto run = [](unsigned threads) {
		return deterministic_reduce(
		    100000, threads, RunningStats{},
		    [](RunningStats& acc, std::uint64_t i) {
			    TrialStream r(5, i);
			    acc.add(r.uniform() * 3.0);
		    },
		    [](RunningStats& into, const RunningStats& from) { into.merge(from); });
	};
	const auto one = run(1);
	for (unsigned t : {2u, 3u, 8u, 0u})
	{
		const auto many = run(t);
		EXPECT_EQ(one.mean(), many.mean());
		EXPECT_EQ(one.variance(), many.variance());
	}
	EXPECT_EQ(one.count(), 100000u);
}

TEST(DeterministicReduce, RethrowsWorkerFailure)
{
	EXPECT_THROW(deterministic_reduce(
	                 10000, 4, 0,
	                 [](int&, std::uint64_t i) {
		                 if (i == 9000)
		                 {
			                 throw std::runtime_error("boom");
		                 }
	                 },
	                 [](int& a, int b) { a += b; }),
	             std::runtime_error);
}
