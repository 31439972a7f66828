#include <gtest/gtest.h>

#include <cmath>

#include "frobdisc/census.hpp"
#include "frobdisc/errors.hpp"
#include "oracle.hpp"

using namespace frobdisc;

TEST(TraceOfCurve, Examples) {
  EXPECT_EQ(trace_of_curve(5, 1, 1), -3);
  EXPECT_EQ(trace_of_curve(5, 4, 0), -trace_of_curve(5, 1, 0));
  EXPECT_THROW(trace_of_curve(7, 0, 0), ArgumentError);
}

TEST(TraceOfCurve, MatchesPointCount) {
  for (std::int64_t p : {5, 7, 11, 13}) {
    for (std::int64_t a = 0; a < p; ++a) {
      for (std::int64_t b = 0; b < p; ++b) {
        if ((4 * a * a * a + 27 * b * b) % p == 0) continue;
        ASSERT_EQ(trace_of_curve(p, a, b), p + 1 - oracle::point_count(p, a, b)) << p << " " << a << " " << b;
      }
    }
  }
}

TEST(TraceHistogram, PrimeFive) {
  const TraceHistogram h = direct_trace_histogram(5);
  const TraceHistogram expected{{-4, 1}, {-3, 2}, {-2, 3}, {-1, 2}, {0, 4}, {1, 2}, {2, 3}, {3, 2}, {4, 1}};
  EXPECT_EQ(h, expected);
}

TEST(TraceHistogram, TotalAndSymmetry) {
  for (std::int64_t p : {7, 11, 13, 17, 101}) {
    const TraceHistogram h = direct_trace_histogram(p);
    std::int64_t total = 0;
    for (const auto& [t, c] : h) {
      total += c;
      EXPECT_EQ(h.at(-t), c);
      EXPECT_LE(t * t, 4 * p);
    }
    EXPECT_EQ(total, p * p - p);
  }
  EXPECT_THROW(direct_trace_histogram(kDirectPrimeBudget + 9), ResourceError);
}

TEST(Census, DirectPrimeFive) {
  const TraceHistogram h = direct_trace_histogram(5);
  const PrimeCensus c = direct_census(5, {0, 1});
  EXPECT_EQ(c.pib, static_cast<std::uint64_t>(h.at(1) + h.at(-1) + h.at(3) + h.at(-3)));
  EXPECT_EQ(c.pib, 8u);
  EXPECT_EQ(direct_census(5, {0, 9}).pib, 0u);
}

TEST(Census, DeuringMatchesDirectSmall) {
  const ClassTable table(4 * 53);
  for (std::int64_t p : {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53}) {
    for (const CongruenceTarget target : {CongruenceTarget{0, 1}, CongruenceTarget{1, 3}, CongruenceTarget{4, 15}}) {
      EXPECT_EQ(deuring_census(p, target, table).pib, direct_census(p, target).pib) << p;
    }
  }
  // (p-1) H(-19) = 2 curves with trace 1 over F_5.
  EXPECT_EQ(ExactRational(4) * kronecker_H(-19, table), ExactRational(2));
  EXPECT_EQ(deuring_census(13, {1, 3}, table).method, CensusMethod::deuring);
}

TEST(Census, DeuringNeedsTableCoverage) {
  const ClassTable table(40);
  EXPECT_THROW(deuring_census(101, {0, 1}, table), ArgumentError);
}

TEST(Census, CountedTracesAreOdd) {
  const TraceHistogram h = direct_trace_histogram(61);
  for (const auto& [t, c] : h) {
    if (t % 2 == 0) EXPECT_FALSE(is_squarefree(t * t - 4 * 61)) << t;
  }
}

TEST(Census, MethodNames) {
  EXPECT_STREQ(to_string(CensusMethod::direct), "direct");
  EXPECT_EQ(parse_census_method("deuring"), CensusMethod::deuring);
  EXPECT_THROW(parse_census_method("fast"), ArgumentError);
}

TEST(CensusRange, SinglePrime) {
  CensusConfig config;
  config.threads = 1;
  const CensusResult r = census_range(5, {0, 1}, config);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_DOUBLE_EQ(r.aggregates.A1, 8.0 / 20.0);
  EXPECT_EQ(r.aggregates.A2, 8);
  EXPECT_EQ(r.rows[0].record.method, CensusMethod::direct);
}

TEST(CensusRange, NonSquarefreeTargetIsZero) {
  CensusConfig config;
  config.threads = 1;
  const CensusResult r = census_range(300, {0, 9}, config);
  EXPECT_EQ(r.aggregates.A1, 0.0);
  EXPECT_EQ(r.aggregates.A2, 0);
}

TEST(CensusRange, ThousandHasFinitePositiveRatio) {
  CensusConfig config;
  config.threads = 1;
  const CensusResult r = census_range(1000, {0, 1}, config);
  EXPECT_EQ(r.aggregates.prime_count, 166u);
  EXPECT_GT(r.aggregates.ratio_A1, 0.0);
  EXPECT_TRUE(std::isfinite(r.aggregates.ratio_A1));
  EXPECT_EQ(r.rows.back().record.method, CensusMethod::deuring);
}

TEST(CensusRange, ThreadCountDoesNotChangeResults) {
  CensusConfig one;
  one.threads = 1;
  one.chunk_primes = 7;
  CensusConfig four = one;
  four.threads = 4;
  const CensusResult a = census_range(3000, {2, 3}, one);
  const CensusResult b = census_range(3000, {2, 3}, four);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].record.pib, b.rows[i].record.pib);
    EXPECT_EQ(a.rows[i].cumulative_A1, b.rows[i].cumulative_A1);
  }
  EXPECT_EQ(a.aggregates.A1, b.aggregates.A1);
}

TEST(BoxDemo, MatchesNaiveLoop) {
  const BoxAverage avg = box_average_demo(2, 3, 30, {0, 1});
  const oracle::Box naive = oracle::box_average(2, 3, 30, 0, 1);
  EXPECT_EQ(avg.curves, naive.curves);
  EXPECT_EQ(avg.total_count, naive.total);
  EXPECT_EQ(avg.average, ExactRational(naive.total, naive.curves));
}

TEST(BoxDemo, EdgeCases) {
  EXPECT_EQ(box_average_demo(5, 5, 4, {0, 1}).average, ExactRational(0));
  EXPECT_EQ(box_average_demo(5, 5, 50, {0, 9}).average, ExactRational(0));
  EXPECT_EQ(box_average_demo(5, 5, 50, {0, 1}).curves, 118);
}
