#pragma once

// Per-prime census Pi^b(p): the number of short Weierstrass pairs (a, b) over
// F_p whose Frobenius discriminant t^2 - 4p lies in Delta(r, h). Two
// independent routes: direct point counting and Deuring's class-number count.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "frobdisc/classnum.hpp"
#include "frobdisc/modarith.hpp"
#include "frobdisc/rational.hpp"

namespace frobdisc {

// Largest p accepted by the O(p^3) direct routines.
inline constexpr std::int64_t kDirectPrimeBudget = 1000;
// Largest A*B*pi(x) accepted by box_average_demo.
inline constexpr std::int64_t kBoxDemoBudget = 200'000'000;
// Smallest prime in every census; p = 3 is excluded from short Weierstrass counts.
inline constexpr std::int64_t kFirstCensusPrime = 5;

using TraceHistogram = std::map<std::int64_t, std::int64_t>;

struct TraceRecord {
  std::int64_t p;
  std::int64_t t;
  std::int64_t D;  // t^2 - 4p
  bool in_delta;
  std::optional<ExactRational> H;
};

enum class CensusMethod { direct, deuring };

const char* to_string(CensusMethod m);
CensusMethod parse_census_method(const std::string& s);

struct PrimeCensus {
  std::int64_t p = 0;
  std::uint64_t pib = 0;
  CensusMethod method = CensusMethod::deuring;
  std::optional<TraceHistogram> trace_histogram;
};

// a_p = -sum_x (x^3 + ax + b | p). Throws ArgumentError on a singular curve.
std::int64_t trace_of_curve(std::int64_t p, std::int64_t a, std::int64_t b);

TraceRecord make_trace_record(std::int64_t p, std::int64_t t, const CongruenceTarget& target,
                              bool with_class_number = false);

// Counts over all nonsingular (a, b) in F_p^2, keyed by trace.
TraceHistogram direct_trace_histogram(std::int64_t p);

PrimeCensus direct_census(std::int64_t p, const CongruenceTarget& target, bool keep_histogram = false);
PrimeCensus census_from_histogram(std::int64_t p, const CongruenceTarget& target,
                                  const TraceHistogram& histogram);

// Sum over odd 1 <= t <= 2 sqrt(p) with t^2 - 4p in Delta(r, h) of
// 2 (p - 1) h(D) / w(D). `table` must cover |D| <= 4p; `spf`, when given,
// answers the squarefree tests and must cover 4p as well.
PrimeCensus deuring_census(std::int64_t p, const CongruenceTarget& target, const ClassTable& table,
                           const SpfTable* spf = nullptr);

// H(D) with class numbers read from a prebuilt table.
ExactRational kronecker_H(std::int64_t D, const ClassTable& table);

struct CensusConfig {
  std::int64_t direct_max = 499;
  unsigned threads = 0;  // 0: hardware concurrency (FROBDISC_THREADS overrides)
  std::size_t chunk_primes = 64;
  std::int64_t constant_prime_cut = 1'000'000;
  std::optional<std::filesystem::path> cache_path;
};

struct CensusRow {
  PrimeCensus record;
  double cumulative_A1;      // sum of Pi^b(p)/(p(p-1)) up to this prime
  mpz_class cumulative_A2;   // sum of Pi^b(p) up to this prime
  double predicted_A1;       // C p / log p
  double ratio;              // cumulative_A1 / predicted_A1
};

struct CensusAggregates {
  std::int64_t x = 0;
  std::size_t prime_count = 0;
  std::size_t primes_from_cache = 0;
  double A1 = 0.0;
  mpz_class A2 = 0;
  double frak_c = 0.0;
  double predicted_A1 = 0.0;  // C x / log x
  double predicted_A2 = 0.0;  // (C/3) x^3 / log x
  double ratio_A1 = 0.0;
  double ratio_A2 = 0.0;
};

struct CensusResult {
  std::vector<CensusRow> rows;
  CensusAggregates aggregates;
};

// Census of every prime 5 <= p <= x. Primes up to config.direct_max are
// computed by both routes and must agree. With a cache path, records already
// present are reused and new ones appended in ascending prime order.
CensusResult census_range(std::int64_t x, const CongruenceTarget& target, const CensusConfig& config,
                          const std::function<void(const CensusRow&)>& on_row = {});

// Aggregates a complete, ascending list of per-prime records up to x.
CensusResult aggregate_census(std::int64_t x, std::vector<PrimeCensus> records, double frak_c,
                              std::size_t primes_from_cache = 0,
                              const std::function<void(const CensusRow&)>& on_row = {});

struct BoxAverage {
  std::int64_t curves = 0;       // |C(A, B)|
  std::int64_t total_count = 0;  // sum over curves of the prime counts
  ExactRational average;
};

// Average over integer pairs |a| <= A, |b| <= B with 4a^3 + 27b^2 != 0 of
// #{5 <= p <= x : p does not divide 4a^3 + 27b^2, a_p^2 - 4p in Delta(r, h)}.
BoxAverage box_average_demo(std::int64_t A, std::int64_t B, std::int64_t x, const CongruenceTarget& target);

}  // namespace frobdisc
