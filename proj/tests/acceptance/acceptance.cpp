// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "frobdisc/census.hpp"
#include "frobdisc/classnum.hpp"
#include "frobdisc/constants.hpp"
#include "frobdisc/gl2.hpp"
#include "frobdisc/parallel.hpp"
#include "frobdisc/sums.hpp"
#include "frobdisc/verify.hpp"
#include "oracle.hpp"

using namespace frobdisc;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

unsigned g_threads = 1;
std::map<std::int64_t, TraceHistogram> g_histograms;

const TraceHistogram& histogram(std::int64_t p) {
  auto it = g_histograms.find(p);
  if (it == g_histograms.end()) it = g_histograms.emplace(p, direct_trace_histogram(p)).first;
  return it->second;
}

std::vector<std::int64_t> census_primes(std::int64_t limit) {
  std::vector<std::int64_t> out;
  for (std::int64_t p : sieve_primes(limit)) {
    if (p >= kFirstCensusPrime) out.push_back(p);
  }
  return out;
}

Outcome deuring_equivalence() {
  std::uint64_t checks = 0;
  for (std::int64_t p : census_primes(499)) {
    const TraceHistogram& h = histogram(p);
    for (std::int64_t t = -isqrt(4 * p - 1); t * t < 4 * p; ++t) {
      if (t % 2 == 0) continue;
      const auto it = h.find(t);
      const std::int64_t count = it == h.end() ? 0 : it->second;
      const ExactRational expected = ExactRational(p - 1) * kronecker_H(t * t - 4 * p);
      ++checks;
      if (ExactRational(count) != expected) {
        std::ostringstream os;
        os << "p=" << p << " t=" << t << ": direct " << count << " vs (p-1)H = " << expected;
        return {false, os.str()};
      }
    }
  }
  return {true, std::to_string(checks) + " (p, t) pairs"};
}

Outcome census_equivalence() {
  const ClassTable table(4 * 499);
  std::uint64_t checks = 0;
  for (std::int64_t p : census_primes(499)) {
    for (const auto& target : default_targets()) {
      const std::uint64_t direct = census_from_histogram(p, target, histogram(p)).pib;
      const std::uint64_t deuring = deuring_census(p, target, table).pib;
      ++checks;
      if (direct != deuring) {
        std::ostringstream os;
        os << "p=" << p << " (r,h)=(" << target.r() << "," << target.h() << "): direct " << direct << " vs Deuring "
           << deuring;
        return {false, os.str()};
      }
    }
  }
  return {true, std::to_string(checks) + " (p, target) pairs"};
}

Outcome from_verify(const VerifyResult& r) {
  if (!r.ok) return {false, r.counterexample};
  return {true, std::to_string(r.checks) + " checks"};
}

Outcome gl2_densities() {
  std::ostringstream os;
  for (std::int64_t ell : {3, 5, 7}) {
    const Gl2Count c = count_p1(ell, g_threads);
    if (c.density != p1_closed(ell)) return {false, "P1(" + std::to_string(ell) + ") = " + c.density.str()};
    os << "P1(" << ell << ")=" << c.density << " ";
  }
  const ExactRational p1 = p1_closed(3);
  std::map<ExactRational, int> values;
  for (int alpha : {1, 2}) {
    const std::int64_t modulus = alpha == 1 ? 3 : 9;
    ExactRational total(0);
    for (std::int64_t r = 0; r < modulus; ++r) {
      const Gl2Count c = count_p2(3, alpha, r, g_threads);
      if (c.density != p2_closed(3, alpha, r)) {
        std::ostringstream e;
        e << "P2(3," << alpha << "," << r << ") enumerated " << c.density << " vs closed " << p2_closed(3, alpha, r);
        return {false, e.str()};
      }
      ++values[c.density];
      total += c.density;
    }
    if (total != p1) return {false, "sum of P2(3," + std::to_string(alpha) + ",r) != P1(3)"};
  }
  if (count_p2(3, 2, 0, g_threads).density != ExactRational(0)) return {false, "zero branch P2(3,2,0) nonzero"};
  os << "P2 values " << values.size() << " distinct, zero branch hit; ";
  bool order_ok = true;
  for (std::int64_t ell : {3, 5}) {
    const Gl2Count c = count_order_squarefree_factor(ell, g_threads);
    const ExactRational closed = csf_order_factor(ell);
    os << "order-sf(" << ell << ") enumerated " << c.density << " closed " << closed << " ";
    order_ok = order_ok && c.density == closed;
  }
  return {order_ok, os.str()};
}

Outcome asymptotic_trend() {
  const CongruenceTarget target{0, 1};
  CensusConfig config;
  config.threads = g_threads;
  const CensusAggregates small = census_range(1000, target, config).aggregates;
  const CensusAggregates large = census_range(100000, target, config).aggregates;
  std::ostringstream os;
  os.precision(6);
  os << "A1 ratio " << small.ratio_A1 << " -> " << large.ratio_A1 << ", A2 ratio " << small.ratio_A2 << " -> "
     << large.ratio_A2;
  auto gate = [](double lo_x, double hi_x) {
    return hi_x >= 0.6 && hi_x <= 1.4 && std::abs(hi_x - 1) < std::abs(lo_x - 1);
  };
  return {gate(small.ratio_A1, large.ratio_A1) && gate(small.ratio_A2, large.ratio_A2), os.str()};
}

Outcome st_convergence() {
  const auto rows = s_of_T_convergence(2000, {0, 1}, {10, 30, 100}, kDefaultPrimeCut, g_threads);
  std::ostringstream os;
  os.precision(6);
  bool ok = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << "R=" << rows[i].R << " dev " << rows[i].deviation << "; ";
    if (i > 0 && !(rows[i].deviation < rows[i - 1].deviation)) ok = false;
  }
  const VerifyResult literal = verify_st(15, 45, 5);
  os << "literal sum " << (literal.ok ? "exact on " + std::to_string(literal.checks) + " configs" : literal.counterexample);
  return {ok && literal.ok, os.str()};
}

Outcome box_demo() {
  std::ostringstream os;
  for (const CongruenceTarget target : {CongruenceTarget{0, 1}, CongruenceTarget{2, 3}}) {
    const BoxAverage got = box_average_demo(5, 5, 50, target);
    const oracle::Box naive = oracle::box_average(5, 5, 50, target.r(), target.h());
    os << "(r,h)=(" << target.r() << "," << target.h() << ") average " << got.average << " naive " << naive.total
       << "/" << naive.curves << "; ";
    if (got.curves != naive.curves || got.total_count != naive.total ||
        got.average != ExactRational(naive.total, naive.curves)) {
      return {false, os.str()};
    }
  }
  return {true, os.str()};
}

}  // namespace

int main() {
  g_threads = resolve_threads(0);
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;  // 0: no limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "deuring-equivalence", 120, deuring_equivalence},
      {2, "census-equivalence", 0, census_equivalence},
      {3, "constant-identity", 0, [] { return from_verify(verify_constant_identity(10000)); }},
      {4, "character-sum", 0, [] { return from_verify(verify_ct(2000, 50, 200)); }},
      {5, "gl2-densities", 300, gl2_densities},
      {6, "asymptotic-trend", 600, asymptotic_trend},
      {7, "st-convergence", 0, st_convergence},
      {8, "box-demo", 0, box_demo},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.ok = false;
      o.detail += " [over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit]";
    }
    failures += !o.ok;
    std::printf("%s %d %s (%.1f s): %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
