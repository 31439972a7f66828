#pragma once

// The truncated average S(T) over odd traces t <= T with (t^2 - r, h) = 1 of
//   sum_{n <= U odd} c_t(n)/n  sum_{d <= R odd, (d, nt) = 1, (d^2, h) | r} mu(d) / phi(lcm(n d^2, h)),
// and its convergence towards (3/2) C T.

#include <cstdint>
#include <utility>
#include <vector>

#include "frobdisc/constants.hpp"
#include "frobdisc/modarith.hpp"
#include "frobdisc/rational.hpp"

namespace frobdisc {

// Largest R supported by the fast evaluator (prime masks fit 64 bits).
inline constexpr std::int64_t kMaxSumR = 300;
inline constexpr std::int64_t kMaxSumU = 50'000'000;

struct STConfig {
  std::int64_t T = 0;
  std::int64_t U = 1;
  std::int64_t R = 1;
  CongruenceTarget target{0, 1};
};

// U = floor(sqrt(T) * R^2).
STConfig make_st_config(std::int64_t T, std::int64_t R, const CongruenceTarget& target);

// Per-trace contributions F(t), ascending in t, for admissible odd t <= T.
std::vector<std::pair<std::int64_t, double>> s_of_T_terms(const STConfig& config, unsigned threads = 0);
std::vector<std::pair<std::int64_t, ExactRational>> s_of_T_terms_exact(const STConfig& config);

// c_t(n) from the prime-power closed forms, phi(lcm) from the coprime
// factorization identity; summed in ascending t with compensated summation.
double s_of_T(const STConfig& config, unsigned threads = 0);
// Same evaluation path in exact arithmetic.
ExactRational s_of_T_exact(const STConfig& config);
// Explicit residue loops for c_t(n) and phi(lcm(n d^2, h)) computed directly.
ExactRational s_of_T_literal(const STConfig& config);

struct ConvergenceRow {
  std::int64_t R;
  std::int64_t U;
  double s_over_T;
  double predicted;  // (3/2) C
  double deviation;  // |s_over_T - predicted|
};

std::vector<ConvergenceRow> s_of_T_convergence(std::int64_t T, const CongruenceTarget& target,
                                               const std::vector<std::int64_t>& R_list,
                                               std::int64_t prime_cut = kDefaultPrimeCut, unsigned threads = 0);

}  // namespace frobdisc
