#pragma once

// Exhaustive enumeration over GL2(Z/mZ) for the local densities behind the
// conjectural constants: P1 (tr^2 - 4 det avoids ell^2), P2 (additionally
// tr^2 - 4 det = r mod ell^alpha), the squarefree group-order factor
// (det - tr + 1 avoids ell^2), and the assembled constant under full image.

#include <cstdint>
#include <functional>

#include "frobdisc/constants.hpp"
#include "frobdisc/modarith.hpp"
#include "frobdisc/rational.hpp"

namespace frobdisc {

// Largest number of matrices (modulus^4) a single enumeration may visit.
inline constexpr std::int64_t kGl2EnumerationBudget = 1'000'000'000;

struct Gl2Count {
  std::int64_t ell = 0;
  int beta = 0;
  std::int64_t modulus = 0;
  std::int64_t group_order = 0;
  std::int64_t matching = 0;
  ExactRational density;
};

struct MatrixCount {
  std::int64_t invertible = 0;
  std::int64_t matching = 0;
};

// ell^{4(beta-1)} (ell^2 - 1)(ell^2 - ell).
std::int64_t gl2_order_formula(std::int64_t ell, int beta);

// Visits every 2x2 matrix mod `modulus`; counts the invertible ones and those
// among them for which predicate(tr mod m, det mod m) holds.
MatrixCount enumerate_gl2(std::int64_t modulus, const std::function<bool(std::int64_t, std::int64_t)>& predicate,
                          unsigned threads = 0);

// Raw count of invertible matrices mod m, without the trace/det predicate.
std::int64_t count_invertible_raw(std::int64_t modulus);

Gl2Count count_p1(std::int64_t ell, unsigned threads = 0);
Gl2Count count_p2(std::int64_t ell, int alpha, std::int64_t r, unsigned threads = 0);
Gl2Count count_order_squarefree_factor(std::int64_t ell, unsigned threads = 0);

// (ell^4 - 2 ell^2 - ell + 1) / (ell^2 (ell^2 - 1)).
ExactRational p1_closed(std::int64_t ell);
// Four-branch closed form for P2(ell) with r read modulo ell^alpha.
ExactRational p2_closed(std::int64_t ell, int alpha, std::int64_t r);

struct CsfResult {
  std::int64_t level = 0;    // supplied M_E (even)
  std::int64_t modulus = 0;  // m = prod_{ell | level} ell^{max(2, gamma, alpha)}
  ExactRational level_probability;  // P(m), by enumeration
  EulerProductValue product;  // prefactor P(m) times local factors at odd ell not dividing m
  double value = 0.0;
  bool defined_zero = false;
};

// Probability modulo m under full image, enumerated one prime power at a time.
ExactRational level_probability(std::int64_t modulus, const CongruenceTarget& target, unsigned threads = 0);
// Same probability from a single enumeration over all matrices mod m.
ExactRational level_probability_direct(std::int64_t modulus, const CongruenceTarget& target, unsigned threads = 0);

// C_SF(E, r, h) under a generic (full) Galois image: P(m) times the P1/P2
// local densities at odd ell not dividing m, truncated at prime_cut.
CsfResult csf_generic(const CongruenceTarget& target, std::int64_t prime_cut, std::int64_t level,
                      unsigned threads = 0);

}  // namespace frobdisc
