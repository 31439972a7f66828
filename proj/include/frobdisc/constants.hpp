#pragma once

// Exact local factors and truncated Euler products for the constants of the
// squarefree Frobenius discriminant problem: the character sums c_t(n), the
// per-trace constants C_t, P(r, h), G(p), the main constant C in two
// algebraically different forms, and the squarefree-order local factor.

#include <cstdint>
#include <map>

#include "frobdisc/modarith.hpp"
#include "frobdisc/rational.hpp"

namespace frobdisc {

inline constexpr std::int64_t kDefaultPrimeCut = 1'000'000;

// value = prefactor * prod(factors), computed exactly and rounded once.
// factors holds every odd prime <= prime_cut, plus any prime of h above it.
struct EulerProductValue {
  double value = 0.0;
  double tail_bound = 0.0;  // bound on |true value - value|
  std::int64_t prime_cut = 0;
  ExactRational prefactor{1};
  std::map<std::int64_t, ExactRational> factors;
  bool defined_zero = false;  // gcd(r, h) not squarefree: the constant is 0
};

// Rounds prefactor * prod(factors) once (exact product, 256-bit division)
// and attaches the tail bound for prime_cut.
EulerProductValue make_euler_product(ExactRational prefactor, std::map<std::int64_t, ExactRational> factors,
                                     std::int64_t prime_cut);

// Relative log-tail bound sum_{l > cut} 3/l^2 <= 3/(cut - 1).
double euler_tail_log_bound(std::int64_t prime_cut);

// sum over alpha mod n with gcd(t^2 - alpha, n) = 1 and alpha = r mod gcd(n, h)
// of (alpha | n). n >= 1 odd.
std::int64_t c_t_bruteforce(std::int64_t t, std::int64_t n, const CongruenceTarget& target);

// c_t(p^j) from the prime-power case analysis. When p | h requires
// gcd(t^2 - r, h) = 1; throws ArgumentError otherwise.
std::int64_t c_t_closed(std::int64_t t, std::int64_t p, int j, const CongruenceTarget& target);

// c_t(n) assembled multiplicatively from c_t_closed over the factorization of odd n.
std::int64_t c_t_multiplicative(std::int64_t t, const Factorization& n_factors, const CongruenceTarget& target);

// G(p) = (2p^2 + p - 1) / (p^4 - p^3 - 2p^2 - p + 1).
ExactRational G_factor(std::int64_t p);

// Local factor of C at the odd prime ell. For ell | h the factor carries
// ell^{-alpha(ell)}, so that C = (1/3) prod_ell factor(ell).
ExactRational frak_C_local_factor(std::int64_t ell, const CongruenceTarget& target);
// Same prime's contribution through P(r,h)/3 * prod_{p|h}(1 - (1+(r|p))/p) * prod_{p!|h}(1 + G(p)/p).
ExactRational frak_C_alt_local_factor(std::int64_t ell, const CongruenceTarget& target);
// Local factor of P(r, h) (the 1/phi(h) prefactor distributed over p | h).
ExactRational P_rh_local_factor(std::int64_t ell, const CongruenceTarget& target);

EulerProductValue frak_C(const CongruenceTarget& target, std::int64_t prime_cut = kDefaultPrimeCut);
EulerProductValue frak_C_alt(const CongruenceTarget& target, std::int64_t prime_cut = kDefaultPrimeCut);
EulerProductValue P_rh(const CongruenceTarget& target, std::int64_t prime_cut = kDefaultPrimeCut);

// (1/(3h)) times the ell | h factors of C as written in closed form; equals
// prefactor * prod_{ell | h} factor for both frak_C and frak_C_alt.
ExactRational frak_C_h_part(const CongruenceTarget& target);

// C_t = P(r, h) * prod_{p | t, p !| h} (1 + G(p)). Requires gcd(t^2 - r, h) = 1
// and gcd(r, h) squarefree.
EulerProductValue C_t_product(std::int64_t t, const CongruenceTarget& target,
                              std::int64_t prime_cut = kDefaultPrimeCut);

// Truncated double sum over odd n <= N and odd d <= D with (d, nt) = 1 and
// (d^2, h) | r of c_t(n)/n * mu(d)/phi(lcm(n d^2, h)).
double C_t_doublesum(std::int64_t t, const CongruenceTarget& target, std::int64_t N, std::int64_t D);

// 1 - (ell^3 - ell - 1) / ((ell^2 - 1) ell^2 (ell - 1)).
ExactRational csf_order_factor(std::int64_t ell);

}  // namespace frobdisc
