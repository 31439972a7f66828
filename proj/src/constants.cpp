#include "frobdisc/constants.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "frobdisc/errors.hpp"
#include "frobdisc/summation.hpp"

namespace frobdisc {

namespace {

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t v = 1;
  for (int i = 0; i < e; ++i) v *= base;
  return v;
}

mpz_class product_range(const std::vector<mpz_class>& xs, std::size_t lo, std::size_t hi) {
  if (hi - lo == 0) return 1;
  if (hi - lo == 1) return xs[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return product_range(xs, lo, mid) * product_range(xs, mid, hi);
}

void require_prime_cut(std::int64_t prime_cut) {
  if (prime_cut < 3) throw ArgumentError("prime_cut must be >= 3");
}

}  // namespace

EulerProductValue make_euler_product(ExactRational prefactor, std::map<std::int64_t, ExactRational> factors,
                                 std::int64_t prime_cut) {
  std::vector<mpz_class> nums;
  std::vector<mpz_class> dens;
  nums.reserve(factors.size() + 1);
  dens.reserve(factors.size() + 1);
  nums.push_back(prefactor.numerator());
  dens.push_back(prefactor.denominator());
  for (const auto& [ell, f] : factors) {
    nums.push_back(f.numerator());
    dens.push_back(f.denominator());
  }
  const mpz_class num = product_range(nums, 0, nums.size());
  const mpz_class den = product_range(dens, 0, dens.size());
  mpf_class q(num, 256);
  q /= mpf_class(den, 256);

  EulerProductValue out;
  out.value = q.get_d();
  out.prime_cut = prime_cut;
  out.prefactor = std::move(prefactor);
  out.factors = std::move(factors);
  const double tau = euler_tail_log_bound(prime_cut);
  out.tail_bound = std::abs(out.value) * std::expm1(tau) + std::abs(out.value) * 1e-15;
  return out;
}

namespace {

EulerProductValue zero_product(std::int64_t prime_cut) {
  EulerProductValue out;
  out.prime_cut = prime_cut;
  out.prefactor = ExactRational(0);
  out.defined_zero = true;
  return out;
}

template <class LocalFactor>
std::map<std::int64_t, ExactRational> collect_factors(const CongruenceTarget& target, std::int64_t prime_cut,
                                                      LocalFactor&& local) {
  std::map<std::int64_t, ExactRational> factors;
  for (std::int64_t ell : sieve_primes(prime_cut)) {
    if (ell == 2) continue;
    factors.emplace(ell, local(ell));
  }
  for (const auto& [ell, e] : target.h_factors()) {
    if (ell > prime_cut) factors.emplace(ell, local(ell));
  }
  return factors;
}

}  // namespace

double euler_tail_log_bound(std::int64_t prime_cut) {
  require_prime_cut(prime_cut);
  return 3.0 / static_cast<double>(prime_cut - 1);
}

std::int64_t c_t_bruteforce(std::int64_t t, std::int64_t n, const CongruenceTarget& target) {
  if (n < 1 || n % 2 == 0) throw ArgumentError("c_t_bruteforce: n must be odd and positive");
  // Every residue alpha mod n is visited; the coprimality test and the Jacobi
  // symbol are evaluated prime by prime from per-prime Legendre tables.
  const Factorization nf = n == 1 ? Factorization{} : factorize(n);
  std::vector<std::vector<std::int8_t>> legendre;
  for (const auto& [p, e] : nf) {
    std::vector<std::int8_t> tab(static_cast<std::size_t>(p), -1);
    tab[0] = 0;
    for (std::int64_t x = 1; x < p; ++x) tab[static_cast<std::size_t>(x * x % p)] = 1;
    legendre.push_back(std::move(tab));
  }
  const std::int64_t g = gcd(n, target.h());
  const std::int64_t rg = mod_floor(target.r(), g);
  std::int64_t sum = 0;
  for (std::int64_t alpha = 0; alpha < n; ++alpha) {
    if (alpha % g != rg) continue;
    int symbol = 1;
    for (std::size_t i = 0; i < nf.size() && symbol != 0; ++i) {
      const std::int64_t p = nf[i].prime;
      const std::int64_t a = alpha % p;
      if (mod_floor(t * t - a, p) == 0) {
        symbol = 0;
        break;
      }
      const int leg = legendre[i][static_cast<std::size_t>(a)];
      if (leg == 0) symbol = 0;
      else if (leg == -1 && nf[i].exponent % 2 == 1) symbol = -symbol;
    }
    sum += symbol;
  }
  return sum;
}

std::int64_t c_t_closed(std::int64_t t, std::int64_t p, int j, const CongruenceTarget& target) {
  if (p < 3 || !is_prime(p)) throw ArgumentError("c_t_closed: p must be an odd prime");
  if (j < 1) throw ArgumentError("c_t_closed: exponent must be >= 1");
  const std::int64_t pj = ipow(p, j);
  const std::int64_t pj1 = pj / p;
  if (target.h() % p == 0) {
    if (gcd(mod_floor(t * t - target.r(), target.h()), target.h()) != 1) {
      throw ArgumentError("c_t_closed: requires gcd(t^2 - r, h) = 1 when p | h");
    }
    return kronecker(target.r(), pj) * (pj / gcd(pj, target.h()));
  }
  const bool p_divides_t = t % p == 0;
  if (j % 2 == 1) return p_divides_t ? 0 : -pj1;
  return p_divides_t ? pj - pj1 : pj - 2 * pj1;
}

std::int64_t c_t_multiplicative(std::int64_t t, const Factorization& n_factors, const CongruenceTarget& target) {
  std::int64_t v = 1;
  for (const auto& [p, e] : n_factors) {
    if (p == 2) throw ArgumentError("c_t_multiplicative: n must be odd");
    v *= c_t_closed(t, p, e, target);
    if (v == 0) return 0;
  }
  return v;
}

ExactRational G_factor(std::int64_t p) {
  const mpz_class P(p);
  const mpz_class p2 = P * P;
  return {2 * p2 + P - 1, p2 * p2 - p2 * P - 2 * p2 - P + 1};
}

ExactRational frak_C_local_factor(std::int64_t ell, const CongruenceTarget& target) {
  const int alpha = target.alpha(ell);
  if (alpha == 0) {
    const mpz_class L(ell);
    const mpz_class l2 = L * L;
    return {l2 * l2 - 2 * l2 - L + 1, l2 * (l2 - 1)};
  }
  const ExactRational scale(1, ipow(ell, alpha));
  const std::int64_t chi = kronecker(target.canonical_r(), ell);
  if (chi == 0) {
    return alpha == 1 ? scale * ExactRational(ell - 1, ell) : scale;
  }
  return scale * ExactRational(ell * (ell - 1 - chi), (ell - 1) * (ell - chi));
}

ExactRational P_rh_local_factor(std::int64_t ell, const CongruenceTarget& target) {
  const int alpha = target.alpha(ell);
  if (alpha == 0) {
    const mpz_class L(ell);
    const mpz_class l2 = L * L;
    return {l2 * l2 - l2 * L - 2 * l2 - L + 1, L * (L - 1) * (l2 - 1)};
  }
  const std::int64_t chi = kronecker(target.canonical_r(), ell);
  ExactRational f(ell, ipow(ell, alpha - 1) * (ell - 1) * (ell - chi));  // p/(phi(p^a)(p - chi))
  if (alpha == 1 && chi == 0) f *= ExactRational(ell - 1, ell);
  return f;
}

ExactRational frak_C_alt_local_factor(std::int64_t ell, const CongruenceTarget& target) {
  const ExactRational p_local = P_rh_local_factor(ell, target);
  if (target.alpha(ell) == 0) {
    return p_local * (ExactRational(1) + G_factor(ell) / ExactRational(ell));
  }
  const std::int64_t chi = kronecker(target.canonical_r(), ell);
  return p_local * (ExactRational(1) - ExactRational(1 + chi, ell));
}

ExactRational frak_C_h_part(const CongruenceTarget& target) {
  ExactRational v(1, 3 * target.h());
  for (const auto& [ell, alpha] : target.h_factors()) {
    const std::int64_t chi = kronecker(target.canonical_r(), ell);
    if (chi == 0) {
      if (alpha == 1) v *= ExactRational(ell - 1, ell);
    } else {
      v *= ExactRational(ell * (ell - 1 - chi), (ell - 1) * (ell - chi));
    }
  }
  return v;
}

EulerProductValue frak_C(const CongruenceTarget& target, std::int64_t prime_cut) {
  require_prime_cut(prime_cut);
  if (!target.gcd_rh_squarefree()) return zero_product(prime_cut);
  auto factors = collect_factors(target, prime_cut, [&](std::int64_t ell) { return frak_C_local_factor(ell, target); });
  return make_euler_product(ExactRational(1, 3), std::move(factors), prime_cut);
}

EulerProductValue frak_C_alt(const CongruenceTarget& target, std::int64_t prime_cut) {
  require_prime_cut(prime_cut);
  if (!target.gcd_rh_squarefree()) return zero_product(prime_cut);
  auto factors =
      collect_factors(target, prime_cut, [&](std::int64_t ell) { return frak_C_alt_local_factor(ell, target); });
  return make_euler_product(ExactRational(1, 3), std::move(factors), prime_cut);
}

EulerProductValue P_rh(const CongruenceTarget& target, std::int64_t prime_cut) {
  require_prime_cut(prime_cut);
  if (!target.gcd_rh_squarefree()) return zero_product(prime_cut);
  auto factors = collect_factors(target, prime_cut, [&](std::int64_t ell) { return P_rh_local_factor(ell, target); });
  return make_euler_product(ExactRational(1), std::move(factors), prime_cut);
}

EulerProductValue C_t_product(std::int64_t t, const CongruenceTarget& target, std::int64_t prime_cut) {
  require_prime_cut(prime_cut);
  if (!target.gcd_rh_squarefree()) throw ArgumentError("C_t_product: gcd(r, h) must be squarefree");
  if (gcd(mod_floor(t * t - target.r(), target.h()), target.h()) != 1) {
    throw ArgumentError("C_t_product: requires gcd(t^2 - r, h) = 1");
  }
  auto factors = collect_factors(target, prime_cut, [&](std::int64_t ell) { return P_rh_local_factor(ell, target); });
  if (t != 0) {
    for (const auto& [p, e] : factorize(t)) {
      if (p == 2 || target.h() % p == 0) continue;
      const ExactRational boost = ExactRational(1) + G_factor(p);
      auto it = factors.find(p);
      if (it == factors.end()) {
        factors.emplace(p, P_rh_local_factor(p, target) * boost);
      } else {
        it->second *= boost;
      }
    }
  }
  return make_euler_product(ExactRational(1), std::move(factors), prime_cut);
}

double C_t_doublesum(std::int64_t t, const CongruenceTarget& target, std::int64_t N, std::int64_t D) {
  if (N < 1 || D < 1) throw ArgumentError("C_t_doublesum: truncations must be positive");
  const SpfTable spf(std::max<std::int64_t>({N, D, 3}));
  const std::int64_t h = target.h();
  const std::int64_t r = target.canonical_r();

  // Odd squarefree d <= D with (d^2, h) | r, with mu(d) and factorization.
  struct DTerm {
    std::int64_t d;
    int mu;
    Factorization f;
  };
  std::vector<DTerm> ds;
  for (std::int64_t d = 1; d <= D; d += 2) {
    if (!spf.is_squarefree(d)) continue;
    if (r % gcd(d * d, h) != 0) continue;
    Factorization f = d == 1 ? Factorization{} : spf.factorize(d);
    ds.push_back({d, (f.size() % 2 == 0) ? 1 : -1, std::move(f)});
  }

  // phi(lcm(n d^2, h)) from the merged prime exponents.
  auto phi_lcm = [&](const Factorization& nf, const Factorization& df) {
    std::map<std::int64_t, int> exps;
    for (const auto& [p, e] : nf) exps[p] = std::max(exps[p], e);
    for (const auto& [p, e] : df) exps[p] = std::max(exps[p], 2 * e);
    for (const auto& [p, e] : target.h_factors()) exps[p] = std::max(exps[p], e);
    long double phi = 1.0L;
    for (const auto& [p, e] : exps) phi *= static_cast<long double>(ipow(p, e - 1) * (p - 1));
    return phi;
  };

  NeumaierSum outer;
  for (std::int64_t n = 1; n <= N; n += 2) {
    const Factorization nf = n == 1 ? Factorization{} : spf.factorize(n);
    const std::int64_t c = c_t_multiplicative(t, nf, target);
    if (c == 0) continue;
    NeumaierSum inner;
    for (const auto& term : ds) {
      if (gcd(term.d, n) != 1 || gcd(term.d, t) != 1) continue;
      inner.add(static_cast<double>(term.mu / phi_lcm(nf, term.f)));
    }
    outer.add(static_cast<double>(static_cast<long double>(c) / n) * inner.value());
  }
  return outer.value();
}

ExactRational csf_order_factor(std::int64_t ell) {
  const mpz_class L(ell);
  const mpz_class l2 = L * L;
  return ExactRational(1) - ExactRational(l2 * L - L - 1, (l2 - 1) * l2 * (L - 1));
}

}  // namespace frobdisc
