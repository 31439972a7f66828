#include "frobdisc/gl2.hpp"

#include <algorithm>
#include <atomic>
#include <string>
#include <vector>

#include "frobdisc/errors.hpp"
#include "frobdisc/parallel.hpp"

namespace frobdisc {

namespace {

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t v = 1;
  for (int i = 0; i < e; ++i) v *= base;
  return v;
}

void require_odd_prime(std::int64_t ell, const char* who) {
  if (ell < 3 || !is_prime(ell)) throw ArgumentError(std::string(who) + ": ell must be an odd prime");
}

void require_budget(std::int64_t modulus) {
  const auto m = static_cast<long double>(modulus);
  if (m * m * m * m > static_cast<long double>(kGl2EnumerationBudget)) {
    throw ResourceError("GL2 enumeration mod " + std::to_string(modulus) + " exceeds the budget of " +
                        std::to_string(kGl2EnumerationBudget) + " matrices");
  }
}

Gl2Count make_count(std::int64_t ell, int beta, const MatrixCount& mc) {
  Gl2Count out;
  out.ell = ell;
  out.beta = beta;
  out.modulus = ipow(ell, beta);
  out.group_order = mc.invertible;
  out.matching = mc.matching;
  out.density = ExactRational(mc.matching, mc.invertible);
  const std::int64_t expected = gl2_order_formula(ell, beta);
  if (mc.invertible != expected) {
    throw InvariantViolation("GL2 order mismatch mod " + std::to_string(out.modulus) + ": enumerated " +
                             std::to_string(mc.invertible) + ", formula " + std::to_string(expected));
  }
  return out;
}

// tr^2 - 4 det avoids ell^2 and meets r mod ell^alpha (alpha may be 0).
bool discriminant_condition(std::int64_t tr, std::int64_t det, std::int64_t ell, int alpha, std::int64_t r) {
  const std::int64_t disc = tr * tr - 4 * det;
  if (mod_floor(disc, ell * ell) == 0) return false;
  if (alpha == 0) return true;
  const std::int64_t la = ipow(ell, alpha);
  return mod_floor(disc - r, la) == 0;
}

}  // namespace

std::int64_t gl2_order_formula(std::int64_t ell, int beta) {
  if (beta < 1) throw ArgumentError("gl2_order_formula: beta must be >= 1");
  return ipow(ell, 4 * (beta - 1)) * (ell * ell - 1) * (ell * ell - ell);
}

MatrixCount enumerate_gl2(std::int64_t modulus, const std::function<bool(std::int64_t, std::int64_t)>& predicate,
                          unsigned threads) {
  if (modulus < 2) throw ArgumentError("enumerate_gl2: modulus must be >= 2");
  require_budget(modulus);
  const std::int64_t m = modulus;
  std::vector<char> unit(static_cast<std::size_t>(m));
  for (std::int64_t v = 0; v < m; ++v) unit[static_cast<std::size_t>(v)] = gcd(v, m) == 1;
  // The predicate only sees (tr, det); tabulate it once.
  std::vector<char> match(static_cast<std::size_t>(m * m));
  for (std::int64_t tr = 0; tr < m; ++tr) {
    for (std::int64_t det = 0; det < m; ++det) {
      match[static_cast<std::size_t>(tr * m + det)] = unit[static_cast<std::size_t>(det)] && predicate(tr, det);
    }
  }
  std::atomic<std::int64_t> invertible{0};
  std::atomic<std::int64_t> matching{0};
  parallel_chunks(static_cast<std::size_t>(m), 1, resolve_threads(threads), [&](std::size_t lo, std::size_t hi) {
    std::int64_t inv = 0;
    std::int64_t hit = 0;
    for (auto a = static_cast<std::int64_t>(lo); a < static_cast<std::int64_t>(hi); ++a) {
      for (std::int64_t b = 0; b < m; ++b) {
        for (std::int64_t c = 0; c < m; ++c) {
          const std::int64_t bc = b * c % m;
          for (std::int64_t d = 0; d < m; ++d) {
            const std::int64_t det = mod_floor(a * d - bc, m);
            if (!unit[static_cast<std::size_t>(det)]) continue;
            ++inv;
            const std::int64_t tr = (a + d) % m;
            hit += match[static_cast<std::size_t>(tr * m + det)];
          }
        }
      }
    }
    invertible += inv;
    matching += hit;
  });
  return {invertible.load(), matching.load()};
}

std::int64_t count_invertible_raw(std::int64_t modulus) {
  require_budget(modulus);
  const std::int64_t m = modulus;
  std::int64_t count = 0;
  for (std::int64_t a = 0; a < m; ++a)
    for (std::int64_t b = 0; b < m; ++b)
      for (std::int64_t c = 0; c < m; ++c)
        for (std::int64_t d = 0; d < m; ++d)
          if (gcd(mod_floor(a * d - b * c, m), m) == 1) ++count;
  return count;
}

Gl2Count count_p1(std::int64_t ell, unsigned threads) {
  require_odd_prime(ell, "count_p1");
  const std::int64_t m = ell * ell;
  const auto mc = enumerate_gl2(
      m, [&](std::int64_t tr, std::int64_t det) { return discriminant_condition(tr, det, ell, 0, 0); }, threads);
  return make_count(ell, 2, mc);
}

Gl2Count count_p2(std::int64_t ell, int alpha, std::int64_t r, unsigned threads) {
  require_odd_prime(ell, "count_p2");
  if (alpha < 1) throw ArgumentError("count_p2: alpha must be >= 1");
  const int beta = std::max(alpha, 2);
  const auto mc = enumerate_gl2(
      ipow(ell, beta),
      [&](std::int64_t tr, std::int64_t det) { return discriminant_condition(tr, det, ell, alpha, r); }, threads);
  return make_count(ell, beta, mc);
}

Gl2Count count_order_squarefree_factor(std::int64_t ell, unsigned threads) {
  require_odd_prime(ell, "count_order_squarefree_factor");
  const std::int64_t m = ell * ell;
  const auto mc = enumerate_gl2(
      m, [&](std::int64_t tr, std::int64_t det) { return mod_floor(det - tr + 1, m) != 0; }, threads);
  return make_count(ell, 2, mc);
}

ExactRational p1_closed(std::int64_t ell) {
  const mpz_class L(ell);
  const mpz_class l2 = L * L;
  return {l2 * l2 - 2 * l2 - L + 1, l2 * (l2 - 1)};
}

ExactRational p2_closed(std::int64_t ell, int alpha, std::int64_t r) {
  if (alpha < 1) throw ArgumentError("p2_closed: alpha must be >= 1");
  const std::int64_t la = ipow(ell, alpha);
  const std::int64_t rr = mod_floor(r, la);
  if (rr % ell != 0) {
    const std::int64_t chi = kronecker(rr, ell);
    return ExactRational(ell * (ell - 1 - chi), (ell - 1) * (ell - chi)) / ExactRational(la);
  }
  if (alpha == 1) return {ell - 1, la * ell};
  if (rr % (ell * ell) != 0) return {1, la};
  return ExactRational(0);
}

ExactRational level_probability(std::int64_t modulus, const CongruenceTarget& target, unsigned threads) {
  ExactRational prob(1);
  for (const auto& [ell, beta] : factorize(modulus)) {
    const int alpha = target.alpha(ell);
    if (beta < 2 || beta < alpha) {
      throw ArgumentError("level_probability: exponent of " + std::to_string(ell) + " in m must be >= max(2, alpha)");
    }
    const std::int64_t r = target.canonical_r();
    const auto mc = enumerate_gl2(
        ipow(ell, beta),
        [&](std::int64_t tr, std::int64_t det) { return discriminant_condition(tr, det, ell, alpha, r); }, threads);
    prob *= ExactRational(mc.matching, mc.invertible);
  }
  return prob;
}

ExactRational level_probability_direct(std::int64_t modulus, const CongruenceTarget& target, unsigned threads) {
  const Factorization f = factorize(modulus);
  for (const auto& [ell, beta] : f) {
    if (beta < 2 || beta < target.alpha(ell)) {
      throw ArgumentError("level_probability_direct: exponent of " + std::to_string(ell) +
                          " in m must be >= max(2, alpha)");
    }
  }
  const std::int64_t r = target.canonical_r();
  const auto mc = enumerate_gl2(
      modulus,
      [&](std::int64_t tr, std::int64_t det) {
        return std::all_of(f.begin(), f.end(), [&](const PrimePower& pp) {
          return discriminant_condition(tr, det, pp.prime, target.alpha(pp.prime), r);
        });
      },
      threads);
  return {mc.matching, mc.invertible};
}

CsfResult csf_generic(const CongruenceTarget& target, std::int64_t prime_cut, std::int64_t level, unsigned threads) {
  if (level < 2 || level % 2 != 0) throw ArgumentError("csf_generic: the level M_E must be even and >= 2");
  CsfResult out;
  out.level = level;
  out.modulus = 1;
  const Factorization level_factors = factorize(level);
  for (const auto& [ell, gamma] : level_factors) {
    const int beta = std::max({2, gamma, target.alpha(ell)});
    out.modulus *= ipow(ell, beta);
  }
  if (!target.gcd_rh_squarefree()) {
    out.defined_zero = true;
    out.level_probability = ExactRational(0);
    out.product.prime_cut = prime_cut;
    out.product.defined_zero = true;
    out.product.prefactor = ExactRational(0);
    return out;
  }
  out.level_probability = level_probability(out.modulus, target, threads);

  auto divides_level = [&](std::int64_t ell) {
    return std::any_of(level_factors.begin(), level_factors.end(), [&](const PrimePower& pp) { return pp.prime == ell; });
  };
  std::map<std::int64_t, ExactRational> factors;
  for (std::int64_t ell : sieve_primes(std::max<std::int64_t>(prime_cut, 3))) {
    if (ell == 2 || divides_level(ell)) continue;
    factors.emplace(ell, frak_C_local_factor(ell, target));
  }
  for (const auto& [ell, alpha] : target.h_factors()) {
    if (ell > prime_cut && !divides_level(ell)) factors.emplace(ell, frak_C_local_factor(ell, target));
  }
  out.product = make_euler_product(out.level_probability, std::move(factors), prime_cut);
  out.value = out.product.value;
  return out;
}

}  // namespace frobdisc
