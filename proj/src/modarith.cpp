#include "frobdisc/modarith.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "frobdisc/errors.hpp"

namespace frobdisc {

std::vector<std::int64_t> sieve_primes(std::int64_t limit) {
  if (limit < 2) throw ArgumentError("sieve_primes: limit must be >= 2");
  if (limit > kMaxSieveLimit) {
    throw ResourceError("sieve_primes: limit " + std::to_string(limit) + " exceeds budget");
  }
  // Odd-only sieve: index i stands for 2i+1.
  const auto half = static_cast<std::size_t>((limit - 1) / 2 + 1);
  std::vector<bool> composite(half, false);
  for (std::int64_t i = 3; i * i <= limit; i += 2) {
    if (composite[static_cast<std::size_t>(i / 2)]) continue;
    for (std::int64_t j = i * i; j <= limit; j += 2 * i) composite[static_cast<std::size_t>(j / 2)] = true;
  }
  std::vector<std::int64_t> primes{2};
  for (std::size_t k = 1; k < half; ++k) {
    if (!composite[k]) primes.push_back(static_cast<std::int64_t>(2 * k + 1));
  }
  return primes;
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) throw ArgumentError("kronecker: n must be nonzero");
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  // Factor out powers of two from n using (a|2).
  int twos = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++twos;
  }
  if (twos > 0) {
    if ((a & 1) == 0) return 0;
    if (twos & 1) {
      const std::int64_t a8 = mod_floor(a, 8);
      if (a8 == 3 || a8 == 5) result = -result;
    }
  }
  // Jacobi symbol (a|n), n odd positive.
  a = mod_floor(a, n);
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const std::int64_t n8 = n & 7;
      if (n8 == 3 || n8 == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw ArgumentError("isqrt: negative argument");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  auto sq = [](std::int64_t v) { return static_cast<__int128>(v) * v; };
  while (sq(r) > n) --r;
  while (sq(r + 1) <= n) ++r;
  return r;
}

Factorization factorize(std::int64_t n) {
  if (n == 0) throw ArgumentError("factorize: zero");
  n = std::llabs(n);
  Factorization out;
  auto strip = [&](std::int64_t p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.push_back({p, e});
  };
  strip(2);
  for (std::int64_t d = 3; d <= n / d; d += 2) strip(d);
  if (n > 1) out.push_back({n, 1});
  return out;
}

int moebius(std::int64_t n) {
  if (n < 1) throw ArgumentError("moebius: n must be >= 1");
  int mu = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

std::int64_t euler_phi(std::int64_t n) {
  if (n < 1) throw ArgumentError("euler_phi: n must be >= 1");
  std::int64_t phi = n;
  for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

bool is_squarefree(std::int64_t n) {
  if (n == 0) throw ArgumentError("is_squarefree: zero");
  n = std::llabs(n);
  if (n % 4 == 0) return false;
  if (n % 2 == 0) n /= 2;
  for (std::int64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return false;
    }
  }
  return true;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

int valuation(std::int64_t n, std::int64_t p) {
  if (n == 0) throw ArgumentError("valuation: zero");
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

SpfTable::SpfTable(std::int64_t limit) : limit_(limit) {
  if (limit < 1) throw ArgumentError("SpfTable: limit must be >= 1");
  if (limit > kMaxSpfLimit) {
    throw ResourceError("SpfTable: limit " + std::to_string(limit) + " exceeds budget");
  }
  spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (spf_[static_cast<std::size_t>(i)] != 0) continue;
    spf_[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
    if (i > limit / i) continue;
    for (std::int64_t j = i * i; j <= limit; j += i) {
      if (spf_[static_cast<std::size_t>(j)] == 0) spf_[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(i);
    }
  }
  if (limit >= 1) spf_[1] = 1;
}

bool SpfTable::is_squarefree(std::int64_t n) const {
  n = std::llabs(n);
  if (n == 0 || n > limit_) throw ArgumentError("SpfTable::is_squarefree: out of range");
  while (n > 1) {
    const std::int64_t p = smallest_factor(n);
    n /= p;
    if (n % p == 0) return false;
  }
  return true;
}

Factorization SpfTable::factorize(std::int64_t n) const {
  n = std::llabs(n);
  if (n == 0 || n > limit_) throw ArgumentError("SpfTable::factorize: out of range");
  Factorization out;
  while (n > 1) {
    const std::int64_t p = smallest_factor(n);
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  return out;
}

CongruenceTarget::CongruenceTarget(std::int64_t r, std::int64_t h) : r_(r), h_(h) {
  if (h < 1 || h % 2 == 0) {
    throw ArgumentError("congruence target: h must be a positive odd integer, got " + std::to_string(h));
  }
  canonical_r_ = mod_floor(r, h);
  // gcd(0, h) = h.
  const std::int64_t g = std::gcd(canonical_r_, h);
  gcd_rh_squarefree_ = frobdisc::is_squarefree(g);
  if (h > 1) h_factors_ = frobdisc::factorize(h);
}

int CongruenceTarget::alpha(std::int64_t ell) const {
  for (const auto& [p, e] : h_factors_) {
    if (p == ell) return e;
  }
  return 0;
}

bool in_delta(std::int64_t n, const CongruenceTarget& target) {
  if (n == 0) return false;
  if (mod_floor(n, target.h()) != target.canonical_r()) return false;
  return is_squarefree(n);
}

bool in_delta(std::int64_t n, const CongruenceTarget& target, const SpfTable& spf) {
  if (n == 0) return false;
  if (mod_floor(n, target.h()) != target.canonical_r()) return false;
  return spf.is_squarefree(n);
}

}  // namespace frobdisc
