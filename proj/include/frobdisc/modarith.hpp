#pragma once

// Elementary arithmetic: sieves, multiplicative functions, Kronecker symbol,
// squarefree tests and membership in Delta(r, h), the set of squarefree
// integers congruent to r modulo h.

#include <cstdint>
#include <utility>
#include <vector>

namespace frobdisc {

// Largest sieve limit accepted by sieve_primes / SpfTable.
inline constexpr std::int64_t kMaxSieveLimit = 2'000'000'000;
inline constexpr std::int64_t kMaxSpfLimit = 200'000'000;

struct PrimePower {
  std::int64_t prime;
  int exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;

std::vector<std::int64_t> sieve_primes(std::int64_t limit);

// Kronecker symbol (a|n), n != 0.
int kronecker(std::int64_t a, std::int64_t n);

int moebius(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);
std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);

// Floor of the square root, exact for all nonnegative int64.
std::int64_t isqrt(std::int64_t n);

// Residue in [0, m) for m > 0.
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

Factorization factorize(std::int64_t n);  // trial division, |n| >= 1
bool is_squarefree(std::int64_t n);       // n != 0, tested on |n|
bool is_prime(std::int64_t n);
// Exponent of prime p in n != 0.
int valuation(std::int64_t n, std::int64_t p);

// Smallest-prime-factor table for 0..limit, built once and read-only afterwards.
class SpfTable {
 public:
  explicit SpfTable(std::int64_t limit);

  std::int64_t limit() const { return limit_; }
  std::int64_t smallest_factor(std::int64_t n) const { return spf_[static_cast<std::size_t>(n)]; }
  bool is_prime(std::int64_t n) const { return n >= 2 && smallest_factor(n) == n; }
  // |n| in [1, limit].
  bool is_squarefree(std::int64_t n) const;
  Factorization factorize(std::int64_t n) const;

 private:
  std::int64_t limit_;
  std::vector<std::uint32_t> spf_;
};

// The pair (r, h) with h a positive odd integer.
class CongruenceTarget {
 public:
  // Throws ArgumentError unless h >= 1 and h odd.
  CongruenceTarget(std::int64_t r, std::int64_t h);

  std::int64_t r() const { return r_; }
  std::int64_t h() const { return h_; }
  std::int64_t canonical_r() const { return canonical_r_; }
  // False when a prime square divides gcd(r, h); Delta(r, h) is then empty.
  bool gcd_rh_squarefree() const { return gcd_rh_squarefree_; }
  const Factorization& h_factors() const { return h_factors_; }
  // Exponent of ell in h.
  int alpha(std::int64_t ell) const;

  friend bool operator==(const CongruenceTarget& a, const CongruenceTarget& b) {
    return a.r_ == b.r_ && a.h_ == b.h_;
  }

 private:
  std::int64_t r_;
  std::int64_t h_;
  std::int64_t canonical_r_;
  bool gcd_rh_squarefree_;
  Factorization h_factors_;
};

bool in_delta(std::int64_t n, const CongruenceTarget& target);
// Same test with the squarefree check answered by a prebuilt table (|n| <= spf.limit()).
bool in_delta(std::int64_t n, const CongruenceTarget& target, const SpfTable& spf);

}  // namespace frobdisc
