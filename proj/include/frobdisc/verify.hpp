#pragma once

// Property suites that cross-check each module against an independent route.
// Each suite stops at the first counterexample.

#include <cstdint>
#include <string>
#include <vector>

#include "frobdisc/modarith.hpp"

namespace frobdisc {

struct VerifyResult {
  bool ok = true;
  std::uint64_t checks = 0;
  std::string counterexample;  // first failure, empty when ok
  std::vector<std::string> notes;
};

// (r, h) pairs exercised by default.
std::vector<CongruenceTarget> default_targets();

// Direct trace histograms against (p - 1) H(t^2 - 4p) for every |t| <= 2 sqrt(p),
// plus direct_census = deuring_census on the default targets.
VerifyResult verify_deuring(std::int64_t pmax, unsigned threads = 0);
// c_t closed form against residue enumeration on odd prime powers <= nmax,
// 1 <= t <= tmax; multiplicativity on coprime odd pairs <= mult_max.
VerifyResult verify_ct(std::int64_t nmax, std::int64_t tmax, std::int64_t mult_max = 200);
// Factorwise equality of the two forms of the main constant for odd primes <= prime_cut.
VerifyResult verify_constant_identity(std::int64_t prime_cut);
// Enumerated GL2 densities against their closed forms.
VerifyResult verify_gl2(std::int64_t ell_max, unsigned threads = 0);
// Fast S(T) path against the literal quadruple sum on small instances.
VerifyResult verify_st(std::int64_t tmax, std::int64_t umax, std::int64_t rmax);

}  // namespace frobdisc
