#include "frobdisc/sums.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "frobdisc/errors.hpp"
#include "frobdisc/parallel.hpp"
#include "frobdisc/summation.hpp"

namespace frobdisc {

namespace {

template <class S>
S ratio(std::int64_t num, std::int64_t den);
template <>
double ratio<double>(std::int64_t num, std::int64_t den) {
  return static_cast<double>(num) / static_cast<double>(den);
}
template <>
ExactRational ratio<ExactRational>(std::int64_t num, std::int64_t den) {
  return {num, den};
}

template <class S>
class Accumulator {
 public:
  void add(const S& x) { sum_ += x; }
  S value() const { return sum_; }

 private:
  S sum_{0};
};
template <>
class Accumulator<double> {
 public:
  void add(double x) { sum_.add(x); }
  double value() const { return sum_.value(); }

 private:
  NeumaierSum sum_;
};

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t v = 1;
  for (int i = 0; i < e; ++i) v *= base;
  return v;
}

void validate(const STConfig& c) {
  if (c.T < 0) throw ArgumentError("S(T): T must be nonnegative");
  if (c.U < 1 || c.R < 1) throw ArgumentError("S(T): U and R must be >= 1");
  if (c.R > kMaxSumR) throw ResourceError("S(T): R exceeds " + std::to_string(kMaxSumR));
  if (c.U > kMaxSumU) throw ResourceError("S(T): U exceeds " + std::to_string(kMaxSumU));
}

bool admissible_trace(std::int64_t t, const CongruenceTarget& target) {
  const std::int64_t h = target.h();
  return t % 2 == 1 && gcd(mod_floor(t * t - target.r(), h), h) == 1;
}

// Evaluates F(t) for every admissible t. Terms with (d, n) = 1 use
//   phi(lcm(n d^2, h)) = phi(n) phi(d^2) phi(h) / (phi((n, h)) phi((d^2, h))),
// so the n- and d-sums separate into coef(n) * W(primes of n and t).
// c_t(n) depends on t only through which primes of n divide t; the sum is
// evaluated once per set of small primes of t and corrected on multiples of
// the primes of t.
template <class S>
class StEngine {
 public:
  explicit StEngine(const STConfig& config) : c_(config), spf_(std::max({config.U, config.R, std::int64_t{3}})) {
    const std::int64_t h = c_.target.h();
    const std::int64_t r = c_.target.canonical_r();
    const std::int64_t phi_h = euler_phi(h);

    for (std::int64_t p : sieve_primes(std::max<std::int64_t>(c_.R, 2))) {
      if (p == 2) continue;
      small_index_.emplace(p, static_cast<int>(small_primes_.size()));
      small_primes_.push_back(p);
    }
    if (small_primes_.size() > 64) throw ResourceError("S(T): too many primes below R for the mask evaluator");

    // d-terms: odd squarefree d <= R with (d^2, h) | r.
    for (std::int64_t d = 1; d <= c_.R; d += 2) {
      if (!spf_.is_squarefree(d)) continue;
      const std::int64_t g = gcd(d * d, h);
      if (r % g != 0) continue;
      std::uint64_t mask = 0;
      int omega = 0;
      if (d > 1) {
        for (const auto& [p, e] : spf_.factorize(d)) {
          mask |= std::uint64_t{1} << small_index_.at(p);
          ++omega;
        }
      }
      const int mu = omega % 2 == 0 ? 1 : -1;
      d_terms_.push_back({mask, ratio<S>(mu * euler_phi(g), euler_phi(d * d))});
    }

    // n-terms: odd n <= U with c_t(n) evaluated as if no prime of n divided t.
    std::map<std::uint64_t, std::uint32_t> mask_ids;
    const auto count = static_cast<std::size_t>((c_.U + 1) / 2);
    coef_.reserve(count);
    mask_id_.reserve(count);
    for (std::int64_t n = 1; n <= c_.U; n += 2) {
      std::int64_t base = 1;
      std::uint64_t mask = 0;
      std::int64_t phi_n = 1;
      const Factorization nf = n == 1 ? Factorization{} : spf_.factorize(n);
      for (const auto& [p, e] : nf) {
        const std::int64_t pe = ipow(p, e);
        phi_n *= pe - pe / p;
        if (h % p == 0) {
          base *= kronecker(r, pe) * (pe / gcd(pe, h));
        } else {
          base *= (e % 2 == 1) ? -(pe / p) : pe - 2 * (pe / p);
        }
        if (auto it = small_index_.find(p); it != small_index_.end()) mask |= std::uint64_t{1} << it->second;
      }
      coef_.push_back(base == 0 ? S{0} : ratio<S>(base * euler_phi(gcd(n, h)), n * phi_n * phi_h));
      auto [it, inserted] = mask_ids.emplace(mask, static_cast<std::uint32_t>(n_masks_.size()));
      if (inserted) n_masks_.push_back(mask);
      mask_id_.push_back(it->second);
    }
  }

  std::vector<std::pair<std::int64_t, S>> terms(unsigned threads) const {
    std::vector<std::int64_t> traces;
    for (std::int64_t t = 1; t <= c_.T; t += 2) {
      if (admissible_trace(t, c_.target)) traces.push_back(t);
    }
    std::map<std::uint64_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < traces.size(); ++i) groups[small_mask(traces[i])].push_back(i);
    std::vector<std::pair<std::uint64_t, const std::vector<std::size_t>*>> group_list;
    for (const auto& [mask, members] : groups) group_list.emplace_back(mask, &members);

    std::vector<std::pair<std::int64_t, S>> out(traces.size());
    parallel_chunks(group_list.size(), 1, resolve_threads(threads), [&](std::size_t lo, std::size_t hi) {
      for (std::size_t g = lo; g < hi; ++g) {
        const std::uint64_t tmask = group_list[g].first;
        std::vector<S> w(n_masks_.size());
        for (std::size_t k = 0; k < n_masks_.size(); ++k) w[k] = W(n_masks_[k] | tmask);
        Accumulator<S> s0;
        for (std::size_t k = 0; k < coef_.size(); ++k) s0.add(coef_[k] * w[mask_id_[k]]);
        for (std::size_t i : *group_list[g].second) {
          const std::int64_t t = traces[i];
          out[i] = {t, s0.value() + correction(t, w)};
        }
      }
    });
    return out;
  }

 private:
  struct DTerm {
    std::uint64_t mask;
    S weight;  // mu(d) phi((d^2, h)) / phi(d^2)
  };

  std::uint64_t small_mask(std::int64_t t) const {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < small_primes_.size(); ++i) {
      if (t % small_primes_[i] == 0) mask |= std::uint64_t{1} << i;
    }
    return mask;
  }

  S W(std::uint64_t forbidden) const {
    Accumulator<S> acc;
    for (const auto& d : d_terms_) {
      if ((d.mask & forbidden) == 0) acc.add(d.weight);
    }
    return acc.value();
  }

  // Replaces coef(n) by the true c_t(n) term on n sharing an odd prime q with
  // t (q !| h): odd exponent of q gives 0, even exponent scales by (q-1)/(q-2).
  S correction(std::int64_t t, const std::vector<S>& w) const {
    std::vector<std::int64_t> qs;
    for (const auto& [q, e] : factorize(t)) {
      if (q != 2 && c_.target.h() % q != 0 && q <= c_.U) qs.push_back(q);
    }
    Accumulator<S> acc;
    for (std::size_t qi = 0; qi < qs.size(); ++qi) {
      const std::int64_t q = qs[qi];
      for (std::int64_t n = q; n <= c_.U; n += 2 * q) {
        bool seen = false;
        for (std::size_t j = 0; j < qi; ++j) seen = seen || n % qs[j] == 0;
        if (seen) continue;
        S scale{1};
        bool vanishes = false;
        for (std::int64_t q2 : qs) {
          if (n % q2 != 0) continue;
          const int e = valuation(n, q2);
          if (e % 2 == 1) {
            vanishes = true;
            break;
          }
          scale *= ratio<S>(q2 - 1, q2 - 2);
        }
        const std::size_t k = static_cast<std::size_t>(n / 2);
        const S term = coef_[k] * w[mask_id_[k]];
        acc.add(vanishes ? S{0} - term : term * scale - term);
      }
    }
    return acc.value();
  }

  STConfig c_;
  SpfTable spf_;
  std::vector<std::int64_t> small_primes_;
  std::map<std::int64_t, int> small_index_;
  std::vector<DTerm> d_terms_;
  std::vector<S> coef_;
  std::vector<std::uint32_t> mask_id_;
  std::vector<std::uint64_t> n_masks_;
};

}  // namespace

STConfig make_st_config(std::int64_t T, std::int64_t R, const CongruenceTarget& target) {
  if (R < 1) throw ArgumentError("make_st_config: R must be >= 1");
  const auto U = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(T)) * static_cast<double>(R * R)));
  return {T, std::max<std::int64_t>(U, 1), R, target};
}

std::vector<std::pair<std::int64_t, double>> s_of_T_terms(const STConfig& config, unsigned threads) {
  validate(config);
  return StEngine<double>(config).terms(threads);
}

std::vector<std::pair<std::int64_t, ExactRational>> s_of_T_terms_exact(const STConfig& config) {
  validate(config);
  return StEngine<ExactRational>(config).terms(1);
}

double s_of_T(const STConfig& config, unsigned threads) {
  NeumaierSum sum;
  for (const auto& [t, v] : s_of_T_terms(config, threads)) sum.add(v);
  return sum.value();
}

ExactRational s_of_T_exact(const STConfig& config) {
  ExactRational sum(0);
  for (const auto& [t, v] : s_of_T_terms_exact(config)) sum += v;
  return sum;
}

ExactRational s_of_T_literal(const STConfig& config) {
  if (config.T < 0 || config.U < 1 || config.R < 1) throw ArgumentError("s_of_T_literal: invalid config");
  const CongruenceTarget& target = config.target;
  const std::int64_t h = target.h();
  const std::int64_t r = target.r();
  ExactRational total(0);
  for (std::int64_t t = 1; t <= config.T; t += 2) {
    if (gcd(mod_floor(t * t - r, h), h) != 1) continue;
    for (std::int64_t n = 1; n <= config.U; n += 2) {
      const std::int64_t gnh = gcd(n, h);
      std::int64_t char_sum = 0;
      for (std::int64_t alpha = 0; alpha < n; ++alpha) {
        if (gcd(mod_floor(t * t - alpha, n), n) != 1) continue;
        if (mod_floor(alpha - r, gnh) != 0) continue;
        char_sum += kronecker(alpha, n);
      }
      if (char_sum == 0) continue;
      ExactRational inner(0);
      for (std::int64_t d = 1; d <= config.R; d += 2) {
        if (gcd(d, n * t) != 1) continue;
        if (mod_floor(r, gcd(d * d, h)) != 0) continue;
        const int mu = moebius(d);
        if (mu == 0) continue;
        inner += ExactRational(mu, euler_phi(lcm(n * d * d, h)));
      }
      total += ExactRational(char_sum, n) * inner;
    }
  }
  return total;
}

std::vector<ConvergenceRow> s_of_T_convergence(std::int64_t T, const CongruenceTarget& target,
                                               const std::vector<std::int64_t>& R_list, std::int64_t prime_cut,
                                               unsigned threads) {
  if (T < 1) throw ArgumentError("s_of_T_convergence: T must be >= 1");
  const double predicted = 1.5 * frak_C(target, prime_cut).value;
  std::vector<ConvergenceRow> rows;
  for (std::int64_t R : R_list) {
    const STConfig config = make_st_config(T, R, target);
    const double s_over_T = s_of_T(config, threads) / static_cast<double>(T);
    rows.push_back({R, config.U, s_over_T, predicted, std::abs(s_over_T - predicted)});
  }
  return rows;
}

}  // namespace frobdisc
