#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace frobdisc {

// Arbitrary-precision signed rational, always in lowest terms with a
// positive denominator. Thin value wrapper over GMP's mpq_class.
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(std::int64_t n);  // NOLINT(google-explicit-constructor)
  ExactRational(std::int64_t num, std::int64_t den);
  ExactRational(const mpz_class& num, const mpz_class& den);
  explicit ExactRational(mpq_class q);

  // Parses "num/den" or "num".
  static ExactRational parse(const std::string& text);

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  double to_double() const { return q_.get_d(); }
  // Requires is_integer() and that the value fits.
  std::int64_t to_int64() const;

  std::string str() const;  // "num/den", or "num" when the denominator is 1

  ExactRational& operator+=(const ExactRational& o) { q_ += o.q_; return *this; }
  ExactRational& operator-=(const ExactRational& o) { q_ -= o.q_; return *this; }
  ExactRational& operator*=(const ExactRational& o) { q_ *= o.q_; return *this; }
  ExactRational& operator/=(const ExactRational& o);

  friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
  friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
  friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
  friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }
  friend ExactRational operator-(const ExactRational& a) { return ExactRational(mpq_class(-a.q_)); }

  friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_{0};
};

std::ostream& operator<<(std::ostream& os, const ExactRational& q);

}  // namespace frobdisc
