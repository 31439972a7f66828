#include "frobdisc/rational.hpp"

#include <ostream>
#include <utility>

#include "frobdisc/errors.hpp"

namespace frobdisc {

namespace {

mpz_class from_int64(std::int64_t v) {
  // mpz_class has no int64 constructor on every platform; go through strings
  // only when long is narrower than 64 bits.
  if constexpr (sizeof(long) >= sizeof(std::int64_t)) {
    return mpz_class(static_cast<long>(v));
  } else {
    return mpz_class(std::to_string(v));
  }
}

}  // namespace

ExactRational::ExactRational(std::int64_t n) : q_(from_int64(n)) {}

ExactRational::ExactRational(std::int64_t num, std::int64_t den)
    : ExactRational(from_int64(num), from_int64(den)) {}

ExactRational::ExactRational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw ArgumentError("ExactRational: zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

ExactRational::ExactRational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

ExactRational ExactRational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return ExactRational(mpz_class(text), mpz_class(1));
    return ExactRational(mpz_class(text.substr(0, slash)), mpz_class(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw ArgumentError("ExactRational: cannot parse '" + text + "'");
  }
}

std::int64_t ExactRational::to_int64() const {
  if (!is_integer()) throw InvariantViolation("ExactRational::to_int64 on non-integer " + str());
  const mpz_class& n = q_.get_num();
  if (!n.fits_slong_p()) throw InvariantViolation("ExactRational::to_int64 overflow");
  return static_cast<std::int64_t>(n.get_si());
}

std::string ExactRational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

ExactRational& ExactRational::operator/=(const ExactRational& o) {
  if (o.is_zero()) throw ArgumentError("ExactRational: division by zero");
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const ExactRational& q) { return os << q.str(); }

}  // namespace frobdisc
