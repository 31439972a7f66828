#include "frobdisc/classnum.hpp"

#include <numeric>
#include <string>

#include "frobdisc/errors.hpp"
#include "frobdisc/modarith.hpp"

namespace frobdisc {

bool is_negative_discriminant(std::int64_t D) {
  if (D >= 0) return false;
  const std::int64_t m = mod_floor(D, 4);
  return m == 0 || m == 1;
}

namespace {

void require_discriminant(std::int64_t D, const char* who) {
  if (!is_negative_discriminant(D)) {
    throw ArgumentError(std::string(who) + ": " + std::to_string(D) +
                        " is not a negative discriminant (D < 0, D = 0,1 mod 4)");
  }
}

// Counts a reduced form once, with the sign convention b >= 0 on the
// boundary |b| = a or a = c.
bool is_reduced_primitive(std::int64_t a, std::int64_t b, std::int64_t c) {
  if (c < a) return false;
  if (b < 0 && (-b == a || a == c)) return false;
  std::int64_t g = std::gcd(a, b < 0 ? -b : b);
  if (g != 1) g = std::gcd(g, c);
  return g == 1;
}

}  // namespace

std::int64_t class_number(std::int64_t D) {
  require_discriminant(D, "class_number");
  const std::int64_t n = -D;
  std::int64_t count = 0;
  // a <= sqrt(|D|/3) for reduced forms.
  for (std::int64_t a = 1; 3 * a * a <= n; ++a) {
    for (std::int64_t b = -a; b <= a; ++b) {
      const std::int64_t num = b * b + n;  // = 4ac
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (is_reduced_primitive(a, b, c)) ++count;
    }
  }
  return count;
}

int unit_count(std::int64_t D) {
  require_discriminant(D, "unit_count");
  if (D == -3) return 6;
  if (D == -4) return 4;
  return 2;
}

FormClassResult form_class(std::int64_t D) { return {D, class_number(D), unit_count(D)}; }

ExactRational kronecker_H(std::int64_t D) {
  if (D >= 0) throw ArgumentError("kronecker_H: D must be negative");
  ExactRational total(0);
  for (std::int64_t f = 1; f * f <= -D; ++f) {
    if (D % (f * f) != 0) continue;
    const std::int64_t d = D / (f * f);
    if (!is_negative_discriminant(d)) continue;
    total += ExactRational(class_number(d), unit_count(d));
  }
  return total;
}

ClassTable::ClassTable(std::int64_t limit) : limit_(limit) {
  if (limit < 3) throw ArgumentError("ClassTable: limit must be >= 3");
  if (limit > kMaxClassTableLimit) {
    throw ResourceError("ClassTable: limit " + std::to_string(limit) + " exceeds budget");
  }
  counts_.assign(static_cast<std::size_t>(limit) + 1, 0);
  for (std::int64_t a = 1; 3 * a * a <= limit; ++a) {
    for (std::int64_t b = -a; b <= a; ++b) {
      // c runs from a while |D| = 4ac - b^2 stays within the table.
      for (std::int64_t c = a;; ++c) {
        const std::int64_t n = 4 * a * c - b * b;
        if (n > limit) break;
        ++form_visits_;
        if (is_reduced_primitive(a, b, c)) ++counts_[static_cast<std::size_t>(n)];
      }
    }
  }
}

std::int64_t ClassTable::class_number(std::int64_t D) const {
  require_discriminant(D, "ClassTable::class_number");
  if (!covers(D)) {
    throw ArgumentError("ClassTable: D = " + std::to_string(D) + " outside table limit " +
                        std::to_string(limit_));
  }
  return at(D);
}

}  // namespace frobdisc
