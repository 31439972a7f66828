#pragma once

// Class numbers of negative discriminants by counting primitive reduced
// binary quadratic forms, and the Kronecker class number H(D).

#include <cstdint>
#include <vector>

#include "frobdisc/rational.hpp"

namespace frobdisc {

inline constexpr std::int64_t kMaxClassTableLimit = 50'000'000;

// D < 0 and D = 0, 1 (mod 4).
bool is_negative_discriminant(std::int64_t D);

struct FormClassResult {
  std::int64_t D;
  std::int64_t h;
  int w;
};

// Number of primitive reduced forms (a, b, c) of discriminant D.
std::int64_t class_number(std::int64_t D);
// Units of the order of discriminant D: 6 for -3, 4 for -4, else 2.
int unit_count(std::int64_t D);
FormClassResult form_class(std::int64_t D);

// Sum of h(D/f^2)/w(D/f^2) over f >= 1 with f^2 | D and D/f^2 = 0, 1 (mod 4).
// Returns 0 when no f is admissible (D = 2, 3 mod 4 with no square cofactor).
ExactRational kronecker_H(std::int64_t D);

// h(D) for every valid D in [-limit, -3], filled by a single sweep over
// reduced forms. Immutable after construction.
class ClassTable {
 public:
  explicit ClassTable(std::int64_t limit);

  std::int64_t limit() const { return limit_; }
  bool covers(std::int64_t D) const { return D < 0 && -D <= limit_; }
  // Throws ArgumentError for D outside the table or not a discriminant.
  std::int64_t class_number(std::int64_t D) const;
  // Same lookup without checks; D must be a covered discriminant.
  std::int64_t at(std::int64_t D) const { return counts_[static_cast<std::size_t>(-D)]; }
  // Number of (a, b, c) triples visited during construction.
  std::uint64_t form_visits() const { return form_visits_; }

 private:
  std::int64_t limit_;
  std::vector<std::uint32_t> counts_;
  std::uint64_t form_visits_ = 0;
};

}  // namespace frobdisc
