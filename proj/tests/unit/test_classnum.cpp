#include <gtest/gtest.h>

#include <random>

#include "frobdisc/classnum.hpp"
#include "frobdisc/errors.hpp"
#include "oracle.hpp"

using namespace frobdisc;

TEST(ClassNumber, Examples) {
  EXPECT_EQ(class_number(-3), 1);
  EXPECT_EQ(class_number(-23), 3);
  EXPECT_EQ(class_number(-16), 1);
  EXPECT_EQ(class_number(-12), 1);
  EXPECT_EQ(class_number(-47), 5);
  EXPECT_EQ(class_number(-71), 7);
  EXPECT_EQ(class_number(-163), 1);
  EXPECT_EQ(class_number(-84), 4);
}

TEST(ClassNumber, InvalidDiscriminant) {
  EXPECT_THROW(class_number(-5), ArgumentError);
  EXPECT_THROW(class_number(4), ArgumentError);
  EXPECT_THROW(class_number(0), ArgumentError);
  EXPECT_THROW(unit_count(-6), ArgumentError);
}

TEST(ClassNumber, Units) {
  EXPECT_EQ(unit_count(-3), 6);
  EXPECT_EQ(unit_count(-4), 4);
  EXPECT_EQ(unit_count(-19), 2);
  EXPECT_EQ(unit_count(-12), 2);
  const FormClassResult r = form_class(-23);
  EXPECT_EQ(r.h, 3);
  EXPECT_EQ(r.w, 2);
}

TEST(KroneckerH, Examples) {
  EXPECT_EQ(kronecker_H(-19), ExactRational(1, 2));
  EXPECT_EQ(kronecker_H(-16), ExactRational(3, 4));
  EXPECT_EQ(kronecker_H(-3), ExactRational(1, 6));
  EXPECT_EQ(kronecker_H(-4), ExactRational(1, 4));
  EXPECT_EQ(kronecker_H(-12), ExactRational(2, 3));
  EXPECT_EQ(kronecker_H(-6), ExactRational(0));
  EXPECT_EQ(kronecker_H(-5), ExactRational(0));
}

TEST(ClassTable, SmallTable) {
  const ClassTable t(25);
  for (std::int64_t D : {-3, -4, -7, -8, -11, -16, -19}) EXPECT_EQ(t.class_number(D), 1) << D;
  for (std::int64_t D : {-15, -20, -23, -24}) EXPECT_EQ(t.class_number(D), 2 + (D == -23)) << D;
  EXPECT_THROW(t.class_number(-27), ArgumentError);
  EXPECT_THROW(t.class_number(-5), ArgumentError);
  EXPECT_TRUE(t.covers(-25));
  EXPECT_FALSE(t.covers(-26));
}

TEST(ClassTable, Tiny) {
  const ClassTable t(3);
  EXPECT_EQ(t.class_number(-3), 1);
}

TEST(ClassTable, AgreesWithFormEnumeration) {
  const ClassTable t(6000);
  for (std::int64_t D = -3; D >= -6000; --D) {
    if (!is_negative_discriminant(D)) continue;
    ASSERT_EQ(t.class_number(D), oracle::class_number(D)) << D;
  }
}

TEST(ClassTable, LargeSpotCheck) {
  const ClassTable t(400000);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> dist(3, 400000);
  int checked = 0;
  while (checked < 100) {
    const std::int64_t D = -dist(rng);
    if (!is_negative_discriminant(D)) continue;
    ASSERT_EQ(t.class_number(D), class_number(D)) << D;
    ++checked;
  }
  EXPECT_LE(t.form_visits(), static_cast<std::uint64_t>(2 * 400000.0 * std::sqrt(400000.0)));
}

TEST(ClassTable, BudgetExceeded) { EXPECT_THROW(ClassTable(kMaxClassTableLimit + 1), ResourceError); }
