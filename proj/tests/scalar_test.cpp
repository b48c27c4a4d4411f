#include <ainf/scalar.hpp>

#include <gtest/gtest.h>

using namespace ainf;

TEST(Scalar, RationalsStayReduced) {
  Field q = Field::rationals();
  Scalar a = Scalar::parse(q, "6/-4");
  EXPECT_EQ(a.to_string(), "-3/2");
  EXPECT_EQ((a + Scalar(q, 2L)).to_string(), "1/2");
  EXPECT_EQ((a * a).to_string(), "9/4");
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(a.inverse().to_string(), "-2/3");
}

TEST(Scalar, PrimeFieldResidues) {
  Field f = Field::prime(7);
  EXPECT_EQ(Scalar(f, -1L).to_string(), "6");
  EXPECT_EQ(Scalar::parse(f, "1/3").to_string(), "5");
  for (long v = 1; v < 7; ++v) EXPECT_TRUE((Scalar(f, v) * Scalar(f, v).inverse()).is_one());
  EXPECT_EQ(Field::parse("GF(7)"), f);
  EXPECT_EQ(f.to_string(), "GF(7)");
}

TEST(Scalar, LargePrimeAgreesWithGmp) {
  const std::uint64_t p = 4294967291ULL;  // largest prime below 2^32
  Field f = Field::prime(p);
  mpz_class P(static_cast<unsigned long>(p));
  std::uint64_t x = 4000000000ULL, y = 3999999999ULL;
  Scalar a(f, static_cast<long>(x)), b(f, static_cast<long>(y));
  mpz_class expect = (mpz_class(static_cast<unsigned long>(x)) * mpz_class(static_cast<unsigned long>(y))) % P;
  EXPECT_EQ((a * b).residue(), expect.get_ui());
  EXPECT_TRUE((a * a.inverse()).is_one());
}

TEST(Scalar, Errors) {
  EXPECT_THROW(Field::prime(9), DomainError);
  EXPECT_THROW(Field::prime(4294967311ULL), DomainError);
  EXPECT_THROW(Field::parse("R"), DomainError);
  EXPECT_THROW(Scalar::parse(Field::rationals(), "x"), DomainError);
  EXPECT_THROW(Scalar::parse(Field::prime(5), "1/5"), DomainError);
  EXPECT_THROW(Scalar(Field::rationals(), 1L) + Scalar(Field::prime(3), 1L), DomainError);
  EXPECT_THROW(Scalar::zero(Field::rationals()).inverse(), DomainError);
}
