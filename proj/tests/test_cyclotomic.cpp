#include <gtest/gtest.h>

#include <complex>
#include <numbers>
#include <random>

#include "metabel/cyclotomic.hpp"

using namespace metabel;

namespace {

std::vector<Integer> ints(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

std::complex<double> numeric(const CyclotomicInteger& z, double angle) {
  std::complex<double> s = 0;
  const auto& c = z.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) s += c[i].convert_to<double>() * std::polar(1.0, angle * static_cast<double>(i));
  return s;
}

}  // namespace

TEST(Cyclotomic, KnownPolynomials) {
  EXPECT_EQ(cyclotomic_polynomial(1), ints({-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(2), ints({1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(3), ints({1, 1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(4), ints({1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(6), ints({1, -1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(8), ints({1, 0, 0, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(9), ints({1, 0, 0, 1, 0, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(12), ints({1, 0, -1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(125).size(), 101u);
}

TEST(Cyclotomic, ReductionMatchesComplexEvaluation) {
  std::mt19937_64 rng(3);
  for (std::int64_t n : {3, 4, 5, 8, 9, 25, 27}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Integer> poly;
      for (int i = 0; i < 40; ++i) poly.emplace_back(static_cast<long long>(rng() % 7) - 3);
      const auto z = CyclotomicInteger::from_polynomial(n, poly);
      const double angle = 2 * std::numbers::pi / static_cast<double>(n);
      std::complex<double> direct = 0;
      for (std::size_t i = 0; i < poly.size(); ++i)
        direct += poly[i].convert_to<double>() * std::polar(1.0, angle * static_cast<double>(i));
      EXPECT_NEAR(std::abs(numeric(z, angle) - direct), 0.0, 1e-7) << "n = " << n;
    }
  }
}

TEST(Cyclotomic, RootPowers) {
  const auto w = CyclotomicInteger::root_power(3, 1);
  EXPECT_EQ(w * w * w, CyclotomicInteger(3, 1));
  EXPECT_EQ(CyclotomicInteger::root_power(3, -1), w * w);
  EXPECT_EQ(CyclotomicInteger::root_power(5, 7), CyclotomicInteger::root_power(5, 2));
  // 1 + w + w^2 = 0
  EXPECT_TRUE((CyclotomicInteger(3, 1) + w + w * w).is_zero());
}

TEST(Cyclotomic, NormOfOneMinusRoot) {
  for (std::int64_t q : {2, 3, 4, 5, 7, 8, 9, 25}) {
    const auto z = CyclotomicInteger(q, 1) - CyclotomicInteger::root_power(q, 1);
    const auto pe = prime_power_decomposition(q);
    EXPECT_EQ(z.norm(), pe->first) << "q = " << q;
  }
}

TEST(Cyclotomic, DivisibilityAndUnits) {
  const auto w = CyclotomicInteger::root_power(3, 1);
  const auto z = CyclotomicInteger(3, 1) - w;
  EXPECT_FALSE(z.divisible_by(3));
  const auto three = z * z * (CyclotomicInteger(3, 1) + w);  // (1-w)^2 (1+w) = -3w... up to a unit
  EXPECT_TRUE(three.divisible_by(3));
  const auto u = CyclotomicInteger(5, 1) + CyclotomicInteger::root_power(5, 1);
  EXPECT_EQ(u * u.inverse(), CyclotomicInteger(5, 1));
  EXPECT_THROW(z.inverse(), std::exception);
}

TEST(Cyclotomic, GaloisIsARingMap) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Integer> pa, pb;
    for (int i = 0; i < 8; ++i) {
      pa.emplace_back(static_cast<long long>(rng() % 9) - 4);
      pb.emplace_back(static_cast<long long>(rng() % 9) - 4);
    }
    const auto a = CyclotomicInteger::from_polynomial(9, pa);
    const auto b = CyclotomicInteger::from_polynomial(9, pb);
    for (std::int64_t j : {2, 4, 5, 7, 8}) {
      EXPECT_EQ((a * b).galois(j), a.galois(j) * b.galois(j));
      EXPECT_EQ((a + b).galois(j), a.galois(j) + b.galois(j));
    }
  }
}

TEST(Cyclotomic, IntegerEvaluationRejectsNonUnits) {
  const auto a = LaurentPoly::parse("1 + x", Ring::of(1));
  const std::array<Integer, 1> two{2};
  EXPECT_THROW(evaluate_hom(a, two), std::invalid_argument);
}
