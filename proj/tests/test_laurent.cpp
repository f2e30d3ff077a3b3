#include <gtest/gtest.h>

#include <map>
#include <random>

#include "metabel/cyclotomic.hpp"
#include "metabel/laurent.hpp"

using namespace metabel;

namespace {

const Ring R2 = Ring::of(2);
const Ring R2t = Ring::of(2, true);

LaurentPoly P(const std::string& s, Ring r = R2) { return LaurentPoly::parse(s, r); }

// Random Laurent polynomial with exponents in [-span, span].
LaurentPoly random_poly(std::mt19937_64& rng, Ring ring, int max_terms = 6, int span = 3, bool big = false) {
  std::vector<LaurentPoly::Term> terms;
  const int n = static_cast<int>(rng() % static_cast<unsigned>(max_terms + 1));
  for (int i = 0; i < n; ++i) {
    Monomial m(ring.variable_count());
    for (int v = 0; v < ring.variable_count(); ++v)
      m.set(v, static_cast<int>(rng() % static_cast<unsigned>(2 * span + 1)) - span);
    Integer c = static_cast<long long>(rng() % 11) - 5;
    if (big) c *= Integer(1) << (60 + rng() % 20);
    terms.emplace_back(m, c);
  }
  return LaurentPoly::from_terms(ring, std::move(terms));
}

// Schoolbook product through an ordered map, independent of the library's
// multiplication paths.
LaurentPoly naive_product(const LaurentPoly& a, const LaurentPoly& b) {
  std::map<Monomial, Integer> acc;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) acc[ma * mb] += ca * cb;
  std::vector<LaurentPoly::Term> terms;
  for (auto& [m, c] : acc)
    if (c != 0) terms.emplace_back(m, c);
  return LaurentPoly::from_terms(a.ring(), std::move(terms));
}

Integer falling(int m, int k) {
  Integer r = 1;
  for (int i = 0; i < k; ++i) r *= m - i;
  return r;
}

// Taylor oracle: a is in Sigma^c iff every partial derivative of order < c
// vanishes at the all-ones point.
int sigma_degree_by_derivatives(const LaurentPoly& a, int limit) {
  if (a.is_zero()) return kInfiniteDegree;
  const int k = a.ring().variable_count();
  for (int d = 0; d <= limit; ++d)
    for (const auto& alpha : exponent_vectors_of_degree(k, d)) {
      Integer total = 0;
      for (const auto& [m, c] : a.terms()) {
        Integer term = c;
        for (int i = 0; i < k; ++i) term *= falling(m[i], alpha[static_cast<std::size_t>(i)]);
        total += term;
      }
      if (total != 0) return d;
    }
  return limit + 1;
}

}  // namespace

TEST(Laurent, ArithmeticExamples) {
  EXPECT_EQ(P("1 - x") + P("1 + x"), P("2"));
  EXPECT_EQ(P("1 - x") * P("1 + x + x^2"), P("1 - x^3"));
  EXPECT_EQ(P("1 - x") * P("1 - y"), P("1 - x - y + x*y"));
  EXPECT_EQ((P("1 - x") * P("1 - y")).size(), 4u);
  EXPECT_EQ(poly_arith(P("1 - x"), P("1 + x"), ArithOp::Sub), P("-2*x"));
}

TEST(Laurent, PowerExamples) {
  EXPECT_EQ(poly_pow(P("1 - x"), 0), P("1"));
  EXPECT_EQ(poly_pow(P("1 - x"), 2), P("1 - 2*x + x^2"));
  EXPECT_EQ(P("x^-1") * P("x"), P("1"));
}

TEST(Laurent, AugmentationExamples) {
  EXPECT_EQ(augmentation(P("1 - x")), 0);
  EXPECT_EQ(augmentation(P("1 + x + x^2")), 3);
  EXPECT_EQ(augmentation(P("x^-1*y - 1")), 0);
}

TEST(Laurent, SigmaDegreeExamples) {
  EXPECT_EQ(sigma_degree(P("0")), kInfiniteDegree);
  EXPECT_EQ(sigma_degree(P("1 - x")), 1);
  EXPECT_EQ(sigma_degree(P("(1 - x)^2 * (1 - y)")), 3);
  EXPECT_EQ(sigma_degree(P("x^-3 * (1 - x)^2")), 2);
  EXPECT_EQ(sigma_degree(P("2")), 0);
}

TEST(Laurent, EvaluateExamples) {
  const std::array<Integer, 2> ones{1, 1};
  EXPECT_EQ(evaluate_hom(P("1 - x"), ones), 0);
  const std::array<Integer, 2> minus{-1, 1};
  EXPECT_EQ(evaluate_hom(P("1 + x"), minus), 0);
  const std::array<int, 2> e{1, 0};
  const auto img = evaluate_at_roots(P("1 - x"), 3, e);
  ASSERT_EQ(img.coefficients().size(), 2u);
  EXPECT_EQ(img.coefficients()[0], 1);
  EXPECT_EQ(img.coefficients()[1], -1);
}

TEST(Laurent, TCoefficientExamples) {
  auto c = t_coefficients(P("t*(1 - x) + (1 - y)", R2t));
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.at(1), P("1 - x"));
  EXPECT_EQ(c.at(0), P("1 - y"));
  EXPECT_TRUE(t_coefficients(LaurentPoly(R2t)).empty());
  auto d = t_coefficients(P("(t - 1)^2", R2t));
  EXPECT_EQ(d.at(2), P("1"));
  EXPECT_EQ(d.at(1), P("-2"));
  EXPECT_EQ(d.at(0), P("1"));
}

TEST(Laurent, ParsePrintRoundTrip) {
  const LaurentPoly a = P("3*x^-2*y*t^4 - 7 + x*t^-1", R2t);
  EXPECT_EQ(P(a.to_string(), R2t), a);
  const LaurentPoly b = P("x1^2 - x3*t^-1", Ring::of(3, true));
  EXPECT_EQ(P(b.to_string(), Ring::of(3, true)), b);
  EXPECT_THROW(P("1 + z"), RingMismatch);
  EXPECT_THROW(P("1 - t"), RingMismatch);
}

TEST(Laurent, RingMismatchRejected) {
  EXPECT_THROW(P("x") + P("t", R2t), RingMismatch);
  EXPECT_THROW(P("x") * P("x1", Ring::of(3)), RingMismatch);
}

TEST(Laurent, CanonicalForm) {
  const LaurentPoly a = P("x + y - x - y");
  EXPECT_TRUE(a.is_zero());
  const LaurentPoly b = P("2*x + 3*x");
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b.terms()[0].second, 5);
}

TEST(LaurentProperty, RingAxioms) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const Ring ring = i % 2 ? R2 : R2t;
    const bool big = i % 5 == 0;
    const auto a = random_poly(rng, ring, 6, 3, big);
    const auto b = random_poly(rng, ring, 6, 3, big);
    const auto c = random_poly(rng, ring, 6, 3, big);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b - b, a);
    EXPECT_EQ(a * b, naive_product(a, b));
  }
}

TEST(LaurentProperty, LargeDenseProductsMatchSchoolbook) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 12; ++round) {
    // dense, many terms, wide coefficients: exercises every multiplication path
    const int bits = std::array{4, 30, 50, 61, 70, 120}[static_cast<std::size_t>(round % 6)];
    std::vector<LaurentPoly::Term> ta, tb;
    for (int i = -6; i <= 6; ++i)
      for (int j = -4; j <= 5; ++j)
        for (int k = -2; k <= 2; ++k) {
          Integer ca = (Integer(1) << bits) - static_cast<long long>(rng() % 1000);
          Integer cb = static_cast<long long>(rng() % 2001) - 1000;
          if (rng() % 3 == 0) ca = -ca;
          if (round % 2) cb *= Integer(1) << bits;
          ta.emplace_back(Monomial{i, j, k}, ca);
          if (rng() % 2) tb.emplace_back(Monomial{j, i, k}, cb);
        }
    const auto a = LaurentPoly::from_terms(R2t, ta);
    const auto b = LaurentPoly::from_terms(R2t, tb);
    EXPECT_EQ(a * b, naive_product(a, b)) << "bits " << bits;
  }
}

TEST(LaurentProperty, AugmentationIsMultiplicative) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_poly(rng, R2t);
    const auto b = random_poly(rng, R2t);
    EXPECT_EQ(augmentation(a * b), augmentation(a) * augmentation(b));
    EXPECT_EQ(augmentation(a + b), augmentation(a) + augmentation(b));
  }
}

TEST(LaurentProperty, SigmaDegreeMatchesDerivativeOracle) {
  std::mt19937_64 rng(13);
  const auto s1 = P("1 - x"), s2 = P("1 - y");
  for (int i = 0; i < 200; ++i) {
    // build something with a known minimum degree, then perturb
    LaurentPoly a = random_poly(rng, R2, 4, 2);
    const int extra = static_cast<int>(rng() % 4);
    for (int j = 0; j < extra; ++j) a *= (rng() % 2 ? s1 : s2);
    const int d = sigma_degree(a);
    const int oracle = sigma_degree_by_derivatives(a, 8);
    if (oracle <= 8) EXPECT_EQ(d, oracle) << a.to_string();
    else EXPECT_GT(d, 8);
  }
}

TEST(LaurentProperty, SigmaDegreeLaws) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 200; ++i) {
    LaurentPoly a = random_poly(rng, R2, 4, 2) * poly_pow(P("1 - x"), static_cast<unsigned>(rng() % 3));
    LaurentPoly b = random_poly(rng, R2, 4, 2) * poly_pow(P("1 - y"), static_cast<unsigned>(rng() % 3));
    if (a.is_zero() || b.is_zero()) continue;
    const int da = sigma_degree(a), db = sigma_degree(b);
    EXPECT_GE(sigma_degree(a * b), da + db);
    EXPECT_GE(sigma_degree(a + b), std::min(da, db));
    Monomial u{static_cast<int>(rng() % 7) - 3, static_cast<int>(rng() % 7) - 3};
    EXPECT_EQ(sigma_degree(a.shifted(u)), da);
  }
}

TEST(LaurentProperty, EvaluationCommutesWithArithmetic) {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_poly(rng, R2t);
    const auto b = random_poly(rng, R2t);
    const std::array<Integer, 3> ints{rng() % 2 ? 1 : -1, rng() % 2 ? 1 : -1, rng() % 2 ? 1 : -1};
    EXPECT_EQ(evaluate_hom(a * b, ints), evaluate_hom(a, ints) * evaluate_hom(b, ints));
    EXPECT_EQ(evaluate_hom(a - b, ints), evaluate_hom(a, ints) - evaluate_hom(b, ints));
    for (std::int64_t n : {3, 4, 5, 9}) {
      const std::array<int, 3> e{static_cast<int>(rng() % n), static_cast<int>(rng() % n),
                                 static_cast<int>(rng() % n)};
      EXPECT_EQ(evaluate_at_roots(a * b, n, e), evaluate_at_roots(a, n, e) * evaluate_at_roots(b, n, e));
      EXPECT_EQ(evaluate_at_roots(a + b, n, e), evaluate_at_roots(a, n, e) + evaluate_at_roots(b, n, e));
    }
  }
}

TEST(Laurent, SigmaPowerDecompositionReconstructs) {
  std::mt19937_64 rng(16);
  for (int i = 0; i < 50; ++i) {
    const LaurentPoly a = random_poly(rng, R2, 3, 2) * P("(1 - x)*(1 - y)") + P("(1-y)^2") * random_poly(rng, R2, 3, 2);
    const auto parts = sigma_power_decomposition(a, 2);
    LaurentPoly sum(R2);
    for (const auto& [alpha, h] : parts) sum += h * sigma_monomial(R2, alpha);
    EXPECT_EQ(sum, a);
  }
  EXPECT_THROW(sigma_power_decomposition(P("1 - x"), 2), std::invalid_argument);
}

TEST(Laurent, DivideOneMinus) {
  EXPECT_EQ(*divide_one_minus(P("1 - x^3"), 0), P("1 + x + x^2"));
  EXPECT_EQ(*divide_one_minus(P("x^-2 - x^-1"), 0), P("x^-2"));
  EXPECT_FALSE(divide_one_minus(P("1 + x"), 0).has_value());
}

TEST(Laurent, ExponentSpec) {
  const auto s = ExponentSpec::from_q(125);
  EXPECT_EQ(s.p, 5);
  EXPECT_EQ(s.e, 3);
  EXPECT_EQ(s.phi, 100);
  EXPECT_EQ(s.ephi, 300);
  EXPECT_EQ(ExponentSpec::from_q(4).ephi, 4);
  EXPECT_THROW(ExponentSpec::from_q(6), std::invalid_argument);
  EXPECT_THROW(ExponentSpec::from_q(1), std::invalid_argument);
}

TEST(Laurent, Binomial) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(-1, 3), -1);
  EXPECT_EQ(binomial(-2, 2), 3);
  EXPECT_EQ(binomial(3, 5), 0);
}
