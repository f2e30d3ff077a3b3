#include <gtest/gtest.h>

#include "metabel/series.hpp"

using namespace metabel;

namespace {

const Ring R2 = Ring::of(2);

LaurentPoly P(const std::string& s, Ring r = R2) { return LaurentPoly::parse(s, r); }

// A_i read off the exact matrix: t^m = (1 + (t-1))^m contributes
// binomial(m, i) to order i, for negative m as well.
MatPoly coefficient_by_binomials(const MatPoly& exact, int i) {
  const Ring base = exact.ring().without_t();
  MatPoly out(base, exact.dim());
  for (int r = 0; r < exact.dim(); ++r)
    for (int c = 0; c < exact.dim(); ++c)
      for (const auto& [m, coeff] : t_coefficients(exact(r, c)))
        out(r, c) += LaurentPoly::constant(base, binomial(Integer(m), i)) * coeff;
  return out;
}

GroupWord gw(const std::string& s) { return GroupWord::parse(s); }

}  // namespace

TEST(Series, GeneratorExpansion) {
  const auto s = expand(gw("M2T"), 3);
  ASSERT_EQ(s.trunc(), 3);
  EXPECT_EQ(s[0], base_generator(2, 2));
  EXPECT_EQ(s[1], base_generator(2, 2) * t_idempotent(2, 2));
  EXPECT_TRUE(s[2].is_zero());
  EXPECT_TRUE(s[3].is_zero());

  // T^-1 = I + (t^-1 - 1) U, and t^-1 - 1 = -(t-1) + (t-1)^2 - ...
  const auto inv = expand(gw("M2T^-1"), 2);
  const MatPoly u = t_idempotent(2, 2);
  const MatPoly m2i = base_generator_inverse(2, 2);
  EXPECT_EQ(inv[0], m2i);
  EXPECT_EQ(inv[1], P("-1") * (u * m2i));
  EXPECT_EQ(inv[2], u * m2i);

  EXPECT_TRUE(expand(GroupWord{}, 4).is_identity());
}

TEST(Series, CoefficientsMatchBinomialOracle) {
  WordSampler ws(31);
  for (int n = 0; n < 30; ++n) {
    const auto w = ws.random_word(10);
    const auto s = expand(w, 5);
    const auto exact = eval_word(w, 2, true);
    for (int i = 0; i <= 5; ++i) EXPECT_EQ(s[i], coefficient_by_binomials(exact, i)) << w.to_string() << " i=" << i;
  }
  WordSampler ws3(32, 3);
  for (int n = 0; n < 6; ++n) {
    const auto w = ws3.random_word(6);
    const auto s = expand(w, 3, 3);
    const auto exact = eval_word(w, 3, true);
    for (int i = 0; i <= 3; ++i) EXPECT_EQ(s[i], coefficient_by_binomials(exact, i)) << w.to_string();
  }
}

TEST(Series, ProductIsHomomorphic) {
  WordSampler ws(33);
  for (int n = 0; n < 20; ++n) {
    const auto a = ws.random_word(6);
    const auto b = ws.random_word(6);
    EXPECT_EQ(expand(a, 4) * expand(b, 4), expand(a * b, 4));
    EXPECT_TRUE((expand(a, 4) * expand(a.inverse(), 4)).is_identity());
    EXPECT_EQ((expand(a, 5)).truncated(3), expand(a, 3));
  }
}

TEST(Series, ConstantTermIsTAtOne) {
  WordSampler ws(34);
  for (int n = 0; n < 20; ++n) {
    const auto w = ws.random_word(10);
    EXPECT_EQ(expand(w, 2)[0], eval_word(w, 2, true).specialize_t_one());
  }
}

TEST(Series, MinOrderAndFloors) {
  EXPECT_THROW(min_order(expand(gw("M1"), 3)), std::invalid_argument);
  EXPECT_EQ(min_order(expand(GroupWord{}, 3)), std::nullopt);

  // second derived words die at t = 1
  WordSampler ws(35);
  int seen = 0;
  for (int n = 0; n < 20; ++n) {
    const auto w = ws.derived(2);
    const auto s = expand(w, 4);
    ASSERT_TRUE(s[0].is_identity()) << w.to_string();
    const auto floors = coeff_sigma_floor(s);
    EXPECT_EQ(floors.count(0), 0u);
    const auto d = min_order(s);
    if (!d) continue;
    ++seen;
    EXPECT_EQ(floors.begin()->first, *d);
    for (int i = 1; i < *d; ++i) EXPECT_TRUE(s[i].is_zero());
    for (const auto& [order, f] : floors) EXPECT_GE(f, 2) << w.to_string() << " order " << order;
  }
  EXPECT_GT(seen, 0);
}

TEST(Series, FloorOracleAgreesWithSigmaDegree) {
  WordSampler ws(36);
  for (int n = 0; n < 10; ++n) {
    const auto s = expand(ws.derived(1), 3);
    for (const auto& [order, f] : coeff_sigma_floor(s)) {
      const MatPoly a = order == 0 ? s[0] - MatPoly::identity(s.ring(), 2) : s[order];
      int low = kInfiniteDegree;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) low = std::min(low, sigma_degree(a(r, c)));
      EXPECT_EQ(f, low);
    }
  }
}
