#include <gtest/gtest.h>

#include <random>

#include "metabel/matgroup.hpp"

using namespace metabel;

namespace {

const Ring R2 = Ring::of(2);
const Ring R2t = Ring::of(2, true);

LaurentPoly P(const std::string& s, Ring r = R2) { return LaurentPoly::parse(s, r); }

MatPoly mat(Ring r, const std::vector<std::vector<std::string>>& rows) {
  MatPoly m(r, static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(int(i), int(j)) = P(rows[i][j], r);
  return m;
}

// Word evaluation by folding generator matrices, one letter at a time.
MatPoly fold(const GroupWord& w, int rank, bool with_t) {
  const auto gens = make_generators(rank, with_t);
  const auto invs = make_generator_inverses(rank, with_t);
  MatPoly acc = MatPoly::identity(gens[0].ring(), rank);
  for (const auto& l : w.letters()) {
    const auto& g = l.exponent > 0 ? gens[std::size_t(l.generator - 1)] : invs[std::size_t(l.generator - 1)];
    for (int i = 0; i < std::abs(l.exponent); ++i) acc = acc * g;
  }
  return acc;
}

}  // namespace

TEST(MatGroup, GeneratorMatrices) {
  const auto g = make_generators(2, false);
  EXPECT_EQ(g[0], mat(R2, {{"x + 1 - x", "1 - y"}, {"0", "x"}}));
  EXPECT_EQ(g[1], mat(R2, {{"y", "0"}, {"1 - x", "1"}}));
  const auto gt = make_generators(2, true);
  EXPECT_EQ(gt[1], mat(R2t, {{"y*t", "0"}, {"1 - x*t", "1"}}));
  for (int k = 2; k <= 4; ++k)
    for (bool t : {false, true}) {
      const auto gs = make_generators(k, t);
      const auto is = make_generator_inverses(k, t);
      for (std::size_t j = 0; j < gs.size(); ++j) EXPECT_TRUE((gs[j] * is[j]).is_identity()) << k << " " << j;
    }
}

TEST(MatGroup, TFactorsCommuteInRankThree) {
  const Ring r = Ring::of(3, true);
  const auto one = MatPoly::identity(r, 3);
  const auto tm1 = P("t - 1", r);
  const MatPoly t2 = one + tm1 * t_idempotent(3, 2).with_t();
  const MatPoly t3 = one + tm1 * t_idempotent(3, 3).with_t();
  EXPECT_EQ(t2 * t3, t3 * t2);
  EXPECT_EQ(t_idempotent(3, 2) * t_idempotent(3, 2), t_idempotent(3, 2));
}

TEST(MatGroup, WordParsing) {
  EXPECT_EQ(GroupWord::parse("M1 M2T^-1 M1^2").to_string(), "M1 M2T^-1 M1^2");
  EXPECT_EQ(GroupWord::parse("M2"), GroupWord::parse("M2T"));
  EXPECT_EQ(GroupWord::parse("[M1, M2]"), GroupWord::parse("M1 M2T M1^-1 M2T^-1"));
  EXPECT_EQ(GroupWord::parse("(M1 M2)^2").length(), 4u);
  EXPECT_TRUE(GroupWord::parse("M1 M1^-1").empty());
  EXPECT_EQ(GroupWord::parse("[M1, M2, M2]"),
            GroupWord::commutator(GroupWord::parse("[M1, M2]"), GroupWord::letter(2)));
  EXPECT_THROW(GroupWord::parse("M1 Q"), std::invalid_argument);
}

TEST(MatGroup, EvaluationMatchesLetterFold) {
  WordSampler s(21, 2);
  for (int i = 0; i < 40; ++i) {
    const auto w = s.random_word(8);
    for (bool t : {false, true}) EXPECT_EQ(eval_word(w, 2, t), fold(w, 2, t)) << w.to_string();
  }
  WordSampler s3(22, 3);
  for (int i = 0; i < 10; ++i) {
    const auto w = s3.random_word(6);
    EXPECT_EQ(eval_word(w, 3, true), fold(w, 3, true)) << w.to_string();
  }
}

TEST(MatGroup, NormalFormExamples) {
  const auto m1 = normal_form(eval_word(GroupWord::letter(1), 2, false));
  EXPECT_EQ(m1.unit(), P("x"));
  EXPECT_EQ(m1.lambdas[0], P("1"));
  EXPECT_EQ(m1.lambdas[1], P("0"));

  const auto id = normal_form(MatPoly::identity(R2, 2));
  EXPECT_EQ(id.unit(), P("1"));
  EXPECT_TRUE(id.lambdas[0].is_zero() && id.lambdas[1].is_zero());

  const auto c = normal_form(eval_word(GroupWord::parse("[M2, M1]"), 2, false));
  EXPECT_EQ(c.unit(), P("1"));
  EXPECT_EQ(c.to_matrix(), eval_word(GroupWord::parse("[M2, M1]"), 2, false));

  // a matrix outside F(R)
  EXPECT_THROW(normal_form(mat(R2, {{"1", "1"}, {"0", "1"}})), StructuralError);
}

TEST(MatGroup, FastPowerMatchesRepeatedProduct) {
  const auto nf = normal_form(eval_word(GroupWord::letter(1), 2, false));
  EXPECT_EQ(fast_power(nf, 2).to_matrix(), mat(R2, {{"1", "(1 + x)*(1 - y)"}, {"0", "x^2"}}));
  WordSampler s(23, 2);
  for (int i = 0; i < 20; ++i) {
    const auto w = s.random_word(6);
    const auto m = eval_word(w, 2, false);
    const auto nf2 = normal_form(m);
    for (unsigned n : {1u, 3u, 5u}) EXPECT_EQ(fast_power(nf2, n).to_matrix(), m.pow(n)) << w.to_string();
  }
}

TEST(MatGroup, NormalFormInvariants) {
  for (int rank : {2, 3}) {
    WordSampler s(24 + rank, rank);
    const auto v = augmentation_row(Ring::of(rank));
    for (int i = 0; i < 25; ++i) {
      const auto w = s.random_word(10);
      const auto m = eval_word(w, rank, false);
      const auto nf = normal_form(m);
      EXPECT_EQ(nf.to_matrix(), m);
      // lambda . v = 1 - u
      LaurentPoly dot(Ring::of(rank));
      for (int j = 0; j < rank; ++j) dot += nf.lambdas[std::size_t(j)] * v[std::size_t(j)];
      EXPECT_EQ(dot, LaurentPoly::one(Ring::of(rank)) - nf.unit());
      // N^2 = (1 - u) N
      const auto N = nf.nilpart();
      EXPECT_EQ(N * N, (LaurentPoly::one(Ring::of(rank)) - nf.unit()) * N);
      // v M = v
      for (int c = 0; c < rank; ++c) {
        LaurentPoly e(Ring::of(rank));
        for (int r = 0; r < rank; ++r) e += v[std::size_t(r)] * m(r, c);
        EXPECT_EQ(e, v[std::size_t(c)]);
      }
    }
  }
}

TEST(MatGroup, BasicCommutators) {
  const auto [l1, l2] = basic_commutator_lambda(0, 0);
  const auto nf = normal_form(eval_word(basic_commutator_word(0, 0), 2, false));
  EXPECT_EQ(nf.lambdas[0], l1);
  EXPECT_EQ(nf.lambdas[1], l2);
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      const auto w = basic_commutator_word(a, b);
      EXPECT_EQ(exponent_sums(w).per_generator[1], 0);
      const auto f = normal_form(eval_word(w, 2, false));
      const auto [x1, x2] = basic_commutator_lambda(a, b);
      EXPECT_EQ(f.lambdas[0], x1) << a << "," << b;
      EXPECT_EQ(f.lambdas[1], x2) << a << "," << b;
    }
}

TEST(MatGroup, Determinants) {
  EXPECT_EQ(determinant(eval_word(GroupWord::letter(1), 2, false)), P("x"));
  EXPECT_EQ(determinant(eval_word(GroupWord::letter(2), 2, true)), P("y*t", R2t));
  EXPECT_EQ(determinant(eval_word(GroupWord::parse("[M2, M1]"), 2, true)), P("1", R2t));
  WordSampler s(25, 3);
  for (int i = 0; i < 20; ++i) {
    const auto w = s.random_word(8);
    const auto d = determinant_unit(eval_word(w, 3, true));
    EXPECT_EQ(d.sign, 1);
    EXPECT_EQ(d.monomial[3], determinant_t_exponent(w)) << w.to_string();
  }
}

TEST(MatGroup, SamplerStrata) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto d1 = sample_subgroup_element({StratumKind::Derived, 1}, seed);
    const auto d2 = sample_subgroup_element({StratumKind::Derived, 2}, seed);
    EXPECT_FALSE(d1.empty());
    EXPECT_FALSE(d2.empty());
    for (const auto& w : {d1, d2}) {
      const auto sums = exponent_sums(w);
      for (const auto& [g, e] : sums.per_generator) EXPECT_EQ(e, 0) << w.to_string();
      EXPECT_EQ(sums.t_sum, 0);
    }
    // determinant of a derived element is 1
    EXPECT_TRUE(determinant(eval_word(d2, 2, true)) == P("1", R2t));
    const auto lc = sample_subgroup_element({StratumKind::LowerCentral, 3}, seed);
    EXPECT_FALSE(lc.empty());
  }
  // same seed, same word
  EXPECT_EQ(sample_subgroup_element({StratumKind::Derived, 2}, 7), sample_subgroup_element({StratumKind::Derived, 2}, 7));
}

TEST(MatGroup, SanovImage) {
  const auto m1 = sanov_image(GroupWord::letter(1));
  EXPECT_EQ(m1, (std::array<Integer, 4>{1, 2, 0, 1}));
  const auto m2 = sanov_image(GroupWord::letter(2));
  EXPECT_EQ(m2, (std::array<Integer, 4>{1, 0, 2, 1}));
  EXPECT_EQ(sanov_image(GroupWord{}), (std::array<Integer, 4>{1, 0, 0, 1}));
}
