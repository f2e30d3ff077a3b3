#include <gtest/gtest.h>

#include "metabel/burnside.hpp"

using namespace metabel;

namespace {

GroupWord gw(const std::string& s) { return GroupWord::parse(s); }

Budget budget_for(std::int64_t q) { return Budget::defaults(ExponentSpec::from_q(q)); }

OrderVerdict fs_order(const std::string& w, std::int64_t q) { return order_in_FS(gw(w), q, budget_for(q)); }

}  // namespace

TEST(Burnside, IdentityExamples) {
  const auto m1 = eval_word(gw("M1^3"), 2, false);
  EXPECT_EQ(is_identity_in_FS(m1, 3, budget_for(3)).status, Status::Proved);
  EXPECT_EQ(is_identity_in_FS(eval_word(gw("M1"), 2, false), 3, budget_for(3)).status, Status::Refuted);
  EXPECT_EQ(is_identity_in_FS(MatPoly::identity(Ring::of(2), 2), 5, budget_for(5)).status, Status::Proved);
  // t survives in G
  EXPECT_EQ(is_identity_in_G(eval_word(gw("M2T^3"), 2, true), 3, budget_for(3)).status, Status::Refuted);
}

TEST(Burnside, ClosedFormCertificates) {
  WordSampler ws(41);
  for (std::int64_t q : {2, 3, 4, 5}) {
    for (int i = 0; i < 8; ++i) {
      const auto nf = normal_form(eval_word(ws.random_word(8), 2, false));
      const auto v = power_identity_certificates(nf, q);
      ASSERT_EQ(v.status, Status::Proved);
      for (const auto& e : v.entries) EXPECT_TRUE(e.verdict.certificate->verify(IdealSpec::cyclotomic_times_sigma(q)));
    }
  }
}

TEST(Burnside, OrderExamples) {
  const auto a = fs_order("M1", 3);
  EXPECT_EQ(a.kind, OrderKind::FiniteDividing);
  EXPECT_EQ(a.n, 3);
  EXPECT_TRUE(a.exact);

  // F(S) at q = 2 is abelian, so commutators vanish
  const auto c = fs_order("[M2, M1]", 2);
  EXPECT_EQ(c.kind, OrderKind::FiniteDividing);
  EXPECT_EQ(c.n, 1);

  EXPECT_EQ(fs_order("", 4).n, 1);

  const auto inf = order_in_G(gw("M2T^2"), 3, budget_for(3));
  EXPECT_EQ(inf.kind, OrderKind::Infinite);
  EXPECT_EQ(inf.det_t_exponent, 2);

  const auto conj = order_in_G(gw("M1 M2T M1^-1 M2T^-1"), 3, budget_for(3));
  EXPECT_EQ(conj.kind, OrderKind::FiniteDividing);
  EXPECT_EQ(conj.n, 3);
}

TEST(Burnside, OrdersDivideExponent) {
  for (std::int64_t q : {2, 3, 4}) {
    WordSampler ws(42 + static_cast<std::uint64_t>(q));
    for (int i = 0; i < 6; ++i) {
      const auto w = ws.random_word(6);
      const auto v = order_in_FS(w, q, budget_for(q));
      ASSERT_EQ(v.kind, OrderKind::FiniteDividing) << w.to_string();
      EXPECT_EQ(q % v.n, 0);
      // the order is attained: w^n is the identity, and the power check agrees
      const auto m = eval_word(w.pow(static_cast<int>(v.n)), 2, true).specialize_t_one();
      EXPECT_EQ(is_identity_in_FS(m, q, budget_for(q)).status, Status::Proved) << w.to_string();
    }
  }
}

TEST(Burnside, KernelExamples) {
  const auto k1 = kernel_probe(gw("M1^3"), 3, 4, budget_for(3));
  EXPECT_EQ(k1.status, KernelStatus::InKernel);

  const auto k2 = kernel_probe(gw("M1"), 3, 4, budget_for(3));
  EXPECT_EQ(k2.status, KernelStatus::NotInKernel);
  EXPECT_EQ(k2.decided_at, 2);

  const auto k3 = kernel_probe(gw("M2T^3"), 3, 4, budget_for(3));
  EXPECT_EQ(k3.status, KernelStatus::NotInKernel);
  EXPECT_EQ(k3.decided_at, 1);

  const auto k4 = kernel_probe(gw("M1^2"), 3, 4, budget_for(3));
  EXPECT_EQ(k4.status, KernelStatus::NotInKernel);
}

TEST(Burnside, CorollaryStructure) {
  for (std::int64_t p : {2, 3}) {
    const auto r = corollary_tp_check(p);
    EXPECT_TRUE(r.idempotent);
    EXPECT_EQ(r.base_power.status, Status::Proved);
    EXPECT_TRUE(r.top_term_nonzero);
    ASSERT_EQ(r.coefficients.size(), static_cast<std::size_t>(p + 1));
    // the (t-1)^1 coefficient carries p * (...) whose augmentation is p
    EXPECT_FALSE(r.cross_terms_vanish);
    EXPECT_FALSE(r.identity_holds());
    EXPECT_EQ(augmentation(r.coefficients[1](0, 0)) % p, 0);
    EXPECT_NE(augmentation(r.coefficients[1](0, 0)), 0);
  }
  EXPECT_EQ(corollary_tp_check(2).cross_terms_in_cyclotomic_ideal, Status::Proved);
  EXPECT_EQ(corollary_tp_check(3).cross_terms_in_cyclotomic_ideal, Status::Refuted);
}

TEST(Burnside, CorollaryCoefficientsMatchSeries) {
  // (M2 + (t-1) M2 U)^p is the expansion of (M2T)^p
  for (std::int64_t p : {2, 3, 5}) {
    const auto r = corollary_tp_check(p);
    const auto s = expand(gw("M2T").pow(static_cast<int>(p)), static_cast<int>(p));
    for (int j = 0; j <= p; ++j) EXPECT_EQ(r.coefficients[static_cast<std::size_t>(j)], s[j]) << "p=" << p << " j=" << j;
  }
}
