#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <set>
#include <random>

#include "metabel/ideal.hpp"
#include "metabel/lattice.hpp"

using namespace metabel;

namespace {

const Ring R1 = Ring::of(1);
const Ring R2 = Ring::of(2);

LaurentPoly P(const std::string& s, Ring r = R2) { return LaurentPoly::parse(s, r); }

LaurentPoly random_unit_multiple(std::mt19937_64& rng, Ring ring) {
  Monomial m(ring.variable_count());
  for (int v = 0; v < ring.variable_count(); ++v) m.set(v, static_cast<int>(rng() % 5) - 2);
  const Integer c = (rng() % 2) ? 1 : -1;
  return LaurentPoly::monomial(ring, m, c);
}

LaurentPoly small_poly(std::mt19937_64& rng, Ring ring) {
  std::vector<LaurentPoly::Term> terms;
  const int n = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < n; ++i) {
    Monomial m(ring.variable_count());
    for (int v = 0; v < ring.variable_count(); ++v) m.set(v, static_cast<int>(rng() % 3) - 1);
    terms.emplace_back(m, Integer(static_cast<long long>(rng() % 5) - 2));
  }
  return LaurentPoly::from_terms(ring, std::move(terms));
}

// A random element of the ideal, built directly from its generators.
LaurentPoly random_member(std::mt19937_64& rng, const IdealSpec& spec, int parts = 2) {
  const auto gens = generators(spec);
  LaurentPoly acc(spec.ring());
  for (int i = 0; i < parts; ++i) acc += gens[rng() % gens.size()] * small_poly(rng, spec.ring());
  return acc;
}

bool contains(const std::vector<LaurentPoly>& v, const LaurentPoly& p) {
  return std::find(v.begin(), v.end(), p) != v.end();
}

}  // namespace

TEST(Lattice, SolvesKnownCombinations) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    LatticeSolver solver;
    std::vector<SparseVector> gens;
    for (int g = 0; g < 4; ++g) {
      SparseVector v;
      for (std::uint32_t i = 0; i < 4; ++i) v.emplace_back(i, Integer(static_cast<long long>(rng() % 13) - 6));
      normalize(v);
      gens.push_back(v);
      solver.add_generator(v);
    }
    SparseVector target;
    for (const auto& g : gens) axpy(target, Integer(static_cast<long long>(rng() % 7) - 3), g);
    const auto sol = solver.solve(target);
    ASSERT_TRUE(sol.has_value());
    SparseVector back;
    for (const auto& [id, c] : *sol) axpy(back, c, gens[id]);
    EXPECT_EQ(back, target);
  }
}

TEST(Lattice, RejectsNonMembers) {
  LatticeSolver solver;
  solver.add_generator({{0, 2}, {1, 1}});
  solver.add_generator({{0, 4}, {2, 3}});
  EXPECT_FALSE(solver.solve({{0, 1}}).has_value());
  EXPECT_TRUE(solver.solve({{0, 2}, {1, 1}}).has_value());
  EXPECT_TRUE(solver.solve({}).has_value());
  EXPECT_EQ(solver.rank(), 2u);
}

TEST(Lattice, ModularSolverMatchesBruteForce) {
  // Over Z/4 in two coordinates every combination is enumerable.
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    ModularLatticeSolver solver(2, 2);
    std::vector<std::array<std::int64_t, 2>> gens;
    for (int g = 0; g < 2; ++g) {
      std::array<std::int64_t, 2> v{static_cast<std::int64_t>(rng() % 4), static_cast<std::int64_t>(rng() % 4)};
      gens.push_back(v);
      ModularLatticeSolver::Vector sv;
      for (std::uint32_t i = 0; i < 2; ++i)
        if (v[i] != 0) sv.emplace_back(i, v[i]);
      solver.add_generator(sv);
    }
    std::set<std::pair<std::int64_t, std::int64_t>> reachable;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        reachable.insert({(a * gens[0][0] + b * gens[1][0]) % 4, (a * gens[0][1] + b * gens[1][1]) % 4});
    for (std::int64_t x = 0; x < 4; ++x)
      for (std::int64_t y = 0; y < 4; ++y) {
        ModularLatticeSolver::Vector t;
        if (x) t.emplace_back(0, x);
        if (y) t.emplace_back(1, y);
        EXPECT_EQ(solver.solve(t).has_value(), reachable.count({x, y}) == 1) << x << "," << y;
      }
  }
}

TEST(Ideal, GeneratorExamples) {
  const auto sigma = generators(IdealSpec::sigma_power(1));
  EXPECT_TRUE(contains(sigma, P("1 - x")));
  EXPECT_TRUE(contains(sigma, P("1 - y")));

  const auto c2 = generators(IdealSpec::cyclotomic(2, 1, 1));
  EXPECT_TRUE(contains(c2, P("2", R1)));
  EXPECT_TRUE(contains(c2, P("1 + x", R1)));
  EXPECT_TRUE(contains(c2, P("1 + x^-1", R1)));

  EXPECT_TRUE(contains(generators(IdealSpec::cyclotomic(3)), P("1 + x + x^2")));
  EXPECT_EQ(cyclotomic_generator(R2, std::vector<int>{1, 1}, 3), P("1 + x*y + x^2*y^2"));
}

TEST(Ideal, UnitWindowOrder) {
  const auto w = unit_window(1, 2);
  ASSERT_EQ(w.size(), 5u);
  EXPECT_EQ(w[0], std::vector<int>{0});
  EXPECT_EQ(w[1], std::vector<int>{1});
  EXPECT_EQ(w[2], std::vector<int>{-1});
  EXPECT_EQ(unit_window(2, 1).size(), 9u);
}

TEST(Ideal, CertificateExamples) {
  const auto spec2 = IdealSpec::cyclotomic(2);
  // 1 - x = 2 - (1 + x)
  const auto v = find_certificate(P("1 - x"), spec2, 2);
  ASSERT_EQ(v.status, Status::Proved);
  EXPECT_TRUE(v.certificate->verify(spec2));

  const auto spec3 = IdealSpec::cyclotomic(3);
  const auto w = find_certificate(P("(1 - x)^2"), spec3, 2);
  ASSERT_EQ(w.status, Status::Proved);
  EXPECT_EQ(w.certificate->expand(), P("(1 - x)^2"));

  const auto z = find_certificate(LaurentPoly(R2), spec3, 1);
  EXPECT_EQ(z.status, Status::Proved);
}

TEST(Ideal, ObstructionExamples) {
  const auto o1 = find_obstruction(P("1 - x"), IdealSpec::cyclotomic(3));
  ASSERT_EQ(o1.status, Status::Refuted);
  EXPECT_TRUE(o1.obstruction->verify(IdealSpec::cyclotomic(3)));

  const auto o2 = find_obstruction(P("1"), IdealSpec::cyclotomic_times_sigma(4));
  ASSERT_EQ(o2.status, Status::Refuted);
  EXPECT_EQ(o2.obstruction->kind, ObstructionKind::Augmentation);

  const auto spec = IdealSpec::cyclotomic_times_sigma(3);
  const auto o3 = find_obstruction(P("x - 1"), spec);
  ASSERT_EQ(o3.status, Status::Refuted);
  EXPECT_TRUE(o3.obstruction->verify(spec));
}

TEST(Ideal, DecideExamples) {
  auto run = [](const std::string& t, std::int64_t q) {
    const auto spec = IdealSpec::cyclotomic(q);
    return decide(P(t), spec, Budget::defaults(spec.exps));
  };
  const auto a = run("(1 - x)*(1 - y)", 3);
  ASSERT_EQ(a.status, Status::Proved);
  EXPECT_TRUE(a.certificate->verify(IdealSpec::cyclotomic(3)));
  EXPECT_EQ(run("2*(1 - x)^3", 4).status, Status::Proved);
  const auto c = run("(1 - x)^3", 5);
  ASSERT_EQ(c.status, Status::Refuted);
  EXPECT_TRUE(c.obstruction->verify(IdealSpec::cyclotomic(5)));
}

TEST(Ideal, SigmaPowerDecideMatchesSigmaDegree) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const LaurentPoly a = small_poly(rng, R2) * small_poly(rng, R2);
    const int deg = sigma_degree(a);
    for (int m = 1; m <= 3; ++m) {
      const auto spec = IdealSpec::sigma_power(m);
      const auto v = decide(a, spec, Budget{});
      if (deg >= m) {
        EXPECT_EQ(v.status, Status::Proved) << a.to_string() << " m=" << m;
      } else {
        EXPECT_EQ(v.status, Status::Refuted) << a.to_string() << " m=" << m;
      }
    }
  }
}

// Members of the ideal are never refuted, and every verdict carries evidence
// that re-verifies.
TEST(Ideal, VerdictsAreSoundOnMembers) {
  std::mt19937_64 rng(14);
  for (std::int64_t q : {2, 3, 4, 5, 7}) {
    for (auto spec : {IdealSpec::cyclotomic(q, 2, 2), IdealSpec::cyclotomic_times_sigma(q, 2, 2)}) {
      for (int trial = 0; trial < 6; ++trial) {
        const LaurentPoly t = random_member(rng, spec);
        const auto o = find_obstruction(t, spec);
        EXPECT_NE(o.status, Status::Refuted) << spec.kind_name() << " q=" << q << " " << t.to_string();
        if (q > 4) continue;
        const auto v = find_certificate(t, spec.with_window(1), 1);
        if (v.status == Status::Proved) {
          EXPECT_TRUE(v.certificate->verify(spec));
          EXPECT_EQ(v.certificate->expand(), t);
        }
      }
    }
  }
}

TEST(Ideal, ObstructionsVerifyOnRandomTargets) {
  std::mt19937_64 rng(15);
  for (std::int64_t q : {2, 3, 4, 5}) {
    const auto spec = IdealSpec::cyclotomic_times_sigma(q);
    for (int trial = 0; trial < 15; ++trial) {
      const LaurentPoly t = small_poly(rng, R2);
      const auto o = find_obstruction(t, spec);
      if (o.status == Status::Refuted) EXPECT_TRUE(o.obstruction->verify(spec)) << t.to_string();
    }
  }
}

TEST(Ideal, CertificateSearchIsMonotoneInBox) {
  std::mt19937_64 rng(16);
  const auto spec = IdealSpec::cyclotomic(3);
  for (int trial = 0; trial < 10; ++trial) {
    const LaurentPoly t = random_member(rng, spec, 1);
    bool proved = false;
    for (int box = 0; box <= 3; ++box) {
      const bool now = find_certificate(t, spec, box).status == Status::Proved;
      if (proved) EXPECT_TRUE(now) << "box " << box << " lost " << t.to_string();
      proved = proved || now;
    }
  }
}

TEST(Ideal, ClosedUnderSumsAndUnitMultiples) {
  std::mt19937_64 rng(17);
  const auto spec = IdealSpec::cyclotomic(3);
  const Budget budget = Budget::defaults(spec.exps);
  for (int trial = 0; trial < 8; ++trial) {
    const auto a = P("(1 - x)^2") * random_unit_multiple(rng, R2);
    const auto b = P("(1 - x)*(1 - y)") * random_unit_multiple(rng, R2);
    EXPECT_EQ(decide(a, spec, budget).status, Status::Proved) << a.to_string();
    EXPECT_EQ(decide(a + b, spec, budget).status, Status::Proved) << (a + b).to_string();
    // a unit multiple of a non-member stays outside
    const auto c = P("1 - x") * random_unit_multiple(rng, R2);
    EXPECT_EQ(decide(c, spec, budget).status, Status::Refuted) << c.to_string();
  }
}

TEST(Ideal, RejectsForgedCertificates) {
  const auto spec = IdealSpec::cyclotomic(3);
  // 1 - x is not a generator of I(3)
  Certificate forged{P("1 - x"), {{P("1 - x"), P("1")}}};
  EXPECT_FALSE(forged.verify(spec));
  EXPECT_THROW(make_certificate(P("1"), {{P("1 + x + x^2"), P("1")}}), std::logic_error);
}

TEST(Ideal, CompositeExponentRejected) {
  EXPECT_THROW(IdealSpec::cyclotomic(6), std::invalid_argument);
}
