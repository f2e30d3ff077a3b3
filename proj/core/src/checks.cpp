// The check functions behind the claim manifest.

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "metabel/verify.hpp"

namespace metabel {

namespace {

constexpr int kMaxWordLetters = 12;

CheckOutcome observed(bool agrees, std::string summary, Json evidence) {
  CheckOutcome out;
  out.status = CheckStatus::Observed;
  out.agrees = agrees;
  out.summary = std::move(summary);
  out.evidence = std::move(evidence);
  return out;
}

// A sampled universal: any counterexample refutes, otherwise the sample is
// evidence.
CheckOutcome sampled(std::size_t tested, const Json& failures, std::size_t unknown, std::string what,
                     Json evidence) {
  CheckOutcome out;
  evidence["tested"] = tested;
  evidence["failures"] = failures;
  if (unknown) evidence["unknown"] = unknown;
  out.evidence = std::move(evidence);
  std::ostringstream os;
  if (!failures.empty()) {
    out.status = CheckStatus::Refuted;
    os << failures.size() << " of " << tested << " samples violate " << what;
  } else if (unknown) {
    out.status = CheckStatus::Unknown;
    os << unknown << " of " << tested << " samples undecided at the budget; " << what;
  } else {
    out.status = CheckStatus::Observed;
    os << what << " on all " << tested << " samples";
  }
  out.summary = os.str();
  return out;
}

std::string word_text(const GroupWord& w) {
  std::string s = w.to_string();
  if (s.size() > 200) s = s.substr(0, 200) + " ... (" + std::to_string(w.length()) + " letters)";
  return s;
}

Json word_failure(const GroupWord& w, std::string why) {
  return {{"word", word_text(w)}, {"reason", std::move(why)}};
}

IdealSpec cyclo_spec(const CheckContext& ctx) {
  return IdealSpec::cyclotomic(ctx.q, 2, ctx.budget.window);
}

const ExponentSpec& exps_of(const CheckContext& ctx) {
  if (!ctx.exps) throw std::invalid_argument("this check needs an exponent q");
  return *ctx.exps;
}

// v * M for the row v = (1 - x_1, ..., 1 - x_k).
std::vector<LaurentPoly> row_times(const std::vector<LaurentPoly>& v, const MatPoly& m) {
  std::vector<LaurentPoly> out(v.size(), LaurentPoly(m.ring()));
  for (int c = 0; c < m.dim(); ++c)
    for (int r = 0; r < m.dim(); ++r) out[static_cast<std::size_t>(c)] += v[static_cast<std::size_t>(r)] * m(r, c);
  return out;
}

int min_entry_sigma_degree(const MatPoly& m, bool minus_identity) {
  int d = kInfiniteDegree;
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) {
      LaurentPoly e = m(r, c);
      if (minus_identity && r == c) e -= LaurentPoly::one(m.ring());
      d = std::min(d, sigma_degree(e));
    }
  return d;
}

Json degree_json(int d) { return d == kInfiniteDegree ? Json("inf") : Json(d); }

// ---- core -------------------------------------------------------------

CheckOutcome power_law(const CheckContext& ctx) {
  constexpr unsigned kMaxPower = 8;
  Json failures = Json::array();
  for (int i = 0; i < ctx.samples; ++i) {
    WordSampler ws(ctx.sample_seed(i));
    const GroupWord w = ws.random_word(kMaxWordLetters);
    const MatPoly m = eval_word(w, 2, false);
    const NormalForm nf = normal_form(m);
    MatPoly direct = MatPoly::identity(m.ring(), 2);
    for (unsigned n = 1; n <= kMaxPower; ++n) {
      direct = direct * m;
      if (fast_power(nf, n).to_matrix() != direct) {
        failures.push_back(word_failure(w, "n = " + std::to_string(n)));
        break;
      }
    }
  }
  return sampled(static_cast<std::size_t>(ctx.samples), failures, 0,
                 "M^n = u^n + (1 + ... + u^{n-1}) N for n <= 8",
                 {{"max_letters", kMaxWordLetters}, {"max_n", kMaxPower}});
}

// Returns an empty string when every invariant holds.
std::string normal_form_violation(const MatPoly& m) {
  NormalForm nf;
  try {
    nf = normal_form(m);
  } catch (const StructuralError& e) {
    return e.what();
  }
  const Ring ring = m.ring();
  if (nf.to_matrix() != m) return "reconstruction";
  const auto v = augmentation_row(ring);
  LaurentPoly sum(ring);
  for (std::size_t i = 0; i < v.size(); ++i) sum += nf.lambdas[i] * v[i];
  if (sum != LaurentPoly::one(ring) - nf.unit()) return "lambda . v = 1 - u";
  if (row_times(v, m) != v) return "v M = v";
  const MatPoly n = nf.nilpart();
  if (n * n != (LaurentPoly::one(ring) - nf.unit()) * n) return "N^2 = (1 - u) N";
  return {};
}

CheckOutcome normal_form_invariants(const CheckContext& ctx) {
  constexpr int kRankThreeSamples = 20;
  Json failures = Json::array();
  for (int i = 0; i < ctx.samples; ++i) {
    WordSampler ws(ctx.sample_seed(i));
    const GroupWord w = ws.random_word(kMaxWordLetters);
    if (auto why = normal_form_violation(eval_word(w, 2, false)); !why.empty()) failures.push_back(word_failure(w, why));
  }
  for (int i = 0; i < kRankThreeSamples; ++i) {
    WordSampler ws(ctx.sample_seed(i), 3);
    const GroupWord w = ws.random_word(kMaxWordLetters);
    if (auto why = normal_form_violation(eval_word(w, 3, false)); !why.empty())
      failures.push_back(word_failure(w, "rank 3: " + why));
  }
  return sampled(static_cast<std::size_t>(ctx.samples + kRankThreeSamples), failures, 0,
                 "reconstruction, lambda . v = 1 - u, v M = v and N^2 = (1 - u) N",
                 {{"rank2", ctx.samples}, {"rank3", kRankThreeSamples}});
}

CheckOutcome basic_commutators(const CheckContext&) {
  constexpr int kMax = 3;
  Json failures = Json::array();
  std::size_t tested = 0;
  for (int a = 0; a <= kMax; ++a)
    for (int b = 0; b <= kMax; ++b) {
      ++tested;
      const GroupWord w = basic_commutator_word(a, b);
      const NormalForm nf = normal_form(eval_word(w, 2, false));
      const auto [l1, l2] = basic_commutator_lambda(a, b);
      if (!nf.u.is_one() || nf.lambdas[0] != l1 || nf.lambdas[1] != l2)
        failures.push_back(word_failure(w, "lambda differs from the closed form"));
      else if (sigma_degree(l1) != a + b + 1 || sigma_degree(l2) != a + b + 1)
        failures.push_back(word_failure(w, "sigma degree is not a + b + 1"));
    }
  return sampled(tested, failures, 0, "closed-form lambdas with sigma degree a + b + 1 (a, b <= 3)",
                 {{"max_a", kMax}, {"max_b", kMax}});
}

CheckOutcome lower_central_degree(const CheckContext& ctx) {
  Json failures = Json::array();
  Json floors = Json::object();
  std::size_t tested = 0;
  for (int j = 2; j <= 4; ++j) {
    int lowest_lambda = kInfiniteDegree;
    int lowest_entry = kInfiniteDegree;
    for (int i = 0; i < ctx.samples; ++i) {
      ++tested;
      WordSampler ws(ctx.sample_seed(i));
      const GroupWord w = ws.lower_central(j);
      const MatPoly m = eval_word(w, 2, false);
      const NormalForm nf = normal_form(m);
      int dl = kInfiniteDegree;
      for (const auto& l : nf.lambdas) dl = std::min(dl, sigma_degree(l));
      const int de = min_entry_sigma_degree(m, true);
      lowest_lambda = std::min(lowest_lambda, dl);
      lowest_entry = std::min(lowest_entry, de);
      if (dl < j - 1) failures.push_back(word_failure(w, "lambda sigma degree " + std::to_string(dl)));
      else if (de < j - 1) failures.push_back(word_failure(w, "M - I sigma degree " + std::to_string(de)));
    }
    floors[std::to_string(j)] = {{"lambda", degree_json(lowest_lambda)}, {"m_minus_i", degree_json(lowest_entry)}};
  }
  return sampled(tested, failures, 0, "lambda and M - I in Sigma^{j-1} for the j-th lower central term, j = 2..4",
                 {{"lowest_degree", floors}});
}

CheckOutcome metabelian_image(const CheckContext& ctx) {
  Json failures = Json::array();
  for (int i = 0; i < ctx.samples; ++i) {
    WordSampler ws(ctx.sample_seed(i));
    const GroupWord w = ws.derived(2);
    if (!eval_word(w, 2, true).specialize_t_one().is_identity() || !eval_word(w, 2, false).is_identity())
      failures.push_back(word_failure(w, "second derived word is not I at t = 1"));
  }
  return sampled(static_cast<std::size_t>(ctx.samples), failures, 0, "second derived words evaluate to I at t = 1",
                 Json::object());
}

CheckOutcome determinant_exponent(const CheckContext& ctx) {
  constexpr int kRankThreeSamples = 10;
  Json failures = Json::array();
  auto check = [&](const GroupWord& w, int rank) {
    const SignedUnit det = determinant_unit(eval_word(w, rank, true));
    const ExponentSums sums = exponent_sums(w);
    const int tdeg = det.monomial[rank];
    if (tdeg != determinant_t_exponent(w)) return failures.push_back(word_failure(w, "t-degree of det"));
    if (rank == 2 && tdeg != sums.t_sum) return failures.push_back(word_failure(w, "t-degree differs from t_sum"));
    for (int j = 1; j <= rank; ++j) {
      const auto it = sums.per_generator.find(j);
      const int e = it == sums.per_generator.end() ? 0 : it->second;
      // det M_j T_j = x_j^{k-1} t^{j-1}
      if (det.sign != 1 || det.monomial[j - 1] != (rank - 1) * e)
        return failures.push_back(word_failure(w, "det is not prod x_j^{(k-1) e_j} t^{sum (j-1) e_j}"));
    }
  };
  for (int i = 0; i < ctx.samples; ++i) {
    WordSampler ws(ctx.sample_seed(i));
    check(ws.random_word(kMaxWordLetters), 2);
  }
  for (int i = 0; i < kRankThreeSamples; ++i) {
    WordSampler ws(ctx.sample_seed(i), 3);
    check(ws.random_word(kMaxWordLetters), 3);
  }
  return sampled(static_cast<std::size_t>(ctx.samples + kRankThreeSamples), failures, 0,
                 "det = x^{e_1} y^{e_2} t^{t_sum} (rank 3: x_j^{2 e_j} t^{sum (j-1) e_j})", Json::object());
}

CheckOutcome sanov(const CheckContext& ctx) {
  constexpr int kCrossChecks = 10;
  Json failures = Json::array();
  const std::array<Integer, 3> images{1, -1, -1};
  for (int i = 0; i < ctx.samples; ++i) {
    WordSampler ws(ctx.sample_seed(i));
    const GroupWord w = ws.random_word(kMaxWordLetters);
    const auto img = sanov_image(w);
    if (w.empty()) {
      failures.push_back(word_failure(w, "sampler produced the empty word"));
      continue;
    }
    if (img == std::array<Integer, 4>{1, 0, 0, 1}) failures.push_back(word_failure(w, "image is I"));
    if (i < kCrossChecks) {
      const MatPoly m = eval_word(w, 2, true);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
          if (evaluate_hom(m(r, c), images) != img[static_cast<std::size_t>(2 * r + c)])
            failures.push_back(word_failure(w, "integer product disagrees with the specialized matrix"));
    }
  }
  return sampled(static_cast<std::size_t>(ctx.samples), failures, 0,
                 "nonempty reduced words stay nontrivial at x = 1, y = t = -1",
                 {{"example", {{"word", "M1"}, {"image", {"1", "2", "0", "1"}}}}});
}

// ---- inclusions -------------------------------------------------------

Json verdict_item(const Verdict& v, const LaurentPoly& target, const IdealSpec& spec) {
  return to_json(v, target, spec);
}

CheckOutcome sigma_power_inclusion(const CheckContext& ctx) {
  const ExponentSpec& exps = exps_of(ctx);
  const IdealSpec spec = cyclo_spec(ctx);
  const int m = static_cast<int>(exps.ephi);
  Json items = Json::array();
  std::size_t proved = 0, unknown = 0;
  std::optional<std::string> refuted;
  for (const auto& alpha : exponent_vectors_of_degree(2, m)) {
    const LaurentPoly target = sigma_monomial(spec.ring(), alpha);
    const Verdict v = decide(target, spec, ctx.budget);
    items.push_back(verdict_item(v, target, spec));
    proved += v.status == Status::Proved ? 1 : 0;
    unknown += v.status == Status::Unknown ? 1 : 0;
    if (v.status == Status::Refuted && !refuted) refuted = target.to_string();
  }
  CheckOutcome out;
  out.evidence = {{"degree", m}, {"items", std::move(items)}};
  std::ostringstream os;
  if (refuted) {
    out.status = CheckStatus::Refuted;
    os << "Sigma^" << m << " generator " << *refuted << " is not in I(" << ctx.q << ")";
  } else if (unknown) {
    out.status = CheckStatus::Unknown;
    os << unknown << " Sigma^" << m << " generators undecided";
  } else {
    out.status = CheckStatus::Proved;
    os << "all " << proved << " generators of Sigma^" << m << " certified in I(" << ctx.q << ")";
  }
  out.summary = os.str();
  return out;
}

CheckOutcome strict_inclusion(const CheckContext& ctx) {
  const ExponentSpec& exps = exps_of(ctx);
  const IdealSpec spec = cyclo_spec(ctx);
  const int m = static_cast<int>(exps.ephi) - 1;
  std::size_t proved = 0;
  Json certified = Json::array();
  for (const auto& alpha : exponent_vectors_of_degree(2, m)) {
    const LaurentPoly target = sigma_monomial(spec.ring(), alpha);
    const Verdict v = decide(target, spec, ctx.budget);
    if (v.status == Status::Refuted) {
      CheckOutcome out;
      out.status = CheckStatus::Proved;
      out.summary = "witness " + target.to_string() + " in Sigma^" + std::to_string(m) + " is not in I(" +
                    std::to_string(ctx.q) + ")";
      out.evidence = {{"degree", m}, {"witness", verdict_item(v, target, spec)}};
      return out;
    }
    if (v.status == Status::Proved) {
      ++proved;
      certified.push_back(target.to_string());
    }
  }
  CheckOutcome out;
  const std::size_t total = exponent_vectors_of_degree(2, m).size();
  out.evidence = {{"degree", m}, {"certified", certified}};
  if (proved == total) {
    out.status = CheckStatus::Refuted;
    out.summary = "every generator of Sigma^" + std::to_string(m) + " is in I(" + std::to_string(ctx.q) + ")";
  } else {
    out.status = CheckStatus::Unknown;
    out.summary = "no witness found among " + std::to_string(total - proved) + " undecided generators";
  }
  return out;
}

CheckOutcome two_sigma_cubed(const CheckContext& ctx) {
  const IdealSpec spec = cyclo_spec(ctx);
  Json items = Json::array();
  std::size_t proved = 0, total = 0;
  std::optional<std::string> refuted;
  auto run = [&](int degree, int scale) {
    for (const auto& alpha : exponent_vectors_of_degree(2, degree)) {
      const LaurentPoly target = Integer(scale) * sigma_monomial(spec.ring(), alpha);
      const Verdict v = decide(target, spec, ctx.budget);
      items.push_back(verdict_item(v, target, spec));
      ++total;
      proved += v.status == Status::Proved ? 1 : 0;
      if (v.status == Status::Refuted && !refuted) refuted = target.to_string();
    }
  };
  run(4, 1);
  run(3, 2);
  CheckOutcome out;
  out.evidence = {{"items", std::move(items)}};
  if (refuted) {
    out.status = CheckStatus::Refuted;
    out.summary = *refuted + " is not in I(4)";
  } else if (proved < total) {
    out.status = CheckStatus::Unknown;
    out.summary = std::to_string(total - proved) + " targets undecided";
  } else {
    out.status = CheckStatus::Proved;
    out.summary = "Sigma^4 and 2 Sigma^3 generators (" + std::to_string(total) + ") certified in I(4)";
  }
  return out;
}

CheckOutcome reverse_exploratory(const CheckContext& ctx) {
  const ExponentSpec& exps = exps_of(ctx);
  const IdealSpec spec = cyclo_spec(ctx);
  const int m = static_cast<int>(exps.phi);
  const SigmaAdicBasis basis(2, m);
  std::size_t tested = 0;
  Json outside = Json::array();
  for (const auto& g : generators(spec)) {
    ++tested;
    for (const auto& c : basis.coefficients(g))
      if (c % exps.p != 0) {
        outside.push_back(g.to_string());
        break;
      }
  }
  CheckOutcome out = observed(outside.empty(),
                              outside.empty() ? "all " + std::to_string(tested) + " generators of I(" +
                                                    std::to_string(ctx.q) + ") lie in (p) + Sigma^" + std::to_string(m)
                                              : std::to_string(outside.size()) + " generators escape (p) + Sigma^" +
                                                    std::to_string(m),
                              {{"tested", tested}, {"outside", outside}});
  out.paper_claim = false;
  return out;
}

// ---- series -----------------------------------------------------------

struct FloorCheck {
  int derived = 1;
  bool need_identity_a0 = false;
  int vanish_below = 1;  // A_i = 0 for 1 <= i < vanish_below
  std::function<int(int)> floor;  // required sigma floor at order i
  std::string what;
};

CheckOutcome series_floor_check(const CheckContext& ctx, const FloorCheck& fc) {
  Json failures = Json::array();
  std::map<int, int> lowest;
  for (int i = 0; i < ctx.samples; ++i) {
    WordSampler ws(ctx.sample_seed(i));
    const GroupWord w = ws.derived(fc.derived);
    const TruncSeries s = expand(w, ctx.trunc);
    if (fc.need_identity_a0 && !s[0].is_identity()) {
      failures.push_back(word_failure(w, "A_0 != I"));
      continue;
    }
    std::string why;
    for (int k = 1; k < fc.vanish_below && k <= ctx.trunc; ++k)
      if (!s[k].is_zero()) {
        why = "A_" + std::to_string(k) + " != 0";
        break;
      }
    for (const auto& [order, f] : coeff_sigma_floor(s)) {
      if (order == 0) continue;
      auto [it, fresh] = lowest.emplace(order, f);
      if (!fresh) it->second = std::min(it->second, f);
      if (why.empty() && f < fc.floor(order))
        why = "A_" + std::to_string(order) + " has sigma floor " + std::to_string(f);
    }
    if (!why.empty()) failures.push_back(word_failure(w, why));
  }
  Json floors = Json::object();
  for (const auto& [order, f] : lowest) floors[std::to_string(order)] = f;
  return sampled(static_cast<std::size_t>(ctx.samples), failures, 0, fc.what,
                 {{"derived", fc.derived}, {"trunc", ctx.trunc}, {"lowest_floor", floors}});
}

CheckOutcome series_first_derived(const CheckContext& ctx) {
  return series_floor_check(ctx, {1, false, 1, [](int) { return 1; }, "every A_i of an F' word is in Sigma"});
}

CheckOutcome series_second_derived(const CheckContext& ctx) {
  return series_floor_check(ctx, {2, true, 1, [](int) { return 2; }, "F'' words have A_0 = I and A_i in Sigma^2"});
}

CheckOutcome series_third_derived(const CheckContext& ctx) {
  return series_floor_check(
      ctx, {3, true, 2, [](int) { return 4; }, "F^(3) words have A_0 = I, A_1 = 0 and A_i in Sigma^4"});
}

CheckOutcome series_remark(const CheckContext& ctx) {
  CheckOutcome out = series_floor_check(
      ctx, {2, true, 1, [](int i) { return i == 1 ? 3 : 2; }, "A_1 in Sigma^3 and A_i in Sigma^2 for F'' words"});
  if (out.status == CheckStatus::Refuted) {
    out.status = CheckStatus::Observed;
    out.agrees = false;
  }
  out.paper_claim = false;
  return out;
}

CheckOutcome series_commutator_order(const CheckContext& ctx) {
  Json failures = Json::array();
  std::size_t tested = 0;
  for (int i = 0; i < ctx.samples; ++i) {
    const int depth = i % 5 == 4 ? 3 : 2;
    WordSampler ws(ctx.sample_seed(i));
    const GroupWord g = ws.derived(depth);
    const GroupWord h = ws.derived(depth);
    const TruncSeries sg = expand(g, ctx.trunc);
    const TruncSeries sh = expand(h, ctx.trunc);
    const auto dg = min_order(sg);
    const auto dh = min_order(sh);
    ++tested;
    const GroupWord c = GroupWord::commutator(g, h);
    const TruncSeries sc = expand(c, ctx.trunc);
    if (sg * sh * expand(g.inverse(), ctx.trunc) * expand(h.inverse(), ctx.trunc) != sc) {
      failures.push_back(word_failure(c, "series product disagrees with the expansion of [g, h]"));
      continue;
    }
    if (!dg || !dh) continue;  // one factor vanishes to order D, so does [g, h]
    const int bound = 2 * std::min(*dg, *dh);
    for (int k = 1; k < bound && k <= ctx.trunc; ++k)
      if (!sc[k].is_zero()) {
        failures.push_back(word_failure(c, "E_" + std::to_string(k) + " != 0 below 2d = " + std::to_string(bound)));
        break;
      }
  }
  return sampled(tested, failures, 0, "E_i = 0 for i < 2 min(d_g, d_h) in [g, h]",
                 {{"strata", "F'' pairs, every fifth pair from F^(3)"}, {"trunc", ctx.trunc}});
}

CheckOutcome series_engine(const CheckContext& ctx) {
  Json failures = Json::array();
  std::size_t tested = 0;
  auto run = [&](const GroupWord& w, int rank) {
    ++tested;
    const TruncSeries s = expand(w, ctx.trunc, rank);
    if (expand(w, ctx.trunc + 2, rank).truncated(ctx.trunc) != s)
      return failures.push_back(word_failure(w, "truncation coherence"));
    if (!(s * expand(w.inverse(), ctx.trunc, rank)).is_identity())
      return failures.push_back(word_failure(w, "inverse law"));
    if (eval_word(w, rank, true).specialize_t_one() != s[0])
      return failures.push_back(word_failure(w, "A_0 differs from t = 1"));
  };
  for (int i = 0; i < ctx.samples; ++i) {
    WordSampler ws(ctx.sample_seed(i));
    run(ws.random_word(kMaxWordLetters), 2);
  }
  for (int i = 0; i < 10; ++i) {
    WordSampler ws(ctx.sample_seed(i), 3);
    run(ws.random_word(kMaxWordLetters), 3);
  }
  return sampled(tested, failures, 0, "truncation coherence, inverse law and t = 1 specialization",
                 {{"trunc", ctx.trunc}, {"rank3", 10}});
}

// ---- orders -----------------------------------------------------------

CheckOutcome generator_order(const CheckContext& ctx) {
  const OrderVerdict ov = order_in_FS(GroupWord::letter(1), ctx.q, ctx.budget);
  CheckOutcome out;
  out.evidence = to_json(ov, ctx.q);
  const bool ok = ov.kind == OrderKind::FiniteDividing && ov.n == ctx.q && ov.exact;
  if (ok) {
    out.status = CheckStatus::Proved;
    out.summary = "M1 has order exactly " + std::to_string(ctx.q) + " in F(S)";
  } else if (ov.kind == OrderKind::FiniteDividing && ov.n < ctx.q) {
    out.status = CheckStatus::Refuted;
    out.summary = "M1^" + std::to_string(ov.n) + " = I already";
  } else {
    out.status = CheckStatus::Unknown;
    out.summary = "order of M1 not pinned down: " + ov.note;
  }
  return out;
}

CheckOutcome fs_exponent(const CheckContext& ctx) {
  const IdealSpec spec = IdealSpec::cyclotomic_times_sigma(ctx.q, 2);
  Json failures = Json::array();
  std::map<std::int64_t, int> histogram;
  std::size_t exact = 0;
  Json example;
  for (int i = 0; i < ctx.samples; ++i) {
    WordSampler ws(ctx.sample_seed(i));
    const GroupWord w = ws.random_word(kMaxWordLetters);
    const NormalForm nf = normal_form(eval_word(w, 2, false));
    const MatrixVerdict closed = power_identity_certificates(nf, ctx.q);
    bool ok = closed.status == Status::Proved;
    for (const auto& e : closed.entries)
      ok = ok && e.verdict.status == Status::Proved && e.verdict.certificate && e.verdict.certificate->verify(spec);
    if (!ok) {
      failures.push_back(word_failure(w, "closed-form certificate for M^q = I does not verify"));
      continue;
    }
    const OrderVerdict ov = order_in_FS(w, ctx.q, ctx.budget);
    if (ov.kind != OrderKind::FiniteDividing || ctx.q % ov.n != 0) {
      failures.push_back(word_failure(w, "order verdict " + to_string(ov.kind)));
      continue;
    }
    ++histogram[ov.n];
    exact += ov.exact ? 1 : 0;
    if (i == 0) example = {{"word", word_text(w)}, {"q_power", to_json(closed, ctx.q)}};
  }
  Json hist = Json::object();
  for (const auto& [n, c] : histogram) hist[std::to_string(n)] = c;
  return sampled(static_cast<std::size_t>(ctx.samples), failures, 0,
                 "M^q = I in F(S) with closed-form certificates",
                 {{"order_histogram", hist}, {"exact_orders", exact}, {"example", example}});
}

CheckOutcome dichotomy(const CheckContext& ctx) {
  const IdealSpec spec = IdealSpec::cyclotomic_times_sigma(ctx.q, 2);
  Json failures = Json::array();
  std::size_t unknown = 0, infinite = 0, finite = 0;
  Json example_finite, example_infinite;
  for (int i = 0; i < ctx.samples; ++i) {
    WordSampler ws(ctx.sample_seed(i));
    GroupWord w = ws.random_word(kMaxWordLetters);
    // every other sample is balanced so both branches get exercised
    if (i % 2 == 1) {
      const int t = exponent_sums(w).t_sum;
      if (t != 0) w = w * GroupWord::letter(2, -t);
      if (w.empty()) w = GroupWord::letter(1);
    }
    const int t_sum = exponent_sums(w).t_sum;
    const OrderVerdict ov = order_in_G(w, ctx.q, ctx.budget);
    if (t_sum != 0) {
      if (ov.kind != OrderKind::Infinite || !ov.det_t_exponent) {
        failures.push_back(word_failure(w, "nonzero t-sum without a determinant witness"));
        continue;
      }
      // the weak form: g^q is I at t = 1
      const MatrixVerdict at_one =
          power_identity_certificates(normal_form(eval_word(w, 2, true).specialize_t_one()), ctx.q);
      bool ok = at_one.status == Status::Proved;
      for (const auto& e : at_one.entries) ok = ok && e.verdict.certificate && e.verdict.certificate->verify(spec);
      if (!ok) {
        failures.push_back(word_failure(w, "g^q is not I at t = 1"));
        continue;
      }
      ++infinite;
      if (example_infinite.is_null()) example_infinite = {{"word", word_text(w)}, {"verdict", to_json(ov, ctx.q)}};
      continue;
    }
    switch (ov.kind) {
      case OrderKind::FiniteDividing:
        ++finite;
        if (example_finite.is_null())
          example_finite = {{"word", word_text(w)}, {"entries_proved", ov.evidence.count(Status::Proved)}};
        break;
      case OrderKind::Infinite:
        failures.push_back({{"word", word_text(w)},
                            {"reason", "zero t-sum but W^q = I is refuted"},
                            {"verdict", to_json(ov, ctx.q)}});
        break;
      case OrderKind::Unknown: ++unknown; break;
    }
  }
  return sampled(static_cast<std::size_t>(ctx.samples), failures, unknown,
                 "t-sum != 0 gives infinite order and t-sum = 0 gives W^q = I",
                 {{"infinite", infinite},
                  {"finite", finite},
                  {"example_infinite", example_infinite},
                  {"example_finite", example_finite}});
}

CheckOutcome second_derived_exponent(const CheckContext& ctx) {
  Json failures = Json::array();
  std::size_t unknown = 0;
  std::size_t entries = 0;
  for (int i = 0; i < ctx.samples; ++i) {
    WordSampler ws(ctx.sample_seed(i));
    const GroupWord w = ws.derived(2);
    const OrderVerdict ov = order_in_G(w, ctx.q, ctx.budget);
    if (ov.kind == OrderKind::FiniteDividing) {
      entries += ov.evidence.entries.size();
    } else if (ov.kind == OrderKind::Unknown) {
      ++unknown;
    } else {
      failures.push_back({{"word", word_text(w)}, {"reason", "g^q = I refuted"}, {"verdict", to_json(ov, ctx.q)}});
    }
  }
  return sampled(static_cast<std::size_t>(ctx.samples), failures, unknown, "g^q = I in G for F'' words",
                 {{"certified_coefficients", entries}});
}

CheckOutcome third_derived_identity(const CheckContext& ctx) {
  const int k = solvable_class_bound(exps_of(ctx));
  Json failures = Json::array();
  std::size_t unknown = 0;
  for (int i = 0; i < ctx.samples; ++i) {
    WordSampler ws(ctx.sample_seed(i));
    const GroupWord w = ws.derived(k);
    const SeriesIdentity si = series_identity_in_G(expand(w, ctx.trunc), ctx.q, ctx.budget);
    if (si.status == Status::Unknown) ++unknown;
    if (si.status == Status::Refuted) failures.push_back(word_failure(w, "a coefficient is nonzero in S"));
  }
  return sampled(static_cast<std::size_t>(ctx.samples), failures, unknown,
                 "derived-" + std::to_string(k) + " words are I in G up to order " + std::to_string(ctx.trunc),
                 {{"k_min", k}});
}

CheckOutcome kernel_examples(const CheckContext& ctx) {
  const int q = static_cast<int>(ctx.q);
  struct Case {
    GroupWord w;
    KernelStatus expected;
  };
  std::vector<Case> cases{{GroupWord::letter(1, q), KernelStatus::InKernel},
                          {GroupWord::letter(1, 1), KernelStatus::NotInKernel},
                          {GroupWord::letter(2, q), KernelStatus::NotInKernel}};
  if (q > 2) cases.push_back({GroupWord::letter(1, q - 1), KernelStatus::NotInKernel});
  Json items = Json::array();
  bool refuted = false, unknown = false;
  for (const auto& c : cases) {
    const KernelReport kr = kernel_probe(c.w, ctx.q, ctx.trunc, ctx.budget);
    Json item = {{"word", c.w.to_string()}, {"expected", to_string(c.expected)}, {"report", to_json(kr, ctx.q)}};
    items.push_back(std::move(item));
    if (kr.status == KernelStatus::Unknown) unknown = true;
    else if (kr.status != c.expected) refuted = true;
  }
  CheckOutcome out;
  out.evidence = {{"cases", std::move(items)}};
  if (refuted) {
    out.status = CheckStatus::Refuted;
    out.summary = "a kernel example has the wrong status";
  } else if (unknown) {
    out.status = CheckStatus::Unknown;
    out.summary = "a kernel example is undecided";
  } else {
    out.status = CheckStatus::Proved;
    out.summary = "M1^q in the kernel; M1^j (q not dividing j) and (M2T)^q not";
  }
  return out;
}

CheckOutcome corollary(const CheckContext& ctx) {
  const CorollaryReport r = corollary_tp_check(ctx.q);
  CheckOutcome out;
  Json cross = Json::array();
  std::string first_bad;
  for (const auto& [j, mv] : r.cross_terms) {
    cross.push_back({{"order", j}, {"verdict", to_json(mv, ctx.q)}});
    if (first_bad.empty() && mv.status == Status::Refuted && !mv.entries.empty()) {
      const auto& e = mv.entries.back();
      const std::string target = e.verdict.obstruction ? e.verdict.obstruction->target.to_string() : "?";
      first_bad = "(t-1)^" + std::to_string(j) + " coefficient entry (" + std::to_string(e.row) + "," +
                  std::to_string(e.col) + ") = " + target + " is nonzero in S (" +
                  (e.verdict.obstruction ? e.verdict.obstruction->reason : std::string("undecided")) + ")";
    }
  }
  out.evidence = {{"idempotent", r.idempotent},
                  {"base_power", to_json(r.base_power, ctx.q)},
                  {"cross_terms", std::move(cross)},
                  {"cross_terms_vanish", r.cross_terms_vanish},
                  {"cross_terms_in_cyclotomic_ideal", to_string(r.cross_terms_in_cyclotomic_ideal)},
                  {"top_term", to_json(r.top_term, ctx.q)},
                  {"top_term_nonzero", r.top_term_nonzero}};
  if (r.identity_holds()) {
    out.status = CheckStatus::Proved;
    out.summary = "(M2T)^p = 1 + (t-1)^p (M2U)^p in S[t, t^-1] with a nonzero top term";
    return out;
  }
  const bool undecided = r.cross_terms_in_cyclotomic_ideal == Status::Unknown && first_bad.empty();
  out.status = undecided ? CheckStatus::Unknown : CheckStatus::Refuted;
  std::ostringstream os;
  if (!r.idempotent) os << "U^2 != U; ";
  if (r.base_power.status != Status::Proved) os << "M2^p = I not proved; ";
  if (!first_bad.empty()) os << first_bad << "; ";
  if (!r.top_term_nonzero) os << "top term not shown nonzero; ";
  os << "modulo I(p) alone the cross terms are " << to_string(r.cross_terms_in_cyclotomic_ideal);
  out.summary = os.str();
  return out;
}

// ---- classes ----------------------------------------------------------

int table_class(const std::string& text) {
  if (text == "abelian") return 1;
  if (text == "metabelian") return 2;
  const std::string prefix = "solvable of class ";
  if (text.rfind(prefix, 0) == 0) return std::stoi(text.substr(prefix.size()));
  throw std::invalid_argument("unreadable class table entry '" + text + "'");
}

CheckOutcome solvable_class(const CheckContext& ctx) {
  const ExponentSpec& exps = exps_of(ctx);
  const int k = solvable_class_bound(exps);
  Json ev = {{"q", exps.q},
             {"p", exps.p},
             {"e", exps.e},
             {"e_phi", exps.ephi},
             {"bound", exps.ephi + 1},
             {"k_min", k},
             {"two_to_k_minus_1", std::int64_t{1} << (k - 1)},
             {"two_to_k_minus_2", k >= 2 ? std::int64_t{1} << (k - 2) : 0}};
  const auto& table = ctx.registry->class_table();
  const auto it = table.find(std::to_string(exps.q));
  if (it == table.end()) {
    CheckOutcome out = observed(true, "k_min = " + std::to_string(k) + "; no table entry for this q", ev);
    out.paper_claim = false;
    return out;
  }
  const int tc = table_class(it->second);
  ev["table"] = it->second;
  ev["table_class"] = tc;
  const bool agree = tc == k;
  return observed(agree,
                  "k_min = " + std::to_string(k) + ", table says \"" + it->second + "\" (class " +
                      std::to_string(tc) + "): " + (agree ? "agree" : "discrepancy"),
                  ev);
}

}  // namespace

const std::map<std::string, CheckFn>& check_table() {
  static const std::map<std::string, CheckFn> table{
      {"power_law", power_law},
      {"normal_form_invariants", normal_form_invariants},
      {"basic_commutators", basic_commutators},
      {"lower_central_degree", lower_central_degree},
      {"metabelian_image", metabelian_image},
      {"determinant_exponent", determinant_exponent},
      {"sanov", sanov},
      {"sigma_power_inclusion", sigma_power_inclusion},
      {"strict_inclusion", strict_inclusion},
      {"two_sigma_cubed", two_sigma_cubed},
      {"reverse_exploratory", reverse_exploratory},
      {"series_first_derived", series_first_derived},
      {"series_second_derived", series_second_derived},
      {"series_third_derived", series_third_derived},
      {"series_remark", series_remark},
      {"series_commutator_order", series_commutator_order},
      {"series_engine", series_engine},
      {"generator_order", generator_order},
      {"fs_exponent", fs_exponent},
      {"dichotomy", dichotomy},
      {"second_derived_exponent", second_derived_exponent},
      {"third_derived_identity", third_derived_identity},
      {"kernel_examples", kernel_examples},
      {"corollary", corollary},
      {"solvable_class", solvable_class},
  };
  return table;
}

}  // namespace metabel
