#include "metabel/burnside.hpp"

#include <stdexcept>

namespace metabel {

std::size_t MatrixVerdict::count(Status s) const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.verdict.status == s ? 1 : 0;
  return n;
}

std::string to_string(OrderKind k) {
  switch (k) {
    case OrderKind::FiniteDividing: return "FINITE_DIVIDING";
    case OrderKind::Infinite: return "INFINITE";
    case OrderKind::Unknown: return "UNKNOWN";
  }
  return "?";
}

std::string to_string(KernelStatus k) {
  switch (k) {
    case KernelStatus::InKernel: return "IN_KERNEL";
    case KernelStatus::NotInKernel: return "NOT_IN_KERNEL";
    case KernelStatus::Unknown: return "UNKNOWN";
  }
  return "?";
}

namespace {

// Every t-coefficient of every entry of (m - I if shift else m) against
// I(q) Sigma.
MatrixVerdict decide_entries(const MatPoly& m, std::int64_t q, const Budget& budget, bool shift) {
  const Ring base = m.ring().without_t();
  const IdealSpec spec = IdealSpec::cyclotomic_times_sigma(q, base.rank);
  MatrixVerdict out;
  bool unknown = false;
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) {
      LaurentPoly e = m(r, c);
      if (shift && r == c) e -= LaurentPoly::one(m.ring());
      std::map<int, LaurentPoly> coeffs;
      if (m.ring().has_t) coeffs = t_coefficients(e);
      else if (!e.is_zero()) coeffs.emplace(0, e);
      for (const auto& [tp, coeff] : coeffs) {
        Verdict v = decide(coeff, spec, budget);
        const Status s = v.status;
        out.entries.push_back({r, c, tp, std::move(v)});
        if (s == Status::Refuted) {
          out.status = Status::Refuted;
          return out;
        }
        unknown = unknown || s == Status::Unknown;
      }
    }
  out.status = unknown ? Status::Unknown : Status::Proved;
  return out;
}

std::int64_t prime_of(std::int64_t q) {
  auto pe = prime_power_decomposition(q);
  if (!pe) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
  return pe->first;
}

}  // namespace

MatrixVerdict is_identity_in_G(const MatPoly& m, std::int64_t q, const Budget& budget) {
  return decide_entries(m, q, budget, true);
}

MatrixVerdict is_identity_in_FS(const MatPoly& m, std::int64_t q, const Budget& budget) {
  if (m.ring().has_t) throw RingMismatch("F(S) matrices are t-free; specialize t = 1 first");
  return decide_entries(m, q, budget, true);
}

MatrixVerdict power_identity_certificates(const NormalForm& nf, std::int64_t q) {
  const Ring ring = nf.ring;
  const int k = static_cast<int>(nf.lambdas.size());
  const LaurentPoly cu = cyclotomic_generator(ring, nf.u.exponents(), q);
  const auto v = augmentation_row(ring);
  const MatPoly power = fast_power(nf, static_cast<unsigned>(q)).to_matrix();
  MatrixVerdict out;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      LaurentPoly target = power(i, j);
      if (i == j) target -= LaurentPoly::one(ring);
      if (target.is_zero()) continue;
      std::vector<CertificatePart> parts;
      parts.push_back({cu * v[static_cast<std::size_t>(j)], nf.lambdas[static_cast<std::size_t>(i)]});
      if (i == j)
        for (int l = 0; l < k; ++l)
          parts.push_back({cu * v[static_cast<std::size_t>(l)], -nf.lambdas[static_cast<std::size_t>(l)]});
      Verdict verdict;
      verdict.status = Status::Proved;
      verdict.certificate = make_certificate(std::move(target), std::move(parts));
      verdict.bounds.note = "closed form";
      out.entries.push_back({i, j, 0, std::move(verdict)});
    }
  return out;
}

OrderVerdict order_in_FS(const GroupWord& w, std::int64_t q, const Budget& budget, int rank) {
  const std::int64_t p = prime_of(q);
  const NormalForm nf = normal_form(eval_word(w, rank, false));
  OrderVerdict out;
  out.kind = OrderKind::FiniteDividing;
  out.n = q;
  out.evidence = power_identity_certificates(nf, q);
  bool all_refuted = true;
  for (std::int64_t d = 1; d < q; d *= p) {
    MatrixVerdict mv = is_identity_in_FS(fast_power(nf, static_cast<unsigned>(d)).to_matrix(), q, budget);
    out.divisors.emplace_back(d, mv.status);
    if (mv.status == Status::Proved) {
      out.n = d;
      out.evidence = std::move(mv);
      break;
    }
    all_refuted = all_refuted && mv.status == Status::Refuted;
  }
  out.exact = all_refuted;
  if (!all_refuted) out.note = "a smaller divisor stayed undecided; n is the least proved divisor";
  return out;
}

OrderVerdict order_in_G(const GroupWord& w, std::int64_t q, const Budget& budget, int rank) {
  const std::int64_t p = prime_of(q);
  OrderVerdict out;
  const int c = determinant_t_exponent(w);
  if (c != 0) {
    out.kind = OrderKind::Infinite;
    out.det_t_exponent = c;
    out.note = "det has t-exponent " + std::to_string(c) + ", so no positive power is the identity";
    return out;
  }
  if (p != q) out.note = "q is not prime; the dichotomy is only asserted for prime q";
  const MatPoly power = eval_word(w, rank, true).pow(static_cast<unsigned>(q));
  out.evidence = is_identity_in_G(power, q, budget);
  switch (out.evidence.status) {
    case Status::Proved:
      out.kind = OrderKind::FiniteDividing;
      out.n = q;
      break;
    case Status::Refuted:
      out.kind = OrderKind::Infinite;
      out.power_refuted = true;
      out.note = "W^q = I refuted although the t-exponent vanishes";
      break;
    case Status::Unknown: out.kind = OrderKind::Unknown; break;
  }
  return out;
}

SeriesIdentity series_identity_in_G(const TruncSeries& s, std::int64_t q, const Budget& budget) {
  SeriesIdentity out;
  out.constant_term = is_identity_in_FS(s[0], q, budget);
  Status status = out.constant_term.status;
  for (int i = 1; i <= s.trunc() && status != Status::Refuted; ++i) {
    if (s[i].is_zero()) continue;
    MatrixVerdict mv = decide_entries(s[i], q, budget, false);
    if (mv.status == Status::Refuted) status = Status::Refuted;
    else if (mv.status == Status::Unknown) status = Status::Unknown;
    out.coefficients.emplace_back(i, std::move(mv));
  }
  out.status = status;
  return out;
}

KernelReport kernel_probe(const GroupWord& w, std::int64_t q, int trunc, const Budget& budget, bool exact,
                          int rank) {
  prime_of(q);
  KernelReport out;
  out.sums = exponent_sums(w);
  const int c = determinant_t_exponent(w);
  if (c != 0) {
    out.status = KernelStatus::NotInKernel;
    out.decided_at = 1;
    out.note = "t-exponent " + std::to_string(c) + " survives x = y = 1";
    return out;
  }
  for (const auto& [g, e] : out.sums.per_generator)
    if (e % q != 0) {
      out.status = KernelStatus::NotInKernel;
      out.decided_at = 2;
      out.note = "exponent sum of generator " + std::to_string(g) + " is " + std::to_string(e) +
                 ", not a multiple of q";
      return out;
    }

  SeriesIdentity si = series_identity_in_G(expand(w, trunc, rank), q, budget);
  out.constant_term = std::move(si.constant_term);
  out.coefficients = std::move(si.coefficients);
  out.decided_at = 3;
  if (si.status == Status::Refuted) {
    out.status = KernelStatus::NotInKernel;
    out.note = "a series coefficient is nonzero in S";
    return out;
  }
  if (!exact) {
    out.status = KernelStatus::Unknown;
    out.note = si.status == Status::Proved ? "series vanishes up to order " + std::to_string(trunc)
                                           : "series test undecided";
    return out;
  }
  out.exact = is_identity_in_G(eval_word(w, rank, true), q, budget);
  out.decided_at = 4;
  switch (out.exact->status) {
    case Status::Proved: out.status = KernelStatus::InKernel; break;
    case Status::Refuted:
      out.status = KernelStatus::NotInKernel;
      out.note = "series vanishes up to order " + std::to_string(trunc) + " but a t-coefficient is nonzero in S";
      break;
    case Status::Unknown: out.status = KernelStatus::Unknown; break;
  }
  return out;
}

CorollaryReport corollary_tp_check(std::int64_t p) {
  auto pe = prime_power_decomposition(p);
  if (!pe || pe->second != 1) throw std::invalid_argument("the corollary check needs a prime p");
  const Budget budget = Budget::defaults(ExponentSpec::from_q(p));
  CorollaryReport out;
  out.p = p;
  const MatPoly u = t_idempotent(2, 2);
  out.idempotent = u * u == u;
  out.base_power = power_identity_certificates(normal_form(base_generator(2, 2)), p);

  // (M_2 T)^p = (M_2 + (t-1) M_2 U)^p, a polynomial of degree p in t - 1.
  const TruncSeries s = expand(GroupWord::letter(2, static_cast<int>(p)), static_cast<int>(p));
  out.coefficients = s.coefficients();

  out.cross_terms_vanish = true;
  const IdealSpec cyclo = IdealSpec::cyclotomic(p, 2);
  Status in_cyclo = Status::Proved;
  for (int j = 1; j < p; ++j) {
    const MatPoly& a = s[j];
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        const Status st = decide(a(r, c), cyclo, budget).status;
        if (st == Status::Refuted || in_cyclo == Status::Refuted) in_cyclo = Status::Refuted;
        else if (st == Status::Unknown) in_cyclo = Status::Unknown;
      }
    MatrixVerdict mv = decide_entries(a, p, budget, false);
    out.cross_terms_vanish = out.cross_terms_vanish && mv.status == Status::Proved;
    out.cross_terms.emplace_back(j, std::move(mv));
  }
  out.cross_terms_in_cyclotomic_ideal = in_cyclo;
  out.top_term = decide_entries(s[static_cast<int>(p)], p, budget, false);
  out.top_term_nonzero = out.top_term.status == Status::Refuted;
  return out;
}

}  // namespace metabel
