#pragma once

// Equality and orders in F(S) and G = F(S[t, t^-1]), S = R / I(q) Sigma,
// reduced entry by entry to ideal membership.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "metabel/ideal.hpp"
#include "metabel/matgroup.hpp"
#include "metabel/series.hpp"

namespace metabel {

/// Membership verdict for one t-coefficient of one entry of M - I.
struct EntryVerdict {
  int row = 0;
  int col = 0;
  int t_power = 0;
  Verdict verdict;
};

struct MatrixVerdict {
  Status status = Status::Proved;
  /// Every decided entry in row-major, t-ascending order.  On REFUTED the
  /// list stops at the first refuted entry.
  std::vector<EntryVerdict> entries;

  std::size_t count(Status s) const;
};

/// M - I has every t-coefficient of every entry in I(q) Sigma.
MatrixVerdict is_identity_in_G(const MatPoly& m, std::int64_t q, const Budget& budget);
/// Same test for a t-free matrix.
MatrixVerdict is_identity_in_FS(const MatPoly& m, std::int64_t q, const Budget& budget);

/// Closed-form certificates that M^q = I in F(S): entry (i, j) of M^q - I is
/// delta_ij (u^q - 1) + c_u lambda_i (1 - x_j) with c_u = 1 + u + ... + u^{q-1}.
MatrixVerdict power_identity_certificates(const NormalForm& nf, std::int64_t q);

enum class OrderKind { FiniteDividing, Infinite, Unknown };
std::string to_string(OrderKind k);

struct OrderVerdict {
  OrderKind kind = OrderKind::Unknown;
  /// FiniteDividing: the least n | q with M^n = I proved.
  std::int64_t n = 0;
  /// True when every smaller divisor of q was refuted, so n is the order.
  bool exact = false;
  /// Infinite via the determinant: its t-exponent.
  std::optional<int> det_t_exponent;
  /// Infinite because M^q = I was refuted although the t-sum vanishes.
  bool power_refuted = false;
  MatrixVerdict evidence;
  /// Verdicts for the smaller divisors tried, ascending.
  std::vector<std::pair<std::int64_t, Status>> divisors;
  std::string note;
};

/// Order of the image of w (t-free, or specialized at t = 1) in F(S).
OrderVerdict order_in_FS(const GroupWord& w, std::int64_t q, const Budget& budget, int rank = 2);
/// Order dichotomy: nonzero t-exponent of det => infinite, else
/// tests W^q = I in G.  Only n = q is tried as a finite order.
OrderVerdict order_in_G(const GroupWord& w, std::int64_t q, const Budget& budget, int rank = 2);

enum class KernelStatus { InKernel, NotInKernel, Unknown };
std::string to_string(KernelStatus k);

struct KernelReport {
  KernelStatus status = KernelStatus::Unknown;
  /// 1: t-sum, 2: generator exponent sums mod q, 3: series, 4: exact.
  int decided_at = 0;
  ExponentSums sums;
  std::optional<MatrixVerdict> constant_term;  // M_f in F(S)
  /// Per order i >= 1: verdict for A_i.
  std::vector<std::pair<int, MatrixVerdict>> coefficients;
  /// Exact test of eval(w) - I over R[t, t^-1].
  std::optional<MatrixVerdict> exact;
  std::string note;
};

/// Staged kernel test for F(R[t, t^-1]) -> G.  Stage 3 always runs unless
/// stage 1 or 2 already decided; IN_KERNEL additionally needs the exact test
/// when `exact` is set.
KernelReport kernel_probe(const GroupWord& w, std::int64_t q, int trunc, const Budget& budget, bool exact = true,
                          int rank = 2);

/// Series-only identity test in G up to order D: M_f = I in F(S) and every
/// A_i vanishes in S.
struct SeriesIdentity {
  Status status = Status::Proved;
  MatrixVerdict constant_term;
  std::vector<std::pair<int, MatrixVerdict>> coefficients;
};
SeriesIdentity series_identity_in_G(const TruncSeries& s, std::int64_t q, const Budget& budget);

struct CorollaryReport {
  std::int64_t p = 2;
  bool idempotent = false;               // U^2 = U
  MatrixVerdict base_power;              // M_2^p = I in F(S)
  std::vector<std::pair<int, MatrixVerdict>> cross_terms;  // orders 1..p-1
  bool cross_terms_vanish = false;       // all PROVED in I(p) Sigma
  /// The reading where only I(p), not I(p) Sigma, is factored out: every
  /// cross-term entry decided against I(p).
  Status cross_terms_in_cyclotomic_ideal = Status::Unknown;
  MatrixVerdict top_term;                // order p, expected nonzero in S
  bool top_term_nonzero = false;
  std::vector<MatPoly> coefficients;     // (t-1)^j coefficients, j = 0..p

  /// U^2 = U, M_2^p = I in F(S), cross terms vanish, top term survives.
  bool identity_holds() const {
    return idempotent && base_power.status == Status::Proved && cross_terms_vanish && top_term_nonzero;
  }
};

/// Expands (M_2 + (t-1) M_2 U)^p and tests each (t-1)^j coefficient in S.
CorollaryReport corollary_tp_check(std::int64_t p);

}  // namespace metabel
