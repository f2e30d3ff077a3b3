#pragma once

// Truncated (t - 1)-adic expansions A_0 + (t-1) A_1 + ... + (t-1)^D A_D of
// elements of F(R[t, t^-1]), with t-free matrix coefficients.

#include <map>
#include <optional>
#include <vector>

#include "metabel/matgroup.hpp"

namespace metabel {

class TruncSeries {
 public:
  /// The identity series of dimension `dim` over the t-free rank-`dim` ring.
  static TruncSeries identity(int dim, int trunc);
  /// A constant series M + 0 (t-1) + ...
  static TruncSeries constant(const MatPoly& m, int trunc);

  int trunc() const { return static_cast<int>(coeffs_.size()) - 1; }
  int dim() const { return coeffs_.front().dim(); }
  const Ring& ring() const { return coeffs_.front().ring(); }
  const MatPoly& operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
  const std::vector<MatPoly>& coefficients() const { return coeffs_; }

  /// Truncated product; orders beyond min(D, D') are dropped.
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) = default;

  /// Keeps orders 0..d (d <= trunc()).
  TruncSeries truncated(int d) const;
  bool is_identity() const;

  /// Right multiplication by a single generator letter, exponent +-1.
  void multiply_letter(int generator, bool inverse);

 private:
  explicit TruncSeries(std::vector<MatPoly> coeffs) : coeffs_(std::move(coeffs)) {}

  std::vector<MatPoly> coeffs_;
};

/// Expansion of eval_word(w, rank, true) to order D.
TruncSeries expand(const GroupWord& w, int trunc, int rank = 2);

/// Smallest i >= 1 with A_i != 0; nullopt when A_1..A_D all vanish.
/// Throws std::invalid_argument unless A_0 = I.
std::optional<int> min_order(const TruncSeries& s);

/// Order i -> minimum sigma_degree over the entries of A_i (A_0 - I for
/// order 0).  Orders whose coefficient vanishes are omitted.
std::map<int, int> coeff_sigma_floor(const TruncSeries& s);

}  // namespace metabel
