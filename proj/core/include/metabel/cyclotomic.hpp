#pragma once

// Cyclotomic integers Z[X]/Phi_n and evaluation homomorphisms out of R.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "metabel/laurent.hpp"

namespace metabel {

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
/// Computed as (X^n - 1) / prod_{d | n, d < n} Phi_d and cached.
const std::vector<Integer>& cyclotomic_polynomial(std::int64_t n);

class CyclotomicInteger {
 public:
  CyclotomicInteger() = default;
  /// The integer c embedded in Z[omega_n].
  CyclotomicInteger(std::int64_t n, const Integer& c);
  /// Reduces an arbitrary integer polynomial (constant term first) mod Phi_n.
  static CyclotomicInteger from_polynomial(std::int64_t n, std::vector<Integer> coeffs);
  /// omega_n^a for any integer a.
  static CyclotomicInteger root_power(std::int64_t n, std::int64_t a);

  std::int64_t order() const { return n_; }
  /// Residue coefficients in the basis 1, omega, ..., omega^{phi(n)-1}.
  const std::vector<Integer>& coefficients() const { return coeffs_; }
  bool is_zero() const;

  bool divisible_by(const Integer& d) const;
  /// Exact division; requires divisible_by(d).
  CyclotomicInteger divided_by(const Integer& d) const;
  /// Image under omega -> 1 of the residue representative.  Well defined
  /// modulo Phi_n(1), which is p for n = p^e.
  Integer coefficient_sum() const;

  /// Image under the automorphism omega -> omega^j, gcd(j, n) = 1.
  CyclotomicInteger galois(std::int64_t j) const;
  /// Product of all Galois conjugates; an ordinary integer.
  Integer norm() const;
  /// Inverse when this is a unit (norm +-1), otherwise throws.
  CyclotomicInteger inverse() const;

  CyclotomicInteger& operator+=(const CyclotomicInteger& o);
  CyclotomicInteger& operator-=(const CyclotomicInteger& o);
  friend CyclotomicInteger operator+(CyclotomicInteger a, const CyclotomicInteger& b) { return a += b; }
  friend CyclotomicInteger operator-(CyclotomicInteger a, const CyclotomicInteger& b) { return a -= b; }
  friend CyclotomicInteger operator*(const CyclotomicInteger& a, const CyclotomicInteger& b);
  CyclotomicInteger operator-() const;
  friend bool operator==(const CyclotomicInteger& a, const CyclotomicInteger& b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const;

 private:
  void check_same(const CyclotomicInteger& o) const;

  std::int64_t n_ = 1;
  std::vector<Integer> coeffs_;
};

/// Ring homomorphism R -> Z given the image of each variable.  Every image
/// must be a unit of Z, i.e. +-1.
Integer evaluate_hom(const LaurentPoly& a, std::span<const Integer> images);

/// Ring homomorphism R -> Z[omega_n].  Every image must be a unit; inverses
/// are formed only for variables that occur with a negative exponent.
CyclotomicInteger evaluate_hom(const LaurentPoly& a, std::span<const CyclotomicInteger> images);

/// Shortcut for x_i -> omega_n^{exponents[i]}.
CyclotomicInteger evaluate_at_roots(const LaurentPoly& a, std::int64_t n,
                                    std::span<const int> exponents);

}  // namespace metabel
