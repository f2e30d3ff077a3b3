#pragma once

// Exact multivariate Laurent polynomials over arbitrary-precision integers.
//
// A ring is Z[x_1^±, ..., x_k^±] optionally extended by a distinguished final
// variable t^±.  Polynomials are stored as a sorted vector of (monomial,
// coefficient) pairs with no zero coefficients, so equality is structural.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace metabel {

// Expression templates are disabled so `auto` and `?:` behave like plain values.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

/// Raised when operands live in different rings, or input text is malformed.
class RingMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a value does not have the algebraic shape an operation needs
/// (a matrix outside F(R), a determinant that is not a unit, ...).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxVariables = 8;
inline constexpr int kInfiniteDegree = std::numeric_limits<int>::max();

struct Ring {
  int rank = 2;
  bool has_t = false;

  /// Validating factory; rank >= 1 and the total variable count must fit.
  static Ring of(int rank, bool has_t = false);

  int variable_count() const { return rank + (has_t ? 1 : 0); }
  int t_index() const { return rank; }
  Ring without_t() const { return Ring{rank, false}; }
  Ring with_t() const { return Ring{rank, true}; }

  /// `x y t` for rank 2, `x1 .. xk t` otherwise.
  std::string variable_name(int index) const;

  auto operator<=>(const Ring&) const = default;
};

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(int variables);
  Monomial(std::initializer_list<int> exponents);
  static Monomial from(std::span<const int> exponents);

  int size() const { return size_; }
  int operator[](int i) const { return exps_[static_cast<std::size_t>(i)]; }
  void set(int i, int value) { exps_[static_cast<std::size_t>(i)] = value; }

  bool is_one() const;
  Monomial inverse() const;
  Monomial pow(int n) const;
  std::vector<int> exponents() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);

  // Unused slots are zero, so comparing the full array is lexicographic on
  // the live exponent vector.
  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

  std::size_t hash() const;

 private:
  std::array<std::int32_t, kMaxVariables> exps_{};
  std::uint8_t size_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

class LaurentPoly {
 public:
  using Term = std::pair<Monomial, Integer>;

  explicit LaurentPoly(Ring ring = Ring{});

  static LaurentPoly constant(Ring ring, const Integer& c);
  static LaurentPoly one(Ring ring) { return constant(ring, 1); }
  static LaurentPoly variable(Ring ring, int index);
  static LaurentPoly monomial(Ring ring, const Monomial& m, const Integer& c = 1);
  /// 1 - x_index, the standard generator of the augmentation ideal.
  static LaurentPoly one_minus(Ring ring, int index);
  /// Sorts, combines like terms and drops zeros.
  static LaurentPoly from_terms(Ring ring, std::vector<Term> terms);
  /// Exact text parser; see README for the grammar.
  static LaurentPoly parse(std::string_view text, Ring ring);

  const Ring& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  /// True for c * monomial with c = ±1.
  bool is_unit_monomial() const;

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const LaurentPoly& other);
  LaurentPoly operator-() const;

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const Integer& c, const LaurentPoly& a);

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.ring_ == b.ring_ && a.terms_ == b.terms_;
  }

  /// Multiplication by the unit monomial m (order preserving, no hashing).
  LaurentPoly shifted(const Monomial& m) const;
  LaurentPoly pow(unsigned n) const;

  /// Component-wise minimum / maximum exponent over the support.  Requires a
  /// nonzero polynomial.
  Monomial min_exponents() const;
  Monomial max_exponents() const;

  /// Sets x_index = 1; the result stays in the same ring.
  LaurentPoly at_one(int index) const;
  /// t -> 1, landing in the t-free ring.
  LaurentPoly specialize_t_one() const;
  /// Embeds a t-free polynomial into the ring with t.
  LaurentPoly with_t() const;

  std::string to_string() const;

 private:
  void check_same_ring(const LaurentPoly& other) const;

  Ring ring_;
  std::vector<Term> terms_;
};

enum class ArithOp { Add, Sub, Mul };

LaurentPoly poly_arith(const LaurentPoly& a, const LaurentPoly& b, ArithOp op);
LaurentPoly poly_pow(const LaurentPoly& a, unsigned n);

/// Sum of coefficients: the image under every variable -> 1.
Integer augmentation(const LaurentPoly& a);

/// Largest c with a in Sigma^c (kInfiniteDegree for a = 0).  Requires a
/// t-free polynomial.  Shifts a by a unit into the polynomial ring, then
/// substitutes x_i = 1 + s_i and returns the lowest total s-degree.
int sigma_degree(const LaurentPoly& a);

/// a = sum_m t^m * result[m]; only nonzero coefficients appear.
std::map<int, LaurentPoly> t_coefficients(const LaurentPoly& a);

/// Exact quotient a / (1 - x_index), or nullopt when (1 - x_index) does not
/// divide a.
std::optional<LaurentPoly> divide_one_minus(const LaurentPoly& a, int index);

/// Writes a in Sigma^m as sum over |alpha| = m of h_alpha * prod (1-x_i)^alpha_i.
/// Throws std::invalid_argument if a is not in Sigma^m.
std::map<std::vector<int>, LaurentPoly> sigma_power_decomposition(const LaurentPoly& a, int m);

/// prod_i (1 - x_i)^alpha_i.
LaurentPoly sigma_monomial(Ring ring, std::span<const int> alpha);

/// Generalized binomial coefficient C(n, k) for any integer n and k >= 0.
Integer binomial(const Integer& n, int k);

/// Coordinates of R / Sigma^m: coefficients of s^alpha, |alpha| < m, where
/// x_i = 1 + s_i and negative powers expand as binomial series.  The basis is
/// ordered by total degree, then lexicographically.
class SigmaAdicBasis {
 public:
  SigmaAdicBasis(int rank, int m);

  int rank() const { return rank_; }
  int truncation() const { return m_; }
  std::size_t size() const { return alphas_.size(); }
  const std::vector<std::vector<int>>& exponents() const { return alphas_; }

  std::vector<Integer> coefficients(const LaurentPoly& a) const;

 private:
  int rank_;
  int m_;
  std::vector<std::vector<int>> alphas_;
};

/// All exponent vectors of length `rank` with entries >= 0 summing to `degree`,
/// in lexicographically decreasing order (x_1-heavy first).
std::vector<std::vector<int>> exponent_vectors_of_degree(int rank, int degree);

struct ExponentSpec {
  std::int64_t q = 2;
  std::int64_t p = 2;
  int e = 1;
  std::int64_t phi = 1;
  std::int64_t ephi = 1;

  /// Throws std::invalid_argument unless q is a prime power.
  static ExponentSpec from_q(std::int64_t q);
  bool is_prime() const { return e == 1; }
};

/// Returns (p, e) with q = p^e, or nullopt when q is not a prime power.
std::optional<std::pair<std::int64_t, int>> prime_power_decomposition(std::int64_t q);

}  // namespace metabel
