#pragma once

// Matrix groups over Laurent polynomial rings, group words and the
// u*I + N normal form of elements of F(R).

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "metabel/laurent.hpp"

namespace metabel {

class MatPoly {
 public:
  MatPoly() = default;
  MatPoly(Ring ring, int dim);  // zero matrix
  static MatPoly identity(Ring ring, int dim);

  const Ring& ring() const { return ring_; }
  int dim() const { return dim_; }
  const LaurentPoly& operator()(int r, int c) const { return e_[index(r, c)]; }
  LaurentPoly& operator()(int r, int c) { return e_[index(r, c)]; }

  bool is_zero() const;
  bool is_identity() const;

  MatPoly& operator+=(const MatPoly& o);
  MatPoly& operator-=(const MatPoly& o);
  friend MatPoly operator+(MatPoly a, const MatPoly& b) { return a += b; }
  friend MatPoly operator-(MatPoly a, const MatPoly& b) { return a -= b; }
  friend MatPoly operator*(const MatPoly& a, const MatPoly& b);
  friend MatPoly operator*(const LaurentPoly& c, const MatPoly& a);
  friend bool operator==(const MatPoly& a, const MatPoly& b) {
    return a.ring_ == b.ring_ && a.dim_ == b.dim_ && a.e_ == b.e_;
  }

  MatPoly pow(unsigned n) const;
  /// t -> 1 entrywise.
  MatPoly specialize_t_one() const;
  /// Embeds into the ring with t.
  MatPoly with_t() const;

  std::string to_string() const;

 private:
  std::size_t index(int r, int c) const { return static_cast<std::size_t>(r * dim_ + c); }

  Ring ring_{};
  int dim_ = 0;
  std::vector<LaurentPoly> e_;
};

struct Letter {
  int generator = 1;  // 1-based: M1, M2T2, ..., MkTk
  int exponent = 1;
  bool operator==(const Letter&) const = default;
};

/// A freely reduced word.  Adjacent letters never share a generator.
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::vector<Letter> letters);
  static GroupWord letter(int generator, int exponent = 1);

  /// Accepts `M1 M2T^-1 [w1, w2] (w)^n`; `M2` and `M2T` are the same
  /// generator, and `MjTj` / `Mj` name generator j in higher rank.
  /// Brackets with more than two entries are left-normed.
  static GroupWord parse(std::string_view text);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  /// Number of generator occurrences, sum of |exponent|.
  std::size_t length() const;
  int max_generator() const;

  GroupWord inverse() const;
  GroupWord pow(int n) const;
  friend GroupWord operator*(const GroupWord& a, const GroupWord& b);
  friend bool operator==(const GroupWord& a, const GroupWord& b) = default;

  /// [a, b] = a b a^-1 b^-1.
  static GroupWord commutator(const GroupWord& a, const GroupWord& b);
  /// [w1, w2, ..., wn] = [[w1, w2], ..., wn].
  static GroupWord left_normed(const std::vector<GroupWord>& words);

  /// `M1 M2T^-1 M1^2` for rank 2, `M1 M3T3` beyond.
  std::string to_string() const;

 private:
  void push(Letter l);

  std::vector<Letter> letters_;
};

/// Generator matrices for rank k >= 2.  Without t: M_j = x_j I + e_j v.
/// With t: M_1 and M_j T_j for j >= 2.
std::vector<MatPoly> make_generators(int rank, bool with_t);
/// Closed-form inverses, in the same order.
std::vector<MatPoly> make_generator_inverses(int rank, bool with_t);

/// T_j = I + (t - 1) U_j; this returns the integer matrix U_j (j >= 2).
MatPoly t_idempotent(int rank, int j);
/// The t-free factor M_j and its inverse.
MatPoly base_generator(int rank, int j);
MatPoly base_generator_inverse(int rank, int j);

MatPoly eval_word(const GroupWord& w, int rank, bool with_t);

struct NormalForm {
  Ring ring{};
  Monomial u;
  std::vector<LaurentPoly> lambdas;

  /// N with rows lambda_i * v.
  MatPoly nilpart() const;
  MatPoly to_matrix() const;
  LaurentPoly unit() const { return LaurentPoly::monomial(ring, u); }
};

/// The v = (1 - x_1, ..., 1 - x_k) row vector.
std::vector<LaurentPoly> augmentation_row(Ring ring);

/// Throws StructuralError when M is not of the form u I + [lambda_i v].
NormalForm normal_form(const MatPoly& m);
/// Normal form of M^n via u^n and (1 + u + ... + u^{n-1}) lambda.
NormalForm fast_power(const NormalForm& nf, unsigned n);

/// lambda pair of the basic commutator with M_1 occurring a+1 times and
/// M_2 occurring b+1 times (rank 2).
std::pair<LaurentPoly, LaurentPoly> basic_commutator_lambda(int a, int b);
/// The left-normed word [M2, M1, M1 (a times), M2 (b times)].
GroupWord basic_commutator_word(int a, int b);

enum class StratumKind { Derived, LowerCentral };
struct Stratum {
  StratumKind kind = StratumKind::Derived;
  int depth = 1;
};

/// Deterministic word sampler.  Base words have 1..max_base_letters
/// letters with exponent +-1.
class WordSampler {
 public:
  explicit WordSampler(std::uint64_t seed, int rank = 2, int max_base_letters = 3);

  GroupWord random_word(int max_letters);
  GroupWord base_word() { return random_word(max_base_letters_); }
  /// Iterated commutator tree of depth k; never the empty word.
  GroupWord derived(int k);
  /// [w1, ..., wj] of j base words; never the empty word.
  GroupWord lower_central(int j);
  GroupWord sample(const Stratum& s);

 private:
  std::uint64_t uniform(std::uint64_t n) { return rng_() % n; }

  std::mt19937_64 rng_;
  int rank_;
  int max_base_letters_;
};

GroupWord sample_subgroup_element(const Stratum& s, std::uint64_t seed, int max_base_letters = 3, int rank = 2);

struct ExponentSums {
  std::map<int, int> per_generator;
  int t_sum = 0;
};
ExponentSums exponent_sums(const GroupWord& w);

struct SignedUnit {
  int sign = 1;
  Monomial monomial;
  std::string to_string(Ring ring) const;
};

/// det(M) as +-monomial; throws StructuralError otherwise.
SignedUnit determinant_unit(const MatPoly& m);
LaurentPoly determinant(const MatPoly& m);

/// Exponent of t in det(eval(w)): generator j contributes (j - 1) per
/// occurrence, which for rank 2 is the t_sum.
int determinant_t_exponent(const GroupWord& w);

/// Integer image of a rank-2 word at x = 1, y = t = -1.
std::array<Integer, 4> sanov_image(const GroupWord& w);

}  // namespace metabel
