#pragma once

// Membership in Sigma^m, I(q) and I(q)Sigma with explicit evidence.
//
// A "yes" is a Certificate: target = sum generator * multiplier, checked by
// exact expansion.  A "no" is an Obstruction: a ring map under which the
// whole ideal lands in a set that misses the image of the target.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "metabel/cyclotomic.hpp"
#include "metabel/laurent.hpp"

namespace metabel {

enum class IdealKind { SigmaPower, Cyclotomic, CyclotomicTimesSigma };

struct IdealSpec {
  IdealKind kind = IdealKind::Cyclotomic;
  int m = 1;                // SigmaPower only
  ExponentSpec exps{};      // cyclotomic kinds only
  int window = 1;           // units x^a with |a_i| <= window enter the generator list
  int rank = 2;

  static IdealSpec sigma_power(int m, int rank = 2);
  static IdealSpec cyclotomic(std::int64_t q, int rank = 2, int window = -1);
  static IdealSpec cyclotomic_times_sigma(std::int64_t q, int rank = 2, int window = -1);

  Ring ring() const { return Ring::of(rank); }
  IdealSpec with_window(int w) const;
  /// "sigma^m", "cyclo", "cyclo-sigma".
  std::string kind_name() const;
};

/// Unit exponent vectors with |a_i| <= window, ordered by max |a_i|, then
/// coordinate-wise with a before -a.
std::vector<std::vector<int>> unit_window(int rank, int window);

/// c_u = 1 + u + ... + u^{q-1}.
LaurentPoly cyclotomic_generator(Ring ring, std::span<const int> unit, std::int64_t q);

std::vector<LaurentPoly> generators(const IdealSpec& spec);

/// True when g is a generator of the full (untruncated) ideal: c_u for a
/// positive unit u, c_u * (1 - x_j), or a product of m factors (1 - x_i).
bool is_ideal_generator(const LaurentPoly& g, const IdealSpec& spec);

struct CertificatePart {
  LaurentPoly generator;
  LaurentPoly multiplier;
};

struct Certificate {
  LaurentPoly target;
  std::vector<CertificatePart> parts;

  /// Sum of generator * multiplier.
  LaurentPoly expand() const;
  /// Expansion equals the target and every generator is legitimate.
  bool verify(const IdealSpec& spec) const;
};

/// Merges parts with equal generators, drops zero multipliers and checks the
/// expansion; throws std::logic_error if it does not reproduce the target.
Certificate make_certificate(LaurentPoly target, std::vector<CertificatePart> parts);

enum class ObstructionKind { Augmentation, RootOfUnity, GroupRing, SigmaAdic };

struct Obstruction {
  ObstructionKind kind = ObstructionKind::Augmentation;
  LaurentPoly target;
  /// RootOfUnity: x_i -> omega_q^{exponents[i]}.
  std::vector<int> exponents;
  std::int64_t root_order = 1;
  /// Augmentation: {augmentation}.  RootOfUnity: residue coefficients.
  /// GroupRing: (index, residue) pairs of the image in (Z/q)[C_q^k]^c.
  /// SigmaAdic: coordinates in R / Sigma^truncation.
  std::vector<Integer> value;
  int truncation = 0;
  std::string reason;

  /// Recomputes the image and the incompatibility test.
  bool verify(const IdealSpec& spec) const;
};

enum class Status { Proved, Refuted, Unknown };
std::string to_string(Status s);

struct BoundReport {
  int window = 0;
  int box = 0;
  std::size_t columns = 0;
  std::string note;
};

struct Verdict {
  Status status = Status::Unknown;
  std::optional<Certificate> certificate;
  std::optional<Obstruction> obstruction;
  BoundReport bounds;
};

struct Budget {
  int window = 1;
  int box = 2;
  int escalations = 2;           // each doubles window and box
  std::size_t max_columns = 40000;

  /// W = e*phi(q), B = e*phi(q) + 1.
  static Budget defaults(const ExponentSpec& exps);
};

/// Bounded-support integer linear search.  Multipliers range over monomials
/// in the box hull of the target's support widened by `box`; generators are
/// those of `spec` (window included).  Never refutes.
Verdict find_certificate(const LaurentPoly& target, const IdealSpec& spec, int box,
                         std::size_t max_columns = 40000);

/// Augmentation, root-of-unity sweep, then an exact lattice test in a finite
/// quotient (the group ring (Z/q)[C_q^k] when small, else R/Sigma^m).
/// Never proves.
Verdict find_obstruction(const LaurentPoly& target, const IdealSpec& spec);

/// Obstruction first, then certificate search with escalation.  See README
/// for the order of the stages.
Verdict decide(const LaurentPoly& target, const IdealSpec& spec, const Budget& budget);

/// Largest truncation used by the Sigma-adic obstruction.
inline constexpr std::int64_t kDeskScaleLimit = 8;

}  // namespace metabel
