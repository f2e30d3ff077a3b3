#pragma once

// Exact integer lattice membership with witness combinations.
//
// Generators are sparse integer vectors.  The solver keeps an echelon basis
// (one row per leading index, leading entries positive) built with
// extended-gcd row operations, so every basis row is an integer combination
// of the generators and the rows span the same lattice.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "metabel/laurent.hpp"

namespace metabel {

using SparseVector = std::vector<std::pair<std::uint32_t, Integer>>;

/// Sorts by index, merges duplicates and drops zeros.
void normalize(SparseVector& v);

class LatticeSolver {
 public:
  /// Adds a generator and returns its id (ids are consecutive from 0).
  std::size_t add_generator(SparseVector v);

  /// Integer coefficients c with sum c_g * generator_g = target, or nullopt
  /// when the target lies outside the lattice.  Only nonzero c_g are listed,
  /// ordered by generator id.
  std::optional<std::vector<std::pair<std::size_t, Integer>>> solve(SparseVector target) const;

  std::size_t generator_count() const { return generators_.size(); }
  std::size_t rank() const { return plain_.rows.size(); }

 private:
  struct Row {
    SparseVector vec;
    SparseVector comb;  // indexed by generator id
  };
  struct Echelon {
    std::map<std::uint32_t, Row> rows;
    bool track = false;  // maintain comb alongside vec
    /// True when the row set changed.
    bool insert(SparseVector v, SparseVector comb);
    void reduce_tail(Row& row);
    void reduce_above(std::map<std::uint32_t, Row>::iterator pivot);
  };

  std::vector<SparseVector> generators_;
  std::vector<std::size_t> useful_;
  Echelon plain_;
  mutable std::optional<Echelon> tracked_;
};

/// Submodule membership in (Z/p^e)^N with witness combinations.  Rows are
/// kept in Howell form: leading entries are powers of p, and for every row
/// with leading entry p^b the multiple p^{e-b} * row (which loses its lead)
/// is inserted as well, so greedy reduction in index order is complete.
class ModularLatticeSolver {
 public:
  using Vector = std::vector<std::pair<std::uint32_t, std::int64_t>>;

  ModularLatticeSolver(std::int64_t p, int e);

  std::size_t add_generator(const Vector& v);
  /// Coefficients (mod p^e) of a combination congruent to target, or nullopt.
  std::optional<std::vector<std::pair<std::size_t, std::int64_t>>> solve(const Vector& target) const;

  std::int64_t modulus() const { return modulus_; }
  std::size_t generator_count() const { return generators_; }
  std::size_t rank() const { return rows_.size(); }

 private:
  struct Row {
    Vector vec;
    Vector comb;
  };
  void reduce(Vector& v) const;
  int valuation(std::int64_t a) const;
  std::int64_t inverse(std::int64_t unit) const;
  void axpy(Vector& a, std::int64_t c, const Vector& b) const;
  void scale(Vector& a, std::int64_t c) const;

  std::int64_t p_;
  int e_;
  std::int64_t modulus_;
  std::map<std::uint32_t, Row> rows_;
  std::size_t generators_ = 0;
};

/// a += c * b on sparse vectors.
void axpy(SparseVector& a, const Integer& c, const SparseVector& b);

}  // namespace metabel
