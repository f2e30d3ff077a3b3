#include "metabel/ideal.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "metabel/lattice.hpp"

namespace metabel {

// ---------------------------------------------------------------- specs

IdealSpec IdealSpec::sigma_power(int m, int rank) {
  if (m < 0) throw std::invalid_argument("sigma power must be nonnegative");
  IdealSpec s;
  s.kind = IdealKind::SigmaPower;
  s.m = m;
  s.rank = rank;
  s.window = 0;
  return s;
}

IdealSpec IdealSpec::cyclotomic(std::int64_t q, int rank, int window) {
  IdealSpec s;
  s.kind = IdealKind::Cyclotomic;
  s.exps = ExponentSpec::from_q(q);
  s.rank = rank;
  s.window = window < 0 ? static_cast<int>(s.exps.ephi) : window;
  return s;
}

IdealSpec IdealSpec::cyclotomic_times_sigma(std::int64_t q, int rank, int window) {
  IdealSpec s = cyclotomic(q, rank, window);
  s.kind = IdealKind::CyclotomicTimesSigma;
  return s;
}

IdealSpec IdealSpec::with_window(int w) const {
  IdealSpec s = *this;
  s.window = w;
  return s;
}

std::string IdealSpec::kind_name() const {
  switch (kind) {
    case IdealKind::SigmaPower: return "sigma^" + std::to_string(m);
    case IdealKind::Cyclotomic: return "cyclo";
    case IdealKind::CyclotomicTimesSigma: return "cyclo-sigma";
  }
  return "?";
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Proved: return "PROVED";
    case Status::Refuted: return "REFUTED";
    case Status::Unknown: return "UNKNOWN";
  }
  return "?";
}

Budget Budget::defaults(const ExponentSpec& exps) {
  Budget b;
  b.window = static_cast<int>(exps.ephi);
  b.box = static_cast<int>(exps.ephi) + 1;
  return b;
}

// ---------------------------------------------------------------- generators

std::vector<std::vector<int>> unit_window(int rank, int window) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(rank), 0);
  auto key = [](const std::vector<int>& a) {
    int mx = 0;
    for (int v : a) mx = std::max(mx, std::abs(v));
    std::vector<int> k{mx};
    for (int v : a) {
      k.push_back(std::abs(v));
      k.push_back(v < 0 ? 1 : 0);
    }
    return k;
  };
  std::function<void(int)> rec = [&](int i) {
    if (i == rank) {
      out.push_back(cur);
      return;
    }
    for (int v = -window; v <= window; ++v) {
      cur[static_cast<std::size_t>(i)] = v;
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return out;
}

LaurentPoly cyclotomic_generator(Ring ring, std::span<const int> unit, std::int64_t q) {
  std::vector<LaurentPoly::Term> terms;
  Monomial u = Monomial::from(unit);
  Monomial cur(ring.variable_count());
  for (std::int64_t i = 0; i < q; ++i) {
    terms.emplace_back(cur, Integer(1));
    cur = cur * u;
  }
  return LaurentPoly::from_terms(ring, std::move(terms));
}

std::vector<LaurentPoly> generators(const IdealSpec& spec) {
  const Ring ring = spec.ring();
  std::vector<LaurentPoly> out;
  if (spec.kind == IdealKind::SigmaPower) {
    for (const auto& a : exponent_vectors_of_degree(spec.rank, spec.m)) out.push_back(sigma_monomial(ring, a));
    return out;
  }
  for (const auto& u : unit_window(spec.rank, spec.window)) {
    LaurentPoly c = cyclotomic_generator(ring, u, spec.exps.q);
    if (spec.kind == IdealKind::Cyclotomic) {
      out.push_back(std::move(c));
    } else {
      for (int j = 0; j < spec.rank; ++j) out.push_back(c * LaurentPoly::one_minus(ring, j));
    }
  }
  return out;
}

namespace {

bool is_cyclotomic_element(const LaurentPoly& g, std::int64_t q) {
  const Ring ring = g.ring();
  if (g == LaurentPoly::constant(ring, q)) return true;
  if (static_cast<std::int64_t>(g.size()) != q) return false;
  for (const auto& [m, c] : g.terms())
    if (c != 1) return false;
  for (const auto& [m, c] : g.terms()) {
    if (m.is_one()) continue;
    auto e = m.exponents();
    if (cyclotomic_generator(ring, e, q) == g) return true;
  }
  return false;
}

}  // namespace

bool is_ideal_generator(const LaurentPoly& g, const IdealSpec& spec) {
  if (g.ring() != spec.ring()) return false;
  switch (spec.kind) {
    case IdealKind::SigmaPower: {
      if (spec.m == 0) return g.is_one();
      if (g.is_zero()) return false;
      auto hi = g.max_exponents().exponents();
      int total = 0;
      for (int v : hi) total += v;
      return total == spec.m && sigma_monomial(g.ring(), hi) == g;
    }
    case IdealKind::Cyclotomic: return is_cyclotomic_element(g, spec.exps.q);
    case IdealKind::CyclotomicTimesSigma:
      for (int j = 0; j < spec.rank; ++j) {
        auto d = divide_one_minus(g, j);
        if (d && !d->is_zero() && is_cyclotomic_element(*d, spec.exps.q)) return true;
      }
      return false;
  }
  return false;
}

// ---------------------------------------------------------------- certificates

LaurentPoly Certificate::expand() const {
  LaurentPoly sum(target.ring());
  for (const auto& p : parts) sum += p.generator * p.multiplier;
  return sum;
}

bool Certificate::verify(const IdealSpec& spec) const {
  for (const auto& p : parts)
    if (!is_ideal_generator(p.generator, spec)) return false;
  return expand() == target;
}

Certificate make_certificate(LaurentPoly target, std::vector<CertificatePart> parts) {
  // Stable merge keyed by the generator's canonical text.
  std::vector<CertificatePart> merged;
  std::map<std::string, std::size_t> index;
  for (auto& p : parts) {
    if (p.multiplier.is_zero() || p.generator.is_zero()) continue;
    auto key = p.generator.to_string();
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(std::move(key), merged.size());
      merged.push_back(std::move(p));
    } else {
      merged[it->second].multiplier += p.multiplier;
    }
  }
  std::erase_if(merged, [](const CertificatePart& p) { return p.multiplier.is_zero(); });
  Certificate cert{std::move(target), std::move(merged)};
  if (cert.expand() != cert.target) throw std::logic_error("certificate does not expand to its target");
  return cert;
}

// ---------------------------------------------------------------- Sigma-adic lattice

namespace {

struct SigmaAdicLattice {
  SigmaAdicBasis basis;
  LatticeSolver solver;
  std::vector<LaurentPoly> column_generator;
  std::vector<LaurentPoly> column_factor;  // (1-x)^gamma
};

SparseVector to_sparse(const std::vector<Integer>& coords) {
  SparseVector v;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != 0) v.emplace_back(static_cast<std::uint32_t>(i), coords[i]);
  return v;
}

// The image of I(q) (or I(q)Sigma) in R/Sigma^m is spanned by the images of
// c_u * (1-x)^gamma (times 1-x_j), |gamma| < m.  The coordinates of c_{x^a}
// are integer-valued polynomials in a of degree < m, so units x^a with a >= 0
// and |a| < m already span it.
std::shared_ptr<const SigmaAdicLattice> sigma_adic_lattice(IdealKind kind, std::int64_t q, int rank, int m) {
  static std::mutex mutex;
  static std::map<std::tuple<int, std::int64_t, int, int>, std::shared_ptr<const SigmaAdicLattice>> cache;
  const auto key = std::make_tuple(static_cast<int>(kind), q, rank, m);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto lat = std::make_shared<SigmaAdicLattice>(SigmaAdicLattice{SigmaAdicBasis(rank, m), {}, {}, {}});
  const Ring ring = Ring::of(rank);
  std::vector<std::vector<int>> units;
  for (int d = 0; d < m; ++d)
    for (auto& a : exponent_vectors_of_degree(rank, d)) units.push_back(std::move(a));
  for (const auto& u : units) {
    LaurentPoly c = cyclotomic_generator(ring, u, q);
    std::vector<LaurentPoly> gens;
    if (kind == IdealKind::Cyclotomic) {
      gens.push_back(c);
    } else {
      for (int j = 0; j < rank; ++j) gens.push_back(c * LaurentPoly::one_minus(ring, j));
    }
    const int extra = kind == IdealKind::Cyclotomic ? 0 : 1;
    for (const auto& g : gens) {
      for (int d = 0; d + extra < m; ++d) {
        for (const auto& gamma : exponent_vectors_of_degree(rank, d)) {
          LaurentPoly f = sigma_monomial(ring, gamma);
          lat->solver.add_generator(to_sparse(lat->basis.coefficients(g * f)));
          lat->column_generator.push_back(g);
          lat->column_factor.push_back(std::move(f));
        }
      }
    }
  }
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(lat)).first->second;
}

int sigma_adic_truncation(const IdealSpec& spec) {
  const int ephi = static_cast<int>(std::min<std::int64_t>(spec.exps.ephi, kDeskScaleLimit));
  return spec.kind == IdealKind::Cyclotomic ? ephi : ephi + 1;
}

bool sigma_adic_member(const LaurentPoly& target, const IdealSpec& spec, int m, std::vector<Integer>* coords) {
  auto lat = sigma_adic_lattice(spec.kind, spec.exps.q, spec.rank, m);
  auto c = lat->basis.coefficients(target);
  bool member = lat->solver.solve(to_sparse(c)).has_value();
  if (coords) *coords = std::move(c);
  return member;
}

bool root_image_admissible(const CyclotomicInteger& z, const IdealSpec& spec, bool all_trivial) {
  const Integer q = spec.exps.q;
  if (spec.kind == IdealKind::Cyclotomic) return z.divisible_by(q);
  if (all_trivial) return z.is_zero();
  if (!z.divisible_by(q)) return false;
  return z.divided_by(q).coefficient_sum() % spec.exps.p == 0;
}

}  // namespace

namespace {

// ---------------------------------------------------------------- group-ring quotient
//
// I(q) contains q and every x_i^q - 1 = -(1 - x_i) c_{x_i}, so it contains
// J = (q, x_1^q - 1, ..., x_k^q - 1) and membership is decided in the finite
// ring A = R/J = (Z/q)[C_q^k].  For I(q)Sigma, write f = sum h_j (1 - x_j);
// the h_j are unique up to Koszul syzygies, so f is a member iff (h_j) lies
// in I(q)^k + Koszul relations, which is again a question over A^k.

struct GroupRingColumn {
  bool koszul = false;
  std::vector<int> unit;   // cyclotomic column: c_u
  std::vector<int> shift;  // multiplier x^s
  int j = 0;               // component (cyclotomic) or the pair (i, j) (Koszul)
  int i = 0;
};

struct GroupRingLattice {
  std::int64_t q;
  int rank;
  ModularLatticeSolver solver;
  std::vector<GroupRingColumn> columns;
};

std::int64_t group_ring_size(std::int64_t q, int rank) {
  std::int64_t n = 1;
  for (int i = 0; i < rank; ++i) n *= q;
  return n;
}

std::vector<std::vector<int>> residue_box(std::int64_t q, int rank) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(rank), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == rank) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v < q; ++v) {
      cur[static_cast<std::size_t>(i)] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::uint32_t group_ring_index(const Monomial& m, std::int64_t q, int rank, int component) {
  std::int64_t idx = 0;
  std::int64_t scale = 1;
  for (int i = 0; i < rank; ++i) {
    idx += (((m[i] % q) + q) % q) * scale;
    scale *= q;
  }
  return static_cast<std::uint32_t>(idx + component * scale);
}

void add_image(ModularLatticeSolver::Vector& v, const LaurentPoly& a, std::int64_t q, int rank, int component,
               std::int64_t sign = 1) {
  for (const auto& [m, c] : a.terms()) {
    Integer r = c % q;
    v.emplace_back(group_ring_index(m, q, rank, component), sign * static_cast<std::int64_t>(r));
  }
}

bool group_ring_in_scale(const IdealSpec& spec) {
  const std::int64_t n = group_ring_size(spec.exps.q, spec.rank);
  return n <= 512 && spec.rank * n * n <= 20000;
}

std::shared_ptr<const GroupRingLattice> group_ring_lattice(const IdealSpec& spec) {
  static std::mutex mutex;
  static std::map<std::tuple<int, std::int64_t, int>, std::shared_ptr<const GroupRingLattice>> cache;
  const auto key = std::make_tuple(static_cast<int>(spec.kind), spec.exps.q, spec.rank);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const std::int64_t q = spec.exps.q;
  const int k = spec.rank;
  const Ring ring = spec.ring();
  auto lat = std::make_shared<GroupRingLattice>(GroupRingLattice{q, k, ModularLatticeSolver(spec.exps.p, spec.exps.e), {}});
  const auto box = residue_box(q, k);
  const int components = spec.kind == IdealKind::Cyclotomic ? 1 : k;
  for (const auto& u : box) {
    LaurentPoly c = cyclotomic_generator(ring, u, q);
    for (const auto& s : box) {
      LaurentPoly cs = c.shifted(Monomial::from(s));
      for (int j = 0; j < components; ++j) {
        ModularLatticeSolver::Vector v;
        add_image(v, cs, q, k, j);
        lat->solver.add_generator(v);
        lat->columns.push_back({false, u, s, j, 0});
      }
    }
  }
  if (spec.kind == IdealKind::CyclotomicTimesSigma) {
    for (const auto& s : box) {
      const Monomial sm = Monomial::from(s);
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
          // x^s [(1 - x_i) e_j - (1 - x_j) e_i]
          ModularLatticeSolver::Vector v;
          add_image(v, LaurentPoly::one_minus(ring, i).shifted(sm), q, k, j);
          add_image(v, LaurentPoly::one_minus(ring, j).shifted(sm), q, k, i, -1);
          lat->solver.add_generator(v);
          lat->columns.push_back({true, {}, s, j, i});
        }
    }
  }
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(lat)).first->second;
}

// Components h_j of f = sum h_j (1 - x_j) (or f itself for I(q)).
std::vector<LaurentPoly> group_ring_components(const LaurentPoly& f, const IdealSpec& spec) {
  if (spec.kind == IdealKind::Cyclotomic) return {f};
  std::vector<LaurentPoly> h(static_cast<std::size_t>(spec.rank), LaurentPoly(spec.ring()));
  for (auto& [alpha, part] : sigma_power_decomposition(f, 1)) {
    int j = 0;
    while (alpha[static_cast<std::size_t>(j)] == 0) ++j;
    h[static_cast<std::size_t>(j)] += part;
  }
  return h;
}

ModularLatticeSolver::Vector group_ring_image(const std::vector<LaurentPoly>& h, const IdealSpec& spec) {
  ModularLatticeSolver::Vector v;
  for (std::size_t j = 0; j < h.size(); ++j) add_image(v, h[j], spec.exps.q, spec.rank, static_cast<int>(j));
  return v;
}

// h = q*a + sum_i (x_i^q - 1) g_i; throws if h is not in J.
std::pair<LaurentPoly, std::vector<LaurentPoly>> split_group_ring_kernel(const LaurentPoly& h, std::int64_t q) {
  const Ring ring = h.ring();
  const int k = ring.rank;
  std::vector<LaurentPoly> g;
  LaurentPoly rest = h;
  for (int i = 0; i < k; ++i) {
    std::vector<LaurentPoly::Term> reduced;
    std::vector<LaurentPoly::Term> quotient;
    for (const auto& [m, c] : rest.terms()) {
      const int e = m[i];
      const int r = static_cast<int>(((e % q) + q) % q);
      const int blocks = static_cast<int>((e - r) / q);
      Monomial base = m;
      base.set(i, r);
      reduced.emplace_back(base, c);
      // x^{q*blocks} - 1 = (x^q - 1) * S
      if (blocks > 0) {
        for (int l = 0; l < blocks; ++l) {
          Monomial t = base;
          t.set(i, r + static_cast<int>(q) * l);
          quotient.emplace_back(t, c);
        }
      } else if (blocks < 0) {
        for (int l = 1; l <= -blocks; ++l) {
          Monomial t = base;
          t.set(i, r - static_cast<int>(q) * l);
          quotient.emplace_back(t, -c);
        }
      }
    }
    g.push_back(LaurentPoly::from_terms(ring, std::move(quotient)));
    rest = LaurentPoly::from_terms(ring, std::move(reduced));
  }
  std::vector<LaurentPoly::Term> a;
  for (const auto& [m, c] : rest.terms()) {
    if (c % q != 0) throw std::logic_error("remainder is not in the group-ring kernel");
    a.emplace_back(m, c / q);
  }
  return {LaurentPoly::from_terms(ring, std::move(a)), std::move(g)};
}

std::optional<Certificate> group_ring_certificate(const LaurentPoly& target, const IdealSpec& spec) {
  auto lat = group_ring_lattice(spec);
  auto h = group_ring_components(target, spec);
  auto sol = lat->solver.solve(group_ring_image(h, spec));
  if (!sol) return std::nullopt;

  const Ring ring = spec.ring();
  const std::int64_t q = spec.exps.q;
  const bool times_sigma = spec.kind == IdealKind::CyclotomicTimesSigma;
  std::vector<CertificatePart> parts;
  for (const auto& [col, n] : *sol) {
    const auto& c = lat->columns[col];
    const Monomial sm = Monomial::from(c.shift);
    if (c.koszul) {
      h[static_cast<std::size_t>(c.j)] -= n * LaurentPoly::one_minus(ring, c.i).shifted(sm);
      h[static_cast<std::size_t>(c.i)] += n * LaurentPoly::one_minus(ring, c.j).shifted(sm);
      continue;
    }
    LaurentPoly gen = cyclotomic_generator(ring, c.unit, q);
    LaurentPoly mult = LaurentPoly::monomial(ring, sm, n);
    h[static_cast<std::size_t>(c.j)] -= gen * mult;
    if (times_sigma) gen = gen * LaurentPoly::one_minus(ring, c.j);
    parts.push_back({std::move(gen), std::move(mult)});
  }
  const LaurentPoly q_gen = LaurentPoly::constant(ring, q);
  for (std::size_t j = 0; j < h.size(); ++j) {
    auto [a, g] = split_group_ring_kernel(h[j], q);
    LaurentPoly sigma = times_sigma ? LaurentPoly::one_minus(ring, static_cast<int>(j)) : LaurentPoly::one(ring);
    parts.push_back({q_gen * sigma, std::move(a)});
    for (int i = 0; i < spec.rank; ++i) {
      std::vector<int> unit(static_cast<std::size_t>(spec.rank), 0);
      unit[static_cast<std::size_t>(i)] = 1;
      parts.push_back({cyclotomic_generator(ring, unit, q) * sigma,
                       -(LaurentPoly::one_minus(ring, i) * g[static_cast<std::size_t>(i)])});
    }
  }
  return make_certificate(target, std::move(parts));
}

bool group_ring_member(const LaurentPoly& target, const IdealSpec& spec, ModularLatticeSolver::Vector* image) {
  auto lat = group_ring_lattice(spec);
  auto v = group_ring_image(group_ring_components(target, spec), spec);
  bool member = lat->solver.solve(v).has_value();
  if (image) *image = std::move(v);
  return member;
}

}  // namespace

// ---------------------------------------------------------------- obstructions

bool Obstruction::verify(const IdealSpec& spec) const {
  switch (kind) {
    case ObstructionKind::Augmentation: {
      Integer a = augmentation(target);
      if (value.size() != 1 || value[0] != a) return false;
      if (spec.kind == IdealKind::Cyclotomic) return a % spec.exps.q != 0;
      if (spec.kind == IdealKind::SigmaPower) return spec.m >= 1 && a != 0;
      return a != 0;
    }
    case ObstructionKind::RootOfUnity: {
      if (spec.kind == IdealKind::SigmaPower || root_order != spec.exps.q) return false;
      auto z = evaluate_at_roots(target, root_order, exponents);
      if (z.coefficients() != value) return false;
      bool all_trivial = std::all_of(exponents.begin(), exponents.end(),
                                     [&](int a) { return a % root_order == 0; });
      return !root_image_admissible(z, spec, all_trivial);
    }
    case ObstructionKind::GroupRing: {
      if (spec.kind == IdealKind::SigmaPower || !group_ring_in_scale(spec)) return false;
      ModularLatticeSolver::Vector image;
      bool member = group_ring_member(target, spec, &image);
      std::vector<Integer> flat;
      for (const auto& [i, c] : image) {
        flat.push_back(i);
        flat.push_back(c);
      }
      return flat == value && !member;
    }
    case ObstructionKind::SigmaAdic: {
      if (spec.kind == IdealKind::SigmaPower) {
        SigmaAdicBasis basis(spec.rank, spec.m);
        auto c = basis.coefficients(target);
        return c == value && std::any_of(c.begin(), c.end(), [](const Integer& v) { return v != 0; });
      }
      std::vector<Integer> c;
      bool member = sigma_adic_member(target, spec, truncation, &c);
      return c == value && !member;
    }
  }
  return false;
}

Verdict find_obstruction(const LaurentPoly& target, const IdealSpec& spec) {
  if (target.ring().has_t || target.ring().rank != spec.rank)
    throw RingMismatch("membership tests need a t-free target of the ideal's rank");
  Verdict v;
  if (spec.kind == IdealKind::SigmaPower) {
    if (sigma_degree(target) < spec.m) {
      Obstruction o{ObstructionKind::SigmaAdic, target, {}, 1, SigmaAdicBasis(spec.rank, spec.m).coefficients(target),
                    spec.m, "nonzero image in R/Sigma^" + std::to_string(spec.m)};
      v.status = Status::Refuted;
      v.obstruction = std::move(o);
    }
    return v;
  }

  const std::int64_t q = spec.exps.q;
  const Integer aug = augmentation(target);
  const bool aug_bad = spec.kind == IdealKind::Cyclotomic ? (aug % q != 0) : (aug != 0);
  if (aug_bad) {
    v.status = Status::Refuted;
    v.obstruction = Obstruction{ObstructionKind::Augmentation, target, {}, 1, {aug}, 0,
                                spec.kind == IdealKind::Cyclotomic
                                    ? "augmentation not divisible by q; every generator has augmentation 0 or q"
                                    : "augmentation nonzero; every generator has augmentation 0"};
    return v;
  }

  // Root sweep a in {0..q-1}^k up to Galois scaling: the first nonzero
  // exponent is taken to be a power of p.
  std::vector<int> a(static_cast<std::size_t>(spec.rank), 0);
  const int nv = spec.rank;
  std::function<bool(int, bool)> sweep = [&](int i, bool seen_nonzero) -> bool {
    if (i == nv) {
      if (!seen_nonzero) return false;
      auto z = evaluate_at_roots(target, q, a);
      if (!root_image_admissible(z, spec, false)) {
        v.status = Status::Refuted;
        v.obstruction = Obstruction{ObstructionKind::RootOfUnity, target, a, q, z.coefficients(), 0,
                                    spec.kind == IdealKind::Cyclotomic
                                        ? "image not in q*Z[omega]"
                                        : "image not in q*(1-omega)*Z[omega]"};
        return true;
      }
      return false;
    }
    for (std::int64_t val = 0; val < q; ++val) {
      if (!seen_nonzero && val != 0) {
        std::int64_t r = val;
        while (r % spec.exps.p == 0) r /= spec.exps.p;
        if (r != 1) continue;
      }
      a[static_cast<std::size_t>(i)] = static_cast<int>(val);
      if (sweep(i + 1, seen_nonzero || val != 0)) return true;
    }
    a[static_cast<std::size_t>(i)] = 0;
    return false;
  };
  if (sweep(0, false)) return v;

  if (group_ring_in_scale(spec)) {
    ModularLatticeSolver::Vector image;
    if (!group_ring_member(target, spec, &image)) {
      std::vector<Integer> flat;
      for (const auto& [i, c] : image) {
        flat.push_back(i);
        flat.push_back(c);
      }
      v.status = Status::Refuted;
      v.obstruction = Obstruction{ObstructionKind::GroupRing, target, {}, spec.exps.q, std::move(flat), 0,
                                  "image in (Z/q)[x]/(x_i^q - 1) lies outside the image of the ideal"};
    }
    return v;
  }

  const int m = sigma_adic_truncation(spec);
  std::vector<Integer> coords;
  if (!sigma_adic_member(target, spec, m, &coords)) {
    v.status = Status::Refuted;
    v.obstruction = Obstruction{ObstructionKind::SigmaAdic, target, {}, 1, std::move(coords), m,
                                "image in R/Sigma^" + std::to_string(m) + " lies outside the image of the ideal"};
  }
  return v;
}

// ---------------------------------------------------------------- bounded search

Verdict find_certificate(const LaurentPoly& target, const IdealSpec& spec, int box, std::size_t max_columns) {
  if (target.ring().has_t) throw std::invalid_argument("find_certificate needs a t-free target");
  if (target.ring() != spec.ring()) throw RingMismatch("target and ideal live in different rings");
  Verdict v;
  v.bounds.window = spec.window;
  v.bounds.box = box;
  if (target.is_zero()) {
    v.status = Status::Proved;
    v.certificate = Certificate{target, {}};
    return v;
  }
  const auto gens = generators(spec);
  const Monomial lo = target.min_exponents();
  const Monomial hi = target.max_exponents();
  const int k = spec.rank;
  std::size_t shifts = 1;
  for (int i = 0; i < k; ++i) shifts *= static_cast<std::size_t>(hi[i] - lo[i] + 2 * box + 1);
  v.bounds.columns = shifts * gens.size();
  if (v.bounds.columns > max_columns) {
    v.bounds.note = "column limit exceeded";
    return v;
  }

  std::unordered_map<Monomial, std::uint32_t, MonomialHash> index;
  auto coord = [&](const Monomial& m) {
    auto [it, inserted] = index.try_emplace(m, static_cast<std::uint32_t>(index.size()));
    return it->second;
  };
  auto to_vec = [&](const LaurentPoly& p) {
    SparseVector out;
    out.reserve(p.size());
    for (const auto& [m, c] : p.terms()) out.emplace_back(coord(m), c);
    return out;
  };
  // Index the target first so its leading coordinates are reduced early.
  SparseVector tv = to_vec(target);

  // Multiplier monomials nearest the origin come first, which keeps the
  // certificates short.
  std::vector<Monomial> shift_list;
  Monomial shift(k);
  std::function<void(int)> rec = [&](int i) {
    if (i == k) {
      shift_list.push_back(shift);
      return;
    }
    for (int e = lo[i] - box; e <= hi[i] + box; ++e) {
      shift.set(i, e);
      rec(i + 1);
    }
  };
  rec(0);
  auto weight = [&](const Monomial& m) {
    int w = 0;
    for (int i = 0; i < k; ++i) w += std::abs(m[i]);
    return w;
  };
  std::stable_sort(shift_list.begin(), shift_list.end(),
                   [&](const Monomial& a, const Monomial& b) { return weight(a) < weight(b); });

  LatticeSolver solver;
  std::vector<std::pair<std::size_t, Monomial>> columns;
  for (const auto& sm : shift_list)
    for (std::size_t g = 0; g < gens.size(); ++g) {
      solver.add_generator(to_vec(gens[g].shifted(sm)));
      columns.emplace_back(g, sm);
    }

  auto sol = solver.solve(tv);
  if (!sol) {
    v.bounds.note = "no solution within bounds";
    return v;
  }
  std::vector<std::vector<LaurentPoly::Term>> mult(gens.size());
  for (const auto& [col, c] : *sol) mult[columns[col].first].emplace_back(columns[col].second, c);
  std::vector<CertificatePart> parts;
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (!mult[g].empty()) parts.push_back({gens[g], LaurentPoly::from_terms(target.ring(), std::move(mult[g]))});
  v.status = Status::Proved;
  v.certificate = make_certificate(target, std::move(parts));
  return v;
}

namespace {

// Diagonal ladder: level L uses window min(L, W) and box min(L, B).
Verdict certificate_ladder(const LaurentPoly& target, const IdealSpec& spec, const Budget& budget) {
  Verdict last;
  int done = -1;
  int w = budget.window;
  int b = budget.box;
  for (int esc = 0; esc <= budget.escalations; ++esc, w *= 2, b *= 2) {
    for (int level = done + 1; level <= std::max(w, b); ++level) {
      done = level;
      Verdict v = find_certificate(target, spec.with_window(std::min(level, w)), std::min(level, b),
                                   budget.max_columns);
      if (v.status == Status::Proved) return v;
      last = std::move(v);
      if (last.bounds.note == "column limit exceeded") return last;
    }
    if (w == 0 && b == 0) break;
  }
  return last;
}

}  // namespace

Verdict decide(const LaurentPoly& target, const IdealSpec& spec, const Budget& budget) {
  if (target.ring().has_t || target.ring().rank != spec.rank)
    throw RingMismatch("membership tests need a t-free target of the ideal's rank");
  Verdict v;
  v.bounds.window = budget.window << budget.escalations;
  v.bounds.box = budget.box << budget.escalations;
  if (target.is_zero()) {
    v.status = Status::Proved;
    v.certificate = Certificate{target, {}};
    return v;
  }

  if (spec.kind == IdealKind::SigmaPower) {
    Verdict o = find_obstruction(target, spec);
    if (o.status == Status::Refuted) return o;
    std::vector<CertificatePart> parts;
    for (auto& [alpha, h] : sigma_power_decomposition(target, spec.m))
      parts.push_back({sigma_monomial(spec.ring(), alpha), std::move(h)});
    v.status = Status::Proved;
    v.certificate = make_certificate(target, std::move(parts));
    return v;
  }

  Verdict o = find_obstruction(target, spec);
  if (o.status == Status::Refuted) return o;

  if (group_ring_in_scale(spec)) {
    if (auto cert = group_ring_certificate(target, spec)) {
      v.status = Status::Proved;
      v.certificate = std::move(*cert);
      return v;
    }
  }

  Verdict c = certificate_ladder(target, spec, budget);
  if (c.status == Status::Proved) return c;
  v.bounds.columns = c.bounds.columns;
  v.bounds.note = "group ring beyond desk scale; " +
                  (c.bounds.note.empty() ? std::string("bounded search exhausted") : c.bounds.note);
  return v;
}

}  // namespace metabel
