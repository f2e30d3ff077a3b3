#include "metabel/lattice.hpp"

#include <algorithm>

namespace metabel {

void normalize(SparseVector& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVector out;
  out.reserve(v.size());
  for (auto& e : v) {
    if (!out.empty() && out.back().first == e.first) out.back().second += e.second;
    else out.push_back(std::move(e));
    if (out.back().second == 0) out.pop_back();
  }
  v = std::move(out);
}

void axpy(SparseVector& a, const Integer& c, const SparseVector& b) {
  if (c == 0 || b.empty()) return;
  SparseVector out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(std::move(*i++));
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_back(j->first, c * j->second);
      ++j;
    } else {
      Integer s = i->second + c * j->second;
      if (s != 0) out.emplace_back(i->first, std::move(s));
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

namespace {

// Returns g = gcd(a, b) >= 0 with s*a + t*b = g.
Integer extended_gcd(const Integer& a, const Integer& b, Integer& s, Integer& t) {
  Integer old_r = a, r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = tmp;
    tmp = old_t - q * cur_t;
    old_t = cur_t;
    cur_t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

SparseVector combine(const Integer& a, const SparseVector& x, const Integer& b, const SparseVector& y) {
  SparseVector out;
  if (a != 0) {
    out = x;
    for (auto& e : out) e.second *= a;
  }
  axpy(out, b, y);
  return out;
}

// Nearest-integer quotient, ties toward zero.
Integer rounded_quotient(const Integer& a, const Integer& b) {
  Integer q = a / b;
  const Integer r = a - q * b;
  const Integer twice = 2 * abs(r);
  if (twice > abs(b)) q += ((r < 0) != (b < 0)) ? -1 : 1;
  return q;
}

}  // namespace

// Reduces the entries after the leading one modulo the pivots below them.
// Without this the Bezout steps let entries grow without bound.
void LatticeSolver::Echelon::reduce_tail(Row& row) {
  std::size_t pos = 1;
  while (pos < row.vec.size()) {
    const std::uint32_t idx = row.vec[pos].first;
    auto it = rows.find(idx);
    if (it == rows.end() || &it->second == &row) {
      ++pos;
      continue;
    }
    const Row& pivot = it->second;
    const Integer f = rounded_quotient(row.vec[pos].second, pivot.vec.front().second);
    if (f != 0) {
      axpy(row.vec, -f, pivot.vec);
      if (track) axpy(row.comb, -f, pivot.comb);
    }
    // the entry at idx is now the remainder; move past it
    pos = static_cast<std::size_t>(
        std::upper_bound(row.vec.begin(), row.vec.end(), idx, [](std::uint32_t i, const auto& e) { return i < e.first; }) -
        row.vec.begin());
  }
}

// Reduces the entry at the pivot's index in every row above it.
void LatticeSolver::Echelon::reduce_above(std::map<std::uint32_t, Row>::iterator pivot) {
  const std::uint32_t idx = pivot->first;
  const Integer& pl = pivot->second.vec.front().second;
  for (auto it = rows.begin(); it != pivot; ++it) {
    auto& vec = it->second.vec;
    auto e = std::lower_bound(vec.begin(), vec.end(), idx, [](const auto& a, std::uint32_t i) { return a.first < i; });
    if (e == vec.end() || e->first != idx) continue;
    const Integer f = rounded_quotient(e->second, pl);
    if (f == 0) continue;
    axpy(vec, -f, pivot->second.vec);
    if (track) axpy(it->second.comb, -f, pivot->second.comb);
  }
}

bool LatticeSolver::Echelon::insert(SparseVector v, SparseVector comb) {
  bool changed = false;
  while (!v.empty()) {
    const std::uint32_t lead = v.front().first;
    auto it = rows.find(lead);
    if (it == rows.end()) {
      if (v.front().second < 0) {
        for (auto& e : v) e.second = -e.second;
        for (auto& e : comb) e.second = -e.second;
      }
      auto pos = rows.emplace(lead, Row{std::move(v), std::move(comb)}).first;
      reduce_tail(pos->second);
      reduce_above(pos);
      return true;
    }
    Row& row = it->second;
    const Integer& rl = row.vec.front().second;
    const Integer vl = v.front().second;
    if (vl % rl == 0) {
      const Integer f = -(vl / rl);
      axpy(v, f, row.vec);
      if (track) axpy(comb, f, row.comb);
      continue;
    }
    // Unimodular step on (row, v): the new row carries gcd at `lead`, the
    // new v has zero there.
    changed = true;
    Integer s, t;
    const Integer g = extended_gcd(rl, vl, s, t);
    const Integer a = rl / g;
    const Integer b = vl / g;
    SparseVector new_row = combine(s, row.vec, t, v);
    SparseVector new_v = combine(b, row.vec, -a, v);
    if (track) {
      SparseVector new_row_comb = combine(s, row.comb, t, comb);
      comb = combine(b, row.comb, -a, comb);
      row.comb = std::move(new_row_comb);
    }
    row.vec = std::move(new_row);
    reduce_tail(row);
    reduce_above(it);
    v = std::move(new_v);
  }
  return changed;
}

std::size_t LatticeSolver::add_generator(SparseVector v) {
  normalize(v);
  const std::size_t id = generators_.size();
  if (plain_.insert(v, {})) {
    useful_.push_back(id);
    tracked_.reset();
  }
  generators_.push_back(std::move(v));
  return id;
}

std::optional<std::vector<std::pair<std::size_t, Integer>>> LatticeSolver::solve(SparseVector target) const {
  normalize(target);
  // Membership first, on rows without combinations.
  SparseVector rest = target;
  while (!rest.empty()) {
    auto it = plain_.rows.find(rest.front().first);
    if (it == plain_.rows.end()) return std::nullopt;
    const Integer& rl = it->second.vec.front().second;
    if (rest.front().second % rl != 0) return std::nullopt;
    axpy(rest, -(rest.front().second / rl), it->second.vec);
  }
  // Generators that never changed the echelon form add nothing to the
  // lattice, so the witness only needs the others.
  if (!tracked_) {
    tracked_.emplace();
    tracked_->track = true;
    for (std::size_t id : useful_)
      tracked_->insert(generators_[id], {{static_cast<std::uint32_t>(id), Integer(1)}});
  }
  SparseVector combo;
  while (!target.empty()) {
    const Row& row = tracked_->rows.at(target.front().first);
    const Integer f = target.front().second / row.vec.front().second;
    axpy(target, -f, row.vec);
    axpy(combo, f, row.comb);
  }
  std::vector<std::pair<std::size_t, Integer>> out;
  out.reserve(combo.size());
  for (auto& [i, c] : combo) out.emplace_back(i, std::move(c));
  return out;
}

ModularLatticeSolver::ModularLatticeSolver(std::int64_t p, int e) : p_(p), e_(e), modulus_(1) {
  if (p < 2 || e < 1) throw std::invalid_argument("modulus must be a prime power");
  for (int i = 0; i < e; ++i) modulus_ *= p;
}

void ModularLatticeSolver::reduce(Vector& v) const {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Vector out;
  out.reserve(v.size());
  for (const auto& [i, c] : v) {
    std::int64_t r = ((c % modulus_) + modulus_) % modulus_;
    if (!out.empty() && out.back().first == i) {
      out.back().second = (out.back().second + r) % modulus_;
      if (out.back().second == 0) out.pop_back();
    } else if (r != 0) {
      out.emplace_back(i, r);
    }
  }
  v = std::move(out);
}

int ModularLatticeSolver::valuation(std::int64_t a) const {
  int v = 0;
  while (a % p_ == 0 && v < e_) {
    a /= p_;
    ++v;
  }
  return v;
}

std::int64_t ModularLatticeSolver::inverse(std::int64_t unit) const {
  std::int64_t old_r = unit % modulus_, r = modulus_, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  return ((old_s % modulus_) + modulus_) % modulus_;
}

void ModularLatticeSolver::axpy(Vector& a, std::int64_t c, const Vector& b) const {
  c = ((c % modulus_) + modulus_) % modulus_;
  if (c == 0) return;
  Vector out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      std::int64_t r = (c * j->second) % modulus_;
      if (r != 0) out.emplace_back(j->first, r);
      ++j;
    } else {
      std::int64_t r = (i->second + c * j->second) % modulus_;
      if (r != 0) out.emplace_back(i->first, r);
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

void ModularLatticeSolver::scale(Vector& a, std::int64_t c) const {
  c = ((c % modulus_) + modulus_) % modulus_;
  Vector out;
  for (const auto& [i, x] : a) {
    std::int64_t r = (x * c) % modulus_;
    if (r != 0) out.emplace_back(i, r);
  }
  a = std::move(out);
}

std::size_t ModularLatticeSolver::add_generator(const Vector& v0) {
  const std::size_t id = generators_++;
  std::vector<std::pair<Vector, Vector>> work;
  Vector first = v0;
  reduce(first);
  work.emplace_back(std::move(first), Vector{{static_cast<std::uint32_t>(id), 1}});

  while (!work.empty()) {
    auto [v, comb] = std::move(work.back());
    work.pop_back();
    while (!v.empty()) {
      const std::uint32_t lead = v.front().first;
      const int b = valuation(v.front().second);
      std::int64_t pb = 1;
      for (int i = 0; i < b; ++i) pb *= p_;
      // Normalize the leading entry to exactly p^b.
      const std::int64_t u = v.front().second / pb;
      if (u != 1) {
        const std::int64_t inv = inverse(u);
        scale(v, inv);
        scale(comb, inv);
      }
      auto it = rows_.find(lead);
      if (it == rows_.end()) {
        if (b > 0) {
          Vector ann = v;
          Vector ann_comb = comb;
          scale(ann, modulus_ / pb);
          scale(ann_comb, modulus_ / pb);
          work.emplace_back(std::move(ann), std::move(ann_comb));
        }
        rows_.emplace(lead, Row{std::move(v), std::move(comb)});
        break;
      }
      Row& row = it->second;
      const int a = valuation(row.vec.front().second);
      if (b >= a) {
        std::int64_t f = 1;
        for (int i = a; i < b; ++i) f *= p_;
        axpy(v, -f, row.vec);
        axpy(comb, -f, row.comb);
        continue;
      }
      // The new vector has the smaller valuation: it becomes the row and the
      // old row is reduced against it.
      std::swap(row.vec, v);
      std::swap(row.comb, comb);
      {
        Vector ann = row.vec;
        Vector ann_comb = row.comb;
        scale(ann, modulus_ / pb);
        scale(ann_comb, modulus_ / pb);
        work.emplace_back(std::move(ann), std::move(ann_comb));
      }
      std::int64_t f = 1;
      for (int i = b; i < a; ++i) f *= p_;
      axpy(v, -f, row.vec);
      axpy(comb, -f, row.comb);
    }
  }
  return id;
}

std::optional<std::vector<std::pair<std::size_t, std::int64_t>>> ModularLatticeSolver::solve(
    const Vector& target0) const {
  Vector target = target0;
  reduce(target);
  Vector combo;
  while (!target.empty()) {
    auto it = rows_.find(target.front().first);
    if (it == rows_.end()) return std::nullopt;
    const std::int64_t rl = it->second.vec.front().second;  // a power of p
    const std::int64_t tl = target.front().second;
    if (tl % rl != 0) return std::nullopt;
    const std::int64_t f = tl / rl;
    axpy(target, -f, it->second.vec);
    axpy(combo, f, it->second.comb);
  }
  std::vector<std::pair<std::size_t, std::int64_t>> out;
  for (const auto& [i, c] : combo) out.emplace_back(i, c);
  return out;
}

}  // namespace metabel
