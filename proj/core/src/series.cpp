#include "metabel/series.hpp"

#include <stdexcept>

namespace metabel {

namespace {

// B * U_j: column c < j-1 becomes B[.][c] - B[.][j-1], the rest vanish.
MatPoly times_idempotent(const MatPoly& b, int j) {
  MatPoly out(b.ring(), b.dim());
  for (int r = 0; r < b.dim(); ++r)
    for (int c = 0; c < j - 1; ++c) out(r, c) = b(r, c) - b(r, j - 1);
  return out;
}

struct GeneratorCache {
  std::vector<MatPoly> base;
  std::vector<MatPoly> inverse;
};

const GeneratorCache& generator_cache(int rank) {
  static thread_local std::map<int, GeneratorCache> cache;
  auto it = cache.find(rank);
  if (it == cache.end()) {
    GeneratorCache g;
    for (int j = 1; j <= rank; ++j) {
      g.base.push_back(base_generator(rank, j));
      g.inverse.push_back(base_generator_inverse(rank, j));
    }
    it = cache.emplace(rank, std::move(g)).first;
  }
  return it->second;
}

}  // namespace

TruncSeries TruncSeries::identity(int dim, int trunc) {
  return constant(MatPoly::identity(Ring::of(dim), dim), trunc);
}

TruncSeries TruncSeries::constant(const MatPoly& m, int trunc) {
  if (trunc < 0) throw std::invalid_argument("truncation must be nonnegative");
  if (m.ring().has_t) throw RingMismatch("series coefficients are t-free");
  std::vector<MatPoly> c(static_cast<std::size_t>(trunc) + 1, MatPoly(m.ring(), m.dim()));
  c[0] = m;
  return TruncSeries(std::move(c));
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  const int d = std::min(a.trunc(), b.trunc());
  std::vector<MatPoly> c(static_cast<std::size_t>(d) + 1, MatPoly(a.ring(), a.dim()));
  for (int i = 0; i <= d; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= d; ++j) {
      if (b[j].is_zero()) continue;
      c[static_cast<std::size_t>(i + j)] += a[i] * b[j];
    }
  }
  return TruncSeries(std::move(c));
}

TruncSeries TruncSeries::truncated(int d) const {
  if (d < 0 || d > trunc()) throw std::invalid_argument("truncation out of range");
  return TruncSeries(std::vector<MatPoly>(coeffs_.begin(), coeffs_.begin() + d + 1));
}

bool TruncSeries::is_identity() const {
  if (!coeffs_.front().is_identity()) return false;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return false;
  return true;
}

void TruncSeries::multiply_letter(int generator, bool inverse) {
  const int k = dim();
  if (generator < 1 || generator > k) throw std::invalid_argument("generator out of range for the series rank");
  const auto& g = generator_cache(k);
  const auto idx = static_cast<std::size_t>(generator - 1);
  const int d = trunc();
  if (!inverse) {
    // A * M_j, then * (I + (t-1) U_j).
    for (auto& a : coeffs_)
      if (!a.is_zero()) a = a * g.base[idx];
    if (generator == 1) return;
    for (int n = d; n >= 1; --n) {
      const auto& prev = coeffs_[static_cast<std::size_t>(n - 1)];
      if (!prev.is_zero()) coeffs_[static_cast<std::size_t>(n)] += times_idempotent(prev, generator);
    }
    return;
  }
  if (generator >= 2) {
    // T_j^-1 = I + sum_{i>=1} (-1)^i (t-1)^i U_j.  With P_n = sum_{i=1..n}
    // (-1)^i A_{n-i}: C_n = A_n + P_n U_j and P_n = -A_{n-1} - P_{n-1}.
    MatPoly p(ring(), k);
    std::vector<MatPoly> out = coeffs_;
    for (int n = 1; n <= d; ++n) {
      p = MatPoly(ring(), k) - coeffs_[static_cast<std::size_t>(n - 1)] - p;
      if (!p.is_zero()) out[static_cast<std::size_t>(n)] += times_idempotent(p, generator);
    }
    coeffs_ = std::move(out);
  }
  for (auto& a : coeffs_)
    if (!a.is_zero()) a = a * g.inverse[idx];
}

TruncSeries expand(const GroupWord& w, int trunc, int rank) {
  if (w.max_generator() > rank) throw std::invalid_argument("word uses a generator beyond the rank");
  TruncSeries s = TruncSeries::identity(rank, trunc);
  for (const auto& l : w.letters())
    for (int i = 0; i < std::abs(l.exponent); ++i) s.multiply_letter(l.generator, l.exponent < 0);
  return s;
}

std::optional<int> min_order(const TruncSeries& s) {
  if (!s[0].is_identity()) throw std::invalid_argument("min_order needs a series with A_0 = I");
  for (int i = 1; i <= s.trunc(); ++i)
    if (!s[i].is_zero()) return i;
  return std::nullopt;
}

std::map<int, int> coeff_sigma_floor(const TruncSeries& s) {
  std::map<int, int> out;
  for (int i = 0; i <= s.trunc(); ++i) {
    MatPoly a = s[i];
    if (i == 0) a -= MatPoly::identity(s.ring(), s.dim());
    if (a.is_zero()) continue;
    int floor = kInfiniteDegree;
    for (int r = 0; r < a.dim(); ++r)
      for (int c = 0; c < a.dim(); ++c) floor = std::min(floor, sigma_degree(a(r, c)));
    out[i] = floor;
  }
  return out;
}

}  // namespace metabel
