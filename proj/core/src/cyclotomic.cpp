#include "metabel/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace metabel {

namespace {

using Poly = std::vector<Integer>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly multiply(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

// Remainder (or quotient) by a monic divisor.
Poly divide_monic(Poly a, const Poly& m, Poly* quotient) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  if (quotient) quotient->assign(a.size() > dm ? a.size() - dm : 0, Integer(0));
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const Integer lead = a.back();
    if (quotient) (*quotient)[shift] = lead;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] -= lead * m[i];
    trim(a);
  }
  return a;
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("cyclotomic polynomial needs n >= 1");
  static std::mutex mutex;
  static std::map<std::int64_t, Poly> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  Poly num(static_cast<std::size_t>(n) + 1, Integer(0));
  num[0] = -1;
  num[static_cast<std::size_t>(n)] = 1;
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    Poly q;
    Poly r = divide_monic(num, cyclotomic_polynomial(d), &q);
    if (!r.empty()) throw std::logic_error("cyclotomic division left a remainder");
    num = std::move(q);
  }
  std::lock_guard lock(mutex);
  return cache.emplace(n, std::move(num)).first->second;
}

CyclotomicInteger::CyclotomicInteger(std::int64_t n, const Integer& c) : n_(n) {
  const auto& phi = cyclotomic_polynomial(n);
  coeffs_.assign(phi.size() - 1, Integer(0));
  coeffs_[0] = c;
}

CyclotomicInteger CyclotomicInteger::from_polynomial(std::int64_t n, std::vector<Integer> coeffs) {
  const auto& phi = cyclotomic_polynomial(n);
  CyclotomicInteger r;
  r.n_ = n;
  r.coeffs_ = divide_monic(std::move(coeffs), phi, nullptr);
  r.coeffs_.resize(phi.size() - 1, Integer(0));
  return r;
}

CyclotomicInteger CyclotomicInteger::root_power(std::int64_t n, std::int64_t a) {
  std::int64_t e = ((a % n) + n) % n;
  Poly p(static_cast<std::size_t>(e) + 1, Integer(0));
  p[static_cast<std::size_t>(e)] = 1;
  return from_polynomial(n, std::move(p));
}

bool CyclotomicInteger::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c == 0; });
}

bool CyclotomicInteger::divisible_by(const Integer& d) const {
  if (d == 0) return is_zero();
  return std::all_of(coeffs_.begin(), coeffs_.end(), [&](const Integer& c) { return c % d == 0; });
}

CyclotomicInteger CyclotomicInteger::divided_by(const Integer& d) const {
  if (!divisible_by(d) || d == 0) throw std::invalid_argument("cyclotomic integer is not divisible");
  CyclotomicInteger r = *this;
  for (auto& c : r.coeffs_) c /= d;
  return r;
}

Integer CyclotomicInteger::coefficient_sum() const {
  return std::accumulate(coeffs_.begin(), coeffs_.end(), Integer(0));
}

CyclotomicInteger CyclotomicInteger::galois(std::int64_t j) const {
  if (std::gcd(j, n_) != 1) throw std::invalid_argument("Galois exponent must be coprime to n");
  Poly p(static_cast<std::size_t>(n_), Integer(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto e = static_cast<std::size_t>((static_cast<std::int64_t>(i) * j) % n_);
    p[e] += coeffs_[i];
  }
  return from_polynomial(n_, std::move(p));
}

Integer CyclotomicInteger::norm() const {
  CyclotomicInteger prod(n_, 1);
  for (std::int64_t j = 1; j <= n_; ++j)
    if (std::gcd(j, n_) == 1) prod = prod * galois(j);
  return prod.coeffs_[0];
}

CyclotomicInteger CyclotomicInteger::inverse() const {
  CyclotomicInteger others(n_, 1);
  for (std::int64_t j = 2; j <= n_; ++j)
    if (std::gcd(j, n_) == 1) others = others * galois(j);
  const Integer nm = (*this * others).coeffs_[0];
  if (nm != 1 && nm != -1) throw std::invalid_argument("image is not a unit of Z[omega]");
  return nm == 1 ? others : -others;
}

void CyclotomicInteger::check_same(const CyclotomicInteger& o) const {
  if (n_ != o.n_) throw RingMismatch("cyclotomic integers of different orders");
}

CyclotomicInteger& CyclotomicInteger::operator+=(const CyclotomicInteger& o) {
  check_same(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CyclotomicInteger& CyclotomicInteger::operator-=(const CyclotomicInteger& o) {
  check_same(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CyclotomicInteger operator*(const CyclotomicInteger& a, const CyclotomicInteger& b) {
  a.check_same(b);
  return CyclotomicInteger::from_polynomial(a.n_, multiply(a.coeffs_, b.coeffs_));
}

CyclotomicInteger CyclotomicInteger::operator-() const {
  CyclotomicInteger r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

std::string CyclotomicInteger::to_string() const {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out << (i ? "," : "") << coeffs_[i];
  out << ")";
  return out.str();
}

Integer evaluate_hom(const LaurentPoly& a, std::span<const Integer> images) {
  if (static_cast<int>(images.size()) != a.ring().variable_count())
    throw RingMismatch("one image per ring variable is required");
  for (const auto& img : images)
    if (img != 1 && img != -1) throw std::invalid_argument("integer image is not a unit");
  Integer total = 0;
  for (const auto& [m, c] : a.terms()) {
    int sign = 1;
    for (int i = 0; i < m.size(); ++i)
      if (images[static_cast<std::size_t>(i)] == -1 && (m[i] % 2 != 0)) sign = -sign;
    total += sign > 0 ? c : Integer(-c);
  }
  return total;
}

CyclotomicInteger evaluate_hom(const LaurentPoly& a, std::span<const CyclotomicInteger> images) {
  const int nv = a.ring().variable_count();
  if (static_cast<int>(images.size()) != nv)
    throw RingMismatch("one image per ring variable is required");
  if (images.empty()) throw std::invalid_argument("no images supplied");
  const std::int64_t n = images[0].order();
  for (const auto& img : images)
    if (img.order() != n) throw RingMismatch("images live in different cyclotomic rings");

  std::vector<CyclotomicInteger> inverses(static_cast<std::size_t>(nv));
  if (!a.is_zero()) {
    Monomial lo = a.min_exponents();
    for (int i = 0; i < nv; ++i) {
      const auto& img = images[static_cast<std::size_t>(i)];
      if (lo[i] < 0) {
        inverses[static_cast<std::size_t>(i)] = img.inverse();
      } else if (img.norm() != 1 && img.norm() != -1) {
        throw std::invalid_argument("image is not a unit of Z[omega]");
      }
    }
  }

  // Powers are cached per variable and exponent.
  std::vector<std::map<int, CyclotomicInteger>> powers(static_cast<std::size_t>(nv));
  auto power = [&](int i, int e) -> const CyclotomicInteger& {
    auto& cache = powers[static_cast<std::size_t>(i)];
    if (auto it = cache.find(e); it != cache.end()) return it->second;
    const auto& base = e < 0 ? inverses[static_cast<std::size_t>(i)] : images[static_cast<std::size_t>(i)];
    CyclotomicInteger r(n, 1);
    for (int k = 0; k < std::abs(e); ++k) r = r * base;
    return cache.emplace(e, std::move(r)).first->second;
  };

  CyclotomicInteger total(n, 0);
  for (const auto& [m, c] : a.terms()) {
    CyclotomicInteger term(n, c);
    for (int i = 0; i < nv; ++i)
      if (m[i] != 0) term = term * power(i, m[i]);
    total += term;
  }
  return total;
}

CyclotomicInteger evaluate_at_roots(const LaurentPoly& a, std::int64_t n, std::span<const int> exponents) {
  const int nv = a.ring().variable_count();
  if (static_cast<int>(exponents.size()) != nv)
    throw RingMismatch("one root exponent per ring variable is required");
  // x^m -> omega^{<a, m>}: accumulate into X^0..X^{n-1} and reduce once.
  std::vector<Integer> acc(static_cast<std::size_t>(n), Integer(0));
  for (const auto& [m, c] : a.terms()) {
    std::int64_t e = 0;
    for (int i = 0; i < nv; ++i) e += static_cast<std::int64_t>(m[i]) * exponents[static_cast<std::size_t>(i)];
    e = ((e % n) + n) % n;
    acc[static_cast<std::size_t>(e)] += c;
  }
  return CyclotomicInteger::from_polynomial(n, std::move(acc));
}

}  // namespace metabel
