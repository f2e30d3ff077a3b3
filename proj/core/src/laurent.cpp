#include "metabel/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <bit>
#include <type_traits>
#include <unordered_map>

namespace metabel {

Ring Ring::of(int rank, bool has_t) {
  if (rank < 1) throw std::invalid_argument("ring rank must be at least 1");
  if (rank + (has_t ? 1 : 0) > kMaxVariables)
    throw std::invalid_argument("ring has more than " + std::to_string(kMaxVariables) +
                                " variables");
  return Ring{rank, has_t};
}

std::string Ring::variable_name(int index) const {
  if (has_t && index == t_index()) return "t";
  if (rank == 2) return index == 0 ? "x" : "y";
  if (rank == 1) return "x";
  return "x" + std::to_string(index + 1);
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(int variables) : size_(static_cast<std::uint8_t>(variables)) {
  if (variables < 0 || variables > kMaxVariables)
    throw std::invalid_argument("monomial variable count out of range");
}

Monomial::Monomial(std::initializer_list<int> exponents)
    : Monomial(static_cast<int>(exponents.size())) {
  std::copy(exponents.begin(), exponents.end(), exps_.begin());
}

Monomial Monomial::from(std::span<const int> exponents) {
  Monomial m(static_cast<int>(exponents.size()));
  std::copy(exponents.begin(), exponents.end(), m.exps_.begin());
  return m;
}

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
}

Monomial Monomial::inverse() const {
  Monomial r = *this;
  for (auto& e : r.exps_) e = -e;
  return r;
}

Monomial Monomial::pow(int n) const {
  Monomial r = *this;
  for (auto& e : r.exps_) e *= n;
  return r;
}

std::vector<int> Monomial::exponents() const {
  return std::vector<int>(exps_.begin(), exps_.begin() + size_);
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] += b.exps_[i];
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = size_;
  for (int i = 0; i < size_; ++i)
    h = h * 0x9E3779B97F4A7C15ULL + static_cast<std::size_t>(static_cast<std::uint32_t>(exps_[i]));
  return h ^ (h >> 29);
}

// ---------------------------------------------------------------- helpers

namespace {

using Terms = std::vector<LaurentPoly::Term>;

// Merges two sorted term lists; `sign` scales the right operand by +-1.
Terms merge(const Terms& a, const Terms& b, int sign) {
  Terms out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      out.push_back(*i++);
    } else if (j->first < i->first) {
      out.emplace_back(j->first, sign > 0 ? j->second : Integer(-j->second));
      ++j;
    } else {
      Integer c = sign > 0 ? i->second + j->second : i->second - j->second;
      if (c != 0) out.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  for (; i != a.end(); ++i) out.push_back(*i);
  for (; j != b.end(); ++j) out.emplace_back(j->first, sign > 0 ? j->second : Integer(-j->second));
  return out;
}

void canonicalize(Terms& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  Terms out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      if (!out.empty() && out.back().second == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().second == 0) out.pop_back();
  terms = std::move(out);
}

}  // namespace

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(Ring ring) : ring_(ring) {}

LaurentPoly LaurentPoly::constant(Ring ring, const Integer& c) {
  LaurentPoly p(ring);
  if (c != 0) p.terms_.emplace_back(Monomial(ring.variable_count()), c);
  return p;
}

LaurentPoly LaurentPoly::variable(Ring ring, int index) {
  if (index < 0 || index >= ring.variable_count())
    throw std::invalid_argument("variable index out of range");
  Monomial m(ring.variable_count());
  m.set(index, 1);
  return monomial(ring, m);
}

LaurentPoly LaurentPoly::monomial(Ring ring, const Monomial& m, const Integer& c) {
  if (m.size() != ring.variable_count())
    throw RingMismatch("monomial length does not match the ring");
  LaurentPoly p(ring);
  if (c != 0) p.terms_.emplace_back(m, c);
  return p;
}

LaurentPoly LaurentPoly::one_minus(Ring ring, int index) {
  return one(ring) - variable(ring, index);
}

LaurentPoly LaurentPoly::from_terms(Ring ring, std::vector<Term> terms) {
  for (const auto& t : terms)
    if (t.first.size() != ring.variable_count())
      throw RingMismatch("monomial length does not match the ring");
  canonicalize(terms);
  LaurentPoly p(ring);
  p.terms_ = std::move(terms);
  return p;
}

bool LaurentPoly::is_one() const {
  return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second == 1;
}

bool LaurentPoly::is_unit_monomial() const {
  return terms_.size() == 1 && abs(terms_[0].second) == 1;
}

void LaurentPoly::check_same_ring(const LaurentPoly& other) const {
  if (ring_ != other.ring_) throw RingMismatch("operands belong to different rings");
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  check_same_ring(other);
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = other.terms_;
    return *this;
  }
  terms_ = merge(terms_, other.terms_, +1);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  check_same_ring(other);
  if (other.terms_.empty()) return *this;
  terms_ = merge(terms_, other.terms_, -1);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) {
  *this = *this * other;
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

LaurentPoly operator*(const Integer& c, const LaurentPoly& a) {
  LaurentPoly r(a.ring_);
  if (c == 0) return r;
  r.terms_ = a.terms_;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

LaurentPoly LaurentPoly::shifted(const Monomial& m) const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.first = t.first * m;
  return r;
}

namespace {

// Product accumulated densely, one slice of the first variable's exponent at
// a time.  Coefficients accumulate in __int128 when
// |a|max * |b|max * min(#a, #b) < 2^126 proves it exact, and in Integer
// otherwise.  Returns nullopt when the box is too sparse or too large.
__extension__ using Wide = __int128;
__extension__ using UWide = unsigned __int128;

Integer to_integer(Wide v) {
  const bool neg = v < 0;
  const auto mag = static_cast<UWide>(neg ? -v : v);
  Integer c = Integer(static_cast<std::uint64_t>(mag >> 64));
  c <<= 64;
  c += Integer(static_cast<std::uint64_t>(mag));
  return neg ? Integer(-c) : c;
}

template <class Acc, class CoeffA, class CoeffB>
void sliced_product(const LaurentPoly& a, const LaurentPoly& b, const CoeffA& ca, const CoeffB& cb,
                    std::int64_t slice_volume, const std::array<std::int64_t, kMaxVariables>& stride,
                    const Monomial& lo, Terms& out) {
  const int nv = a.ring().variable_count();
  const Monomial lo_a = a.min_exponents(), lo_b = b.min_exponents();
  const Monomial hi_a = a.max_exponents(), hi_b = b.max_exponents();
  auto offsets = [&](const LaurentPoly& f, const Monomial& base) {
    std::vector<std::int64_t> off;
    off.reserve(f.size());
    for (const auto& [m, c] : f.terms()) {
      std::int64_t o = 0;
      for (int i = 1; i < nv; ++i) o += static_cast<std::int64_t>(m[i] - base[i]) * stride[static_cast<std::size_t>(i)];
      off.push_back(o);
    }
    return off;
  };
  const auto off_a = offsets(a, lo_a);
  const auto off_b = offsets(b, lo_b);
  // Terms are sorted lexicographically, so each first-variable exponent is a
  // contiguous run.
  auto runs = [](const LaurentPoly& f, int lo0, int hi0) {
    std::vector<std::pair<std::size_t, std::size_t>> r(static_cast<std::size_t>(hi0 - lo0 + 1), {0, 0});
    const auto& t = f.terms();
    for (std::size_t i = 0; i < t.size();) {
      std::size_t j = i;
      while (j < t.size() && t[j].first[0] == t[i].first[0]) ++j;
      r[static_cast<std::size_t>(t[i].first[0] - lo0)] = {i, j};
      i = j;
    }
    return r;
  };
  const auto runs_a = runs(a, lo_a[0], hi_a[0]);
  const auto runs_b = runs(b, lo_b[0], hi_b[0]);

  std::vector<Acc> acc(static_cast<std::size_t>(slice_volume));
  for (int v = lo[0]; v <= hi_a[0] + hi_b[0]; ++v) {
    bool touched = false;
    for (int ea = lo_a[0]; ea <= hi_a[0]; ++ea) {
      const int eb = v - ea;
      if (eb < lo_b[0] || eb > hi_b[0]) continue;
      const auto [a0, a1] = runs_a[static_cast<std::size_t>(ea - lo_a[0])];
      const auto [b0, b1] = runs_b[static_cast<std::size_t>(eb - lo_b[0])];
      if (a0 == a1 || b0 == b1) continue;
      touched = true;
      for (std::size_t i = a0; i < a1; ++i) {
        const auto& x = ca[i];
        const std::int64_t base = off_a[i];
        for (std::size_t j = b0; j < b1; ++j) acc[static_cast<std::size_t>(base + off_b[j])] += x * cb[j];
      }
    }
    if (!touched) continue;
    for (std::int64_t idx = 0; idx < slice_volume; ++idx) {
      auto& cell = acc[static_cast<std::size_t>(idx)];
      if (cell == 0) continue;
      Monomial m(nv);
      m.set(0, v);
      std::int64_t rest = idx;
      for (int i = 1; i < nv; ++i) {
        const std::int64_t s = stride[static_cast<std::size_t>(i)];
        m.set(i, static_cast<int>(rest / s) + lo[i]);
        rest %= s;
      }
      if constexpr (std::is_same_v<Acc, Wide>) out.emplace_back(m, to_integer(cell));
      else out.emplace_back(m, std::move(cell));
      cell = 0;
    }
  }
}

std::optional<Terms> dense_product(const LaurentPoly& a, const LaurentPoly& b) {
  const int nv = a.ring().variable_count();
  const Monomial lo_a = a.min_exponents(), hi_a = a.max_exponents();
  const Monomial lo_b = b.min_exponents(), hi_b = b.max_exponents();
  Monomial lo(nv);
  std::array<std::int64_t, kMaxVariables> stride{};
  std::int64_t slice = 1;
  for (int i = nv - 1; i >= 1; --i) {
    stride[static_cast<std::size_t>(i)] = slice;
    slice *= static_cast<std::int64_t>(hi_a[i] - lo_a[i]) + (hi_b[i] - lo_b[i]) + 1;
    if (slice > (std::int64_t{1} << 22)) return std::nullopt;
  }
  for (int i = 0; i < nv; ++i) lo.set(i, lo_a[i] + lo_b[i]);
  const std::int64_t rows = static_cast<std::int64_t>(hi_a[0] - lo_a[0]) + (hi_b[0] - lo_b[0]) + 1;
  const auto pairs = static_cast<std::int64_t>(a.size()) * static_cast<std::int64_t>(b.size());
  if (slice * rows > 8 * pairs + 4096) return std::nullopt;

  auto max_bits = [](const LaurentPoly& f) {
    std::size_t bits = 0;
    for (const auto& [m, c] : f.terms()) bits = std::max<std::size_t>(bits, boost::multiprecision::msb(abs(c)) + 1);
    return bits;
  };
  const auto count_bits = static_cast<std::size_t>(std::bit_width(std::min(a.size(), b.size())));
  const LaurentPoly* x = &a;
  const LaurentPoly* y = &b;
  std::size_t bits_x = max_bits(a), bits_y = max_bits(b);
  if (bits_x > bits_y) {
    std::swap(x, y);
    std::swap(bits_x, bits_y);
  }
  Terms out;
  const std::size_t limb = bits_x + count_bits < 110 ? std::min<std::size_t>(62, 125 - bits_x - count_bits) : 0;
  if (bits_x <= 62 && limb >= 16) {
    // y = sum_l y_l 2^{limb*l} with |y_l| < 2^limb; each pass is exact in
    // 128 bits.
    std::vector<Wide> cx;
    cx.reserve(x->size());
    for (const auto& [m, c] : x->terms()) cx.push_back(static_cast<Wide>(static_cast<std::int64_t>(c)));
    const std::size_t limbs = (bits_y + limb - 1) / limb;
    const Integer mask = (Integer(1) << limb) - 1;
    LaurentPoly sum(a.ring());
    for (std::size_t l = 0; l < limbs; ++l) {
      std::vector<Wide> cy;
      cy.reserve(y->size());
      for (const auto& [m, c] : y->terms()) {
        const Integer part = (abs(c) >> (limb * l)) & mask;
        const auto v = static_cast<Wide>(static_cast<std::int64_t>(part));
        cy.push_back(c < 0 ? -v : v);
      }
      Terms piece;
      sliced_product<Wide>(*x, *y, cx, cy, slice, stride, lo, piece);
      if (limbs == 1) return piece;
      sum += Integer(Integer(1) << (limb * l)) * LaurentPoly::from_terms(a.ring(), std::move(piece));
    }
    return sum.terms();
  }
  auto wide = [](const LaurentPoly& f) {
    std::vector<Integer> c;
    c.reserve(f.size());
    for (const auto& [m, v] : f.terms()) c.push_back(v);
    return c;
  };
  sliced_product<Integer>(a, b, wide(a), wide(b), slice, stride, lo, out);
  return out;
}

}  // namespace

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_same_ring(b);
  LaurentPoly r(a.ring_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  const LaurentPoly& small = a.size() <= b.size() ? a : b;
  const LaurentPoly& big = a.size() <= b.size() ? b : a;

  // Shifting preserves the monomial order, so a short factor is handled by
  // shift-and-merge without hashing.
  if (small.size() <= 6) {
    Terms acc;
    Terms row;
    for (const auto& [m, c] : small.terms_) {
      row.clear();
      row.reserve(big.size());
      for (const auto& [bm, bc] : big.terms_) row.emplace_back(bm * m, bc * c);
      acc = acc.empty() ? std::move(row) : merge(acc, row, +1);
      row = Terms{};
    }
    r.terms_ = std::move(acc);
    return r;
  }

  if (auto dense = dense_product(a, b)) {
    r.terms_ = std::move(*dense);
    return r;
  }

  std::unordered_map<Monomial, Integer, MonomialHash> acc;
  acc.reserve(a.size() * b.size() / 2 + 1);
  for (const auto& [am, ac] : a.terms_)
    for (const auto& [bm, bc] : b.terms_) acc[am * bm] += ac * bc;
  Terms out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) out.emplace_back(m, std::move(c));
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& rr) { return l.first < rr.first; });
  r.terms_ = std::move(out);
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly result = one(ring_);
  LaurentPoly base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

Monomial LaurentPoly::min_exponents() const {
  if (terms_.empty()) throw std::invalid_argument("support of the zero polynomial is empty");
  Monomial m = terms_.front().first;
  for (const auto& t : terms_)
    for (int i = 0; i < m.size(); ++i) m.set(i, std::min(m[i], t.first[i]));
  return m;
}

Monomial LaurentPoly::max_exponents() const {
  if (terms_.empty()) throw std::invalid_argument("support of the zero polynomial is empty");
  Monomial m = terms_.front().first;
  for (const auto& t : terms_)
    for (int i = 0; i < m.size(); ++i) m.set(i, std::max(m[i], t.first[i]));
  return m;
}

LaurentPoly LaurentPoly::at_one(int index) const {
  Terms out = terms_;
  for (auto& t : out) t.first.set(index, 0);
  return from_terms(ring_, std::move(out));
}

LaurentPoly LaurentPoly::specialize_t_one() const {
  if (!ring_.has_t) return *this;
  Ring target = ring_.without_t();
  Terms out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    Monomial n(target.variable_count());
    for (int i = 0; i < target.variable_count(); ++i) n.set(i, m[i]);
    out.emplace_back(n, c);
  }
  return from_terms(target, std::move(out));
}

LaurentPoly LaurentPoly::with_t() const {
  if (ring_.has_t) return *this;
  Ring target = ring_.with_t();
  LaurentPoly r(target);
  r.terms_ = terms_;
  // t slot is zero in every monomial; the exponent arrays already hold zeros
  // past the live size, so only the size changes.
  for (auto& t : r.terms_) {
    Monomial n(target.variable_count());
    for (int i = 0; i < ring_.variable_count(); ++i) n.set(i, t.first[i]);
    t.first = n;
  }
  return r;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool negative = c < 0;
    Integer mag = negative ? Integer(-c) : c;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || m.is_one()) {
      out << mag;
      wrote = true;
    }
    for (int i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) out << "*";
      out << ring_.variable_name(i);
      if (m[i] != 1) out << "^" << m[i];
      wrote = true;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------- parser

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, Ring ring) : text_(text), ring_(ring) {}

  LaurentPoly parse() {
    skip_space();
    if (pos_ == text_.size()) fail("empty polynomial");
    LaurentPoly p = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw RingMismatch("cannot parse polynomial '" + std::string(text_) + "' at offset " +
                       std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  LaurentPoly expression() {
    LaurentPoly acc(ring_);
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    LaurentPoly t = term();
    acc = negate ? -t : t;
    while (true) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else break;
    }
    return acc;
  }

  LaurentPoly term() {
    LaurentPoly acc = power();
    while (accept('*')) acc = acc * power();
    return acc;
  }

  LaurentPoly power() {
    LaurentPoly base = atom();
    if (!accept('^')) return base;
    skip_space();
    bool negative = false;
    if (accept('-')) negative = true;
    else accept('+');
    skip_space();
    long n = read_int_small();
    if (!negative) return base.pow(static_cast<unsigned>(n));
    if (!base.is_unit_monomial())
      fail("negative powers are only defined for unit monomials");
    const auto& [m, c] = base.terms().front();
    Integer sign = (c < 0 && n % 2 == 1) ? -1 : 1;
    return LaurentPoly::monomial(ring_, m.inverse().pow(static_cast<int>(n)), sign);
  }

  LaurentPoly atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      LaurentPoly inner = expression();
      if (!accept(')')) fail("missing ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return LaurentPoly::constant(ring_, Integer(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return LaurentPoly::variable(ring_, variable_index(text_.substr(start, pos_ - start)));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  int variable_index(std::string_view name) {
    if (name == "t") {
      if (!ring_.has_t) fail("variable t is not part of this ring");
      return ring_.t_index();
    }
    if (ring_.rank <= 2) {
      if (name == "x") return 0;
      if (name == "y" && ring_.rank == 2) return 1;
    }
    if (name.size() >= 2 && name[0] == 'x') {
      int idx = 0;
      for (char ch : name.substr(1)) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) fail("unknown variable");
        idx = idx * 10 + (ch - '0');
      }
      if (idx >= 1 && idx <= ring_.rank) return idx - 1;
    }
    fail("unknown variable '" + std::string(name) + "'");
  }

  long read_int_small() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an exponent");
    if (pos_ - start > 6) fail("exponent too large");
    return std::stol(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  Ring ring_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly LaurentPoly::parse(std::string_view text, Ring ring) {
  return PolyParser(text, ring).parse();
}

// ---------------------------------------------------------------- free functions

LaurentPoly poly_arith(const LaurentPoly& a, const LaurentPoly& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
  }
  throw std::invalid_argument("unknown arithmetic operation");
}

LaurentPoly poly_pow(const LaurentPoly& a, unsigned n) { return a.pow(n); }

Integer augmentation(const LaurentPoly& a) {
  Integer s = 0;
  for (const auto& t : a.terms()) s += t.second;
  return s;
}

Integer binomial(const Integer& n, int k) {
  if (k < 0) return 0;
  Integer num = 1;
  Integer den = 1;
  for (int i = 0; i < k; ++i) {
    num *= (n - i);
    den *= (i + 1);
  }
  return num / den;
}

int sigma_degree(const LaurentPoly& a) {
  if (a.ring().has_t) throw std::invalid_argument("sigma_degree needs a t-free polynomial");
  if (a.is_zero()) return kInfiniteDegree;
  const int k = a.ring().rank;
  const Monomial lo = a.min_exponents();

  // Per term and variable, binomials C(e_i - lo_i, j) for j = 0..d, extended
  // one degree at a time.
  struct Row {
    std::vector<int> shifted;
    std::vector<std::vector<Integer>> binom;
  };
  std::vector<Row> rows;
  rows.reserve(a.size());
  for (const auto& [m, c] : a.terms()) {
    Row r;
    r.shifted.resize(static_cast<std::size_t>(k));
    r.binom.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      r.shifted[static_cast<std::size_t>(i)] = m[i] - lo[i];
      r.binom[static_cast<std::size_t>(i)].push_back(1);
    }
    rows.push_back(std::move(r));
  }

  for (int d = 0;; ++d) {
    if (d > 0) {
      for (auto& r : rows)
        for (int i = 0; i < k; ++i) {
          auto& b = r.binom[static_cast<std::size_t>(i)];
          const int e = r.shifted[static_cast<std::size_t>(i)];
          b.push_back(b.back() * (e - d + 1) / d);
        }
    }
    for (const auto& alpha : exponent_vectors_of_degree(k, d)) {
      Integer coeff = 0;
      for (std::size_t t = 0; t < rows.size(); ++t) {
        Integer prod = a.terms()[t].second;
        for (int i = 0; i < k && prod != 0; ++i)
          prod *= rows[t].binom[static_cast<std::size_t>(i)][static_cast<std::size_t>(alpha[static_cast<std::size_t>(i)])];
        coeff += prod;
      }
      if (coeff != 0) return d;
    }
  }
}

std::map<int, LaurentPoly> t_coefficients(const LaurentPoly& a) {
  if (!a.ring().has_t) throw std::invalid_argument("t_coefficients needs a ring with t");
  const Ring base = a.ring().without_t();
  const int ti = a.ring().t_index();
  std::map<int, std::vector<LaurentPoly::Term>> buckets;
  for (const auto& [m, c] : a.terms()) {
    Monomial n(base.variable_count());
    for (int i = 0; i < base.variable_count(); ++i) n.set(i, m[i]);
    buckets[m[ti]].emplace_back(n, c);
  }
  std::map<int, LaurentPoly> out;
  for (auto& [e, terms] : buckets) out.emplace(e, LaurentPoly::from_terms(base, std::move(terms)));
  return out;
}

std::optional<LaurentPoly> divide_one_minus(const LaurentPoly& a, int index) {
  if (a.is_zero()) return a;
  struct Entry {
    Monomial rest;
    int e;
    const Integer* c;
  };
  std::vector<Entry> entries;
  entries.reserve(a.size());
  for (const auto& [m, c] : a.terms()) {
    Monomial rest = m;
    rest.set(index, 0);
    entries.push_back({rest, m[index], &c});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& l, const Entry& r) {
    return l.rest != r.rest ? l.rest < r.rest : l.e < r.e;
  });
  std::vector<LaurentPoly::Term> out;
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i;
    while (j < entries.size() && entries[j].rest == entries[i].rest) ++j;
    // (1 - x) * d = group  =>  d_e = sum of coefficients with exponent <= e.
    Integer prefix = 0;
    const int lo = entries[i].e;
    const int hi = entries[j - 1].e;
    std::size_t cursor = i;
    for (int e = lo; e < hi; ++e) {
      while (cursor < j && entries[cursor].e == e) prefix += *entries[cursor++].c;
      if (prefix != 0) {
        Monomial m = entries[i].rest;
        m.set(index, e);
        out.emplace_back(m, prefix);
      }
    }
    while (cursor < j) prefix += *entries[cursor++].c;
    if (prefix != 0) return std::nullopt;
    i = j;
  }
  return LaurentPoly::from_terms(a.ring(), std::move(out));
}

namespace {

void decompose(const LaurentPoly& p, int m, int var, std::vector<int>& alpha,
               std::map<std::vector<int>, LaurentPoly>& out) {
  if (p.is_zero()) return;
  if (m == 0) {
    auto [it, inserted] = out.try_emplace(alpha, p);
    if (!inserted) it->second += p;
    return;
  }
  if (var == p.ring().rank) throw std::invalid_argument("polynomial is not in the requested power of Sigma");
  LaurentPoly rest = p.at_one(var);
  auto quotient = divide_one_minus(p - rest, var);
  if (!quotient) throw std::logic_error("exact division by (1 - x) failed");
  ++alpha[static_cast<std::size_t>(var)];
  decompose(*quotient, m - 1, var, alpha, out);
  --alpha[static_cast<std::size_t>(var)];
  decompose(rest, m, var + 1, alpha, out);
}

}  // namespace

std::map<std::vector<int>, LaurentPoly> sigma_power_decomposition(const LaurentPoly& a, int m) {
  if (a.ring().has_t) throw std::invalid_argument("sigma decomposition needs a t-free polynomial");
  std::map<std::vector<int>, LaurentPoly> out;
  std::vector<int> alpha(static_cast<std::size_t>(a.ring().rank), 0);
  decompose(a, m, 0, alpha, out);
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

LaurentPoly sigma_monomial(Ring ring, std::span<const int> alpha) {
  LaurentPoly r = LaurentPoly::one(ring);
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (alpha[i] > 0)
      r = r * LaurentPoly::one_minus(ring, static_cast<int>(i)).pow(static_cast<unsigned>(alpha[i]));
  return r;
}

std::vector<std::vector<int>> exponent_vectors_of_degree(int rank, int degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(rank), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == rank - 1) {
      cur[static_cast<std::size_t>(i)] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[static_cast<std::size_t>(i)] = v;
      rec(i + 1, left - v);
    }
  };
  if (rank > 0) rec(0, degree);
  return out;
}

SigmaAdicBasis::SigmaAdicBasis(int rank, int m) : rank_(rank), m_(m) {
  for (int d = 0; d < m; ++d)
    for (auto& a : exponent_vectors_of_degree(rank, d)) alphas_.push_back(std::move(a));
}

std::vector<Integer> SigmaAdicBasis::coefficients(const LaurentPoly& a) const {
  if (a.ring().has_t || a.ring().rank != rank_)
    throw RingMismatch("sigma-adic coordinates need a t-free polynomial of matching rank");
  std::vector<Integer> out(alphas_.size());
  std::vector<std::vector<Integer>> binom(static_cast<std::size_t>(rank_));
  for (const auto& [mono, c] : a.terms()) {
    for (int i = 0; i < rank_; ++i) {
      auto& b = binom[static_cast<std::size_t>(i)];
      b.assign(1, Integer(1));
      for (int j = 1; j < m_; ++j) b.push_back(b.back() * (mono[i] - j + 1) / j);
    }
    for (std::size_t idx = 0; idx < alphas_.size(); ++idx) {
      Integer prod = c;
      for (int i = 0; i < rank_ && prod != 0; ++i)
        prod *= binom[static_cast<std::size_t>(i)][static_cast<std::size_t>(alphas_[idx][static_cast<std::size_t>(i)])];
      out[idx] += prod;
    }
  }
  return out;
}

// ---------------------------------------------------------------- exponents

std::optional<std::pair<std::int64_t, int>> prime_power_decomposition(std::int64_t q) {
  if (q < 2) return std::nullopt;
  std::int64_t p = 0;
  for (std::int64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0) return std::make_pair(q, 1);
  int e = 0;
  std::int64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  if (r != 1) return std::nullopt;
  return std::make_pair(p, e);
}

ExponentSpec ExponentSpec::from_q(std::int64_t q) {
  auto pe = prime_power_decomposition(q);
  if (!pe)
    throw std::invalid_argument("exponent " + std::to_string(q) +
                                " is not a prime power; the exponent law and the quotient ring "
                                "construction are only claimed for prime powers q = p^e");
  ExponentSpec s;
  s.q = q;
  s.p = pe->first;
  s.e = pe->second;
  s.phi = q - q / s.p;
  s.ephi = s.e * s.phi;
  return s;
}

}  // namespace metabel
