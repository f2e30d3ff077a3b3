#include "metabel/matgroup.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "metabel/cyclotomic.hpp"

namespace metabel {

// ---------------------------------------------------------------- MatPoly

MatPoly::MatPoly(Ring ring, int dim)
    : ring_(ring), dim_(dim), e_(static_cast<std::size_t>(dim * dim), LaurentPoly(ring)) {
  if (dim < 1) throw std::invalid_argument("matrix dimension must be positive");
}

MatPoly MatPoly::identity(Ring ring, int dim) {
  MatPoly m(ring, dim);
  for (int i = 0; i < dim; ++i) m(i, i) = LaurentPoly::one(ring);
  return m;
}

bool MatPoly::is_zero() const {
  for (const auto& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

bool MatPoly::is_identity() const {
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) {
      const auto& x = (*this)(r, c);
      if (r == c ? !x.is_one() : !x.is_zero()) return false;
    }
  return true;
}

MatPoly& MatPoly::operator+=(const MatPoly& o) {
  if (o.dim_ != dim_ || o.ring_ != ring_) throw RingMismatch("matrix shape or ring mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

MatPoly& MatPoly::operator-=(const MatPoly& o) {
  if (o.dim_ != dim_ || o.ring_ != ring_) throw RingMismatch("matrix shape or ring mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

MatPoly operator*(const MatPoly& a, const MatPoly& b) {
  if (a.dim_ != b.dim_ || a.ring_ != b.ring_) throw RingMismatch("matrix shape or ring mismatch");
  MatPoly out(a.ring_, a.dim_);
  for (int r = 0; r < a.dim_; ++r)
    for (int s = 0; s < a.dim_; ++s) {
      const auto& x = a(r, s);
      if (x.is_zero()) continue;
      for (int c = 0; c < a.dim_; ++c) {
        const auto& y = b(s, c);
        if (!y.is_zero()) out(r, c) += x * y;
      }
    }
  return out;
}

MatPoly operator*(const LaurentPoly& c, const MatPoly& a) {
  MatPoly out = a;
  for (auto& x : out.e_) x = c * x;
  return out;
}

MatPoly MatPoly::pow(unsigned n) const {
  MatPoly result = identity(ring_, dim_);
  MatPoly base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

MatPoly MatPoly::specialize_t_one() const {
  MatPoly out(ring_.without_t(), dim_);
  for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i].specialize_t_one();
  return out;
}

MatPoly MatPoly::with_t() const {
  if (ring_.has_t) return *this;
  MatPoly out(ring_.with_t(), dim_);
  for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i].with_t();
  return out;
}

std::string MatPoly::to_string() const {
  std::string s = "[";
  for (int r = 0; r < dim_; ++r) {
    s += r ? ", [" : "[";
    for (int c = 0; c < dim_; ++c) {
      if (c) s += ", ";
      s += (*this)(r, c).to_string();
    }
    s += "]";
  }
  return s + "]";
}

// ---------------------------------------------------------------- words

GroupWord::GroupWord(std::vector<Letter> letters) {
  for (const auto& l : letters) push(l);
}

GroupWord GroupWord::letter(int generator, int exponent) {
  if (generator < 1 || generator > kMaxVariables) throw std::invalid_argument("generator id out of range");
  GroupWord w;
  w.push(Letter{generator, exponent});
  return w;
}

void GroupWord::push(Letter l) {
  if (l.exponent == 0) return;
  if (!letters_.empty() && letters_.back().generator == l.generator) {
    letters_.back().exponent += l.exponent;
    if (letters_.back().exponent == 0) letters_.pop_back();
    return;
  }
  letters_.push_back(l);
}

std::size_t GroupWord::length() const {
  std::size_t n = 0;
  for (const auto& l : letters_) n += static_cast<std::size_t>(std::abs(l.exponent));
  return n;
}

int GroupWord::max_generator() const {
  int m = 0;
  for (const auto& l : letters_) m = std::max(m, l.generator);
  return m;
}

GroupWord GroupWord::inverse() const {
  GroupWord w;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.push(Letter{it->generator, -it->exponent});
  return w;
}

GroupWord GroupWord::pow(int n) const {
  const GroupWord base = n < 0 ? inverse() : *this;
  GroupWord w;
  for (int i = 0; i < std::abs(n); ++i) w = w * base;
  return w;
}

GroupWord operator*(const GroupWord& a, const GroupWord& b) {
  GroupWord w = a;
  for (const auto& l : b.letters_) w.push(l);
  return w;
}

GroupWord GroupWord::commutator(const GroupWord& a, const GroupWord& b) {
  return a * b * a.inverse() * b.inverse();
}

GroupWord GroupWord::left_normed(const std::vector<GroupWord>& words) {
  if (words.empty()) return {};
  GroupWord w = words.front();
  for (std::size_t i = 1; i < words.size(); ++i) w = commutator(w, words[i]);
  return w;
}

std::string GroupWord::to_string() const {
  if (letters_.empty()) return "1";
  const bool rank2 = max_generator() <= 2;
  std::string s;
  for (const auto& l : letters_) {
    if (!s.empty()) s += ' ';
    s += "M" + std::to_string(l.generator);
    if (l.generator >= 2) s += rank2 ? "T" : "T" + std::to_string(l.generator);
    if (l.exponent != 1) s += "^" + std::to_string(l.exponent);
  }
  return s;
}

namespace {

class WordParser {
 public:
  explicit WordParser(std::string_view s) : s_(s) {}

  GroupWord parse() {
    GroupWord w = word();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw RingMismatch("bad word at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  int number() {
    skip();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
    const std::size_t start = pos_;
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > 1'000'000) fail("exponent too large");
    }
    if (pos_ == start) fail("expected a number");
    return static_cast<int>(neg ? -v : v);
  }

  int digits() {
    const std::size_t start = pos_;
    int v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > kMaxVariables) fail("generator index too large");
    }
    return pos_ == start ? -1 : v;
  }

  GroupWord word() {
    GroupWord w;
    while (true) {
      skip();
      if (pos_ >= s_.size()) break;
      const char c = s_[pos_];
      if (c != 'M' && c != '[' && c != '(' && c != '1') break;
      w = w * factor();
    }
    return w;
  }

  GroupWord factor() {
    GroupWord a = atom();
    if (peek('^')) {
      ++pos_;
      a = a.pow(number());
    }
    return a;
  }

  GroupWord atom() {
    skip();
    const char c = s_[pos_];
    if (c == '1') {
      ++pos_;
      return {};
    }
    if (c == '(') {
      ++pos_;
      GroupWord w = word();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return w;
    }
    if (c == '[') {
      ++pos_;
      std::vector<GroupWord> parts{word()};
      while (peek(',')) {
        ++pos_;
        parts.push_back(word());
      }
      if (!peek(']')) fail("expected ']'");
      ++pos_;
      if (parts.size() < 2) fail("a bracket needs at least two entries");
      return GroupWord::left_normed(parts);
    }
    ++pos_;  // 'M'
    const int j = digits();
    if (j < 1) fail("expected a generator index after 'M'");
    if (pos_ < s_.size() && s_[pos_] == 'T') {
      ++pos_;
      const int i = digits();
      if (j == 1) fail("M1 carries no T");
      if (i != -1 && i != j) fail("MjTi needs i = j");
    }
    return GroupWord::letter(j, 1);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupWord GroupWord::parse(std::string_view text) { return WordParser(text).parse(); }

// ---------------------------------------------------------------- generators

std::vector<LaurentPoly> augmentation_row(Ring ring) {
  std::vector<LaurentPoly> v;
  for (int i = 0; i < ring.rank; ++i) v.push_back(LaurentPoly::one_minus(ring, i));
  return v;
}

namespace {

void check_rank(int rank, int j) {
  if (rank < 2) throw std::invalid_argument("rank must be at least 2");
  if (rank > kMaxVariables - 1) throw std::invalid_argument("rank too large");
  if (j < 1 || j > rank) throw std::invalid_argument("generator index out of range for rank");
}

// x_j^s (I + sign * e_j v) over the ring.
MatPoly rank_one_update(Ring ring, int rank, int j, int sign, int unit_exp) {
  const auto v = augmentation_row(ring);
  MatPoly m(ring, rank);
  Monomial xj(ring.variable_count());
  xj.set(j - 1, unit_exp);
  const LaurentPoly u = LaurentPoly::monomial(ring, xj);
  const LaurentPoly s = LaurentPoly::constant(ring, sign);
  for (int r = 0; r < rank; ++r) {
    if (r == j - 1) {
      for (int c = 0; c < rank; ++c) m(r, c) = s * v[static_cast<std::size_t>(c)];
    }
    m(r, r) += LaurentPoly::one(ring);
  }
  return u * m;
}

// I + (t^s - 1) U_j.
MatPoly t_factor(int rank, int j, int s) {
  const Ring ring = Ring::of(rank, true);
  Monomial tm(ring.variable_count());
  tm.set(ring.t_index(), s);
  const LaurentPoly a = LaurentPoly::monomial(ring, tm) - LaurentPoly::one(ring);
  return MatPoly::identity(ring, rank) + a * t_idempotent(rank, j).with_t();
}

}  // namespace

MatPoly base_generator(int rank, int j) {
  check_rank(rank, j);
  const Ring ring = Ring::of(rank);
  // x_j I + e_j v
  const auto v = augmentation_row(ring);
  MatPoly m(ring, rank);
  for (int r = 0; r < rank; ++r) m(r, r) = LaurentPoly::variable(ring, j - 1);
  for (int c = 0; c < rank; ++c) m(j - 1, c) += v[static_cast<std::size_t>(c)];
  return m;
}

MatPoly base_generator_inverse(int rank, int j) {
  check_rank(rank, j);
  return rank_one_update(Ring::of(rank), rank, j, -1, -1);
}

MatPoly t_idempotent(int rank, int j) {
  check_rank(rank, j);
  if (j < 2) throw std::invalid_argument("T_j needs j >= 2");
  const Ring ring = Ring::of(rank);
  MatPoly u(ring, rank);
  for (int i = 0; i < j - 1; ++i) {
    u(i, i) = LaurentPoly::one(ring);
    u(j - 1, i) = LaurentPoly::constant(ring, -1);
  }
  return u;
}

std::vector<MatPoly> make_generators(int rank, bool with_t) {
  check_rank(rank, 1);
  std::vector<MatPoly> out;
  for (int j = 1; j <= rank; ++j) {
    MatPoly m = base_generator(rank, j);
    if (with_t) {
      m = m.with_t();
      if (j >= 2) m = m * t_factor(rank, j, 1);
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<MatPoly> make_generator_inverses(int rank, bool with_t) {
  check_rank(rank, 1);
  std::vector<MatPoly> out;
  for (int j = 1; j <= rank; ++j) {
    MatPoly m = base_generator_inverse(rank, j);
    if (with_t) {
      m = m.with_t();
      if (j >= 2) m = t_factor(rank, j, -1) * m;
    }
    out.push_back(std::move(m));
  }
  return out;
}

MatPoly eval_word(const GroupWord& w, int rank, bool with_t) {
  if (w.max_generator() > rank) throw std::invalid_argument("word uses a generator beyond the rank");
  const auto gens = make_generators(rank, with_t);
  const auto invs = make_generator_inverses(rank, with_t);
  const Ring ring = Ring::of(rank, with_t);
  MatPoly m = MatPoly::identity(ring, rank);
  for (const auto& l : w.letters()) {
    const auto idx = static_cast<std::size_t>(l.generator - 1);
    const MatPoly& g = l.exponent > 0 ? gens[idx] : invs[idx];
    for (int i = 0; i < std::abs(l.exponent); ++i) m = m * g;
  }
  return m;
}

// ---------------------------------------------------------------- normal form

MatPoly NormalForm::nilpart() const {
  const int k = static_cast<int>(lambdas.size());
  const auto v = augmentation_row(ring);
  MatPoly n(ring, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) n(i, j) = lambdas[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
  return n;
}

MatPoly NormalForm::to_matrix() const {
  const int k = static_cast<int>(lambdas.size());
  return unit() * MatPoly::identity(ring, k) + nilpart();
}

NormalForm normal_form(const MatPoly& m) {
  const Ring ring = m.ring();
  const int k = m.dim();
  if (ring.rank != k || k < 2) throw StructuralError("normal form needs a k x k matrix over a rank-k ring");
  const auto v = augmentation_row(ring);
  NormalForm nf{ring, Monomial(ring.variable_count()), {}};
  std::optional<LaurentPoly> u;
  for (int i = 0; i < k; ++i) {
    const int l = i == 0 ? 1 : 0;
    auto lambda = divide_one_minus(m(i, l), l);
    if (!lambda) throw StructuralError("entry (" + std::to_string(i) + "," + std::to_string(l) +
                                       ") is not a multiple of 1 - " + ring.variable_name(l));
    LaurentPoly ui = m(i, i) - *lambda * v[static_cast<std::size_t>(i)];
    if (u && ui != *u) throw StructuralError("diagonal units disagree");
    u = std::move(ui);
    nf.lambdas.push_back(std::move(*lambda));
  }
  if (u->size() != 1 || u->terms().front().second != 1)
    throw StructuralError("diagonal part " + u->to_string() + " is not a positive unit");
  nf.u = u->terms().front().first;
  if (nf.to_matrix() != m) throw StructuralError("matrix is not of the form u I + [lambda_i v]");
  return nf;
}

NormalForm fast_power(const NormalForm& nf, unsigned n) {
  if (n == 0) throw std::invalid_argument("fast_power needs n >= 1");
  LaurentPoly geometric(nf.ring);
  const LaurentPoly u = nf.unit();
  LaurentPoly ui = LaurentPoly::one(nf.ring);
  for (unsigned i = 0; i < n; ++i) {
    geometric += ui;
    ui = ui.shifted(nf.u);
  }
  NormalForm out{nf.ring, nf.u.pow(static_cast<int>(n)), {}};
  for (const auto& l : nf.lambdas) out.lambdas.push_back(geometric * l);
  return out;
}

std::pair<LaurentPoly, LaurentPoly> basic_commutator_lambda(int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("basic commutator weights are nonnegative");
  const Ring ring = Ring::of(2);
  const LaurentPoly sx = LaurentPoly::one_minus(ring, 0);
  const LaurentPoly sy = LaurentPoly::one_minus(ring, 1);
  const auto ua = static_cast<unsigned>(a);
  const auto ub = static_cast<unsigned>(b);
  return {-(sy.pow(ub + 1) * sx.pow(ua)), sy.pow(ub) * sx.pow(ua + 1)};
}

GroupWord basic_commutator_word(int a, int b) {
  std::vector<GroupWord> parts{GroupWord::letter(2), GroupWord::letter(1)};
  for (int i = 0; i < a; ++i) parts.push_back(GroupWord::letter(1));
  for (int i = 0; i < b; ++i) parts.push_back(GroupWord::letter(2));
  return GroupWord::left_normed(parts);
}

// ---------------------------------------------------------------- sampling

WordSampler::WordSampler(std::uint64_t seed, int rank, int max_base_letters)
    : rng_(seed), rank_(rank), max_base_letters_(max_base_letters) {
  if (rank < 2) throw std::invalid_argument("rank must be at least 2");
  if (max_base_letters < 1) throw std::invalid_argument("base words need at least one letter");
}

GroupWord WordSampler::random_word(int max_letters) {
  while (true) {
    const auto n = 1 + static_cast<int>(uniform(static_cast<std::uint64_t>(max_letters)));
    GroupWord w;
    for (int i = 0; i < n; ++i) {
      const int g = 1 + static_cast<int>(uniform(static_cast<std::uint64_t>(rank_)));
      const int e = uniform(2) ? 1 : -1;
      w = w * GroupWord::letter(g, e);
    }
    if (!w.empty()) return w;
  }
}

GroupWord WordSampler::derived(int k) {
  if (k <= 0) return base_word();
  while (true) {
    GroupWord a = derived(k - 1);
    GroupWord b = derived(k - 1);
    GroupWord c = GroupWord::commutator(a, b);
    if (!c.empty()) return c;
  }
}

GroupWord WordSampler::lower_central(int j) {
  if (j <= 1) return base_word();
  while (true) {
    std::vector<GroupWord> parts;
    for (int i = 0; i < j; ++i) parts.push_back(base_word());
    GroupWord c = GroupWord::left_normed(parts);
    if (!c.empty()) return c;
  }
}

GroupWord WordSampler::sample(const Stratum& s) {
  return s.kind == StratumKind::Derived ? derived(s.depth) : lower_central(s.depth);
}

GroupWord sample_subgroup_element(const Stratum& s, std::uint64_t seed, int max_base_letters, int rank) {
  WordSampler sampler(seed, rank, max_base_letters);
  return sampler.sample(s);
}

ExponentSums exponent_sums(const GroupWord& w) {
  ExponentSums s;
  for (const auto& l : w.letters()) {
    s.per_generator[l.generator] += l.exponent;
    if (l.generator >= 2) s.t_sum += l.exponent;
  }
  for (auto it = s.per_generator.begin(); it != s.per_generator.end();) {
    if (it->second == 0) it = s.per_generator.erase(it);
    else ++it;
  }
  return s;
}

int determinant_t_exponent(const GroupWord& w) {
  int c = 0;
  for (const auto& l : w.letters()) c += (l.generator - 1) * l.exponent;
  return c;
}

// ---------------------------------------------------------------- determinants

namespace {

LaurentPoly laplace(const MatPoly& m, std::vector<int>& cols, int row) {
  const int k = m.dim();
  if (row == k) return LaurentPoly::one(m.ring());
  LaurentPoly sum(m.ring());
  int sign = 1;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const int c = cols[i];
    if (!m(row, c).is_zero()) {
      std::vector<int> rest = cols;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      LaurentPoly term = m(row, c) * laplace(m, rest, row + 1);
      if (sign > 0) sum += term;
      else sum -= term;
    }
    sign = -sign;
  }
  return sum;
}

}  // namespace

LaurentPoly determinant(const MatPoly& m) {
  std::vector<int> cols;
  for (int c = 0; c < m.dim(); ++c) cols.push_back(c);
  return laplace(m, cols, 0);
}

SignedUnit determinant_unit(const MatPoly& m) {
  const LaurentPoly d = determinant(m);
  if (!d.is_unit_monomial()) throw StructuralError("determinant " + d.to_string() + " is not a unit");
  const auto& [mono, c] = d.terms().front();
  return SignedUnit{c > 0 ? 1 : -1, mono};
}

std::string SignedUnit::to_string(Ring ring) const {
  const LaurentPoly p = LaurentPoly::monomial(ring, monomial, sign);
  return p.to_string();
}

// ---------------------------------------------------------------- Sanov image

std::array<Integer, 4> sanov_image(const GroupWord& w) {
  if (w.max_generator() > 2) throw std::invalid_argument("the integer specialization is rank 2 only");
  const std::array<Integer, 3> images{1, -1, -1};
  auto to_int = [&](const MatPoly& m) {
    std::array<Integer, 4> out;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) out[static_cast<std::size_t>(2 * r + c)] = evaluate_hom(m(r, c), images);
    return out;
  };
  const auto gens = make_generators(2, true);
  const auto invs = make_generator_inverses(2, true);
  std::array<std::array<Integer, 4>, 2> g{to_int(gens[0]), to_int(gens[1])};
  std::array<std::array<Integer, 4>, 2> gi{to_int(invs[0]), to_int(invs[1])};
  auto mul = [](const std::array<Integer, 4>& a, const std::array<Integer, 4>& b) {
    return std::array<Integer, 4>{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                                  a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
  };
  std::array<Integer, 4> m{1, 0, 0, 1};
  for (const auto& l : w.letters()) {
    const auto idx = static_cast<std::size_t>(l.generator - 1);
    const auto& f = l.exponent > 0 ? g[idx] : gi[idx];
    for (int i = 0; i < std::abs(l.exponent); ++i) m = mul(m, f);
  }
  return m;
}

}  // namespace metabel
