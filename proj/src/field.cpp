#include "mwk/field.hpp"

#include <cctype>
#include <ostream>
#include <random>
#include <set>

#include "mwk/error.hpp"
#include "mwk/linalg.hpp"

namespace mwk {

namespace detail {

struct FieldData {
  FieldKind kind;
  FiniteField base;
  std::vector<std::string> vars;
  std::string name;
  std::string gen = "x";
  std::uint32_t least_nonsquare = 0;  // odd finite fields
};

}  // namespace detail

using detail::FieldData;

namespace {

std::string trim_spaces(std::string_view s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
  return true;
}

}  // namespace

FieldSpec FieldSpec::parse(std::string_view text) {
  const std::string s = trim_spaces(text);
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> void { throw MathError("field spec '" + std::string(text) + "': " + msg); };
  auto expect = [&](char ch) {
    if (pos >= s.size() || s[pos] != ch) fail(std::string("expected '") + ch + "'");
    ++pos;
  };
  auto number = [&]() -> std::uint64_t {
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) fail("expected a number");
    std::uint64_t v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + static_cast<std::uint64_t>(s[pos] - '0');
      if (v > (1ull << 40)) fail("number too large");
      ++pos;
    }
    return v;
  };
  if (s.compare(0, 2, "GF") != 0) fail("expected 'GF('");
  pos = 2;
  expect('(');
  std::uint64_t p = number();
  std::uint64_t k = 1;
  if (pos < s.size() && s[pos] == '^') {
    ++pos;
    k = number();
    if (!is_prime(p)) fail(std::to_string(p) + " is not prime");
  } else if (!is_prime(p)) {
    std::uint64_t q = p;
    std::uint64_t base = 0;
    for (std::uint64_t d = 2; d * d <= q; ++d)
      if (q % d == 0) {
        base = d;
        break;
      }
    if (base == 0) fail(std::to_string(p) + " is not a prime power");
    k = 0;
    while (q % base == 0) {
      q /= base;
      ++k;
    }
    if (q != 1) fail(std::to_string(p) + " is not a prime power");
    p = base;
  }
  expect(')');
  FieldSpec spec;
  spec.characteristic = static_cast<std::uint32_t>(p);
  spec.degree = static_cast<std::uint32_t>(k);
  spec.kind = k == 1 ? FieldKind::Prime : FieldKind::Galois;
  if (pos < s.size()) {
    expect('(');
    std::string cur;
    while (pos < s.size() && s[pos] != ')') {
      if (s[pos] == ',') {
        spec.variables.push_back(cur);
        cur.clear();
      } else {
        cur += s[pos];
      }
      ++pos;
    }
    expect(')');
    spec.variables.push_back(cur);
    spec.kind = FieldKind::RationalFunction;
    if (pos != s.size()) fail("trailing characters");
  }
  return spec;
}

Field make_field(const FieldSpec& spec) {
  if (!is_prime(spec.characteristic)) throw MathError(std::to_string(spec.characteristic) + " is not prime");
  if (spec.kind == FieldKind::Prime && spec.degree != 1) throw MathError("prime field must have degree 1");
  FiniteField base(spec.characteristic, spec.degree, spec.modulus);
  auto d = std::make_shared<FieldData>(FieldData{spec.kind, base, spec.variables, "", "x", 0});
  std::string name = "GF(" + std::to_string(spec.characteristic);
  if (spec.degree > 1) name += "^" + std::to_string(spec.degree);
  name += ")";
  if (spec.kind == FieldKind::RationalFunction) {
    if (spec.characteristic != 2) throw MathError("rational function fields require characteristic 2");
    if (spec.variables.empty() || spec.variables.size() > 2)
      throw MathError("rational function fields take 1 or 2 variables");
    std::set<std::string> seen;
    for (const auto& v : spec.variables) {
      if (!is_identifier(v)) throw MathError("bad variable name '" + v + "'");
      if (!seen.insert(v).second) throw MathError("duplicate variable '" + v + "'");
      if (spec.degree > 1 && v == d->gen) throw MathError("variable name clashes with the generator 'x'");
    }
    name += "(";
    for (std::size_t i = 0; i < spec.variables.size(); ++i) name += (i ? "," : "") + spec.variables[i];
    name += ")";
  } else if (!spec.variables.empty()) {
    throw MathError("finite fields take no variables");
  }
  d->name = name;
  if (spec.characteristic != 2) {
    for (std::uint32_t v = 1; v < base.order(); ++v)
      if (!base.is_square(v)) {
        d->least_nonsquare = v;
        break;
      }
  }
  return Field(d);
}

Field make_field(std::string_view spec) { return make_field(FieldSpec::parse(spec)); }

// ---------------------------------------------------------------- Field

FieldKind Field::kind() const { return d_->kind; }
std::uint32_t Field::characteristic() const { return d_->base.characteristic(); }
const FiniteField& Field::base() const { return d_->base; }
const std::vector<std::string>& Field::variables() const { return d_->vars; }
unsigned Field::num_variables() const { return static_cast<unsigned>(d_->vars.size()); }
const std::string& Field::name() const { return d_->name; }
const std::string& Field::generator_name() const { return d_->gen; }

bool Field::operator==(const Field& o) const {
  if (d_ == o.d_) return true;
  return d_->kind == o.d_->kind && d_->base == o.d_->base && d_->vars == o.d_->vars;
}

Element Field::zero() const { return from_int(0); }
Element Field::one() const { return from_int(1); }

Element Field::from_int(long long n) const {
  std::uint32_t v = d_->base.from_int(n);
  if (is_finite()) return Element::make_finite(d_, v);
  return Element::make_fraction(d_, poly::constant(v), poly::constant(1));
}

Element Field::variable(unsigned index) const {
  if (!is_function_field() || index >= num_variables()) throw MathError("no such variable");
  return Element::make_fraction(d_, poly::variable(index), poly::constant(1));
}

Element Field::generator() const {
  if (base().degree() == 1) throw MathError("prime fields have no generator");
  if (is_finite()) return Element::make_finite(d_, base().generator());
  return Element::make_fraction(d_, poly::constant(base().generator()), poly::constant(1));
}

std::vector<Element> Field::elements() const {
  if (!is_finite()) throw MathError("elements() requires a finite field");
  std::vector<Element> out;
  for (std::uint32_t v = 0; v < base().order(); ++v) out.push_back(Element::make_finite(d_, v));
  return out;
}

// ---------------------------------------------------------------- Element

Element Element::make_finite(std::shared_ptr<const FieldData> f, std::uint32_t v) {
  Element e;
  e.f_ = std::move(f);
  e.fin_ = v;
  return e;
}

Element Element::make_fraction(std::shared_ptr<const FieldData> f, Poly num, Poly den) {
  const FiniteField& F = f->base;
  if (den.is_zero()) throw MathError("division by zero");
  Element e;
  e.f_ = std::move(f);
  if (num.is_zero()) {
    e.den_ = poly::constant(1);
    return e;
  }
  if (!poly::is_constant(den)) {
    Poly g = poly::gcd(F, num, den);
    if (!poly::is_constant(g)) {
      num = poly::divexact(F, num, g);
      den = poly::divexact(F, den, g);
    }
  }
  std::uint32_t lc = poly::leading_coeff(den);
  if (lc != 1) {
    std::uint32_t s = F.inv(lc);
    num = poly::scale(F, num, s);
    den = poly::scale(F, den, s);
  }
  e.num_ = std::move(num);
  e.den_ = std::move(den);
  return e;
}

void Element::check_same(const Element& o) const {
  if (!f_ || !o.f_) throw MathError("uninitialised element");
  if (f_ != o.f_ && !(Field(f_) == Field(o.f_))) throw MathError("mixed fields: " + f_->name + " and " + o.f_->name);
}

bool Element::is_zero() const { return f_->kind == FieldKind::RationalFunction ? num_.is_zero() : fin_ == 0; }

bool Element::is_one() const {
  if (f_->kind != FieldKind::RationalFunction) return fin_ == 1;
  return num_ == poly::constant(1) && den_ == poly::constant(1);
}

Element Element::operator+(const Element& o) const {
  check_same(o);
  const FiniteField& F = f_->base;
  if (f_->kind != FieldKind::RationalFunction) return make_finite(f_, F.add(fin_, o.fin_));
  if (num_.is_zero()) return o;
  if (o.num_.is_zero()) return *this;
  if (den_ == o.den_) return make_fraction(f_, poly::add(F, num_, o.num_), den_);
  Poly n = poly::add(F, poly::mul(F, num_, o.den_), poly::mul(F, o.num_, den_));
  return make_fraction(f_, std::move(n), poly::mul(F, den_, o.den_));
}

Element Element::operator-() const {
  const FiniteField& F = f_->base;
  if (f_->kind != FieldKind::RationalFunction) return make_finite(f_, F.neg(fin_));
  Element e = *this;
  e.num_ = poly::neg(F, num_);
  return e;
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::operator*(const Element& o) const {
  check_same(o);
  const FiniteField& F = f_->base;
  if (f_->kind != FieldKind::RationalFunction) return make_finite(f_, F.mul(fin_, o.fin_));
  if (num_.is_zero() || o.num_.is_zero()) return make_fraction(f_, Poly{}, poly::constant(1));
  // Cross-cancel so the product is already reduced.
  Poly g1 = poly::gcd(F, num_, o.den_);
  Poly g2 = poly::gcd(F, o.num_, den_);
  Poly a = poly::is_constant(g1) ? num_ : poly::divexact(F, num_, g1);
  Poly d = poly::is_constant(g1) ? o.den_ : poly::divexact(F, o.den_, g1);
  Poly c = poly::is_constant(g2) ? o.num_ : poly::divexact(F, o.num_, g2);
  Poly b = poly::is_constant(g2) ? den_ : poly::divexact(F, den_, g2);
  Element e;
  e.f_ = f_;
  e.num_ = poly::mul(F, a, c);
  e.den_ = poly::mul(F, b, d);
  std::uint32_t lc = poly::leading_coeff(e.den_);
  if (lc != 1) {
    std::uint32_t s = F.inv(lc);
    e.num_ = poly::scale(F, e.num_, s);
    e.den_ = poly::scale(F, e.den_, s);
  }
  return e;
}

Element Element::inv() const {
  if (is_zero()) throw MathError("division by zero");
  const FiniteField& F = f_->base;
  if (f_->kind != FieldKind::RationalFunction) return make_finite(f_, F.inv(fin_));
  Element e;
  e.f_ = f_;
  e.num_ = den_;
  e.den_ = num_;
  std::uint32_t lc = poly::leading_coeff(e.den_);
  if (lc != 1) {
    std::uint32_t s = F.inv(lc);
    e.num_ = poly::scale(F, e.num_, s);
    e.den_ = poly::scale(F, e.den_, s);
  }
  return e;
}

Element Element::operator/(const Element& o) const { return *this * o.inv(); }

Element Element::pow(long long e) const {
  if (f_->kind != FieldKind::RationalFunction) return make_finite(f_, f_->base.pow(fin_, e));
  if (e < 0) return inv().pow(-e);
  Element result = Field(f_).one();
  Element b = *this;
  while (e > 0) {
    if (e & 1) result = result * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return result;
}

std::strong_ordering Element::operator<=>(const Element& o) const {
  if (auto c = fin_ <=> o.fin_; c != 0) return c;
  if (auto c = num_ <=> o.num_; c != 0) return c;
  return den_ <=> o.den_;
}

std::string Element::to_string() const {
  const FiniteField& F = f_->base;
  if (f_->kind != FieldKind::RationalFunction) return F.to_string(fin_, f_->gen);
  std::string n = poly::to_string(F, num_, f_->vars, f_->gen);
  if (den_ == poly::constant(1)) return n;
  std::string d = poly::to_string(F, den_, f_->vars, f_->gen);
  if (n.find('+') != std::string::npos) n = "(" + n + ")";
  if (d.find_first_of("+*") != std::string::npos) d = "(" + d + ")";
  return n + "/" + d;
}

std::ostream& operator<<(std::ostream& os, const Element& a) { return os << a.to_string(); }

// ---------------------------------------------------------------- squares

bool is_square(const Element& a) {
  Field f = a.field();
  if (f.is_finite()) return f.base().is_square(a.finite_value());
  if (a.is_zero()) return true;
  Poly h = poly::mul(f.base(), a.numerator(), a.denominator());
  auto parts = poly::square_split(f.base(), h);
  return parts[1].is_zero() && parts[2].is_zero() && parts[3].is_zero();
}

Element sqrt(const Element& a) {
  Field f = a.field();
  if (f.is_finite()) {
    if (!f.base().is_square(a.finite_value())) throw MathError("sqrt of a non-square");
    return Element::make_finite(f.data(), f.base().sqrt(a.finite_value()));
  }
  if (a.is_zero()) return a;
  Poly h = poly::mul(f.base(), a.numerator(), a.denominator());
  auto parts = poly::square_split(f.base(), h);
  if (!(parts[1].is_zero() && parts[2].is_zero() && parts[3].is_zero()))
    throw MathError("sqrt of a non-square: " + a.to_string());
  return Element::make_fraction(f.data(), parts[0], a.denominator());
}

Element square_reduce(const Element& a) {
  if (a.is_zero()) throw MathError("square_reduce of zero");
  Field f = a.field();
  const FiniteField& F = f.base();
  if (f.is_finite()) {
    if (F.characteristic() == 2 || F.is_square(a.finite_value())) return f.one();
    return Element::make_finite(f.data(), f.data()->least_nonsquare);
  }
  Poly h = poly::mul(F, a.numerator(), a.denominator());
  auto parts = poly::square_split(F, h);
  Poly c;
  for (const auto& p : parts) c = poly::gcd(F, c, p);
  if (!poly::is_constant(c)) h = poly::divexact(F, h, poly::frobenius(F, c));
  return Element::make_fraction(f.data(), poly::make_monic(F, h), poly::constant(1));
}

Element basis_monomial(const Field& field, unsigned mask) {
  Element m = field.one();
  for (unsigned i = 0; i < field.num_variables(); ++i)
    if (mask & (1u << i)) m = m * field.variable(i);
  return m;
}

Element FrobeniusCoords::reconstruct(const Field& field) const {
  Element s = field.zero();
  for (const auto& [mask, b] : coords) s = s + b * b * basis_monomial(field, mask);
  return s;
}

FrobeniusCoords frobenius_coords(const Element& a) {
  Field f = a.field();
  if (!f.is_function_field()) throw MathError("frobenius_coords requires a function field");
  FrobeniusCoords out;
  const unsigned n = 1u << f.num_variables();
  if (a.is_zero()) {
    for (unsigned e = 0; e < n; ++e) out.coords.emplace(e, f.zero());
    return out;
  }
  Poly h = poly::mul(f.base(), a.numerator(), a.denominator());
  auto parts = poly::square_split(f.base(), h);
  for (unsigned e = 0; e < n; ++e)
    out.coords.emplace(e, Element::make_fraction(f.data(), parts[e], a.denominator()));
  return out;
}

std::vector<Element> square_coordinates(const Element& a) {
  Field f = a.field();
  if (f.characteristic() != 2) throw MathError("square coordinates require characteristic 2");
  if (f.is_finite()) return {sqrt(a)};
  auto fc = frobenius_coords(a);
  std::vector<Element> v;
  for (auto& [mask, b] : fc.coords) v.push_back(b);
  return v;
}

namespace {

using PolyMatrix = std::vector<std::vector<Poly>>;

Poly poly_det(const FiniteField& F, const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return poly::constant(1);
  if (n == 1) return m[0][0];
  Poly d;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    PolyMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    Poly t = poly::mul(F, m[0][j], poly_det(F, minor));
    d = j % 2 == 0 ? poly::add(F, d, t) : poly::sub(F, d, t);
  }
  return d;
}

// Fraction-free (Bareiss) echelon pass; returns (original row, column) of each pivot.
std::vector<std::pair<std::size_t, std::size_t>> bareiss_pivots(const FiniteField& F, PolyMatrix m) {
  std::vector<std::size_t> orig(m.size());
  for (std::size_t i = 0; i < orig.size(); ++i) orig[i] = i;
  std::vector<std::pair<std::size_t, std::size_t>> piv;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  Poly prev = poly::constant(1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    std::swap(orig[p], orig[row]);
    for (std::size_t r = row + 1; r < m.size(); ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        Poly v = poly::sub(F, poly::mul(F, m[row][col], m[r][c]), poly::mul(F, m[r][col], m[row][c]));
        m[r][c] = poly::divexact(F, v, prev);
      }
      m[r][col] = Poly{};
    }
    prev = m[row][col];
    piv.emplace_back(orig[row], col);
    ++row;
  }
  return piv;
}

}  // namespace

std::optional<std::vector<Element>> square_dependence(const std::vector<Element>& v) {
  if (v.empty()) throw MathError("square_dependence of an empty sequence");
  Field f = v[0].field();
  if (f.characteristic() != 2) throw MathError("square_dependence requires characteristic 2");
  for (const auto& x : v)
    if (x.is_zero()) throw MathError("square_dependence entries must be nonzero");
  if (f.is_finite()) {
    // F is one-dimensional over F^2 = F: any two entries are dependent.
    if (v.size() < 2) return std::nullopt;
    std::vector<Element> out(v.size(), f.zero());
    out[0] = sqrt(v[1]);
    out[1] = sqrt(v[0]);
    return out;
  }
  // x = h/g^2 with h = num*den; sum mu_i^2 h_i = 0 iff sum mu_i P_{e,i} = 0 for
  // every coset e, where h = sum_e m_e P_e^2. Then lambda_i = mu_i g_i.
  const FiniteField& F = f.base();
  const std::size_t cols = v.size();
  PolyMatrix m(4, std::vector<Poly>(cols));
  for (std::size_t c = 0; c < cols; ++c) {
    auto parts = poly::square_split(F, poly::mul(F, v[c].numerator(), v[c].denominator()));
    for (std::size_t e = 0; e < 4; ++e) m[e][c] = parts[e];
  }
  auto piv = bareiss_pivots(F, m);
  if (piv.size() == cols) return std::nullopt;
  std::vector<bool> is_pivot(cols, false);
  for (auto& [r, c] : piv) is_pivot[c] = true;
  std::size_t free = 0;
  while (is_pivot[free]) ++free;
  const std::size_t k = piv.size();
  auto sub = [&](std::size_t replaced) {
    PolyMatrix a(k, std::vector<Poly>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        std::size_t col = j == replaced ? free : piv[j].second;
        a[i][j] = m[piv[i].first][col];
      }
    return a;
  };
  std::vector<Poly> mu(cols);
  mu[free] = poly_det(F, sub(k));
  for (std::size_t j = 0; j < k; ++j) mu[piv[j].second] = poly::neg(F, poly_det(F, sub(j)));
  std::vector<Element> out;
  for (std::size_t c = 0; c < cols; ++c)
    out.push_back(Element::make_fraction(f.data(), poly::mul(F, mu[c], v[c].denominator()), poly::constant(1)));
  // Sanity: the relation must hold exactly.
  Element acc = f.zero();
  for (std::size_t c = 0; c < cols; ++c) acc = acc + out[c] * out[c] * v[c];
  if (!acc.is_zero()) throw MathError("internal: square dependence certificate failed");
  return out;
}

Element random_unit(const Field& field, std::uint64_t seed, unsigned degree_bound) {
  std::mt19937_64 gen(seed * 0x9E3779B97F4A7C15ull + 0x632BE59BD9B4E019ull);
  const std::uint32_t q = field.base().order();
  if (field.is_finite()) {
    std::uint32_t v = static_cast<std::uint32_t>(1 + gen() % (q - 1));
    return Element::make_finite(field.data(), v);
  }
  const unsigned m = field.num_variables();
  auto random_poly = [&](unsigned deg) {
    Poly p;
    for (unsigned total = 0; total <= deg; ++total)
      for (unsigned j = 0; j <= (m == 2 ? total : 0); ++j) {
        std::uint32_t c = static_cast<std::uint32_t>(gen() % q);
        p = poly::add(field.base(), p, poly::monomial(c, total - j, j));
      }
    return p;
  };
  for (;;) {
    Poly num = random_poly(static_cast<unsigned>(gen() % (degree_bound + 1)));
    Poly den = random_poly(static_cast<unsigned>(gen() % (degree_bound + 1)));
    if (num.is_zero() || den.is_zero()) continue;
    return Element::make_fraction(field.data(), num, den);
  }
}

// ---------------------------------------------------------------- parser

namespace {

class ElementParser {
 public:
  ElementParser(const Field& f, std::string_view s, const Bindings& b, std::size_t offset)
      : f_(f), s_(s), b_(b), offset_(offset) {}

  Element parse_all() {
    Element e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(offset_ + pos_, msg); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool starts_atom(char ch) const {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '(';
  }

  Element expr() {
    Element acc = term();
    for (;;) {
      char ch = peek();
      if (ch == '+') {
        ++pos_;
        acc = acc + term();
      } else if (ch == '-') {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Element term() {
    Element acc = unary();
    for (;;) {
      char ch = peek();
      if (ch == '*') {
        ++pos_;
        acc = acc * unary();
      } else if (ch == '/') {
        ++pos_;
        std::size_t at = pos_;
        Element d = unary();
        if (d.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        acc = acc / d;
      } else if (starts_atom(ch)) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  Element unary() {
    char ch = peek();
    if (ch == '-') {
      ++pos_;
      return -unary();
    }
    if (ch == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  Element power() {
    Element base = atom();
    if (peek() == '^') {
      ++pos_;
      bool negative = false;
      if (peek() == '-') {
        negative = true;
        ++pos_;
      }
      skip();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected exponent");
      long long e = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        e = e * 10 + (s_[pos_] - '0');
        if (e > 1000000) fail("exponent too large");
        ++pos_;
      }
      if (negative && base.is_zero()) fail("division by zero");
      return base.pow(negative ? -e : e);
    }
    return base;
  }

  Element atom() {
    char ch = peek();
    if (ch == '(') {
      ++pos_;
      Element e = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      const long long p = f_.characteristic();
      long long v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        v = (v * 10 + (s_[pos_] - '0')) % p;
        ++pos_;
      }
      return f_.from_int(v);
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (auto it = b_.find(name); it != b_.end()) {
        if (!(it->second.field() == f_)) {
          pos_ = start;
          fail("binding '" + name + "' belongs to another field");
        }
        return it->second;
      }
      for (unsigned i = 0; i < f_.num_variables(); ++i)
        if (f_.variables()[i] == name) return f_.variable(i);
      if (name == f_.generator_name() && f_.base().degree() > 1) return f_.generator();
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    if (ch == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  const Field& f_;
  std::string_view s_;
  const Bindings& b_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

}  // namespace

Element parse_element_at(const Field& field, std::string_view text, const Bindings& bindings, std::size_t offset) {
  return ElementParser(field, text, bindings, offset).parse_all();
}

Element Field::parse(std::string_view text, const Bindings& bindings) const {
  return parse_element_at(*this, text, bindings, 0);
}

}  // namespace mwk
