#include "mwk/kmw.hpp"

#include <cctype>

#include "mwk/error.hpp"

namespace mwk {

// ---------------------------------------------------------------- MWExpr

struct MWExpr::Node {
  MWKind kind;
  Field field;
  Element unit;
  long long value = 0;
  std::vector<MWExpr> children;
  unsigned exponent = 0;
};

MWExpr MWExpr::bracket(const Element& u) {
  if (u.is_zero()) throw MathError("[0] is not a generator");
  return MWExpr(std::make_shared<const Node>(Node{MWKind::Bracket, u.field(), u, 0, {}, 0}));
}

MWExpr MWExpr::eta(const Field& field) {
  return MWExpr(std::make_shared<const Node>(Node{MWKind::Eta, field, {}, 0, {}, 0}));
}

MWExpr MWExpr::integer(const Field& field, long long n) {
  return MWExpr(std::make_shared<const Node>(Node{MWKind::Integer, field, {}, n, {}, 0}));
}

MWExpr MWExpr::sum(const Field& field, std::vector<MWExpr> terms) {
  if (terms.empty()) return integer(field, 0);
  for (const auto& t : terms)
    if (!(t.field() == field)) throw MathError("mixed fields in expression");
  return MWExpr(std::make_shared<const Node>(Node{MWKind::Sum, field, {}, 0, std::move(terms), 0}));
}

MWExpr MWExpr::product(const Field& field, std::vector<MWExpr> factors) {
  if (factors.empty()) return integer(field, 1);
  for (const auto& t : factors)
    if (!(t.field() == field)) throw MathError("mixed fields in expression");
  return MWExpr(std::make_shared<const Node>(Node{MWKind::Product, field, {}, 0, std::move(factors), 0}));
}

MWExpr MWExpr::neg(MWExpr x) {
  Field f = x.field();
  return MWExpr(std::make_shared<const Node>(Node{MWKind::Neg, f, {}, 0, {std::move(x)}, 0}));
}

MWExpr MWExpr::power(MWExpr base, unsigned exponent) {
  Field f = base.field();
  return MWExpr(std::make_shared<const Node>(Node{MWKind::Power, f, {}, 0, {std::move(base)}, exponent}));
}

MWKind MWExpr::kind() const { return n_->kind; }
const Field& MWExpr::field() const { return n_->field; }
const Element& MWExpr::unit() const { return n_->unit; }
long long MWExpr::value() const { return n_->value; }
const std::vector<MWExpr>& MWExpr::children() const { return n_->children; }
unsigned MWExpr::exponent() const { return n_->exponent; }

MWExpr MWExpr::operator+(const MWExpr& o) const { return sum(field(), {*this, o}); }
MWExpr MWExpr::operator-(const MWExpr& o) const { return sum(field(), {*this, neg(o)}); }
MWExpr MWExpr::operator*(const MWExpr& o) const { return product(field(), {*this, o}); }
MWExpr MWExpr::operator-() const { return neg(*this); }

bool MWExpr::operator==(const MWExpr& o) const {
  if (n_ == o.n_) return true;
  if (kind() != o.kind() || !(field() == o.field())) return false;
  switch (kind()) {
    case MWKind::Bracket:
      return unit() == o.unit();
    case MWKind::Eta:
      return true;
    case MWKind::Integer:
      return value() == o.value();
    case MWKind::Power:
      if (exponent() != o.exponent()) return false;
      [[fallthrough]];
    default:
      return children() == o.children();
  }
}

// ---------------------------------------------------------------- constants

MWExpr angle(const Element& u) {
  const Field& f = u.field();
  return MWExpr::sum(f, {MWExpr::integer(f, 1), MWExpr::product(f, {MWExpr::eta(f), MWExpr::bracket(u)})});
}

MWExpr epsilon(const Field& field) { return MWExpr::neg(angle(-field.one())); }

MWExpr hyperbolic(const Field& field) {
  return MWExpr::sum(field, {MWExpr::product(field, {MWExpr::eta(field), MWExpr::bracket(-field.one())}),
                             MWExpr::integer(field, 2)});
}

MWExpr n_epsilon(const Field& field, long long n) {
  if (n < 0) return MWExpr::neg(MWExpr::product(field, {angle(-field.one()), n_epsilon(field, -n)}));
  if (n == 0) return MWExpr::integer(field, 0);
  std::vector<MWExpr> terms;
  for (long long i = 1; i <= n; ++i)
    terms.push_back(i % 2 == 1 ? angle(field.one()) : angle(-field.one()));
  return MWExpr::sum(field, std::move(terms));
}

// ---------------------------------------------------------------- parser

namespace {

class ExprParser {
 public:
  ExprParser(const Field& f, std::string_view s, const Bindings& b) : f_(f), s_(s), b_(b) {}

  MWExpr parse_all() {
    if (peek() == '\0') fail("empty expression");
    MWExpr e = expr();
    if (peek() != '\0') fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  char peek() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  static bool starts_factor(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '[' || c == '<' || c == '(';
  }

  MWExpr expr() {
    std::vector<MWExpr> terms{term()};
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        terms.push_back(term());
      } else if (c == '-') {
        ++pos_;
        terms.push_back(MWExpr::neg(term()));
      } else {
        break;
      }
    }
    return terms.size() == 1 ? terms[0] : MWExpr::sum(f_, std::move(terms));
  }

  MWExpr term() {
    bool negate = false;
    char c = peek();
    if (c == '-' || c == '+') {
      negate = c == '-';
      ++pos_;
    }
    if (!starts_factor(peek())) fail(peek() == '\0' ? "unexpected end of input" : "expected a factor");
    std::vector<MWExpr> factors{factor()};
    for (;;) {
      c = peek();
      if (c == '*') {
        ++pos_;
        if (!starts_factor(peek())) fail("expected a factor after '*'");
        factors.push_back(factor());
      } else if (starts_factor(c)) {
        factors.push_back(factor());
      } else {
        break;
      }
    }
    MWExpr t = factors.size() == 1 ? factors[0] : MWExpr::product(f_, std::move(factors));
    return negate ? MWExpr::neg(t) : t;
  }

  MWExpr factor() {
    MWExpr a = atom();
    if (peek() == '^') {
      ++pos_;
      peek();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        fail("expected a nonnegative exponent");
      long long n = integer_literal();
      if (n > 64) fail("exponent too large");
      return MWExpr::power(a, static_cast<unsigned>(n));
    }
    return a;
  }

  long long integer_literal() {
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 1000000000) fail("integer literal too large");
      ++pos_;
    }
    return v;
  }

  Element element_until(char close) {
    const std::size_t start = ++pos_;
    const std::size_t end = s_.find(close, start);
    if (end == std::string_view::npos) fail(std::string("missing '") + close + "'");
    Element u = parse_element_at(f_, s_.substr(start, end - start), b_, start);
    if (u.is_zero()) {
      pos_ = start;
      fail("zero is not a unit");
    }
    pos_ = end + 1;
    return u;
  }

  MWExpr atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      MWExpr e = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return e;
    }
    if (c == '[') return MWExpr::bracket(element_until(']'));
    if (c == '<') return angle(element_until('>'));
    if (std::isdigit(static_cast<unsigned char>(c))) return MWExpr::integer(f_, integer_literal());
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    std::string word(s_.substr(start, pos_ - start));
    if (word == "eta") return MWExpr::eta(f_);
    if (word == "eps") return epsilon(f_);
    if (word == "h") return hyperbolic(f_);
    if (word == "n_eps") {
      if (peek() != '(') fail("expected '(' after n_eps");
      ++pos_;
      bool negative = false;
      if (peek() == '-' || s_[pos_] == '+') {
        negative = s_[pos_] == '-';
        ++pos_;
      }
      peek();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected an integer");
      long long n = integer_literal();
      if (n > 10000) fail("n_eps argument too large");
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return n_epsilon(f_, negative ? -n : n);
    }
    pos_ = start;
    fail("unknown name '" + word + "' (field elements go inside [ ] or < >)");
  }

  const Field& f_;
  std::string_view s_;
  const Bindings& b_;
  std::size_t pos_ = 0;
};

bool starts_negative(const MWExpr& e) {
  return e.kind() == MWKind::Neg || (e.kind() == MWKind::Integer && e.value() < 0);
}

// Precedence levels: sum 1, product 2, negation 3, power 4, atom 5.
std::string print_at(const MWExpr& e, int ctx) {
  auto wrap = [&](int own, std::string s) { return own < ctx ? "(" + s + ")" : s; };
  switch (e.kind()) {
    case MWKind::Bracket:
      return "[" + e.unit().to_string() + "]";
    case MWKind::Eta:
      return "eta";
    case MWKind::Integer:
      return e.value() < 0 ? wrap(3, std::to_string(e.value())) : std::to_string(e.value());
    case MWKind::Sum: {
      std::string s;
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        const MWExpr& c = e.children()[i];
        if (i == 0)
          s += print_at(c, 2);
        else if (c.kind() == MWKind::Neg && !starts_negative(c.children()[0]))
          s += " - " + print_at(c.children()[0], 2);
        else if (c.kind() == MWKind::Integer && c.value() < 0)
          s += " - " + std::to_string(-c.value());
        else
          s += " + " + print_at(c, 2);
      }
      return wrap(1, s);
    }
    case MWKind::Product: {
      std::string s;
      for (std::size_t i = 0; i < e.children().size(); ++i) s += (i ? " " : "") + print_at(e.children()[i], 4);
      return wrap(2, s);
    }
    case MWKind::Neg:
      return wrap(3, "-" + print_at(e.children()[0], starts_negative(e.children()[0]) ? 4 : 3));
    case MWKind::Power:
      return wrap(4, print_at(e.children()[0], 5) + "^" + std::to_string(e.exponent()));
  }
  return "?";
}

}  // namespace

MWExpr parse_expr(const Field& field, std::string_view text, const Bindings& bindings) {
  return ExprParser(field, text, bindings).parse_all();
}

std::string print(const MWExpr& e) { return print_at(e, 0); }

MWExpr flatten(const MWExpr& e) {
  const Field& f = e.field();
  switch (e.kind()) {
    case MWKind::Bracket:
    case MWKind::Eta:
    case MWKind::Integer:
      return e;
    case MWKind::Neg: {
      MWExpr c = flatten(e.children()[0]);
      if (c.kind() == MWKind::Neg) return c.children()[0];
      if (c.kind() == MWKind::Integer) return MWExpr::integer(f, -c.value());
      return MWExpr::neg(c);
    }
    case MWKind::Power:
      return MWExpr::power(flatten(e.children()[0]), e.exponent());
    case MWKind::Sum:
    case MWKind::Product: {
      std::vector<MWExpr> out;
      for (const auto& c : e.children()) {
        MWExpr x = flatten(c);
        if (x.kind() == e.kind())
          out.insert(out.end(), x.children().begin(), x.children().end());
        else
          out.push_back(x);
      }
      if (out.size() == 1) return out[0];
      return e.kind() == MWKind::Sum ? MWExpr::sum(f, std::move(out)) : MWExpr::product(f, std::move(out));
    }
  }
  return e;
}

// ---------------------------------------------------------------- expansion

namespace {

struct Expansion {
  std::map<Monomial, long long> terms;
  std::set<int> degrees;
};

void add_to(std::map<Monomial, long long>& m, const Monomial& k, long long c) {
  if (c == 0) return;
  auto [it, inserted] = m.emplace(k, c);
  if (!inserted && (it->second += c) == 0) m.erase(it);
}

Expansion multiply(const Expansion& a, const Expansion& b) {
  Expansion out;
  for (int x : a.degrees)
    for (int y : b.degrees) out.degrees.insert(x + y);
  for (const auto& [ka, ca] : a.terms)
    for (const auto& [kb, cb] : b.terms) {
      Monomial k{ka.eta_power + kb.eta_power, ka.brackets};
      k.brackets.insert(k.brackets.end(), kb.brackets.begin(), kb.brackets.end());
      add_to(out.terms, k, ca * cb);
    }
  return out;
}

Expansion expand(const MWExpr& e) {
  Expansion out;
  switch (e.kind()) {
    case MWKind::Bracket:
      out.degrees = {1};
      out.terms[Monomial{0, {e.unit()}}] = 1;
      return out;
    case MWKind::Eta:
      out.degrees = {-1};
      out.terms[Monomial{1, {}}] = 1;
      return out;
    case MWKind::Integer:
      // 0 is the zero of every degree.
      if (e.value() != 0) out.degrees = {0};
      add_to(out.terms, Monomial{}, e.value());
      return out;
    case MWKind::Neg:
      out = expand(e.children()[0]);
      for (auto& [k, c] : out.terms) c = -c;
      return out;
    case MWKind::Sum:
      for (const auto& c : e.children()) {
        Expansion x = expand(c);
        out.degrees.insert(x.degrees.begin(), x.degrees.end());
        for (const auto& [k, v] : x.terms) add_to(out.terms, k, v);
      }
      return out;
    case MWKind::Product:
      out = expand(e.children()[0]);
      for (std::size_t i = 1; i < e.children().size(); ++i) out = multiply(out, expand(e.children()[i]));
      return out;
    case MWKind::Power: {
      out.degrees = {0};
      out.terms[Monomial{}] = 1;
      if (e.exponent() == 0) return out;
      Expansion base = expand(e.children()[0]);
      for (unsigned i = 0; i < e.exponent(); ++i) out = multiply(out, base);
      return out;
    }
  }
  return out;
}

// Σ c·Π(⟨uᵢ⟩ - 1) as a formal GW element.
void add_eta_image(GWElement& acc, const Monomial& m, long long c) {
  const Field& F = acc.field();
  const std::size_t r = m.brackets.size();
  if (r > 20) throw MathError("monomial too long");
  for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
    Element u = F.one();
    std::size_t bits = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (mask & (std::size_t{1} << i)) {
        u = u * m.brackets[i];
        ++bits;
      }
    long long sign = (r - bits) % 2 == 0 ? 1 : -1;
    acc += GWElement::generator(u, sign * c);
  }
}

std::string degree_list(const std::map<int, MWMonomialSum>& comps) {
  std::string s;
  for (const auto& [d, m] : comps) s += (s.empty() ? "" : ", ") + std::to_string(d);
  return "{" + s + "}";
}

MWMonomialSum single_component(const MWExpr& e) {
  auto comps = monomial_expand(e);
  if (comps.empty()) return MWMonomialSum{};
  if (comps.size() != 1) throw MathError("inhomogeneous expression (degrees " + degree_list(comps) + ")");
  return comps.begin()->second;
}

// Degree shared by two homogeneous expressions; a bare 0 adopts the other's.
int common_degree(const MWExpr& a, const MWExpr& b) {
  auto ca = monomial_expand(a), cb = monomial_expand(b);
  if (ca.size() > 1) throw MathError("inhomogeneous expression (degrees " + degree_list(ca) + ")");
  if (cb.size() > 1) throw MathError("inhomogeneous expression (degrees " + degree_list(cb) + ")");
  if (ca.empty()) return cb.empty() ? 0 : cb.begin()->first;
  if (cb.empty()) return ca.begin()->first;
  if (ca.begin()->first != cb.begin()->first)
    throw MathError("degree mismatch: " + std::to_string(ca.begin()->first) + " vs " + std::to_string(cb.begin()->first));
  return ca.begin()->first;
}

}  // namespace

std::string MWMonomialSum::to_string() const {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms) {
    long long a = c < 0 ? -c : c;
    if (s.empty())
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    std::string body;
    if (m.eta_power == 1) body += "eta";
    if (m.eta_power > 1) body += "eta^" + std::to_string(m.eta_power);
    for (const auto& u : m.brackets) body += (body.empty() ? "" : " ") + ("[" + u.to_string() + "]");
    if (body.empty())
      s += std::to_string(a);
    else
      s += (a != 1 ? std::to_string(a) + " " : "") + body;
  }
  return s;
}

std::map<int, MWMonomialSum> monomial_expand(const MWExpr& e) {
  Expansion x = expand(e);
  std::map<int, MWMonomialSum> out;
  for (int d : x.degrees) out[d].degree = d;
  for (const auto& [k, c] : x.terms) {
    if (!x.degrees.count(k.degree())) throw MathError("internal: monomial of untracked degree");
    out[k.degree()].terms.emplace(k, c);
  }
  return out;
}

int homogeneous_degree(const MWExpr& e) { return single_component(e).degree; }

// ---------------------------------------------------------------- normalize

std::string CanonicalKMW::kind() const {
  if (degree < 0) return "W";
  if (degree == 0) return "GW";
  return "J";
}

bool CanonicalKMW::is_zero() const {
  if (const auto* w = std::get_if<WittClass>(&payload)) return witt_is_zero(*w);
  if (const auto* g = std::get_if<GWCanonical>(&payload)) return g->rank == 0 && witt_is_zero(g->witt);
  const auto& j = std::get<JElement>(payload);
  return witt_is_zero(j.witt.witt) && j.milnor.is_formally_zero();
}

std::string CanonicalKMW::to_string() const {
  std::string s = "degree " + std::to_string(degree) + ", " + kind() + ": ";
  if (const auto* w = std::get_if<WittClass>(&payload)) return s + "witt " + w->to_string();
  if (const auto* g = std::get_if<GWCanonical>(&payload))
    return s + "rank " + std::to_string(g->rank) + ", witt " + g->witt.to_string();
  const auto& j = std::get<JElement>(payload);
  return s + "milnor " + j.milnor.to_string() + ", witt " + j.witt.witt.to_string();
}

CanonicalKMW normalize(const MWExpr& e) {
  const Field& F = e.field();
  MWMonomialSum m = single_component(e);
  const int n = m.degree;
  GWElement acc(F);
  for (const auto& [mono, c] : m.terms) add_eta_image(acc, mono, c);
  if (n < 0) return CanonicalKMW{n, witt_class(acc), true};
  if (n == 0) return CanonicalKMW{n, gw_canonical(acc), true};
  // ψ: [u] ↦ ({u}, ⟨u⟩ - 1), η ↦ (0, 1).
  MilnorSymbolSum milnor(F, n);
  for (const auto& [mono, c] : m.terms)
    if (mono.eta_power == 0) milnor.add_term(mono.brackets, c);
  JElement j = j_make(milnor_normalize(milnor), witt_class(acc));
  return CanonicalKMW{n, j, F.is_finite() || n == 1};
}

Decision kmw_equal(const MWExpr& a, const MWExpr& b) {
  const int da = common_degree(a, b);
  CanonicalKMW d = normalize(a - b);
  if (const auto* w = std::get_if<WittClass>(&d.payload)) {
    bool z = witt_is_zero(*w);
    return {z ? Verdict::Equal : Verdict::NotEqual, z ? "W classes agree" : "W classes differ by " + w->to_string()};
  }
  if (const auto* g = std::get_if<GWCanonical>(&d.payload)) {
    if (g->rank != 0) return {Verdict::NotEqual, "ranks differ by " + std::to_string(g->rank)};
    bool z = witt_is_zero(g->witt);
    return {z ? Verdict::Equal : Verdict::NotEqual, z ? "GW classes agree" : "W parts differ by " + g->witt.to_string()};
  }
  const auto& j = std::get<JElement>(d.payload);
  if (!witt_is_zero(j.witt.witt)) return {Verdict::NotEqual, "I^n parts differ by " + j.witt.witt.to_string()};
  Decision m = milnor_equal(j.milnor, MilnorSymbolSum(a.field(), da));
  m.report = "I^n parts agree; Milnor parts: " + m.report;
  return m;
}

// ---------------------------------------------------------------- theta

namespace {

WittClass theta_witt(const MWMonomialSum& m, const Field& F) {
  GWElement acc(F);
  for (const auto& [mono, c] : m.terms) {
    long long sign = mono.eta_power % 2 == 0 ? 1 : -1;
    PfisterSpec slots;
    for (const auto& u : mono.brackets) slots.push_back(-u);
    const DiagonalForm p = pfister(F, slots);
    for (const auto& x : p.entries()) acc += GWElement::generator(x, sign * c);
  }
  return witt_class(acc);
}

}  // namespace

GradedIClass theta(const MWExpr& e) {
  const Field& F = e.field();
  MWMonomialSum m = single_component(e);
  return GradedIClass{m.degree, make_ifilt(theta_witt(m, F), m.degree), F.characteristic() != 2};
}

Decision kw_equal(const MWExpr& a, const MWExpr& b) {
  const int da = common_degree(a, b);
  GradedIClass d = theta(a - b);
  const bool zero = witt_is_zero(d.cls.witt);
  if (!zero) return {Verdict::NotEqual, "theta images differ by " + d.cls.witt.to_string()};
  if (d.partial) return {Verdict::Undecided, "theta images agree; theta is not certified injective here"};
  return {Verdict::Equal, "theta images agree in I^" + std::to_string(da)};
}

MWExpr phi_neg(const WittClass& w, unsigned n) {
  const Field& F = w.field();
  std::vector<MWExpr> terms;
  for (const auto& u : w.representative().entries()) {
    std::vector<MWExpr> factors;
    if (n == 1) factors.push_back(MWExpr::eta(F));
    if (n > 1) factors.push_back(MWExpr::power(MWExpr::eta(F), n));
    if (!u.is_one() || factors.empty()) factors.push_back(u.is_one() ? MWExpr::integer(F, 1) : angle(u));
    terms.push_back(factors.size() == 1 ? factors[0] : MWExpr::product(F, std::move(factors)));
  }
  if (terms.size() == 1) return terms[0];
  return MWExpr::sum(F, std::move(terms));
}

std::map<int, WittClass> localize_eta(const MWExpr& e) {
  const Field& F = e.field();
  std::map<int, WittClass> out;
  for (const auto& [deg, m] : monomial_expand(e)) {
    GWElement acc(F);
    for (const auto& [mono, c] : m.terms) add_eta_image(acc, mono, c);
    WittClass w = witt_class(acc);
    if (!witt_is_zero(w)) out.emplace(-deg, w);
  }
  return out;
}

}  // namespace mwk
