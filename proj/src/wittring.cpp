#include "mwk/wittring.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "mwk/error.hpp"

namespace mwk {

namespace {

void check_field(const Field& a, const Field& b) {
  if (!(a == b)) throw MathError("mixed fields: " + a.name() + " and " + b.name());
}

}  // namespace

// ---------------------------------------------------------------- GWElement

void GWElement::add_term(const Element& u, long long m) {
  if (m == 0) return;
  auto [it, inserted] = terms_.emplace(u, m);
  if (!inserted && (it->second += m) == 0) terms_.erase(it);
}

GWElement GWElement::generator(const Element& u, long long multiplicity) {
  if (u.is_zero()) throw MathError("<0> is not a generator");
  GWElement x(u.field());
  x.add_term(u, multiplicity);
  return x;
}

GWElement GWElement::integer(const Field& field, long long n) {
  GWElement x(field);
  x.add_term(field.one(), n);
  return x;
}

GWElement GWElement::of(const DiagonalForm& f) {
  GWElement x(f.field());
  for (const auto& e : f.entries()) x.add_term(e, 1);
  return x;
}

long long GWElement::rank() const {
  long long r = 0;
  for (const auto& [u, m] : terms_) r += m;
  return r;
}

GWElement GWElement::operator+(const GWElement& o) const {
  check_field(field_, o.field_);
  GWElement x = *this;
  for (const auto& [u, m] : o.terms_) x.add_term(u, m);
  return x;
}

GWElement GWElement::operator-() const {
  GWElement x = *this;
  for (auto& [u, m] : x.terms_) m = -m;
  return x;
}

GWElement GWElement::operator-(const GWElement& o) const { return *this + (-o); }

GWElement GWElement::operator*(const GWElement& o) const {
  check_field(field_, o.field_);
  GWElement x(field_);
  for (const auto& [u, m] : terms_)
    for (const auto& [v, n] : o.terms_) x.add_term(u * v, m * n);
  return x;
}

std::string GWElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [u, m] : terms_) {
    long long a = m < 0 ? -m : m;
    if (s.empty())
      s += m < 0 ? "-" : "";
    else
      s += m < 0 ? " - " : " + ";
    if (a != 1) s += std::to_string(a) + "*";
    s += "<" + u.to_string() + ">";
  }
  return s;
}

// ---------------------------------------------------------------- WittClass

WittClass witt_class(const DiagonalForm& f) {
  WittDecomposition d = witt_decompose(f);
  std::vector<Element> e = d.anisotropic.entries();
  std::sort(e.begin(), e.end());
  return WittClass(DiagonalForm(f.field(), std::move(e)));
}

WittClass WittClass::operator+(const WittClass& o) const {
  check_field(field(), o.field());
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  return witt_class(orth_sum(rep_, o.rep_));
}

WittClass WittClass::operator-() const {
  if (field().characteristic() == 2) return *this;
  std::vector<Element> e;
  for (const auto& a : rep_.entries()) e.push_back(-a);
  return witt_class(DiagonalForm(field(), std::move(e)));
}

WittClass WittClass::operator-(const WittClass& o) const { return *this + (-o); }

WittClass WittClass::operator*(const WittClass& o) const {
  check_field(field(), o.field());
  if (is_zero()) return *this;
  if (o.is_zero()) return o;
  return witt_class(tensor(rep_, o.rep_));
}

WittClass WittClass::times(long long n) const {
  if (n < 0) return (-*this).times(-n);
  WittClass acc(field()), base = *this;
  while (n > 0) {
    if (n & 1) acc = acc + base;
    n >>= 1;
    if (n) base = base + base;
  }
  return acc;
}

WittClass witt_class(const GWElement& x) {
  const Field& F = x.field();
  WittClass acc(F);
  std::vector<Element> direct;
  const bool char2 = F.characteristic() == 2;
  for (const auto& [u, mult] : x.terms()) {
    const long long m = char2 ? mult % 2 : mult;
    if (m == 0) continue;
    if (m == 1) {
      direct.push_back(u);
    } else if (m == -1) {
      direct.push_back(-u);
    } else {
      acc = acc + witt_class(DiagonalForm(F, {u})).times(m);
    }
  }
  return acc + witt_class(DiagonalForm(F, std::move(direct)));
}

bool witt_is_zero(const WittClass& w) {
  // Representatives are anisotropic by construction, but recheck the zero
  // test through a fresh decomposition so the answer never rests on storage.
  return witt_decompose(w.representative()).anisotropic.rank() == 0;
}

bool witt_equal(const WittClass& a, const WittClass& b) { return witt_is_zero(a - b); }

GWCanonical gw_canonical(const GWElement& x) { return GWCanonical{x.rank(), witt_class(x)}; }

bool gw_equal(const GWCanonical& x, const GWCanonical& y) { return x.rank == y.rank && witt_equal(x.witt, y.witt); }

bool gw_equal(const GWElement& x, const GWElement& y) {
  check_field(x.field(), y.field());
  GWElement d = x - y;
  return d.rank() == 0 && witt_is_zero(witt_class(d));
}

// ---------------------------------------------------------------- filtration

std::string ideal_membership_rule(const Field& field, int n) {
  if (n <= 0) return "I^n = W for n <= 0";
  if (n == 1) return "even rank";
  if (field.is_function_field()) {
    if (n >= static_cast<int>(field.num_variables()) + 1) return "zero class (I^n vanishes when 2^n > [F:F^2])";
    return "even rank and square discriminant";
  }
  return "zero class (I^n vanishes over finite fields for n >= 2)";
}

bool in_ideal_power(const WittClass& w, int n) {
  if (n <= 0) return true;
  if (w.rank() % 2 != 0) return false;
  if (n == 1) return true;
  const Field& F = w.field();
  if (F.is_function_field() && n < static_cast<int>(F.num_variables()) + 1) {
    Element p = F.one();
    for (const auto& a : w.representative().entries()) p = p * a;
    return is_square(p);
  }
  return witt_is_zero(w);
}

IFiltClass make_ifilt(const WittClass& w, int n) {
  if (!in_ideal_power(w, n))
    throw MathError("class " + w.to_string() + " is not in I^" + std::to_string(n) + " (" +
                    ideal_membership_rule(w.field(), n) + " fails)");
  return IFiltClass{w, n, ideal_membership_rule(w.field(), n)};
}

IFiltClass ifilt_mul(const IFiltClass& a, const IFiltClass& b) { return make_ifilt(a.witt * b.witt, a.degree + b.degree); }

IFiltClass ifilt_add(const IFiltClass& a, const IFiltClass& b) {
  if (a.degree != b.degree) throw MathError("adding classes of different degrees");
  return make_ifilt(a.witt + b.witt, a.degree);
}

IFiltClass s_n(const Field& field, const std::vector<Element>& symbol) {
  DiagonalForm acc(field, {field.one()});
  for (const auto& a : symbol) {
    check_field(field, a.field());
    acc = tensor(acc, DiagonalForm(field, {field.one(), -a}));
  }
  return make_ifilt(witt_class(acc), static_cast<int>(symbol.size()));
}

std::vector<PfisterSpec> pfister_decompose(const IFiltClass& c) {
  const Field& F = c.witt.field();
  if (F.characteristic() != 2) throw MathError("pfister_decompose requires characteristic 2");
  if (!in_ideal_power(c.witt, c.degree))
    throw MathError("class is not in I^" + std::to_string(c.degree));
  std::vector<PfisterSpec> out;
  if (c.witt.is_zero()) return out;
  if (c.degree != 1 && c.degree != 2) throw MathError("pfister_decompose handles degrees 1 and 2");
  const auto& a = c.witt.representative().entries();
  if (c.degree == 1) {
    for (const auto& x : a) out.push_back({x});
  } else {
    // ⟪x⟫ + ⟪y⟫ = ⟪xy⟫ + ⟪x,y⟫; the final ⟪Π a⟫ is ⟪square⟫ = 0.
    Element acc = a[0];
    for (std::size_t i = 1; i < a.size(); ++i) {
      if (!is_square(acc) && !is_square(a[i]) && !is_square(acc * a[i])) out.push_back({acc, a[i]});
      acc = acc * a[i];
    }
  }
  WittClass sum(F);
  for (const auto& t : out) sum = sum + witt_class(pfister(F, t));
  if (!witt_equal(sum, c.witt)) throw MathError("internal: Pfister decomposition does not reconstruct");
  return out;
}

// ---------------------------------------------------------------- chains

namespace {

std::vector<Element> square_class_members(const Element& x, const std::vector<Element>& extra) {
  const Field& F = x.field();
  std::set<Element> out;
  if (F.is_finite()) {
    for (const auto& s : F.elements())
      if (!s.is_zero()) out.insert(x * s * s);
  } else {
    out.insert(x);
    out.insert(square_reduce(x));
  }
  for (const auto& e : extra)
    if (is_square(e / x)) out.insert(e);
  return {out.begin(), out.end()};
}

std::vector<Element> represented_values(const Element& a, const Element& b, const std::vector<Element>& extra) {
  const Field& F = a.field();
  std::set<Element> out;
  std::vector<Element> xs;
  if (F.is_finite())
    xs = F.elements();
  else
    xs = {F.zero(), F.one()};
  for (const auto& x : xs)
    for (const auto& y : xs) {
      Element c = a * x * x + b * y * y;
      if (!c.is_zero()) out.insert(c);
    }
  DiagonalForm ab(F, {a, b});
  for (const auto& e : extra)
    if (represents(ab, e)) out.insert(e);
  return {out.begin(), out.end()};
}

std::string relation_label(const Element& a, const Element& b, const Element& c, const Element& d) {
  const bool same = (c == a && d == b) || (c == b && d == a);
  if (same) return "identity";
  auto sq = [](const Element& x, const Element& y) { return is_square(x / y); };
  if ((sq(c, a) && sq(d, b)) || (sq(c, b) && sq(d, a))) return "GW1";
  if (a.field().characteristic() != 2 && sq(-a, b) && ((sq(c, a.field().one()) && sq(d, -a.field().one())) ||
                                                      (sq(d, a.field().one()) && sq(c, -a.field().one()))))
    return "GW2";
  Element s = a + b;
  if (!s.is_zero() && ((c == s && d == s * a * b) || (d == s && c == s * a * b))) return "GW3";
  return "GW1+GW3";
}

}  // namespace

ChainResult chain_equiv_search(const Field& field, const std::vector<Element>& t1, const std::vector<Element>& t2,
                               int depth, std::size_t state_budget) {
  ChainResult result;
  if (t1.size() != t2.size()) return result;
  for (const auto& x : t1) check_field(field, x.field());
  for (const auto& x : t2) check_field(field, x.field());
  result.classes_equal = gw_equal(GWElement::of(DiagonalForm(field, t1)), GWElement::of(DiagonalForm(field, t2)));
  if (!result.classes_equal) return result;
  std::vector<Element> start = t1, goal = t2;
  std::sort(start.begin(), start.end());
  std::sort(goal.begin(), goal.end());
  if (start == goal) {
    result.path = std::vector<ChainStep>{};
    return result;
  }
  struct Node {
    std::vector<Element> state;
    std::size_t parent;
    ChainStep step;
    int depth;
  };
  std::vector<Node> nodes{{start, 0, {}, 0}};
  std::set<std::vector<Element>> seen{start};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    if (nodes[cur].depth >= depth) continue;
    const std::vector<Element> s = nodes[cur].state;
    auto record = [&](std::vector<Element> next, ChainStep step) -> bool {
      std::sort(next.begin(), next.end());
      if (!seen.insert(next).second) return false;
      step.after = next;
      nodes.push_back({next, cur, step, nodes[cur].depth + 1});
      if (next == goal) {
        std::vector<ChainStep> path;
        for (std::size_t k = nodes.size() - 1; k != 0; k = nodes[k].parent) path.push_back(nodes[k].step);
        std::reverse(path.begin(), path.end());
        result.path = std::move(path);
        return true;
      }
      if (nodes.size() >= state_budget) {
        result.exhausted = true;
        return true;
      }
      queue.push_back(nodes.size() - 1);
      return false;
    };
    // Single-entry GW1 moves a -> a s^2, recorded with i == j.
    for (std::size_t i = 0; i < s.size(); ++i)
      for (const auto& c : square_class_members(s[i], goal)) {
        if (c == s[i]) continue;
        std::vector<Element> next = s;
        next[i] = c;
        if (record(next, ChainStep{i, i, s[i], s[i], c, c, "GW1", {}})) return result;
      }
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        const Element &a = s[i], &b = s[j];
        for (const auto& c : represented_values(a, b, goal)) {
          for (const auto& d : square_class_members(a * b * c, goal)) {
            std::vector<Element> next = s;
            next[i] = c;
            next[j] = d;
            if (!gw_equal(GWElement::of(DiagonalForm(field, {a, b})), GWElement::of(DiagonalForm(field, {c, d}))))
              throw MathError("internal: chain move changed the GW class");
            if (record(next, ChainStep{i, j, a, b, c, d, relation_label(a, b, c, d), {}})) return result;
          }
        }
      }
  }
  return result;
}

}  // namespace mwk
