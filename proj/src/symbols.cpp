#include "mwk/symbols.hpp"

#include <algorithm>

#include "mwk/error.hpp"

namespace mwk {

namespace {

void check_field(const Field& a, const Field& b) {
  if (!(a == b)) throw MathError("mixed fields: " + a.name() + " and " + b.name());
}

}  // namespace

// ---------------------------------------------------------------- MilnorSymbolSum

MilnorSymbolSum::MilnorSymbolSum(Field field, int degree) : field_(std::move(field)), degree_(degree) {}

void MilnorSymbolSum::add_term(const std::vector<Element>& entries, long long coeff) {
  if (static_cast<int>(entries.size()) != std::max(degree_, 0) || degree_ < 0)
    throw MathError("symbol of length " + std::to_string(entries.size()) + " in degree " + std::to_string(degree_));
  for (const auto& e : entries) {
    check_field(field_, e.field());
    if (e.is_zero()) throw MathError("symbol entries must be units");
  }
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(entries, coeff);
  if (!inserted && (it->second += coeff) == 0) terms_.erase(it);
}

MilnorSymbolSum MilnorSymbolSum::symbol(const Field& field, const std::vector<Element>& entries, long long coeff) {
  MilnorSymbolSum s(field, static_cast<int>(entries.size()));
  s.add_term(entries, coeff);
  return s;
}

MilnorSymbolSum MilnorSymbolSum::integer(const Field& field, long long n) { return symbol(field, {}, n); }

long long MilnorSymbolSum::integer_value() const {
  if (degree_ != 0) throw MathError("integer_value outside degree 0");
  auto it = terms_.find({});
  return it == terms_.end() ? 0 : it->second;
}

MilnorSymbolSum MilnorSymbolSum::operator+(const MilnorSymbolSum& o) const {
  check_field(field_, o.field_);
  if (degree_ != o.degree_) throw MathError("adding Milnor symbols of different degrees");
  MilnorSymbolSum s = *this;
  for (const auto& [k, c] : o.terms_) s.add_term(k, c);
  return s;
}

MilnorSymbolSum MilnorSymbolSum::scaled(long long c) const {
  MilnorSymbolSum s(field_, degree_);
  for (const auto& [k, v] : terms_) s.add_term(k, v * c);
  return s;
}

MilnorSymbolSum MilnorSymbolSum::operator-() const { return scaled(-1); }
MilnorSymbolSum MilnorSymbolSum::operator-(const MilnorSymbolSum& o) const { return *this + (-o); }

MilnorSymbolSum MilnorSymbolSum::operator*(const MilnorSymbolSum& o) const {
  check_field(field_, o.field_);
  MilnorSymbolSum s(field_, degree_ + o.degree_);
  if (degree_ < 0 || o.degree_ < 0) return s;
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) {
      std::vector<Element> k = k1;
      k.insert(k.end(), k2.begin(), k2.end());
      s.add_term(k, c1 * c2);
    }
  return s;
}

std::string MilnorSymbolSum::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : terms_) {
    long long a = c < 0 ? -c : c;
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    if (degree_ == 0) {
      out += std::to_string(a);
      continue;
    }
    if (a != 1) out += std::to_string(a) + "*";
    out += "{";
    for (std::size_t i = 0; i < k.size(); ++i) out += (i ? ", " : "") + k[i].to_string();
    out += "}";
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal:
      return "Equal";
    case Verdict::NotEqual:
      return "NotEqual";
    case Verdict::Undecided:
      return "Undecided";
  }
  return "?";
}

// ---------------------------------------------------------------- images

WittClass milnor_witt_image(const MilnorSymbolSum& s) {
  const Field& F = s.field();
  WittClass acc(F);
  if (s.degree() < 0) return acc;
  const bool char2 = F.characteristic() == 2;
  for (const auto& [k, c] : s.terms()) {
    long long coeff = char2 ? (c % 2 + 2) % 2 : c;
    if (coeff == 0) continue;
    acc = acc + s_n(F, k).witt.times(coeff);
  }
  return acc;
}

// ---------------------------------------------------------------- normalization

namespace {

Poly monic_part(const Field& F, const Poly& p) { return poly::make_monic(F.base(), p); }

bool divides(const FiniteField& F, const Poly& b, const Poly& f) {
  Poly g = poly::gcd(F, b, f);
  return g == b;
}

// Pairwise coprime monic polynomials generating every numerator and denominator.
std::vector<Poly> gcd_free_basis(const FiniteField& F, std::vector<Poly> polys) {
  std::vector<Poly> basis;
  for (auto& p : polys)
    if (!poly::is_constant(p)) basis.push_back(p);
  std::sort(basis.begin(), basis.end());
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < basis.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < basis.size() && !changed; ++j) {
        Poly g = poly::gcd(F, basis[i], basis[j]);
        if (poly::is_constant(g)) continue;
        std::vector<Poly> next;
        for (std::size_t k = 0; k < basis.size(); ++k)
          if (k != i && k != j) next.push_back(basis[k]);
        for (Poly p : {g, poly::divexact(F, basis[i], g), poly::divexact(F, basis[j], g)})
          if (!poly::is_constant(p)) next.push_back(poly::make_monic(F, p));
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        basis = std::move(next);
        changed = true;
      }
  }
  return basis;
}

struct Atom {
  bool constant;
  std::size_t index;  // into the basis, or 0 for the primitive constant
  auto operator<=>(const Atom&) const = default;
};

// x = g^k · Π bᵢ^{eᵢ}, with g the primitive element of the constants.
std::vector<std::pair<Atom, long long>> factor_over(const Field& F, const std::vector<Poly>& basis, const Element& x) {
  const FiniteField& B = F.base();
  std::vector<std::pair<Atom, long long>> out;
  std::uint32_t lc = poly::leading_coeff(x.numerator());
  if (B.order() > 2 && lc != 1) out.push_back({Atom{true, 0}, static_cast<long long>(B.log(lc))});
  Poly num = monic_part(F, x.numerator()), den = x.denominator();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    long long e = 0;
    while (!poly::is_constant(num) && divides(B, basis[i], num)) {
      num = poly::divexact(B, num, basis[i]);
      ++e;
    }
    while (!poly::is_constant(den) && divides(B, basis[i], den)) {
      den = poly::divexact(B, den, basis[i]);
      --e;
    }
    if (e != 0) out.push_back({Atom{false, i}, e});
  }
  if (!poly::is_constant(num) || !poly::is_constant(den)) throw MathError("internal: incomplete gcd-free factorization");
  return out;
}

bool symbol_vanishes(const std::vector<Element>& k) {
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i].is_one()) return true;
    for (std::size_t j = i + 1; j < k.size(); ++j) {
      if ((k[i] + k[j]).is_one()) return true;   // Steinberg
      if ((k[i] + k[j]).is_zero()) return true;  // {a, -a} = 0
    }
  }
  return false;
}

MilnorSymbolSum expand_function_field(const MilnorSymbolSum& s) {
  const Field& F = s.field();
  const FiniteField& B = F.base();
  std::vector<std::pair<std::vector<Element>, long long>> live;
  std::vector<Poly> polys;
  for (const auto& [k, c] : s.terms()) {
    if (symbol_vanishes(k)) continue;
    live.emplace_back(k, c);
    for (const auto& x : k) {
      polys.push_back(monic_part(F, x.numerator()));
      polys.push_back(x.denominator());
    }
  }
  std::vector<Poly> basis = gcd_free_basis(B, polys);
  std::map<std::vector<Atom>, long long> acc;
  for (const auto& [k, c] : live) {
    std::vector<std::vector<std::pair<Atom, long long>>> slots;
    for (const auto& x : k) slots.push_back(factor_over(F, basis, x));
    std::vector<std::size_t> idx(slots.size(), 0);
    bool empty_slot = std::any_of(slots.begin(), slots.end(), [](const auto& v) { return v.empty(); });
    if (empty_slot) continue;
    for (;;) {
      std::vector<Atom> atoms;
      long long coeff = c;
      int constants = 0;
      for (std::size_t i = 0; i < slots.size(); ++i) {
        atoms.push_back(slots[i][idx[i]].first);
        coeff *= slots[i][idx[i]].second;
        constants += atoms.back().constant ? 1 : 0;
      }
      // Sort with the sign of anticommutativity; repeated atoms give {a,a} = {a,-1} = 0
      // in characteristic 2, and two constants give an element of K_2 of a finite field.
      bool zero = constants >= 2;
      for (std::size_t i = 0; i < atoms.size() && !zero; ++i)
        for (std::size_t j = 0; j + 1 < atoms.size() - i; ++j) {
          if (atoms[j] == atoms[j + 1]) zero = true;
          if (atoms[j + 1] < atoms[j]) {
            std::swap(atoms[j], atoms[j + 1]);
            coeff = -coeff;
          }
        }
      for (std::size_t j = 0; j + 1 < atoms.size() && !zero; ++j)
        if (atoms[j] == atoms[j + 1]) zero = true;
      if (!zero && coeff != 0) {
        if ((acc[atoms] += coeff) == 0) acc.erase(atoms);
      }
      std::size_t d = 0;
      while (d < slots.size() && ++idx[d] == slots[d].size()) idx[d++] = 0;
      if (d == slots.size()) break;
    }
  }
  MilnorSymbolSum out(F, s.degree());
  for (const auto& [atoms, c] : acc) {
    std::vector<Element> k;
    for (const auto& a : atoms) {
      if (a.constant)
        k.push_back(Element::make_fraction(F.data(), poly::constant(B.exp(1)), poly::constant(1)));
      else
        k.push_back(Element::make_fraction(F.data(), basis[a.index], poly::constant(1)));
    }
    out.add_term(k, c);
  }
  return out;
}

}  // namespace

MilnorSymbolSum milnor_normalize(const MilnorSymbolSum& s) {
  const Field& F = s.field();
  const int n = s.degree();
  if (n <= 0) return s;
  if (n == 1) {
    Element p = F.one();
    for (const auto& [k, c] : s.terms()) p = p * k[0].pow(c);
    MilnorSymbolSum out(F, 1);
    if (!p.is_one()) out.add_term({p}, 1);
    return out;
  }
  if (F.is_finite()) {
    // K^M_n(F_q) = 0 for n >= 2; the s_n image must then vanish as well.
    if (!witt_is_zero(milnor_witt_image(s)))
      throw MathError("internal: s_n image of a degree >= 2 symbol over a finite field is nonzero");
    return MilnorSymbolSum(F, n);
  }
  return expand_function_field(s);
}

bool kato_equal(const MilnorSymbolSum& a, const MilnorSymbolSum& b) {
  check_field(a.field(), b.field());
  if (a.field().characteristic() != 2) throw MathError("kato_equal requires characteristic 2");
  if (a.degree() != b.degree()) throw MathError("comparing Milnor symbols of different degrees");
  return in_ideal_power(milnor_witt_image(a - b), a.degree() + 1);
}

Decision milnor_equal(const MilnorSymbolSum& a, const MilnorSymbolSum& b) {
  check_field(a.field(), b.field());
  if (a.degree() != b.degree()) throw MathError("comparing Milnor symbols of different degrees");
  const int n = a.degree();
  const Field& F = a.field();
  MilnorSymbolSum diff = a - b;
  if (n < 0) return {Verdict::Equal, "K^M vanishes in negative degrees"};
  if (n == 0) {
    long long d = diff.integer_value();
    return {d == 0 ? Verdict::Equal : Verdict::NotEqual, "K^M_0 = Z, difference " + std::to_string(d)};
  }
  MilnorSymbolSum norm = milnor_normalize(diff);
  if (n == 1)
    return {norm.is_formally_zero() ? Verdict::Equal : Verdict::NotEqual,
            "K^M_1 = F^x, difference " + norm.to_string()};
  if (F.is_finite()) return {Verdict::Equal, "K^M_n(F_q) = 0 for n >= 2; s_n image checked zero"};
  if (norm.is_formally_zero()) return {Verdict::Equal, "difference rewrites to 0 by multilinearity and Steinberg"};
  if (!kato_equal(diff, MilnorSymbolSum(F, n)))
    return {Verdict::NotEqual, "s_n image of the difference is not in I^" + std::to_string(n + 1)};
  return {Verdict::Undecided, "difference " + norm.to_string() + " vanishes mod 2; integral equality not decided"};
}

// ---------------------------------------------------------------- J

JElement j_make(const MilnorSymbolSum& m, const WittClass& w) {
  check_field(m.field(), w.field());
  const int n = m.degree();
  if (n < 0) {
    if (!m.is_formally_zero()) throw MathError("Milnor part must vanish in negative degree");
    return JElement{n, m, make_ifilt(w, n), "negative degree: J = W"};
  }
  WittClass diff = w - milnor_witt_image(m);
  if (!in_ideal_power(diff, n + 1))
    throw MathError("incompatible pair: w - s_" + std::to_string(n) + "(m) = " + diff.to_string() + " is not in I^" +
                    std::to_string(n + 1) + " (" + ideal_membership_rule(w.field(), n + 1) + " fails)");
  return JElement{n, m, make_ifilt(w, n), "w - s_n(m) in I^" + std::to_string(n + 1) + " by " +
                                              ideal_membership_rule(w.field(), n + 1)};
}

JElement j_zero(const Field& field, int degree) { return j_make(MilnorSymbolSum(field, degree), WittClass(field)); }

JElement j_add(const JElement& a, const JElement& b) {
  if (a.degree != b.degree) throw MathError("adding J elements of different degrees");
  return j_make(a.milnor + b.milnor, a.witt.witt + b.witt.witt);
}

JElement j_neg(const JElement& a) { return j_make(-a.milnor, -a.witt.witt); }

JElement j_mul(const JElement& a, const JElement& b) { return j_make(a.milnor * b.milnor, a.witt.witt * b.witt.witt); }

JElement j_eta(const Field& field) {
  return j_make(MilnorSymbolSum(field, -1), witt_class(DiagonalForm(field, {field.one()})));
}

JElement eta_act(const JElement& a) { return j_make(MilnorSymbolSum(a.milnor.field(), a.degree - 1), a.witt.witt); }

bool j_is_zero_witt(const JElement& a) { return witt_is_zero(a.witt.witt); }

}  // namespace mwk
