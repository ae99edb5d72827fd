#include "mwk/poly.hpp"

#include <algorithm>
#include <sstream>

#include "mwk/error.hpp"

namespace mwk::poly {

namespace {

void utrim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

void trim(Poly& a) {
  for (auto& ci : a.c) utrim(ci);
  while (!a.c.empty() && a.c.back().empty()) a.c.pop_back();
}

UPoly uscale(const FiniteField& F, const UPoly& a, std::uint32_t s) {
  if (s == 0) return {};
  UPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], s);
  return r;
}

UPoly uneg(const FiniteField& F, const UPoly& a) {
  UPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.neg(a[i]);
  return r;
}

UPoly umonic(const FiniteField& F, const UPoly& a) {
  if (a.empty()) return a;
  return uscale(F, a, F.inv(a.back()));
}

UPoly udivexact(const FiniteField& F, const UPoly& a, const UPoly& b) {
  UPoly q, r;
  udivmod(F, a, b, q, r);
  if (!r.empty()) throw MathError("inexact polynomial division");
  return q;
}

UPoly content(const FiniteField& F, const Poly& a) {
  UPoly g;
  for (const auto& ci : a.c) {
    g = ugcd(F, g, ci);
    if (g.size() == 1) break;
  }
  return g;
}

Poly divide_coeffs(const FiniteField& F, const Poly& a, const UPoly& d) {
  Poly r;
  r.c.reserve(a.c.size());
  for (const auto& ci : a.c) r.c.push_back(ci.empty() ? UPoly{} : udivexact(F, ci, d));
  trim(r);
  return r;
}

Poly primitive_part(const FiniteField& F, const Poly& a) {
  if (a.is_zero()) return a;
  return divide_coeffs(F, a, content(F, a));
}

Poly mul_upoly(const FiniteField& F, const Poly& a, const UPoly& s) {
  Poly r;
  r.c.reserve(a.c.size());
  for (const auto& ci : a.c) r.c.push_back(umul(F, ci, s));
  trim(r);
  return r;
}

Poly shift_u(const Poly& a, std::size_t k) {
  if (a.is_zero()) return a;
  Poly r;
  r.c.assign(k, UPoly{});
  r.c.insert(r.c.end(), a.c.begin(), a.c.end());
  return r;
}

// Pseudo-remainder of a by b with respect to u.
Poly prem(const FiniteField& F, Poly a, const Poly& b) {
  const std::size_t db = b.c.size() - 1;
  const UPoly& lb = b.c.back();
  while (!a.is_zero() && a.c.size() - 1 >= db) {
    UPoly la = a.c.back();
    std::size_t shift = a.c.size() - 1 - db;
    a = sub(F, mul_upoly(F, a, lb), shift_u(mul_upoly(F, b, la), shift));
  }
  return a;
}

}  // namespace

UPoly uadd(const FiniteField& F, const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint32_t x = i < a.size() ? a[i] : 0;
    std::uint32_t y = i < b.size() ? b[i] : 0;
    r[i] = F.add(x, y);
  }
  utrim(r);
  return r;
}

UPoly umul(const FiniteField& F, const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
  }
  utrim(r);
  return r;
}

void udivmod(const FiniteField& F, const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.empty()) throw MathError("polynomial division by zero");
  r = a;
  utrim(r);
  q.clear();
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, 0);
  const std::uint32_t inv_lead = F.inv(b.back());
  while (!r.empty() && r.size() >= b.size()) {
    std::size_t shift = r.size() - b.size();
    std::uint32_t c = F.mul(r.back(), inv_lead);
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] = F.sub(r[shift + i], F.mul(c, b[i]));
    utrim(r);
  }
  utrim(q);
}

UPoly ugcd(const FiniteField& F, UPoly a, UPoly b) {
  utrim(a);
  utrim(b);
  while (!b.empty()) {
    UPoly q, r;
    udivmod(F, a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return umonic(F, a);
}

Poly constant(std::uint32_t value) {
  Poly r;
  if (value != 0) r.c = {UPoly{value}};
  return r;
}

Poly variable(unsigned index) { return monomial(1, index == 0 ? 1 : 0, index == 1 ? 1 : 0); }

Poly monomial(std::uint32_t coeff, unsigned et, unsigned eu) {
  Poly r;
  if (coeff == 0) return r;
  r.c.assign(eu + 1, UPoly{});
  r.c[eu].assign(et + 1, 0);
  r.c[eu][et] = coeff;
  return r;
}

Poly add(const FiniteField& F, const Poly& a, const Poly& b) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (std::size_t j = 0; j < r.c.size(); ++j) {
    if (j >= a.c.size()) r.c[j] = b.c[j];
    else if (j >= b.c.size()) r.c[j] = a.c[j];
    else r.c[j] = uadd(F, a.c[j], b.c[j]);
  }
  trim(r);
  return r;
}

Poly neg(const FiniteField& F, const Poly& a) {
  if (F.characteristic() == 2) return a;
  Poly r;
  for (const auto& ci : a.c) r.c.push_back(uneg(F, ci));
  return r;
}

Poly sub(const FiniteField& F, const Poly& a, const Poly& b) { return add(F, a, neg(F, b)); }

Poly mul(const FiniteField& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Poly r;
  r.c.assign(a.c.size() + b.c.size() - 1, UPoly{});
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].empty()) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j].empty()) continue;
      r.c[i + j] = uadd(F, r.c[i + j], umul(F, a.c[i], b.c[j]));
    }
  }
  trim(r);
  return r;
}

Poly scale(const FiniteField& F, const Poly& a, std::uint32_t s) {
  Poly r;
  if (s == 0) return r;
  for (const auto& ci : a.c) r.c.push_back(uscale(F, ci, s));
  return r;
}

Poly divexact(const FiniteField& F, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw MathError("polynomial division by zero");
  if (b.c.size() == 1) return divide_coeffs(F, a, b.c[0]);
  Poly r = a;
  Poly q;
  const std::size_t db = b.c.size() - 1;
  while (!r.is_zero()) {
    if (r.c.size() - 1 < db) throw MathError("inexact polynomial division");
    std::size_t shift = r.c.size() - 1 - db;
    UPoly qc = udivexact(F, r.c.back(), b.c.back());
    Poly term;
    term.c.assign(shift + 1, UPoly{});
    term.c[shift] = qc;
    q = add(F, q, term);
    r = sub(F, r, mul(F, term, b));
  }
  return q;
}

namespace {

std::uint32_t ueval(const FiniteField& F, const UPoly& a, std::uint32_t x) {
  std::uint32_t r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
  return r;
}

// a(x, u) as a polynomial in u.
UPoly specialize_t(const FiniteField& F, const Poly& a, std::uint32_t x) {
  UPoly r(a.c.size(), 0);
  for (std::size_t j = 0; j < a.c.size(); ++j) r[j] = ueval(F, a.c[j], x);
  utrim(r);
  return r;
}

// Swaps the roles of t and u.
Poly transpose(const Poly& a) {
  Poly r;
  for (std::size_t j = 0; j < a.c.size(); ++j)
    for (std::size_t i = 0; i < a.c[j].size(); ++i) {
      if (a.c[j][i] == 0) continue;
      if (r.c.size() <= i) r.c.resize(i + 1);
      if (r.c[i].size() <= j) r.c[i].resize(j + 1, 0);
      r.c[i][j] = a.c[j][i];
    }
  trim(r);
  return r;
}

// True when some specialization t = x keeps both u-degrees and leaves coprime
// polynomials; then gcd(a, b) has u-degree 0.
bool coprime_in_u(const FiniteField& F, const Poly& a, const Poly& b) {
  const std::uint32_t tries = std::min<std::uint32_t>(F.order(), 16);
  for (std::uint32_t x = 0; x < tries; ++x) {
    UPoly sa = specialize_t(F, a, x), sb = specialize_t(F, b, x);
    if (sa.size() != a.c.size() || sb.size() != b.c.size()) continue;
    if (ugcd(F, sa, sb).size() == 1) return true;
  }
  return false;
}

Poly from_upoly(const UPoly& g) {
  Poly r;
  if (!g.empty()) r.c = {g};
  return r;
}

}  // namespace

Poly gcd(const FiniteField& F, const Poly& a_in, const Poly& b_in) {
  if (a_in.is_zero()) return make_monic(F, b_in);
  if (b_in.is_zero()) return make_monic(F, a_in);
  if (is_constant(a_in) || is_constant(b_in)) return constant(1);
  if (coprime_in_u(F, a_in, b_in)) return make_monic(F, from_upoly(ugcd(F, content(F, a_in), content(F, b_in))));
  {
    Poly at = transpose(a_in), bt = transpose(b_in);
    if (coprime_in_u(F, at, bt)) return make_monic(F, transpose(from_upoly(ugcd(F, content(F, at), content(F, bt)))));
  }
  UPoly ca = content(F, a_in), cb = content(F, b_in);
  UPoly g = ugcd(F, ca, cb);
  Poly a = divide_coeffs(F, a_in, ca);
  Poly b = divide_coeffs(F, b_in, cb);
  if (a.c.size() < b.c.size()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.c.size() == 1) {
      // b is a primitive polynomial free of u, hence a unit.
      a = constant(1);
      break;
    }
    Poly r = prem(F, a, b);
    a = std::move(b);
    b = r.is_zero() ? r : primitive_part(F, r);
  }
  a = primitive_part(F, a);
  return make_monic(F, mul_upoly(F, a, g));
}

std::uint32_t leading_coeff(const Poly& a) {
  // Max total degree, ties broken by larger t-exponent.
  std::uint32_t best = 0;
  long best_deg = -1;
  long best_t = -1;
  for (std::size_t j = 0; j < a.c.size(); ++j) {
    const auto& ci = a.c[j];
    if (ci.empty()) continue;
    long i = static_cast<long>(ci.size()) - 1;
    long deg = i + static_cast<long>(j);
    if (deg > best_deg || (deg == best_deg && i > best_t)) {
      best_deg = deg;
      best_t = i;
      best = ci.back();
    }
  }
  return best;
}

Poly make_monic(const FiniteField& F, const Poly& a) {
  if (a.is_zero()) return a;
  std::uint32_t lc = leading_coeff(a);
  if (lc == 1) return a;
  return scale(F, a, F.inv(lc));
}

unsigned total_degree(const Poly& a) {
  unsigned d = 0;
  for (std::size_t j = 0; j < a.c.size(); ++j)
    if (!a.c[j].empty()) d = std::max<unsigned>(d, static_cast<unsigned>(a.c[j].size() - 1 + j));
  return d;
}

bool is_constant(const Poly& a) { return a.is_zero() || (a.c.size() == 1 && a.c[0].size() == 1); }

std::size_t term_count(const Poly& a) {
  std::size_t n = 0;
  for (const auto& ci : a.c)
    for (auto v : ci) n += v != 0;
  return n;
}

std::array<Poly, 4> square_split(const FiniteField& F, const Poly& a) {
  if (F.characteristic() != 2) throw MathError("square_split requires characteristic 2");
  std::array<Poly, 4> out;
  for (std::size_t j = 0; j < a.c.size(); ++j) {
    for (std::size_t i = 0; i < a.c[j].size(); ++i) {
      std::uint32_t v = a.c[j][i];
      if (v == 0) continue;
      unsigned e = static_cast<unsigned>((i & 1) + 2 * (j & 1));
      Poly& B = out[e];
      std::size_t jj = j >> 1, ii = i >> 1;
      if (B.c.size() <= jj) B.c.resize(jj + 1);
      if (B.c[jj].size() <= ii) B.c[jj].resize(ii + 1, 0);
      B.c[jj][ii] = F.sqrt(v);
    }
  }
  for (auto& B : out) trim(B);
  return out;
}

Poly frobenius(const FiniteField& F, const Poly& a) {
  if (F.characteristic() != 2) throw MathError("frobenius requires characteristic 2");
  Poly r;
  if (a.is_zero()) return r;
  r.c.assign(2 * a.c.size() - 1, UPoly{});
  for (std::size_t j = 0; j < a.c.size(); ++j) {
    if (a.c[j].empty()) continue;
    UPoly& t = r.c[2 * j];
    t.assign(2 * a.c[j].size() - 1, 0);
    for (std::size_t i = 0; i < a.c[j].size(); ++i) t[2 * i] = F.mul(a.c[j][i], a.c[j][i]);
  }
  trim(r);
  return r;
}

std::string to_string(const FiniteField& F, const Poly& a, const std::vector<std::string>& vars,
                      const std::string& gen_name) {
  if (a.is_zero()) return "0";
  struct Term {
    unsigned i, j;
    std::uint32_t c;
  };
  std::vector<Term> terms;
  for (std::size_t j = 0; j < a.c.size(); ++j)
    for (std::size_t i = 0; i < a.c[j].size(); ++i)
      if (a.c[j][i] != 0) terms.push_back({static_cast<unsigned>(i), static_cast<unsigned>(j), a.c[j][i]});
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
    unsigned dx = x.i + x.j, dy = y.i + y.j;
    if (dx != dy) return dx > dy;
    return x.i > y.i;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    if (!first) os << '+';
    first = false;
    std::string mono;
    auto append_var = [&](unsigned idx, unsigned e) {
      if (e == 0) return;
      if (!mono.empty()) mono += '*';
      mono += vars.at(idx);
      if (e > 1) mono += '^' + std::to_string(e);
    };
    append_var(0, t.i);
    if (vars.size() > 1) append_var(1, t.j);
    std::string coeff = F.to_string(t.c, gen_name);
    if (mono.empty()) {
      os << coeff;
    } else if (t.c == 1) {
      os << mono;
    } else if (coeff.find('+') != std::string::npos) {
      os << '(' << coeff << ")*" << mono;
    } else {
      os << coeff << '*' << mono;
    }
  }
  return os.str();
}

}  // namespace mwk::poly
