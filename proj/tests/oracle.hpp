#pragma once

// Brute-force references over GF(q) working directly on the integer encoding,
// without the forms and Witt-ring code they are used to check.

#include <cstdint>
#include <optional>
#include <vector>

#include "mwk/field.hpp"
#include "mwk/finite_field.hpp"
#include "mwk/poly.hpp"

namespace oracle {

using mwk::FiniteField;
using Vec = std::vector<std::uint32_t>;

// All vectors of F_q^n with first nonzero coordinate 1.
inline std::vector<Vec> projective_points(const FiniteField& F, std::size_t n) {
  std::vector<Vec> out;
  const std::uint32_t q = F.order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= q;
  for (std::uint64_t code = 1; code < total; ++code) {
    Vec v(n);
    std::uint64_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = static_cast<std::uint32_t>(c % q);
      c /= q;
    }
    std::size_t first = 0;
    while (v[first] == 0) ++first;
    if (v[first] == 1) out.push_back(std::move(v));
  }
  return out;
}

inline std::uint32_t pairing(const FiniteField& F, const Vec& a, const Vec& x, const Vec& y) {
  std::uint32_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = F.add(s, F.mul(a[i], F.mul(x[i], y[i])));
  return s;
}

inline std::optional<Vec> isotropic_vector(const FiniteField& F, const Vec& a) {
  for (const auto& x : projective_points(F, a.size()))
    if (pairing(F, a, x, x) == 0) return x;
  return std::nullopt;
}

inline std::optional<Vec> represents(const FiniteField& F, const Vec& a, std::uint32_t b) {
  const std::uint32_t q = F.order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < a.size(); ++i) total *= q;
  for (std::uint64_t code = 0; code < total; ++code) {
    Vec v(a.size());
    std::uint64_t c = code;
    for (std::size_t i = 0; i < a.size(); ++i) {
      v[i] = static_cast<std::uint32_t>(c % q);
      c /= q;
    }
    if (pairing(F, a, v, v) == b) return v;
  }
  return std::nullopt;
}

// Rank of a list of vectors by elimination over F_q.
inline std::size_t rank_of(const FiniteField& F, std::vector<Vec> m) {
  std::size_t r = 0;
  const std::size_t n = m.empty() ? 0 : m[0].size();
  for (std::size_t col = 0; col < n && r < m.size(); ++col) {
    std::size_t p = r;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    std::uint32_t inv = F.inv(m[r][col]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      std::uint32_t f = F.mul(m[i][col], inv);
      for (std::size_t j = 0; j < n; ++j) m[i][j] = F.sub(m[i][j], F.mul(f, m[r][j]));
    }
    ++r;
  }
  return r;
}

namespace detail {

inline bool extend(const FiniteField& F, const Vec& a, const std::vector<Vec>& iso, std::vector<Vec>& basis,
                   std::size_t start, std::size_t target) {
  if (basis.size() == target) return true;
  for (std::size_t k = start; k < iso.size(); ++k) {
    const Vec& x = iso[k];
    bool orth = true;
    for (const auto& y : basis) orth = orth && pairing(F, a, x, y) == 0;
    if (!orth) continue;
    basis.push_back(x);
    if (rank_of(F, basis) == basis.size() && extend(F, a, iso, basis, k + 1, target)) return true;
    basis.pop_back();
  }
  return false;
}

}  // namespace detail

// Whether ⟨a⟩ has a totally isotropic subspace of dimension k.
inline bool has_isotropic_subspace(const FiniteField& F, const Vec& a, std::size_t k) {
  if (k == 0) return true;
  if (2 * k > a.size()) return false;
  std::vector<Vec> iso;
  for (const auto& x : projective_points(F, a.size()))
    if (pairing(F, a, x, x) == 0) iso.push_back(x);
  std::vector<Vec> basis;
  return detail::extend(F, a, iso, basis, 0, k);
}

// Dimension of a maximal totally isotropic subspace.
inline std::size_t witt_index(const FiniteField& F, const Vec& a) {
  std::size_t k = 0;
  while (has_isotropic_subspace(F, a, k + 1)) ++k;
  return k;
}

inline bool metabolic(const FiniteField& F, const Vec& a) {
  return a.size() % 2 == 0 && has_isotropic_subspace(F, a, a.size() / 2);
}

// ⟨a⟩ and ⟨b⟩ are Witt equivalent iff ⟨a⟩ ⊥ ⟨-b⟩ is metabolic.
inline bool witt_equivalent(const FiniteField& F, const Vec& a, const Vec& b) {
  Vec s = a;
  for (auto x : b) s.push_back(F.neg(x));
  return metabolic(F, s);
}

// Nondecreasing tuples of units of length n.
inline std::vector<Vec> unit_multisets(const FiniteField& F, std::size_t n) {
  std::vector<Vec> out;
  Vec cur;
  auto rec = [&](auto&& self, std::uint32_t lo) -> void {
    if (cur.size() == n) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t u = lo; u < F.order(); ++u) {
      cur.push_back(u);
      self(self, u);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

// Characteristic-2 function fields: x = n/d is a square iff n·d is, iff both
// partial derivatives of n·d vanish.
inline bool derivative_square(const mwk::Element& x) {
  const mwk::FiniteField& F = x.field().base();
  mwk::Poly p = mwk::poly::mul(F, x.numerator(), x.denominator());
  for (std::size_t j = 0; j < p.c.size(); ++j)
    for (std::size_t i = 0; i < p.c[j].size(); ++i)
      if (p.c[j][i] != 0 && (i % 2 == 1 || j % 2 == 1)) return false;
  return true;
}

}  // namespace oracle
