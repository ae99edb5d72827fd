#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "mwk/finite_field.hpp"

namespace mwk {

/// Dense univariate polynomial in t over a FiniteField, lowest degree first,
/// no trailing zeros.
using UPoly = std::vector<std::uint32_t>;

/// Polynomial in at most two variables t, u over a FiniteField, stored as
/// coefficients in F[t] of the powers of u. Canonical: every coefficient is
/// trimmed and the u-degree list has no trailing zero entries.
struct Poly {
  std::vector<UPoly> c;

  bool is_zero() const { return c.empty(); }
  bool operator==(const Poly&) const = default;
  auto operator<=>(const Poly&) const = default;
};

namespace poly {

Poly constant(std::uint32_t value);
/// Variable number `index` (0 = t, 1 = u).
Poly variable(unsigned index);
Poly monomial(std::uint32_t coeff, unsigned et, unsigned eu);

Poly add(const FiniteField& F, const Poly& a, const Poly& b);
Poly neg(const FiniteField& F, const Poly& a);
Poly sub(const FiniteField& F, const Poly& a, const Poly& b);
Poly mul(const FiniteField& F, const Poly& a, const Poly& b);
Poly scale(const FiniteField& F, const Poly& a, std::uint32_t s);

/// a / b where b divides a exactly; throws MathError otherwise.
Poly divexact(const FiniteField& F, const Poly& a, const Poly& b);
/// Monic (under graded-lex order, t > u) greatest common divisor.
Poly gcd(const FiniteField& F, const Poly& a, const Poly& b);

/// Leading coefficient under graded-lex order with t > u.
std::uint32_t leading_coeff(const Poly& a);
Poly make_monic(const FiniteField& F, const Poly& a);
unsigned total_degree(const Poly& a);
bool is_constant(const Poly& a);
std::size_t term_count(const Poly& a);

/// Characteristic 2 only: write a = sum_e B_e^2 t^{e_0} u^{e_1}, e in {0,1}^2,
/// indexed by e_0 + 2 e_1.
std::array<Poly, 4> square_split(const FiniteField& F, const Poly& a);
/// Characteristic 2 only: a^2 computed termwise.
Poly frobenius(const FiniteField& F, const Poly& a);

std::string to_string(const FiniteField& F, const Poly& a, const std::vector<std::string>& vars,
                      const std::string& gen_name = "x");

// Univariate helpers, exposed for the gcd machinery and tests.
UPoly uadd(const FiniteField& F, const UPoly& a, const UPoly& b);
UPoly umul(const FiniteField& F, const UPoly& a, const UPoly& b);
void udivmod(const FiniteField& F, const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly ugcd(const FiniteField& F, UPoly a, UPoly b);

}  // namespace poly
}  // namespace mwk
