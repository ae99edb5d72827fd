#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mwk/finite_field.hpp"
#include "mwk/poly.hpp"

namespace mwk {

enum class FieldKind { Prime, Galois, RationalFunction };

/// Structured description of a coefficient field. `modulus` may be left empty,
/// in which case the least irreducible polynomial is chosen.
struct FieldSpec {
  FieldKind kind = FieldKind::Prime;
  std::uint32_t characteristic = 2;
  std::uint32_t degree = 1;
  PrimePoly modulus;
  std::vector<std::string> variables;

  /// Accepts `GF(p)`, `GF(p^k)`, `GF(q)`, `GF(2^k)(t)`, `GF(2^k)(t,u)`.
  static FieldSpec parse(std::string_view text);
};

class Element;
using Bindings = std::map<std::string, Element>;

namespace detail {
struct FieldData;
}

/// Immutable handle to a supported field. Copies share the same tables.
class Field {
 public:
  explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}

  FieldKind kind() const;
  std::uint32_t characteristic() const;
  /// GF(p^k) itself for finite kinds, the constant field for function fields.
  const FiniteField& base() const;
  const std::vector<std::string>& variables() const;
  unsigned num_variables() const;
  bool is_finite() const { return kind() != FieldKind::RationalFunction; }
  bool is_function_field() const { return kind() == FieldKind::RationalFunction; }
  /// Canonical spec string, e.g. "GF(2^2)(t,u)".
  const std::string& name() const;
  const std::string& generator_name() const;

  Element zero() const;
  Element one() const;
  Element from_int(long long n) const;
  /// Function-field variable (0 = first).
  Element variable(unsigned index) const;
  /// The class of x in GF(p^k), k > 1.
  Element generator() const;
  Element parse(std::string_view text, const Bindings& bindings = {}) const;

  /// Every element in GF(q), zero first. Finite kinds only.
  std::vector<Element> elements() const;

  bool operator==(const Field& o) const;

  const std::shared_ptr<const detail::FieldData>& data() const { return d_; }

 private:
  std::shared_ptr<const detail::FieldData> d_;
};

Field make_field(const FieldSpec& spec);
Field make_field(std::string_view spec);

/// Exact field element in canonical form: equal values have equal
/// representations, so `==` and `<=>` are structural.
class Element {
 public:
  Element() = default;

  Field field() const { return Field(f_); }
  bool is_zero() const;
  bool is_one() const;

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;
  Element operator/(const Element& o) const;
  Element operator-() const;
  Element inv() const;
  Element pow(long long e) const;

  Element& operator+=(const Element& o) { return *this = *this + o; }
  Element& operator*=(const Element& o) { return *this = *this * o; }

  bool operator==(const Element& o) const { return fin_ == o.fin_ && num_ == o.num_ && den_ == o.den_; }
  std::strong_ordering operator<=>(const Element& o) const;

  std::string to_string() const;

  // Representation access.
  std::uint32_t finite_value() const { return fin_; }
  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

  static Element make_finite(std::shared_ptr<const detail::FieldData> f, std::uint32_t v);
  /// Reduces num/den to canonical form; throws on zero denominator.
  static Element make_fraction(std::shared_ptr<const detail::FieldData> f, Poly num, Poly den);

 private:
  void check_same(const Element& o) const;

  std::shared_ptr<const detail::FieldData> f_;
  std::uint32_t fin_ = 0;
  Poly num_, den_;
};

std::ostream& operator<<(std::ostream& os, const Element& a);

bool is_square(const Element& a);
/// Square root; throws MathError when `a` is not a square.
Element sqrt(const Element& a);

/// Multiplies `a` by a square so that the result is a polynomial with no
/// square factor (char-2 function fields) or the least element of its square
/// class (finite fields). Two units are square-equivalent iff their reductions
/// are equal.
Element square_reduce(const Element& a);

/// a = sum_e b_e^2 t^e over exponent masks e (bit 0 = first variable).
struct FrobeniusCoords {
  std::map<unsigned, Element> coords;
  Element reconstruct(const Field& field) const;
};

/// The monomial t^{e_0} u^{e_1} for exponent mask e.
Element basis_monomial(const Field& field, unsigned mask);

/// Characteristic-2 function fields only.
FrobeniusCoords frobenius_coords(const Element& a);

/// Returns c (not all zero) with sum c_i^2 v_i = 0, or nothing when the v_i are
/// independent over the subfield of squares. Characteristic 2 (function fields
/// or perfect finite fields).
std::optional<std::vector<Element>> square_dependence(const std::vector<Element>& v);

/// Deterministic nonzero element. For function fields the numerator and
/// denominator have total degree at most `degree_bound`.
Element random_unit(const Field& field, std::uint64_t seed, unsigned degree_bound = 4);

/// Internal coordinate map used by the isotropy engine: for char-2 fields
/// returns the 2^m coordinates (m = 0 for finite fields) in mask order.
std::vector<Element> square_coordinates(const Element& a);

/// Parses an element; ParseError positions are shifted by `offset`.
Element parse_element_at(const Field& field, std::string_view text, const Bindings& bindings, std::size_t offset);

}  // namespace mwk
