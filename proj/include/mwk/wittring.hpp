#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mwk/forms.hpp"

namespace mwk {

/// Formal Z-combination of generators ⟨u⟩. No relation is applied on
/// construction; use gw_canonical to compare.
class GWElement {
 public:
  explicit GWElement(Field field) : field_(std::move(field)) {}
  static GWElement generator(const Element& u, long long multiplicity = 1);
  static GWElement integer(const Field& field, long long n);
  static GWElement of(const DiagonalForm& f);

  const Field& field() const { return field_; }
  const std::map<Element, long long>& terms() const { return terms_; }
  long long rank() const;
  bool is_formally_zero() const { return terms_.empty(); }

  GWElement operator+(const GWElement& o) const;
  GWElement operator-(const GWElement& o) const;
  GWElement operator-() const;
  GWElement operator*(const GWElement& o) const;
  GWElement& operator+=(const GWElement& o) { return *this = *this + o; }

  std::string to_string() const;

 private:
  void add_term(const Element& u, long long m);

  Field field_;
  std::map<Element, long long> terms_;
};

/// Witt class with an anisotropic representative, entries sorted. Equality is
/// semantic (see witt_equal); `representative()` is for display.
class WittClass {
 public:
  explicit WittClass(Field field) : rep_(std::move(field)) {}

  const Field& field() const { return rep_.field(); }
  const DiagonalForm& representative() const { return rep_; }
  std::size_t rank() const { return rep_.rank(); }
  bool is_zero() const { return rep_.rank() == 0; }

  WittClass operator+(const WittClass& o) const;
  WittClass operator-(const WittClass& o) const;
  WittClass operator-() const;
  WittClass operator*(const WittClass& o) const;
  /// n·w by doubling, so the working rank stays small.
  WittClass times(long long n) const;

  std::string to_string() const { return rep_.to_string(); }

 private:
  friend WittClass witt_class(const DiagonalForm& f);
  explicit WittClass(DiagonalForm rep) : rep_(std::move(rep)) {}

  DiagonalForm rep_;
};

WittClass witt_class(const DiagonalForm& f);
/// Image of a GW element: ⟨u⟩ with multiplicity -m contributes m·⟨-u⟩.
WittClass witt_class(const GWElement& x);
bool witt_is_zero(const WittClass& w);
bool witt_equal(const WittClass& a, const WittClass& b);

struct GWCanonical {
  long long rank = 0;
  WittClass witt;
};

GWCanonical gw_canonical(const GWElement& x);
bool gw_equal(const GWElement& x, const GWElement& y);
bool gw_equal(const GWCanonical& x, const GWCanonical& y);

/// w ∈ Iⁿ(F). n ≤ 0 always; n = 1 by rank parity; afterwards by the
/// discriminant (char-2 function fields in two variables, n = 2) or the
/// vanishing of Iⁿ (zero test).
bool in_ideal_power(const WittClass& w, int n);
/// Name of the rule in_ideal_power applies.
std::string ideal_membership_rule(const Field& field, int n);

/// A Witt class together with a certified membership in I^degree.
struct IFiltClass {
  WittClass witt;
  int degree = 0;
  std::string certificate;
};

/// Throws MathError when w ∉ Iⁿ.
IFiltClass make_ifilt(const WittClass& w, int n);
IFiltClass ifilt_mul(const IFiltClass& a, const IFiltClass& b);
IFiltClass ifilt_add(const IFiltClass& a, const IFiltClass& b);

/// s_n{a₁,…,a_n} = ⟨1,-a₁⟩⊗⋯⊗⟨1,-a_n⟩ in degree n.
IFiltClass s_n(const Field& field, const std::vector<Element>& symbol);

/// Tuples T_i with Σ⟪T_i⟫ equal to c in W. Characteristic 2, degree 1 or 2
/// (higher degrees only for the zero class). The reconstruction is verified.
std::vector<PfisterSpec> pfister_decompose(const IFiltClass& c);

struct ChainStep {
  std::size_t i = 0, j = 0;  // positions in the sorted tuple before the move
  Element a, b, c, d;        // ⟨a,b⟩ → ⟨c,d⟩; when i == j, ⟨a⟩ → ⟨c⟩ with b = a, d = c
  std::string relation;
  std::vector<Element> after;
};

struct ChainResult {
  bool classes_equal = false;
  std::optional<std::vector<ChainStep>> path;
  bool exhausted = false;  // search budget ran out before the depth bound
};

/// Breadth-first search for a chain of two-entry rewrites ⟨a,b⟩ → ⟨c,d⟩ (each
/// preserving the GW class) from t1 to t2, up to reordering.
ChainResult chain_equiv_search(const Field& field, const std::vector<Element>& t1, const std::vector<Element>& t2,
                               int depth, std::size_t state_budget = 200000);

}  // namespace mwk
