#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mwk/symbols.hpp"

namespace mwk {

enum class MWKind { Bracket, Eta, Integer, Sum, Product, Neg, Power };

/// Immutable expression tree in K^MW_*(F). Sugar (⟨u⟩, ε, h, n_ε) is expanded
/// by the builders below, so every tree uses the seven node kinds only.
class MWExpr {
 public:
  static MWExpr bracket(const Element& u);
  static MWExpr eta(const Field& field);
  static MWExpr integer(const Field& field, long long n);
  /// An empty sum is the integer 0.
  static MWExpr sum(const Field& field, std::vector<MWExpr> terms);
  /// An empty product is the integer 1.
  static MWExpr product(const Field& field, std::vector<MWExpr> factors);
  static MWExpr neg(MWExpr x);
  static MWExpr power(MWExpr base, unsigned exponent);

  MWKind kind() const;
  const Field& field() const;
  /// Bracket argument.
  const Element& unit() const;
  /// Integer value.
  long long value() const;
  const std::vector<MWExpr>& children() const;
  unsigned exponent() const;

  MWExpr operator+(const MWExpr& o) const;
  MWExpr operator-(const MWExpr& o) const;
  MWExpr operator*(const MWExpr& o) const;
  MWExpr operator-() const;

  /// Structural equality.
  bool operator==(const MWExpr& o) const;

 private:
  struct Node;
  explicit MWExpr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

// Named constants.
MWExpr angle(const Element& u);  // 1 + η[u]
MWExpr epsilon(const Field& field);  // -⟨-1⟩
MWExpr hyperbolic(const Field& field);  // η[-1] + 2
MWExpr n_epsilon(const Field& field, long long n);

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := ['+'|'-'] factor factor*        (juxtaposition or '*')
///   factor := atom ('^' nat)?
///   atom   := 'eta' | '[' elem ']' | '<' elem '>' | 'eps' | 'h' | 'n_eps(' int ')' | int | '(' expr ')'
/// A leading '-' negates the whole term. Throws ParseError with a byte offset.
MWExpr parse_expr(const Field& field, std::string_view text, const Bindings& bindings = {});
std::string print(const MWExpr& e);
/// Splices nested sums and products, folds -n into integer literals and
/// cancels double negation.
MWExpr flatten(const MWExpr& e);

struct Monomial {
  unsigned eta_power = 0;
  std::vector<Element> brackets;  // order matters
  int degree() const { return static_cast<int>(brackets.size()) - static_cast<int>(eta_power); }
  bool operator==(const Monomial&) const = default;
  auto operator<=>(const Monomial&) const = default;
};

/// Σ c·η^m[u₁]⋯[u_r] with r - m = degree.
struct MWMonomialSum {
  int degree = 0;
  std::map<Monomial, long long> terms;
  std::string to_string() const;
};

/// Homogeneous components, keyed by degree. A degree whose terms all cancel is
/// still listed (with no terms).
std::map<int, MWMonomialSum> monomial_expand(const MWExpr& e);
/// Degree of a homogeneous expression; throws MathError otherwise.
int homogeneous_degree(const MWExpr& e);

/// Degreewise canonical image: W for n < 0, GW for n = 0, the J-pair for n ≥ 1.
struct CanonicalKMW {
  int degree = 0;
  std::variant<WittClass, GWCanonical, JElement> payload;
  /// Whether the Milnor component admits an integral decision (n ≥ 1).
  bool milnor_decidable = true;

  std::string kind() const;
  std::string to_string() const;
  bool is_zero() const;
};

CanonicalKMW normalize(const MWExpr& e);
Decision kmw_equal(const MWExpr& a, const MWExpr& b);

/// θ: K^W_* → I^*, [a] ↦ ⟪a⟫ = ⟨1,-a⟩, η ↦ -1.
struct GradedIClass {
  int degree = 0;
  IFiltClass cls;
  /// Odd characteristic: θ is evaluated but not claimed to be injective.
  bool partial = false;
};

GradedIClass theta(const MWExpr& e);
/// Equality in K^W_*: decisive in characteristic 2; elsewhere Equal is
/// reported as Undecided.
Decision kw_equal(const MWExpr& a, const MWExpr& b);

/// Σ η^n⟨uᵢ⟩ over the representative of w.
MWExpr phi_neg(const WittClass& w, unsigned n);

/// [u] ↦ t^{-1}(⟨u⟩ - 1), η ↦ t; keys are exponents of t, zero classes omitted.
std::map<int, WittClass> localize_eta(const MWExpr& e);

}  // namespace mwk
