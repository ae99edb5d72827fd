#pragma once

#include <map>
#include <string>
#include <vector>

#include "mwk/wittring.hpp"

namespace mwk {

/// Σ c·{a₁,…,a_n}. In degree 0 the only key is the empty tuple (an integer).
class MilnorSymbolSum {
 public:
  MilnorSymbolSum(Field field, int degree);
  static MilnorSymbolSum symbol(const Field& field, const std::vector<Element>& entries, long long coeff = 1);
  static MilnorSymbolSum integer(const Field& field, long long n);

  const Field& field() const { return field_; }
  int degree() const { return degree_; }
  const std::map<std::vector<Element>, long long>& terms() const { return terms_; }
  bool is_formally_zero() const { return terms_.empty(); }
  /// Degree 0 only.
  long long integer_value() const;

  MilnorSymbolSum operator+(const MilnorSymbolSum& o) const;
  MilnorSymbolSum operator-(const MilnorSymbolSum& o) const;
  MilnorSymbolSum operator-() const;
  /// Graded product (concatenation of symbols).
  MilnorSymbolSum operator*(const MilnorSymbolSum& o) const;
  MilnorSymbolSum scaled(long long c) const;

  void add_term(const std::vector<Element>& entries, long long coeff);
  std::string to_string() const;

 private:
  Field field_;
  int degree_;
  std::map<std::vector<Element>, long long> terms_;
};

enum class Verdict { Equal, NotEqual, Undecided };
std::string to_string(Verdict v);

struct Decision {
  Verdict verdict = Verdict::Undecided;
  std::string report;
};

/// Rewrites by multilinearity and the Steinberg relation. The result is exact
/// in degrees ≤ 1 and over finite fields; in degree ≥ 2 over function fields a
/// nonzero result may still be zero in K^M.
MilnorSymbolSum milnor_normalize(const MilnorSymbolSum& s);
Decision milnor_equal(const MilnorSymbolSum& a, const MilnorSymbolSum& b);

/// Σ c·s_n(symbol) in W. Degree 0 gives the integer times ⟨1⟩.
WittClass milnor_witt_image(const MilnorSymbolSum& s);

/// Equality in K^M_n/2 by comparing s_n images modulo I^{n+1}. Characteristic 2.
bool kato_equal(const MilnorSymbolSum& a, const MilnorSymbolSum& b);

/// A pair (m, w) in the fiber product of K^M_n and I^n over I^n/I^{n+1}.
/// For n < 0 the Milnor part is zero; for n = 0 it is the rank.
struct JElement {
  int degree = 0;
  MilnorSymbolSum milnor;
  IFiltClass witt;
  std::string certificate;
};

/// Throws MathError when w - s_n(m) ∉ I^{n+1}.
JElement j_make(const MilnorSymbolSum& m, const WittClass& w);
JElement j_zero(const Field& field, int degree);
JElement j_add(const JElement& a, const JElement& b);
JElement j_neg(const JElement& a);
JElement j_mul(const JElement& a, const JElement& b);
/// The image of η: (0, 1) in degree -1.
JElement j_eta(const Field& field);
/// η·(m, w) = (0, w) in degree n-1.
JElement eta_act(const JElement& a);
bool j_is_zero_witt(const JElement& a);

}  // namespace mwk
