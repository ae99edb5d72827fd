#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mwk/field.hpp"
#include "mwk/linalg.hpp"

namespace mwk {

/// ⟨a₁,…,a_r⟩ with unit entries.
class DiagonalForm {
 public:
  explicit DiagonalForm(Field field, std::vector<Element> entries = {});

  const Field& field() const { return field_; }
  const std::vector<Element>& entries() const { return entries_; }
  std::size_t rank() const { return entries_.size(); }
  Matrix gram() const;
  std::string to_string() const;

  bool operator==(const DiagonalForm& o) const { return entries_ == o.entries_; }

 private:
  Field field_;
  std::vector<Element> entries_;
};

/// Symmetric nondegenerate bilinear form given by its Gram matrix.
class GramMatrix {
 public:
  /// Throws MathError unless `m` is square, symmetric and has nonzero determinant.
  GramMatrix(Field field, Matrix m);
  static GramMatrix from_diagonal(const DiagonalForm& d);
  /// The hyperbolic form H_n: n blocks [[0,1],[1,0]].
  static GramMatrix hyperbolic(const Field& field, std::size_t n);

  const Field& field() const { return field_; }
  const Matrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.size(); }
  /// Value (x|y).
  Element pair(const Vector& x, const Vector& y) const;

 private:
  Field field_;
  Matrix m_;
};

DiagonalForm orth_sum(const DiagonalForm& a, const DiagonalForm& b);
DiagonalForm tensor(const DiagonalForm& a, const DiagonalForm& b);
GramMatrix orth_sum(const GramMatrix& a, const GramMatrix& b);
GramMatrix tensor(const GramMatrix& a, const GramMatrix& b);

/// basis · G · basisᵀ = diag(diagonal) ⊕ H_{symplectic_rank}; rows of `basis`
/// are the diagonal vectors followed by e₁, f₁, e₂, f₂, …
struct Diagonalization {
  DiagonalForm diagonal;
  std::size_t symplectic_rank = 0;
  Matrix basis;
};

Diagonalization diagonalize(const GramMatrix& g);

/// Nonzero x with Σ aᵢxᵢ² = 0, or nothing.
std::optional<Vector> is_isotropic(const DiagonalForm& f);
/// Nonzero x with (x|x) = 0, or nothing.
std::optional<Vector> is_isotropic(const GramMatrix& g);

struct WittDecomposition {
  DiagonalForm anisotropic;
  std::size_t metabolic_rank = 0;
};

/// Diagonal route: square-class reduction, pair cancellation and GW3 folding
/// along minimal square dependencies (char 2), or the rank-3 rule (odd q).
WittDecomposition witt_decompose(const DiagonalForm& f);
/// Plane-splitting route: isotropic vector v, partner w with (v|w) ≠ 0, recurse
/// on span{v,w}^⊥.
WittDecomposition witt_decompose(const GramMatrix& g);

using PfisterSpec = std::vector<Element>;

/// ⊗(⟨1⟩⊥⟨aᵢ⟩): entry k is the product of the slots in the bits of k.
DiagonalForm pfister(const Field& field, const PfisterSpec& slots);
/// pfister without its ⟨1⟩ entry; throws on an empty spec.
DiagonalForm pure_part(const Field& field, const PfisterSpec& slots);

/// x with Σ aᵢxᵢ² = b, or nothing.
std::optional<Vector> represents(const DiagonalForm& f, const Element& b);

}  // namespace mwk
