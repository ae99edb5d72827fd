#pragma once

#include <optional>
#include <vector>

#include "mwk/field.hpp"

namespace mwk {

using Vector = std::vector<Element>;
/// Row-major dense matrix. Column count is carried separately where rows may be absent.
using Matrix = std::vector<Vector>;

namespace linalg {

struct Echelon {
  Matrix rows;                     // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Reduced row echelon form with first-nonzero pivoting (deterministic).
Echelon rref(Matrix m, std::size_t cols);

/// Basis of {x : m x = 0}; basis vector i has its i-th free column set to 1 and
/// the other free columns set to 0.
std::vector<Vector> nullspace(const Matrix& m, std::size_t cols, const Field& field);

/// Some solution of m x = b, or nothing if inconsistent (free columns set to 0).
std::optional<Vector> solve(const Matrix& m, const Vector& b, std::size_t cols, const Field& field);

Element determinant(Matrix m, const Field& field);

Matrix multiply(const Matrix& a, const Matrix& b, const Field& field);
Matrix transpose(const Matrix& a);
Element dot(const Vector& a, const Vector& b, const Field& field);

}  // namespace linalg
}  // namespace mwk
