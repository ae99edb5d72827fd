#include "mwk/linalg.hpp"

#include "mwk/error.hpp"

namespace mwk::linalg {

Echelon rref(Matrix m, std::size_t cols) {
  Echelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t piv = row;
    while (piv < m.size() && m[piv][col].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[row]);
    Element inv = m[row][col].inv();
    for (std::size_t j = col; j < cols; ++j) m[row][j] = m[row][j] * inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      Element f = m[r][col];
      for (std::size_t j = col; j < cols; ++j)
        if (!m[row][j].is_zero()) m[r][j] = m[r][j] - f * m[row][j];
    }
    out.pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  out.rows = std::move(m);
  return out;
}

std::vector<Vector> nullspace(const Matrix& m, std::size_t cols, const Field& field) {
  Echelon e = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector x(cols, field.zero());
    x[free] = field.one();
    for (std::size_t r = 0; r < e.rows.size(); ++r) x[e.pivots[r]] = -e.rows[r][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b, std::size_t cols, const Field& field) {
  Matrix aug = m;
  for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
  Echelon e = rref(aug, cols + 1);
  Vector x(cols, field.zero());
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    if (e.pivots[r] == cols) return std::nullopt;
    x[e.pivots[r]] = e.rows[r][cols];
  }
  return x;
}

Element determinant(Matrix m, const Field& field) {
  const std::size_t n = m.size();
  Element det = field.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) return field.zero();
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det = det * m[col][col];
    Element inv = m[col][col].inv();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      Element f = m[r][col] * inv;
      for (std::size_t j = col; j < n; ++j) m[r][j] = m[r][j] - f * m[col][j];
    }
  }
  return det;
}

Matrix multiply(const Matrix& a, const Matrix& b, const Field& field) {
  const std::size_t inner = b.size();
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  Matrix c(a.size(), Vector(cols, field.zero()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw MathError("matrix shape mismatch");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (!b[k][j].is_zero()) c[i][j] = c[i][j] + a[i][k] * b[k][j];
    }
  }
  return c;
}

Matrix transpose(const Matrix& a) {
  if (a.empty()) return {};
  Matrix t(a[0].size(), Vector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

Element dot(const Vector& a, const Vector& b, const Field& field) {
  Element s = field.zero();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s = s + a[i] * b[i];
  return s;
}

}  // namespace mwk::linalg
