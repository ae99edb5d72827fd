#include "mwk/forms.hpp"

#include <algorithm>

#include "mwk/error.hpp"

namespace mwk {

namespace {

void check_field(const Field& a, const Field& b) {
  if (!(a == b)) throw MathError("mixed fields: " + a.name() + " and " + b.name());
}

Vector unit_vector(const Field& f, std::size_t n, std::size_t i) {
  Vector v(n, f.zero());
  v[i] = f.one();
  return v;
}

Vector axpy(const Field& f, const Vector& y, const Element& a, const Vector& x) {
  Vector out = y;
  if (a.is_zero()) return out;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!x[i].is_zero()) out[i] = out[i] + a * x[i];
  (void)f;
  return out;
}

}  // namespace

// ---------------------------------------------------------------- DiagonalForm

DiagonalForm::DiagonalForm(Field field, std::vector<Element> entries)
    : field_(std::move(field)), entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    check_field(field_, e.field());
    if (e.is_zero()) throw MathError("diagonal entries must be units");
  }
}

Matrix DiagonalForm::gram() const {
  Matrix m(rank(), Vector(rank(), field_.zero()));
  for (std::size_t i = 0; i < rank(); ++i) m[i][i] = entries_[i];
  return m;
}

std::string DiagonalForm::to_string() const {
  std::string s = "<";
  for (std::size_t i = 0; i < entries_.size(); ++i) s += (i ? ", " : "") + entries_[i].to_string();
  return s + ">";
}

// ---------------------------------------------------------------- GramMatrix

GramMatrix::GramMatrix(Field field, Matrix m) : field_(std::move(field)), m_(std::move(m)) {
  const std::size_t n = m_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (m_[i].size() != n) throw MathError("Gram matrix is not square");
    for (const auto& x : m_[i]) check_field(field_, x.field());
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(m_[i][j] == m_[j][i])) throw MathError("Gram matrix is not symmetric");
  if (n > 0 && linalg::determinant(m_, field_).is_zero()) throw MathError("Gram matrix is degenerate");
}

GramMatrix GramMatrix::from_diagonal(const DiagonalForm& d) { return GramMatrix(d.field(), d.gram()); }

GramMatrix GramMatrix::hyperbolic(const Field& field, std::size_t n) {
  Matrix m(2 * n, Vector(2 * n, field.zero()));
  for (std::size_t i = 0; i < n; ++i) {
    m[2 * i][2 * i + 1] = field.one();
    m[2 * i + 1][2 * i] = field.one();
  }
  return GramMatrix(field, std::move(m));
}

Element GramMatrix::pair(const Vector& x, const Vector& y) const {
  Element s = field_.zero();
  for (std::size_t i = 0; i < m_.size(); ++i) {
    if (x[i].is_zero()) continue;
    Element row = field_.zero();
    for (std::size_t j = 0; j < m_.size(); ++j)
      if (!y[j].is_zero() && !m_[i][j].is_zero()) row = row + m_[i][j] * y[j];
    s = s + x[i] * row;
  }
  return s;
}

// ---------------------------------------------------------------- combine

DiagonalForm orth_sum(const DiagonalForm& a, const DiagonalForm& b) {
  check_field(a.field(), b.field());
  std::vector<Element> e = a.entries();
  e.insert(e.end(), b.entries().begin(), b.entries().end());
  return DiagonalForm(a.field(), std::move(e));
}

DiagonalForm tensor(const DiagonalForm& a, const DiagonalForm& b) {
  check_field(a.field(), b.field());
  std::vector<Element> e;
  for (const auto& x : a.entries())
    for (const auto& y : b.entries()) e.push_back(x * y);
  return DiagonalForm(a.field(), std::move(e));
}

GramMatrix orth_sum(const GramMatrix& a, const GramMatrix& b) {
  check_field(a.field(), b.field());
  const std::size_t n = a.dim() + b.dim();
  Matrix m(n, Vector(n, a.field().zero()));
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m[i][j] = a.matrix()[i][j];
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) m[a.dim() + i][a.dim() + j] = b.matrix()[i][j];
  return GramMatrix(a.field(), std::move(m));
}

GramMatrix tensor(const GramMatrix& a, const GramMatrix& b) {
  check_field(a.field(), b.field());
  const std::size_t n = a.dim() * b.dim();
  Matrix m(n, Vector(n, a.field().zero()));
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < b.dim(); ++k)
        for (std::size_t l = 0; l < b.dim(); ++l)
          m[i * b.dim() + k][j * b.dim() + l] = a.matrix()[i][j] * b.matrix()[k][l];
  return GramMatrix(a.field(), std::move(m));
}

// ---------------------------------------------------------------- diagonalize

Diagonalization diagonalize(const GramMatrix& g) {
  const Field& f = g.field();
  const std::size_t n = g.dim();
  std::vector<Vector> rest;
  for (std::size_t i = 0; i < n; ++i) rest.push_back(unit_vector(f, n, i));
  std::vector<Element> diag;
  Matrix diag_basis, planes;

  while (!rest.empty()) {
    std::size_t pick = rest.size();
    for (std::size_t i = 0; i < rest.size(); ++i)
      if (!g.pair(rest[i], rest[i]).is_zero()) {
        pick = i;
        break;
      }
    if (pick == rest.size() && f.characteristic() != 2) {
      // (v+w|v+w) = 2(v|w) for an alternating pair.
      for (std::size_t j = 1; j < rest.size() && pick == rest.size(); ++j)
        if (!g.pair(rest[0], rest[j]).is_zero()) {
          for (std::size_t k = 0; k < n; ++k) rest[0][k] = rest[0][k] + rest[j][k];
          pick = 0;
        }
      if (pick == rest.size()) throw MathError("Gram matrix is degenerate");
    }
    if (pick < rest.size()) {
      Vector v = rest[pick];
      Element d = g.pair(v, v);
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
      for (auto& w : rest) w = axpy(f, w, -(g.pair(w, v) / d), v);
      diag.push_back(d);
      diag_basis.push_back(std::move(v));
      continue;
    }
    // Alternating remainder in characteristic 2: split off a symplectic plane.
    Vector e = rest[0];
    std::size_t j = 1;
    while (j < rest.size() && g.pair(e, rest[j]).is_zero()) ++j;
    if (j == rest.size()) throw MathError("Gram matrix is degenerate");
    Element c = g.pair(e, rest[j]);
    Vector fv = rest[j];
    for (auto& x : fv) x = x / c;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
    rest.erase(rest.begin());
    for (auto& w : rest) {
      Element we = g.pair(w, e), wf = g.pair(w, fv);
      w = axpy(f, axpy(f, w, -wf, e), -we, fv);
    }
    planes.push_back(std::move(e));
    planes.push_back(std::move(fv));
  }

  Diagonalization out{DiagonalForm(f, diag), planes.size() / 2, diag_basis};
  out.basis.insert(out.basis.end(), planes.begin(), planes.end());
  // Certificate: the transported Gram matrix is diag ⊕ H_n.
  Matrix expected = orth_sum(GramMatrix::from_diagonal(out.diagonal), GramMatrix::hyperbolic(f, out.symplectic_rank)).matrix();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i; k < n; ++k)
      if (!(g.pair(out.basis[i], out.basis[k]) == expected[i][k]))
        throw MathError("internal: diagonalization certificate failed");
  return out;
}

// ---------------------------------------------------------------- isotropy

namespace {

bool diagonal_value_is_zero(const DiagonalForm& f, const Vector& x) {
  Element s = f.field().zero();
  bool nonzero = false;
  for (std::size_t i = 0; i < f.rank(); ++i) {
    if (x[i].is_zero()) continue;
    nonzero = true;
    s = s + f.entries()[i] * x[i] * x[i];
  }
  return nonzero && s.is_zero();
}

// Odd finite field: (x, y) with a x² + b y² = c, searching x.
std::optional<std::pair<Element, Element>> solve_binary(const Element& a, const Element& b, const Element& c) {
  for (const auto& x : a.field().elements()) {
    Element r = (c - a * x * x) / b;
    if (is_square(r)) return std::make_pair(x, sqrt(r));
  }
  return std::nullopt;
}

}  // namespace

std::optional<Vector> is_isotropic(const DiagonalForm& f) {
  const Field& F = f.field();
  const auto& a = f.entries();
  const std::size_t r = f.rank();
  if (r == 0) return std::nullopt;
  std::optional<Vector> w;
  if (F.characteristic() == 2) {
    w = square_dependence(a);
  } else {
    if (r == 1) return std::nullopt;
    Element q = -(a[1] / a[0]);
    Vector x(r, F.zero());
    if (is_square(q)) {
      x[0] = sqrt(q);
      x[1] = F.one();
      w = x;
    } else if (r >= 3) {
      auto sol = solve_binary(a[0], a[1], -a[2]);
      if (!sol) throw MathError("internal: binary form over a finite field missed a value");
      x[0] = sol->first;
      x[1] = sol->second;
      x[2] = F.one();
      w = x;
    }
  }
  if (w && !diagonal_value_is_zero(f, *w)) throw MathError("internal: isotropy witness failed");
  return w;
}

std::optional<Vector> is_isotropic(const GramMatrix& g) {
  Diagonalization d = diagonalize(g);
  const std::size_t nd = d.diagonal.rank();
  if (d.symplectic_rank > 0) return d.basis[nd];
  auto x = is_isotropic(d.diagonal);
  if (!x) return std::nullopt;
  Vector v(g.dim(), g.field().zero());
  for (std::size_t i = 0; i < nd; ++i) v = axpy(g.field(), v, (*x)[i], d.basis[i]);
  if (!g.pair(v, v).is_zero()) throw MathError("internal: isotropy witness failed");
  return v;
}

// ---------------------------------------------------------------- Witt decomposition

namespace {

// Removes pairs of identical entries; each pair ⟨a,a⟩ is metabolic in char 2.
std::size_t cancel_equal_pairs(std::vector<Element>& e) {
  std::sort(e.begin(), e.end());
  std::vector<Element> out;
  std::size_t removed = 0;
  for (std::size_t i = 0; i < e.size();) {
    if (i + 1 < e.size() && e[i] == e[i + 1]) {
      removed += 2;
      i += 2;
    } else {
      out.push_back(e[i]);
      ++i;
    }
  }
  e = std::move(out);
  return removed;
}

struct Dependence {
  std::vector<std::size_t> index;
  std::vector<Element> coeff;
};

// A dependence sum c_j^2 e_j = 0 of least support. Pairs never occur because
// entries are reduced square-class representatives and equal ones were cancelled.
std::optional<Dependence> least_dependence(const std::vector<Element>& e, unsigned max_support) {
  const std::size_t n = e.size();
  for (std::size_t k = 2; k <= std::min<std::size_t>(n, max_support); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      std::vector<Element> sub;
      for (auto i : idx) sub.push_back(e[i]);
      if (auto c = square_dependence(sub)) return Dependence{idx, *c};
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

WittDecomposition decompose_char2(const DiagonalForm& f) {
  const Field& F = f.field();
  // dim of F over F^2, plus one.
  const unsigned max_support = (1u << F.num_variables()) + 1;
  std::vector<Element> e;
  for (const auto& a : f.entries()) e.push_back(square_reduce(a));
  std::size_t metabolic = 0;
  for (;;) {
    metabolic += cancel_equal_pairs(e);
    auto dep = least_dependence(e, max_support);
    if (!dep) break;
    std::vector<Element> support;
    std::vector<std::size_t> support_index;
    std::vector<bool> used(e.size(), false);
    for (std::size_t j = 0; j < dep->index.size(); ++j) {
      if (dep->coeff[j].is_zero()) throw MathError("internal: dependency was not minimal");
      const std::size_t i = dep->index[j];
      support.push_back(dep->coeff[j] * dep->coeff[j] * e[i]);
      support_index.push_back(i);
      used[i] = true;
    }
    // ⟨s⟩ + ⟨b⟩ = ⟨s+b⟩ + ⟨sb(s+b)⟩ along the support; the last two entries
    // are then ⟨s, s⟩.
    // Entries only matter up to squares, so the known factors c_j^2 are dropped.
    std::vector<Element> next;
    Element s = support[0];
    Element s_class = e[support_index[0]];
    for (std::size_t j = 1; j + 1 < support.size(); ++j) {
      Element t = s + support[j];
      if (t.is_zero()) throw MathError("internal: dependency was not minimal");
      // The last partial sum equals the final support term, whose class is known.
      const bool last = j + 2 == support.size();
      Element entry = s_class * e[support_index[j]] * (last ? e[support_index.back()] : t);
      next.push_back(square_reduce(entry));
      s = t;
      s_class = t;
    }
    if (!(s == support.back())) throw MathError("internal: dependency chain did not close");
    for (std::size_t j = 0; j < e.size(); ++j)
      if (!used[j]) next.push_back(e[j]);
    e = std::move(next);
    metabolic += 2;
  }
  std::sort(e.begin(), e.end());
  return {DiagonalForm(F, e), metabolic};
}

WittDecomposition decompose_odd_finite(const DiagonalForm& f) {
  const Field& F = f.field();
  std::vector<Element> e;
  for (const auto& a : f.entries()) e.push_back(square_reduce(a));
  std::size_t metabolic = 0;
  for (;;) {
    // ⟨u, v⟩ is hyperbolic exactly when −u/v is a square.
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < e.size() && !changed; ++i)
        for (std::size_t j = i + 1; j < e.size() && !changed; ++j)
          if (is_square(-(e[i] / e[j]))) {
            e.erase(e.begin() + static_cast<std::ptrdiff_t>(j));
            e.erase(e.begin() + static_cast<std::ptrdiff_t>(i));
            metabolic += 2;
            changed = true;
          }
    }
    if (e.size() < 3) break;
    // ⟨a,b,c⟩ is isotropic, hence ≅ H ⊥ ⟨−abc⟩.
    Element d = square_reduce(-(e[0] * e[1] * e[2]));
    e.erase(e.begin(), e.begin() + 3);
    e.insert(e.begin(), d);
    metabolic += 2;
  }
  std::sort(e.begin(), e.end());
  return {DiagonalForm(F, e), metabolic};
}

}  // namespace

WittDecomposition witt_decompose(const DiagonalForm& f) {
  if (f.field().characteristic() == 2) return decompose_char2(f);
  return decompose_odd_finite(f);
}

WittDecomposition witt_decompose(const GramMatrix& g) {
  const Field& F = g.field();
  Diagonalization d = diagonalize(g);
  std::size_t metabolic = 2 * d.symplectic_rank;
  DiagonalForm cur = d.diagonal;
  for (;;) {
    auto v = is_isotropic(cur);
    if (!v) break;
    const std::size_t r = cur.rank();
    const auto& a = cur.entries();
    std::size_t j = 0;
    while ((*v)[j].is_zero()) ++j;
    // span{v, e_j}^⊥ = {x : Σ aᵢvᵢxᵢ = 0, a_j x_j = 0}.
    Matrix sys(2, Vector(r, F.zero()));
    for (std::size_t i = 0; i < r; ++i) sys[0][i] = a[i] * (*v)[i];
    sys[1][j] = a[j];
    auto comp = linalg::nullspace(sys, r, F);
    metabolic += 2;
    if (comp.empty()) {
      cur = DiagonalForm(F);
      break;
    }
    Matrix sub(comp.size(), Vector(comp.size(), F.zero()));
    for (std::size_t x = 0; x < comp.size(); ++x)
      for (std::size_t y = 0; y < comp.size(); ++y) {
        Element s = F.zero();
        for (std::size_t i = 0; i < r; ++i)
          if (!comp[x][i].is_zero() && !comp[y][i].is_zero()) s = s + a[i] * comp[x][i] * comp[y][i];
        sub[x][y] = s;
      }
    Diagonalization dd = diagonalize(GramMatrix(F, std::move(sub)));
    metabolic += 2 * dd.symplectic_rank;
    cur = dd.diagonal;
  }
  return {cur, metabolic};
}

// ---------------------------------------------------------------- Pfister

DiagonalForm pfister(const Field& field, const PfisterSpec& slots) {
  if (slots.size() > 20) throw MathError("too many Pfister slots");
  for (const auto& s : slots) {
    check_field(field, s.field());
    if (s.is_zero()) throw MathError("Pfister slots must be units");
  }
  std::vector<Element> e;
  for (std::size_t mask = 0; mask < (std::size_t{1} << slots.size()); ++mask) {
    Element p = field.one();
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (mask & (std::size_t{1} << i)) p = p * slots[i];
    e.push_back(p);
  }
  return DiagonalForm(field, std::move(e));
}

DiagonalForm pure_part(const Field& field, const PfisterSpec& slots) {
  if (slots.empty()) throw MathError("pure part of an empty Pfister form");
  DiagonalForm p = pfister(field, slots);
  return DiagonalForm(field, std::vector<Element>(p.entries().begin() + 1, p.entries().end()));
}

// ---------------------------------------------------------------- represents

std::optional<Vector> represents(const DiagonalForm& f, const Element& b) {
  const Field& F = f.field();
  check_field(F, b.field());
  if (b.is_zero()) throw MathError("represents requires a unit");
  const auto& a = f.entries();
  const std::size_t r = f.rank();
  if (r == 0) return std::nullopt;
  Vector x(r, F.zero());
  bool found = false;
  if (F.characteristic() == 2 && F.is_finite()) {
    x[0] = sqrt(b / a[0]);
    found = true;
  } else if (F.characteristic() == 2) {
    // Σ xᵢ² aᵢ = b coordinatewise over the square basis: Σ xᵢ αᵢₑ = βₑ.
    std::vector<std::vector<Element>> cols;
    for (const auto& ai : a) cols.push_back(square_coordinates(ai));
    auto beta = square_coordinates(b);
    Matrix m(beta.size(), Vector(r, F.zero()));
    for (std::size_t row = 0; row < beta.size(); ++row)
      for (std::size_t i = 0; i < r; ++i) m[row][i] = cols[i][row];
    auto sol = linalg::solve(m, beta, r, F);
    if (sol) {
      x = *sol;
      found = true;
    }
  } else if (r == 1) {
    Element q = b / a[0];
    if (is_square(q)) {
      x[0] = sqrt(q);
      found = true;
    }
  } else {
    auto sol = solve_binary(a[0], a[1], b);
    if (!sol) throw MathError("internal: binary form over a finite field missed a value");
    x[0] = sol->first;
    x[1] = sol->second;
    found = true;
  }
  if (!found) return std::nullopt;
  Element s = F.zero();
  for (std::size_t i = 0; i < r; ++i) s = s + a[i] * x[i] * x[i];
  if (!(s == b)) throw MathError("internal: representation witness failed");
  return x;
}

}  // namespace mwk
