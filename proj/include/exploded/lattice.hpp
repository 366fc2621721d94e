#pragma once

// Exact integer and rational linear algebra: Hermite and Smith normal
// forms, saturation tests, unimodular completion, rational linear solving,
// lattices and integral affine maps.

#include "exploded/matrix.hpp"

#include <optional>
#include <variant>

namespace exploded {

template <class Int>
struct HermiteForm {
  Matrix<Int> h;  ///< row-style Hermite normal form
  Matrix<Int> u;  ///< unimodular, u * m == h
  std::size_t rank = 0;
};

/// Row-style Hermite normal form: h is in row echelon form with positive
/// pivots and entries above each pivot reduced into [0, pivot).
template <class Int>
HermiteForm<Int> hermite_normal_form(const Matrix<Int>& m) {
  HermiteForm<Int> out{m, Matrix<Int>::identity(m.rows()), 0};
  auto& h = out.h;
  auto& u = out.u;
  const std::size_t rows = h.rows();
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < rows; ++c) {
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (h(i, c) == 0) continue;
      if (h(r, c) == 0) {
        h.swap_rows(r, i);
        u.swap_rows(r, i);
        continue;
      }
      if (h(r, c) == 1 || h(r, c) == -1) {
        Int q = h(i, c) * h(r, c);
        h.add_row_multiple(i, r, Int(-q));
        u.add_row_multiple(i, r, Int(-q));
        continue;
      }
      auto [g, s, t] = extended_gcd(h(r, c), h(i, c));
      Int a = h(r, c) / g;
      Int b = h(i, c) / g;
      // [s t; -b a] has determinant s*a + t*b = 1.
      for (auto* mat : {&h, &u}) {
        for (std::size_t j = 0; j < mat->cols(); ++j) {
          Int x = (*mat)(r, j);
          Int y = (*mat)(i, j);
          (*mat)(r, j) = s * x + t * y;
          (*mat)(i, j) = a * y - b * x;
        }
      }
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(h(i, c), h(r, c));
      if (q != 0) {
        h.add_row_multiple(i, r, Int(-q));
        u.add_row_multiple(i, r, Int(-q));
      }
    }
    ++r;
  }
  out.rank = r;
  return out;
}

template <class Int>
struct SmithForm {
  std::vector<Int> d;  ///< min(rows, cols) nonnegative invariant factors, d[i] | d[i+1]
  Matrix<Int> u;       ///< unimodular, rows x rows
  Matrix<Int> v;       ///< unimodular, cols x cols; u * m * v == diag(d)
};

template <class Int>
SmithForm<Int> smith_normal_form(const Matrix<Int>& m) {
  Matrix<Int> a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  const std::size_t n = std::min(rows, cols);
  SmithForm<Int> out{std::vector<Int>(n, Int(0)), Matrix<Int>::identity(rows), Matrix<Int>::identity(cols)};
  auto& u = out.u;
  auto& v = out.v;
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      bool found = false;
      std::size_t pi = t, pj = t;
      Int best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          Int av = abs_value(a(i, j));
          if (!found || av < best) {
            found = true;
            best = av;
            pi = i;
            pj = j;
          }
        }
      if (!found) {
        for (std::size_t k = 0; k < t; ++k) out.d[k] = a(k, k);
        return out;
      }
      a.swap_rows(t, pi);
      u.swap_rows(t, pi);
      a.swap_cols(t, pj);
      v.swap_cols(t, pj);

      // A unit pivot divides everything: quotients are exact products.
      const bool unit = best == 1;
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Int q = unit ? Int(a(i, t) * a(t, t)) : Int(a(i, t) / a(t, t));
        a.add_row_multiple(i, t, Int(-q));
        u.add_row_multiple(i, t, Int(-q));
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Int q = unit ? Int(a(t, j) * a(t, t)) : Int(a(t, j) / a(t, t));
        a.add_col_multiple(j, t, Int(-q));
        v.add_col_multiple(j, t, Int(-q));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      if (unit) break;

      // Divisibility: pull a non-multiple into the pivot row and retry.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            a.add_row_multiple(t, i, Int(1));
            u.add_row_multiple(t, i, Int(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  }
  for (std::size_t k = 0; k < n; ++k) out.d[k] = a(k, k);
  return out;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
template <class Int>
Int determinant(Matrix<Int> a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return Int(1);
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return Int(0);
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

template <class T>
std::size_t rank(const Matrix<T>& m);

/// True iff the gcd of the entries is 1.  Throws on the zero vector.
template <class Int>
bool is_primitive(const std::vector<Int>& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd_value(g, x);
  if (g == 0) throw InvalidArgument("is_primitive: zero vector");
  return g == 1;
}

/// True iff the rows are linearly independent and generate a saturated
/// sublattice, i.e. they extend to a basis of Z^n.
template <class Int>
bool is_integral_basis_of_saturated_subspace(const Matrix<Int>& covectors) {
  if (covectors.rows() == 0) return true;
  if (covectors.rows() > covectors.cols()) return false;
  auto snf = smith_normal_form(covectors);
  for (const auto& d : snf.d)
    if (d != 1) return false;
  return true;
}

// Rational linear algebra ----------------------------------------------------

/// Reduced row echelon form.  Returns pivot columns.
inline std::vector<std::size_t> rref_in_place(RationalMatrix& a, std::size_t pivot_cols = SIZE_MAX,
                                              RationalMatrix* track = nullptr) {
  const std::size_t limit = std::min(pivot_cols, a.cols());
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    if (track) track->swap_rows(r, p);
    Rational inv = Rational(1) / a(r, c);
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) *= inv;
    if (track)
      for (std::size_t j = 0; j < track->cols(); ++j) (*track)(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = -a(i, c);
      a.add_row_multiple(i, r, f);
      if (track) track->add_row_multiple(i, r, f);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  RationalMatrix a(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = Rational(m(i, j));
  return rref_in_place(a).size();
}

inline RationalMatrix inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square matrix");
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(m.rows());
  auto piv = rref_in_place(a, SIZE_MAX, &inv);
  if (piv.size() != m.rows()) throw InvalidArgument("matrix is singular");
  return inv;
}

/// Inverse of a unimodular integer matrix.
inline IntegerMatrix unimodular_inverse(const IntegerMatrix& m) { return to_integer(inverse(to_rational(m))); }

/// Rational basis of {x : m x = 0}, one basis vector per free column.
inline std::vector<RationalVector> kernel_basis(const RationalMatrix& m) {
  RationalMatrix a = m;
  auto piv = rref_in_place(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RationalVector x(m.cols(), Rational(0));
    x[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -a(r, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Z-basis (as rows, in Hermite normal form) of the saturated lattice
/// {x in Z^n : m x = 0}.
inline IntegerMatrix integer_kernel_basis(const IntegerMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return IntegerMatrix::identity(n);
  auto hf = hermite_normal_form(m.transpose());
  IntegerMatrix k(0, n);
  for (std::size_t i = hf.rank; i < n; ++i) k.append_row(hf.u.row(i));
  if (k.rows() == 0) return IntegerMatrix(0, n);
  auto canon = hermite_normal_form(k);
  return canon.h.select_rows(0, canon.rank);
}

/// Returns a square unimodular matrix whose last rows are the input rows.
/// Requires is_integral_basis_of_saturated_subspace(covectors).
inline IntegerMatrix extend_to_unimodular_basis(const IntegerMatrix& covectors) {
  if (!is_integral_basis_of_saturated_subspace(covectors))
    throw InvalidArgument("extend_to_unimodular_basis: rows are not a basis of a saturated sublattice");
  const std::size_t k = covectors.rows(), n = covectors.cols();
  if (k == n) return covectors;
  // u * A * v = [I 0]  =>  A = u^-1 * (first k rows of v^-1).
  auto snf = smith_normal_form(covectors);
  IntegerMatrix vinv = unimodular_inverse(snf.v);
  IntegerMatrix out(0, n);
  for (std::size_t i = k; i < n; ++i) out.append_row(vinv.row(i));
  for (std::size_t i = 0; i < k; ++i) out.append_row(covectors.row(i));
  return out;
}

/// Outcome of solving a x = b exactly.
struct LinearSolution {
  enum class Kind { Unique, Family, Inconsistent };
  Kind kind = Kind::Inconsistent;
  RationalVector particular;            ///< a solution, when consistent
  std::vector<RationalVector> kernel;   ///< basis of the solution directions
  RationalVector certificate;           ///< y with y a = 0 and y b = 1, when inconsistent

  bool consistent() const { return kind != Kind::Inconsistent; }
  std::size_t dimension() const { return kernel.size(); }
};

inline LinearSolution solve_rational_linear(const RationalMatrix& a, const RationalVector& b) {
  if (a.rows() != b.size()) throw DimensionMismatch("solve_rational_linear: rhs length");
  const std::size_t m = a.rows(), n = a.cols();
  RationalMatrix aug(m, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  RationalMatrix ops = RationalMatrix::identity(m);
  auto piv = rref_in_place(aug, n, &ops);
  LinearSolution out;
  for (std::size_t i = piv.size(); i < m; ++i) {
    if (aug(i, n) != 0) {
      out.kind = LinearSolution::Kind::Inconsistent;
      out.certificate = ops.row(i);
      Rational s = Rational(1) / aug(i, n);
      for (auto& y : out.certificate) y *= s;
      return out;
    }
  }
  out.particular.assign(n, Rational(0));
  for (std::size_t r = 0; r < piv.size(); ++r) out.particular[piv[r]] = aug(r, n);
  out.kernel = kernel_basis(a);
  out.kind = out.kernel.empty() ? LinearSolution::Kind::Unique : LinearSolution::Kind::Family;
  return out;
}

// Lattices -------------------------------------------------------------------

/// A sublattice of Z^n, stored by its Hermite normal form basis.
class Lattice {
 public:
  explicit Lattice(std::size_t ambient_dim) : ambient_dim_(ambient_dim), basis_(0, ambient_dim) {}

  static Lattice from_generators(const IntegerMatrix& generators) {
    Lattice l(generators.cols());
    auto hf = hermite_normal_form(generators);
    l.basis_ = hf.h.select_rows(0, hf.rank);
    return l;
  }

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntegerMatrix& generators() const { return basis_; }

  bool contains(const IntegerVector& v) const {
    if (v.size() != ambient_dim_) throw DimensionMismatch("lattice membership dimension");
    IntegerVector rest = v;
    std::size_t col = 0;
    for (std::size_t r = 0; r < basis_.rows(); ++r) {
      while (basis_(r, col) == 0) {
        if (rest[col] != 0) return false;
        ++col;
      }
      if (rest[col] % basis_(r, col) != 0) return false;
      Integer q = rest[col] / basis_(r, col);
      for (std::size_t j = 0; j < ambient_dim_; ++j) rest[j] -= q * basis_(r, j);
    }
    for (const auto& x : rest)
      if (x != 0) return false;
    return true;
  }

  bool is_saturated() const { return is_integral_basis_of_saturated_subspace(basis_); }

  /// The saturated lattice (span of this lattice) intersected with Z^n.
  Lattice saturation() const {
    IntegerMatrix perp = integer_kernel_basis(basis_);
    return from_generators(integer_kernel_basis(perp));
  }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_dim_;
  IntegerMatrix basis_;
};

/// y -> linear * y + translation.  The linear part is integral, so lattice
/// vectors go to lattice vectors.
struct IntegralAffineMap {
  IntegerMatrix linear;
  RationalVector translation;

  IntegralAffineMap() = default;
  IntegralAffineMap(IntegerMatrix l, RationalVector t) : linear(std::move(l)), translation(std::move(t)) {
    if (linear.rows() != translation.size()) throw DimensionMismatch("affine map translation length");
  }

  static IntegralAffineMap identity(std::size_t n) {
    return IntegralAffineMap(IntegerMatrix::identity(n), RationalVector(n, Rational(0)));
  }

  std::size_t source_dim() const { return linear.cols(); }
  std::size_t target_dim() const { return linear.rows(); }

  RationalVector operator()(const RationalVector& y) const {
    auto out = multiply(linear, y);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += translation[i];
    return out;
  }

  bool is_injective() const { return rank(linear) == source_dim(); }

  friend bool operator==(const IntegralAffineMap& a, const IntegralAffineMap& b) {
    return a.linear == b.linear && a.translation == b.translation;
  }
  friend bool operator!=(const IntegralAffineMap& a, const IntegralAffineMap& b) { return !(a == b); }
  friend bool operator<(const IntegralAffineMap& a, const IntegralAffineMap& b) {
    if (a.linear != b.linear) return a.linear < b.linear;
    return a.translation < b.translation;
  }
};

/// outer o inner.
inline IntegralAffineMap compose(const IntegralAffineMap& outer, const IntegralAffineMap& inner) {
  if (outer.source_dim() != inner.target_dim()) throw DimensionMismatch("compose: dimension mismatch");
  return IntegralAffineMap(outer.linear * inner.linear, outer(inner.translation));
}

/// g with g o f = identity, for f injective with saturated column lattice.
inline IntegralAffineMap integral_left_inverse(const IntegralAffineMap& f) {
  const std::size_t n = f.target_dim(), d = f.source_dim();
  IntegerMatrix left(d, n);
  if (d > 0) {
    auto inv = unimodular_inverse(extend_to_unimodular_basis(f.linear.transpose()));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < n; ++j) left(i, j) = inv(j, n - d + i);
  }
  RationalVector t = multiply(left, f.translation);
  for (auto& x : t) x = -x;
  return IntegralAffineMap(left, t);
}

}  // namespace exploded
