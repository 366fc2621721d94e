#pragma once

// Exact feasibility and point finding for small systems of linear
// constraints (>=, >, =) over the rationals.  Equalities are eliminated by
// Gaussian elimination, inequalities by Fourier-Motzkin with strictness
// tracking; a witness point is recovered by back-substitution.

#include "exploded/lattice.hpp"

#include <map>

namespace exploded {

enum class Relation { GreaterEqual, Greater, Equal };

struct LinearConstraint {
  RationalVector coeffs;
  Relation rel = Relation::GreaterEqual;
  Rational rhs = 0;
};

namespace detail {

struct Ineq {
  RationalVector a;
  Rational b;
  bool strict;
};

// Scale so the last nonzero coefficient has absolute value 1.  Only the
// last (highest-index) variable matters for the elimination order used.
inline void normalize(Ineq& q) {
  for (std::size_t i = q.a.size(); i-- > 0;) {
    if (q.a[i] != 0) {
      Rational s = q.a[i] < 0 ? Rational(-q.a[i]) : q.a[i];
      if (s != 1) {
        for (auto& x : q.a) x /= s;
        q.b /= s;
      }
      return;
    }
  }
}

// Keeps the tightest constraint per coefficient vector.
inline std::vector<Ineq> dedupe(std::vector<Ineq> in) {
  std::map<RationalVector, std::size_t> seen;
  std::vector<Ineq> out;
  for (auto& q : in) {
    normalize(q);
    auto it = seen.find(q.a);
    if (it == seen.end()) {
      seen.emplace(q.a, out.size());
      out.push_back(std::move(q));
      continue;
    }
    Ineq& have = out[it->second];
    if (q.b > have.b || (q.b == have.b && q.strict)) have = std::move(q);
  }
  return out;
}

inline bool satisfied_constant(const Ineq& q) { return q.strict ? (0 > q.b) : (0 >= q.b); }

}  // namespace detail

/// Returns a point satisfying all constraints, or nullopt if none exists.
inline std::optional<RationalVector> find_point(const std::vector<LinearConstraint>& constraints, std::size_t dim) {
  using detail::Ineq;
  // Equalities: x_pivot = rhs - sum(coeff * x_free).
  RationalMatrix eq(0, dim + 1);
  for (const auto& c : constraints) {
    if (c.coeffs.size() != dim) throw DimensionMismatch("constraint dimension mismatch");
    if (c.rel != Relation::Equal) continue;
    RationalVector row(c.coeffs);
    row.push_back(c.rhs);
    eq.append_row(row);
  }
  std::vector<std::size_t> pivots;
  if (eq.rows() > 0) {
    pivots = rref_in_place(eq, dim);
    for (std::size_t i = pivots.size(); i < eq.rows(); ++i)
      if (eq(i, dim) != 0) return std::nullopt;
  }
  std::vector<int> free_index(dim, -1);
  std::vector<bool> is_pivot(dim, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::size_t nfree = 0;
  for (std::size_t j = 0; j < dim; ++j)
    if (!is_pivot[j]) free_index[j] = static_cast<int>(nfree++);

  // Substitute into the inequalities.
  std::vector<Ineq> current;
  for (const auto& c : constraints) {
    if (c.rel == Relation::Equal) continue;
    Ineq q{RationalVector(nfree, Rational(0)), c.rhs, c.rel == Relation::Greater};
    for (std::size_t j = 0; j < dim; ++j) {
      if (c.coeffs[j] == 0) continue;
      if (!is_pivot[j]) {
        q.a[free_index[j]] += c.coeffs[j];
        continue;
      }
      std::size_t r = std::find(pivots.begin(), pivots.end(), j) - pivots.begin();
      q.b -= c.coeffs[j] * eq(r, dim);
      for (std::size_t f = 0; f < dim; ++f)
        if (!is_pivot[f] && eq(r, f) != 0) q.a[free_index[f]] -= c.coeffs[j] * eq(r, f);
    }
    current.push_back(std::move(q));
  }

  // Fourier-Motzkin from the last free variable down to the first.
  std::vector<std::vector<Ineq>> stages(nfree);
  current = detail::dedupe(std::move(current));
  for (std::size_t v = nfree; v-- > 0;) {
    std::vector<Ineq> lower, upper, next;
    for (auto& q : current) {
      if (q.a[v] > 0)
        lower.push_back(q);
      else if (q.a[v] < 0)
        upper.push_back(q);
      else
        next.push_back(q);
    }
    for (const auto& lo : lower)
      for (const auto& up : upper) {
        // lo: x_v + ... >= b1 ; up: -x_v + ... >= b2 (normalized to unit coefficient)
        Ineq s{RationalVector(nfree, Rational(0)), lo.b / lo.a[v] + up.b / (-up.a[v]), lo.strict || up.strict};
        for (std::size_t j = 0; j < v; ++j) s.a[j] = lo.a[j] / lo.a[v] + up.a[j] / (-up.a[v]);
        next.push_back(std::move(s));
      }
    stages[v] = lower;
    stages[v].insert(stages[v].end(), upper.begin(), upper.end());
    current = detail::dedupe(std::move(next));
  }
  for (const auto& q : current)
    if (!detail::satisfied_constant(q)) return std::nullopt;

  // Back-substitution.
  RationalVector free_values(nfree, Rational(0));
  for (std::size_t v = 0; v < nfree; ++v) {
    std::optional<Rational> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& q : stages[v]) {
      Rational rest = q.b;
      for (std::size_t j = 0; j < v; ++j) rest -= q.a[j] * free_values[j];
      Rational bound = rest / q.a[v];
      if (q.a[v] > 0) {
        if (!lo || bound > *lo || (bound == *lo && q.strict)) {
          lo = bound;
          lo_strict = q.strict;
        }
      } else {
        if (!hi || bound < *hi || (bound == *hi && q.strict)) {
          hi = bound;
          hi_strict = q.strict;
        }
      }
    }
    Rational x = 0;
    if (lo && hi) {
      x = (*lo == *hi) ? *lo : (*lo + *hi) / 2;
    } else if (lo) {
      x = lo_strict ? Rational(*lo + 1) : *lo;
    } else if (hi) {
      x = hi_strict ? Rational(*hi - 1) : *hi;
    }
    // Prefer 0 or an integer when it lies strictly inside the window.
    auto inside = [&](const Rational& c) {
      if (lo && (lo_strict ? !(c > *lo) : !(c >= *lo))) return false;
      if (hi && (hi_strict ? !(c < *hi) : !(c <= *hi))) return false;
      return true;
    };
    if (inside(Rational(0))) {
      x = 0;
    } else if (lo && hi && *lo != *hi) {
      Integer f = floor_div(numerator(x), denominator(x));
      if (inside(Rational(f))) x = Rational(f);
      else if (inside(Rational(f + 1))) x = Rational(f + 1);
    }
    free_values[v] = x;
  }

  RationalVector point(dim, Rational(0));
  for (std::size_t j = 0; j < dim; ++j)
    if (!is_pivot[j]) point[j] = free_values[free_index[j]];
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    Rational x = eq(r, dim);
    for (std::size_t f = 0; f < dim; ++f)
      if (!is_pivot[f] && eq(r, f) != 0) x -= eq(r, f) * point[f];
    point[pivots[r]] = x;
  }
  return point;
}

inline bool is_feasible(const std::vector<LinearConstraint>& constraints, std::size_t dim) {
  return find_point(constraints, dim).has_value();
}

inline bool satisfies(const LinearConstraint& c, const RationalVector& x) {
  Rational v = dot(c.coeffs, x);
  switch (c.rel) {
    case Relation::GreaterEqual: return v >= c.rhs;
    case Relation::Greater: return v > c.rhs;
    case Relation::Equal: return v == c.rhs;
  }
  return false;
}

}  // namespace exploded
