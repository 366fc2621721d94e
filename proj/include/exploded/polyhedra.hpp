#pragma once

// Rational convex polyhedra in H-representation with integral (primitive)
// constraint normals: canonical forms, faces, intersections, smooth-cone
// tests and affine-hull lattice charts.

#include "exploded/linear_system.hpp"

#include <set>

namespace exploded {

/// normal . y >= rhs (inequality) or normal . y == rhs (equality).
struct Constraint {
  IntegerVector normal;
  Rational rhs = 0;

  friend bool operator==(const Constraint& a, const Constraint& b) { return a.normal == b.normal && a.rhs == b.rhs; }
  friend bool operator<(const Constraint& a, const Constraint& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.rhs < b.rhs;
  }
};

class Polyhedron {
 public:
  Polyhedron() = default;
  explicit Polyhedron(std::size_t dim) : dim_(dim) {}
  Polyhedron(std::size_t dim, std::vector<Constraint> ineqs, std::vector<Constraint> eqs = {})
      : dim_(dim), ineqs_(std::move(ineqs)), eqs_(std::move(eqs)) {
    for (const auto& c : ineqs_)
      if (c.normal.size() != dim_) throw DimensionMismatch("inequality normal has wrong length");
    for (const auto& c : eqs_)
      if (c.normal.size() != dim_) throw DimensionMismatch("equality normal has wrong length");
  }

  /// [0,inf)^k x R^(dim-k), with the bounded-below coordinates first.
  static Polyhedron orthant(std::size_t dim, std::size_t k) {
    Polyhedron p(dim);
    for (std::size_t i = 0; i < k; ++i) {
      IntegerVector e(dim, Integer(0));
      e[i] = 1;
      p.ineqs_.push_back({e, 0});
    }
    return p;
  }
  static Polyhedron orthant(std::size_t dim) { return orthant(dim, dim); }

  /// The polyhedron with no points.
  static Polyhedron empty_set(std::size_t dim) {
    Polyhedron p(dim);
    p.empty_ = true;
    p.canonical_ = true;
    return p;
  }

  /// Closed box lo <= y <= hi.
  static Polyhedron box(const RationalVector& lo, const RationalVector& hi) {
    Polyhedron p(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) {
      IntegerVector e(lo.size(), Integer(0));
      e[i] = 1;
      p.ineqs_.push_back({e, lo[i]});
      e[i] = -1;
      p.ineqs_.push_back({e, -hi[i]});
    }
    return p;
  }

  std::size_t ambient_dim() const { return dim_; }
  const std::vector<Constraint>& inequalities() const { return ineqs_; }
  const std::vector<Constraint>& equalities() const { return eqs_; }
  bool is_canonical() const { return canonical_; }
  /// Only meaningful on canonical forms.
  bool is_empty_flagged() const { return empty_; }

  Polyhedron& add_inequality(IntegerVector normal, Rational rhs) {
    if (normal.size() != dim_) throw DimensionMismatch("inequality normal has wrong length");
    ineqs_.push_back({std::move(normal), std::move(rhs)});
    canonical_ = false;
    return *this;
  }
  Polyhedron& add_equality(IntegerVector normal, Rational rhs) {
    if (normal.size() != dim_) throw DimensionMismatch("equality normal has wrong length");
    eqs_.push_back({std::move(normal), std::move(rhs)});
    canonical_ = false;
    return *this;
  }

  std::vector<LinearConstraint> as_constraints(bool strict = false) const {
    std::vector<LinearConstraint> out;
    if (empty_) {
      out.push_back({RationalVector(dim_, Rational(0)), Relation::GreaterEqual, Rational(1)});
      return out;
    }
    for (const auto& c : ineqs_)
      out.push_back({to_rational(c.normal), strict ? Relation::Greater : Relation::GreaterEqual, c.rhs});
    for (const auto& c : eqs_) out.push_back({to_rational(c.normal), Relation::Equal, c.rhs});
    return out;
  }

  friend bool operator==(const Polyhedron& a, const Polyhedron& b) {
    return a.dim_ == b.dim_ && a.empty_ == b.empty_ && a.ineqs_ == b.ineqs_ && a.eqs_ == b.eqs_;
  }
  friend bool operator!=(const Polyhedron& a, const Polyhedron& b) { return !(a == b); }
  friend bool operator<(const Polyhedron& a, const Polyhedron& b) {
    return std::tie(a.dim_, a.empty_, a.eqs_, a.ineqs_) < std::tie(b.dim_, b.empty_, b.eqs_, b.ineqs_);
  }

 private:
  friend Polyhedron canonicalize(const Polyhedron& p);

  std::size_t dim_ = 0;
  std::vector<Constraint> ineqs_;
  std::vector<Constraint> eqs_;
  bool empty_ = false;
  bool canonical_ = false;
};

namespace detail {

inline Constraint integral_constraint(const RationalVector& coeffs, const Rational& rhs) {
  auto [normal, scale] = primitive_scaling(coeffs);
  return {std::move(normal), rhs * scale};
}

// Independent normals (as vectors modulo nothing) mean every sign pattern
// is attainable: feasible, no implicit equalities, nothing redundant.
inline bool normals_independent(const std::vector<Constraint>& ineqs, std::size_t dim) {
  if (ineqs.size() > dim) return false;
  IntegerMatrix m(0, dim);
  for (const auto& c : ineqs) m.append_row(c.normal);
  return rank(m) == ineqs.size();
}

inline std::vector<LinearConstraint> to_linear(const std::vector<Constraint>& ineqs, const std::vector<Constraint>& eqs) {
  std::vector<LinearConstraint> out;
  for (const auto& c : ineqs) out.push_back({to_rational(c.normal), Relation::GreaterEqual, c.rhs});
  for (const auto& c : eqs) out.push_back({to_rational(c.normal), Relation::Equal, c.rhs});
  return out;
}

}  // namespace detail

/// Irredundant description with primitive normals, implicit equalities
/// promoted, inequality normals reduced modulo the equalities.  Equal sets
/// have identical canonical forms.  Empty input yields empty_set().
inline Polyhedron canonicalize(const Polyhedron& p) {
  if (p.canonical_) return p;
  const std::size_t n = p.dim_;
  if (p.empty_) return Polyhedron::empty_set(n);

  std::vector<Constraint> ineqs;
  for (const auto& c : p.ineqs_) {
    Integer g = content(c.normal);
    if (g == 0) {
      if (c.rhs > 0) return Polyhedron::empty_set(n);
      continue;
    }
    IntegerVector a = c.normal;
    for (auto& x : a) x /= g;
    ineqs.push_back({std::move(a), c.rhs / g});
  }
  std::vector<Constraint> eq_in = p.eqs_;

  for (;;) {
    // Equalities in reduced row echelon form.
    RationalMatrix e(0, n + 1);
    for (const auto& c : eq_in) {
      RationalVector row = to_rational(c.normal);
      row.push_back(c.rhs);
      e.append_row(row);
    }
    std::vector<std::size_t> piv;
    if (e.rows()) {
      piv = rref_in_place(e, n);
      for (std::size_t i = piv.size(); i < e.rows(); ++i)
        if (e(i, n) != 0) return Polyhedron::empty_set(n);
    }
    std::vector<Constraint> eqs;
    for (std::size_t r = 0; r < piv.size(); ++r) {
      RationalVector coeffs(n);
      for (std::size_t j = 0; j < n; ++j) coeffs[j] = e(r, j);
      eqs.push_back(detail::integral_constraint(coeffs, e(r, n)));
    }

    // Reduce inequalities modulo the equalities.
    std::vector<Constraint> reduced;
    for (const auto& c : ineqs) {
      RationalVector a = to_rational(c.normal);
      Rational b = c.rhs;
      for (std::size_t r = 0; r < piv.size(); ++r) {
        Rational f = a[piv[r]];
        if (f == 0) continue;
        for (std::size_t j = 0; j < n; ++j) a[j] -= f * e(r, j);
        b -= f * e(r, n);
      }
      auto ic = detail::integral_constraint(a, b);
      if (content(ic.normal) == 0) {
        if (ic.rhs > 0) return Polyhedron::empty_set(n);
        continue;
      }
      reduced.push_back(std::move(ic));
    }
    // Duplicate normals: keep the tightest.
    std::sort(reduced.begin(), reduced.end());
    std::vector<Constraint> uniq;
    for (auto& c : reduced) {
      if (!uniq.empty() && uniq.back().normal == c.normal)
        uniq.back() = std::move(c);
      else
        uniq.push_back(std::move(c));
    }

    if (detail::normals_independent(uniq, n)) {
      Polyhedron out(n, std::move(uniq), std::move(eqs));
      out.canonical_ = true;
      return out;
    }

    auto base = detail::to_linear(uniq, eqs);
    if (!is_feasible(base, n)) return Polyhedron::empty_set(n);

    // Implicit equalities: a.y > b impossible on the set.
    std::vector<Constraint> still, promoted;
    for (const auto& c : uniq) {
      auto sys = base;
      sys.push_back({to_rational(c.normal), Relation::Greater, c.rhs});
      if (!is_feasible(sys, n))
        promoted.push_back(c);
      else
        still.push_back(c);
    }
    if (!promoted.empty()) {
      eq_in = eqs;
      eq_in.insert(eq_in.end(), promoted.begin(), promoted.end());
      ineqs = std::move(still);
      continue;
    }

    // Redundancy removal.
    std::vector<Constraint> kept = uniq;
    for (std::size_t i = 0; i < kept.size();) {
      std::vector<Constraint> others;
      for (std::size_t j = 0; j < kept.size(); ++j)
        if (j != i) others.push_back(kept[j]);
      auto sys = detail::to_linear(others, eqs);
      RationalVector neg = to_rational(kept[i].normal);
      for (auto& x : neg) x = -x;
      sys.push_back({neg, Relation::Greater, -kept[i].rhs});
      if (!is_feasible(sys, n))
        kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
      else
        ++i;
    }
    Polyhedron out(n, std::move(kept), std::move(eqs));
    out.canonical_ = true;
    return out;
  }
}

inline bool is_empty(const Polyhedron& p) { return canonicalize(p).is_empty_flagged(); }

/// Dimension of the affine hull; -1 for the empty set.
inline long dimension(const Polyhedron& p) {
  auto c = canonicalize(p);
  if (c.is_empty_flagged()) return -1;
  return static_cast<long>(c.ambient_dim() - c.equalities().size());
}

inline Polyhedron intersect(const Polyhedron& p, const Polyhedron& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw DimensionMismatch("intersect: ambient dimensions differ");
  if (p.is_canonical() && p.is_empty_flagged()) return Polyhedron::empty_set(p.ambient_dim());
  if (q.is_canonical() && q.is_empty_flagged()) return Polyhedron::empty_set(p.ambient_dim());
  auto ineqs = p.inequalities();
  ineqs.insert(ineqs.end(), q.inequalities().begin(), q.inequalities().end());
  auto eqs = p.equalities();
  eqs.insert(eqs.end(), q.equalities().begin(), q.equalities().end());
  return canonicalize(Polyhedron(p.ambient_dim(), std::move(ineqs), std::move(eqs)));
}

/// A point strictly satisfying every inequality of the canonical form.
inline RationalVector relative_interior_point(const Polyhedron& p) {
  auto c = canonicalize(p);
  if (c.is_empty_flagged()) throw InvalidArgument("relative_interior_point: empty polyhedron");
  auto pt = find_point(c.as_constraints(true), c.ambient_dim());
  if (!pt) throw Error("relative_interior_point: canonical form has empty relative interior");
  return *pt;
}

inline bool contains_point(const Polyhedron& p, const RationalVector& x) {
  if (x.size() != p.ambient_dim()) throw DimensionMismatch("contains_point dimension");
  if (p.is_canonical() && p.is_empty_flagged()) return false;
  for (const auto& c : p.inequalities())
    if (dot(c.normal, x) < c.rhs) return false;
  for (const auto& c : p.equalities())
    if (dot(c.normal, x) != c.rhs) return false;
  return true;
}

/// x lies in the relative interior of p (p canonical).
inline bool in_relative_interior(const Polyhedron& p, const RationalVector& x) {
  auto c = canonicalize(p);
  if (c.is_empty_flagged()) return false;
  for (const auto& k : c.inequalities())
    if (dot(k.normal, x) <= k.rhs) return false;
  for (const auto& k : c.equalities())
    if (dot(k.normal, x) != k.rhs) return false;
  return true;
}

/// q is a subset of p.
inline bool contains(const Polyhedron& p, const Polyhedron& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw DimensionMismatch("contains: ambient dimensions differ");
  auto qc = canonicalize(q);
  if (qc.is_empty_flagged()) return true;
  auto pc = canonicalize(p);
  if (pc.is_empty_flagged()) return false;
  auto base = qc.as_constraints();
  const std::size_t n = p.ambient_dim();
  auto violates = [&](const IntegerVector& normal, const Rational& rhs) {
    auto sys = base;
    RationalVector neg = to_rational(normal);
    for (auto& x : neg) x = -x;
    sys.push_back({neg, Relation::Greater, -rhs});
    return is_feasible(sys, n);
  };
  for (const auto& c : pc.inequalities())
    if (violates(c.normal, c.rhs)) return false;
  for (const auto& c : pc.equalities()) {
    if (violates(c.normal, c.rhs)) return false;
    IntegerVector neg = c.normal;
    for (auto& x : neg) x = -x;
    if (violates(neg, -c.rhs)) return false;
  }
  return true;
}

/// {y : f(y) in p}.
inline Polyhedron preimage(const Polyhedron& p, const IntegralAffineMap& f) {
  if (f.target_dim() != p.ambient_dim()) throw DimensionMismatch("preimage: map target dimension");
  Polyhedron out(f.source_dim());
  if (p.is_canonical() && p.is_empty_flagged()) return Polyhedron::empty_set(f.source_dim());
  auto pull = [&](const Constraint& c) {
    IntegerVector a = left_multiply(c.normal, f.linear);
    Rational b = c.rhs - dot(c.normal, f.translation);
    return std::make_pair(a, b);
  };
  for (const auto& c : p.inequalities()) {
    auto [a, b] = pull(c);
    out.add_inequality(std::move(a), std::move(b));
  }
  for (const auto& c : p.equalities()) {
    auto [a, b] = pull(c);
    out.add_equality(std::move(a), std::move(b));
  }
  return canonicalize(out);
}

/// f(p) for an injective integral affine map f.
inline Polyhedron image_under(const Polyhedron& p, const IntegralAffineMap& f) {
  if (f.source_dim() != p.ambient_dim()) throw DimensionMismatch("image_under: map source dimension");
  const std::size_t s = f.source_dim(), t = f.target_dim();
  auto pc = canonicalize(p);
  if (pc.is_empty_flagged()) return Polyhedron::empty_set(t);
  RationalMatrix l = to_rational(f.linear);
  RationalMatrix lt = l.transpose();
  RationalMatrix gram = lt * l;
  if (rank(gram) != s)
    throw InvalidArgument("image_under: map is not injective");
  RationalMatrix left_inv = inverse(gram) * lt;  // s x t, left_inv * l = I
  Polyhedron out(t);
  // z - translation lies in the column span of l.
  for (const auto& nvec : kernel_basis(lt)) {
    auto c = detail::integral_constraint(nvec, dot(nvec, f.translation));
    out.add_equality(c.normal, c.rhs);
  }
  auto push = [&](const Constraint& c, bool equality) {
    RationalVector a = left_multiply(to_rational(c.normal), left_inv);
    Rational b = c.rhs + dot(a, f.translation);
    auto ic = detail::integral_constraint(a, b);
    if (equality)
      out.add_equality(ic.normal, ic.rhs);
    else
      out.add_inequality(ic.normal, ic.rhs);
  };
  for (const auto& c : pc.inequalities()) push(c, false);
  for (const auto& c : pc.equalities()) push(c, true);
  return canonicalize(out);
}

// Faces ----------------------------------------------------------------------

struct Face {
  std::vector<std::size_t> active;  ///< indices of inequalities tight on the face
  long dim = 0;
  Polyhedron polyhedron;            ///< canonical form of the face itself
};

struct FaceLattice {
  std::vector<Face> faces;                                 ///< sorted by dimension descending, then active set
  std::vector<std::pair<std::size_t, std::size_t>> covers;  ///< (smaller, larger) with dimension difference 1

  std::size_t count_of_dim(long d) const {
    return static_cast<std::size_t>(std::count_if(faces.begin(), faces.end(), [d](const Face& f) { return f.dim == d; }));
  }
};

/// Canonical polyhedron of the face of p (canonical) cut out by the given
/// active inequalities.
inline Polyhedron face_polyhedron(const Polyhedron& p, const std::vector<std::size_t>& active) {
  Polyhedron q(p.ambient_dim(), p.inequalities(), p.equalities());
  for (auto i : active) q.add_equality(p.inequalities()[i].normal, p.inequalities()[i].rhs);
  return canonicalize(q);
}

/// Inequalities of p that hold with equality on all of q (q a nonempty subset).
inline std::vector<std::size_t> tight_set(const Polyhedron& p, const Polyhedron& q) {
  auto x = relative_interior_point(q);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.inequalities().size(); ++i)
    if (dot(p.inequalities()[i].normal, x) == p.inequalities()[i].rhs) out.push_back(i);
  return out;
}

/// Every nonempty face of a canonical nonempty polyhedron, with covering
/// relations.
inline FaceLattice face_lattice(const Polyhedron& input) {
  auto p = canonicalize(input);
  if (p.is_empty_flagged()) throw InvalidArgument("face_lattice: empty polyhedron");
  const auto& ineqs = p.inequalities();
  const long full = dimension(p);
  std::map<std::vector<std::size_t>, Face> found;

  if (detail::normals_independent(ineqs, p.ambient_dim())) {
    // Simple-cone-like: every subset of the inequalities is a distinct face.
    const std::size_t m = ineqs.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      std::vector<std::size_t> act;
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (std::size_t{1} << i)) act.push_back(i);
      Face f{act, full - static_cast<long>(act.size()), face_polyhedron(p, act)};
      found.emplace(act, std::move(f));
    }
  } else {
    std::vector<std::vector<std::size_t>> queue{{}};
    found.emplace(std::vector<std::size_t>{}, Face{{}, full, p});
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      auto act = queue[qi];
      for (std::size_t j = 0; j < ineqs.size(); ++j) {
        if (std::binary_search(act.begin(), act.end(), j)) continue;
        auto next = act;
        next.push_back(j);
        std::sort(next.begin(), next.end());
        auto fp = face_polyhedron(p, next);
        if (fp.is_empty_flagged()) continue;
        auto closure = tight_set(p, fp);
        if (found.count(closure)) continue;
        found.emplace(closure, Face{closure, dimension(fp), fp});
        queue.push_back(closure);
      }
    }
  }

  FaceLattice out;
  for (auto& [k, f] : found) out.faces.push_back(std::move(f));
  std::sort(out.faces.begin(), out.faces.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim > b.dim;
    return a.active < b.active;
  });
  for (std::size_t i = 0; i < out.faces.size(); ++i)
    for (std::size_t j = 0; j < out.faces.size(); ++j) {
      const auto& small = out.faces[i];
      const auto& large = out.faces[j];
      if (small.dim + 1 != large.dim) continue;
      if (std::includes(small.active.begin(), small.active.end(), large.active.begin(), large.active.end()))
        out.covers.emplace_back(i, j);
    }
  return out;
}

/// The face of p (canonical) equal to q, if q is a face.
inline std::optional<std::vector<std::size_t>> as_face_of(const Polyhedron& p, const Polyhedron& q) {
  auto qc = canonicalize(q);
  if (qc.is_empty_flagged()) return std::nullopt;
  if (!contains(p, qc)) return std::nullopt;
  auto act = tight_set(p, qc);
  if (face_polyhedron(p, act) != qc) return std::nullopt;
  return act;
}

// Lattice charts and smoothness ----------------------------------------------

/// An integral affine parametrization y -> origin + basis * y of the affine
/// hull of a polyhedron, where the columns of basis are a Z-basis of the
/// direction space intersected with Z^n.
struct AffineHullChart {
  RationalVector origin;
  IntegerMatrix basis;         ///< n x d
  IntegerMatrix left_inverse;  ///< d x n, left_inverse * basis = I

  IntegralAffineMap to_ambient() const { return IntegralAffineMap(basis, origin); }
  IntegralAffineMap from_ambient() const {
    RationalVector t = multiply(left_inverse, origin);
    for (auto& x : t) x = -x;
    return IntegralAffineMap(left_inverse, t);
  }
  std::size_t dim() const { return basis.cols(); }
};

inline AffineHullChart affine_hull_chart(const Polyhedron& input) {
  auto p = canonicalize(input);
  if (p.is_empty_flagged()) throw InvalidArgument("affine_hull_chart: empty polyhedron");
  const std::size_t n = p.ambient_dim();
  IntegerMatrix e(0, n);
  RationalMatrix er(0, n + 1);
  for (const auto& c : p.equalities()) {
    e.append_row(c.normal);
    RationalVector row = to_rational(c.normal);
    row.push_back(c.rhs);
    er.append_row(row);
  }
  AffineHullChart chart;
  chart.origin.assign(n, Rational(0));
  if (er.rows()) {
    auto piv = rref_in_place(er, n);
    for (std::size_t r = 0; r < piv.size(); ++r) chart.origin[piv[r]] = er(r, n);
  }
  IntegerMatrix k_rows = integer_kernel_basis(e);  // d x n
  chart.basis = k_rows.transpose();
  const std::size_t d = k_rows.rows();
  if (d == 0) {
    chart.basis = IntegerMatrix(n, 0);
    chart.left_inverse = IntegerMatrix(0, n);
    return chart;
  }
  IntegerMatrix full = extend_to_unimodular_basis(k_rows);  // last d rows are k_rows
  IntegerMatrix inv = unimodular_inverse(full);
  chart.left_inverse = IntegerMatrix(d, n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < n; ++j) chart.left_inverse(i, j) = inv(j, n - d + i);
  return chart;
}

/// The polyhedron p (canonical) expressed in its own affine hull chart,
/// where it is full dimensional.
inline Polyhedron in_chart(const Polyhedron& p, const AffineHullChart& chart) {
  return preimage(p, chart.to_ambient());
}

/// Cone at the origin that p (canonical, nonempty) looks like near a
/// relative interior point of the face with the given active set.
inline Polyhedron tangent_cone(const Polyhedron& p, const std::vector<std::size_t>& active) {
  Polyhedron c(p.ambient_dim());
  for (auto i : active) c.add_inequality(p.inequalities()[i].normal, 0);
  for (const auto& e : p.equalities()) c.add_equality(e.normal, 0);
  return canonicalize(c);
}

/// True iff the cone is unimodularly [0,inf)^k x R^(n-k) with respect to
/// the lattice of its linear span.  Throws unless every constant is zero.
inline bool is_smooth_cone(const Polyhedron& input) {
  auto p = canonicalize(input);
  if (p.is_empty_flagged()) throw InvalidArgument("is_smooth_cone: empty polyhedron");
  for (const auto& c : p.inequalities())
    if (c.rhs != 0) throw InvalidArgument("is_smooth_cone: not a cone at the origin");
  for (const auto& c : p.equalities())
    if (c.rhs != 0) throw InvalidArgument("is_smooth_cone: not a cone at the origin");
  if (p.inequalities().empty()) return true;
  IntegerMatrix eq(0, p.ambient_dim());
  for (const auto& c : p.equalities()) eq.append_row(c.normal);
  IntegerMatrix k = integer_kernel_basis(eq).transpose();  // n x d
  IntegerMatrix restricted(0, k.cols());
  for (const auto& c : p.inequalities()) {
    IntegerVector r = left_multiply(c.normal, k);
    Integer g = content(r);
    for (auto& x : r) x /= g;
    restricted.append_row(r);
  }
  return is_integral_basis_of_saturated_subspace(restricted);
}

/// Local model at every face is smooth.
inline bool is_locally_smooth(const Polyhedron& input) {
  auto p = canonicalize(input);
  if (p.is_empty_flagged()) return false;
  if (p.inequalities().empty()) return true;
  IntegerMatrix eq(0, p.ambient_dim());
  for (const auto& c : p.equalities()) eq.append_row(c.normal);
  IntegerMatrix k = integer_kernel_basis(eq).transpose();
  auto fl = face_lattice(p);
  for (const auto& f : fl.faces) {
    IntegerMatrix restricted(0, k.cols());
    for (auto i : f.active) {
      IntegerVector r = left_multiply(p.inequalities()[i].normal, k);
      Integer g = content(r);
      for (auto& x : r) x /= g;
      restricted.append_row(r);
    }
    if (!is_integral_basis_of_saturated_subspace(restricted)) return false;
  }
  return true;
}

}  // namespace exploded
