#pragma once

// Integral subdivisions of stratified bases and the refinements they
// induce: cell charts, validation, refined exploded chart data, lifting of
// maps through a subdivision and common refinements.

#include "exploded/explosion.hpp"

#include <variant>

namespace exploded {

enum class SubdivisionMode { Strict, Permissive };

/// fine -> coarse, together with the cells (in the chart of each coarse
/// stratum) that produced it.
struct Subdivision {
  AffineComplex coarse;
  AffineComplex fine;
  StratifiedMap map;
  SubdivisionMode mode = SubdivisionMode::Strict;
  std::map<std::string, std::vector<Polyhedron>> cells;
};

namespace detail {

inline void sort_unique(std::vector<Polyhedron>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Faces of the cells whose relative interior lies in the relative interior
// of the stratum shape; sorted by dimension descending, then canonically.
inline std::vector<Polyhedron> interior_pieces(const Polyhedron& shape, const std::vector<Polyhedron>& cells) {
  std::vector<Polyhedron> out;
  for (const auto& cell : cells) {
    for (const auto& f : face_lattice(cell).faces)
      if (in_relative_interior(shape, relative_interior_point(f.polyhedron))) out.push_back(f.polyhedron);
  }
  sort_unique(out);
  std::stable_sort(out.begin(), out.end(),
                   [](const Polyhedron& a, const Polyhedron& b) { return dimension(a) > dimension(b); });
  return out;
}

// Coarse strata ordered by dimension descending, then id.
inline std::vector<const Stratum*> top_down(const AffineComplex& c) {
  std::vector<const Stratum*> order;
  for (const auto& s : c.strata()) order.push_back(&s);
  std::sort(order.begin(), order.end(), [](const Stratum* a, const Stratum* b) {
    if (a->dim != b->dim) return a->dim > b->dim;
    return a->id < b->id;
  });
  return order;
}

struct Piece {
  std::string id;
  std::string coarse;
  Polyhedron polyhedron;  // in the coarse chart
  AffineHullChart chart;
};

}  // namespace detail

/// Builds the fine complex of the subdivision whose cells in each coarse
/// stratum are given.  Strata without explicit cells inherit the cells cut
/// out on them by the cells of any stratum they include into (the union, if
/// parents disagree); strata with neither keep a single cell equal to their
/// shape.
inline Subdivision make_subdivision(const AffineComplex& coarse,
                                    const std::map<std::string, std::vector<Polyhedron>>& given,
                                    SubdivisionMode mode = SubdivisionMode::Strict) {
  Subdivision out;
  out.coarse = coarse;
  out.mode = mode;
  for (const auto& [id, cells] : given)
    if (!coarse.has_stratum(id)) throw InvalidArgument("cells given for unknown stratum '" + id + "'");

  for (const auto* s : detail::top_down(coarse)) {
    auto it = given.find(s->id);
    if (it != given.end()) {
      std::vector<Polyhedron> cells;
      for (const auto& c : it->second) {
        if (c.ambient_dim() != s->dim) throw DimensionMismatch("cell of '" + s->id + "' has the wrong dimension");
        cells.push_back(canonicalize(c));
      }
      detail::sort_unique(cells);
      out.cells[s->id] = std::move(cells);
      continue;
    }
    std::optional<std::vector<Polyhedron>> induced;
    for (const auto& inc : coarse.inclusions()) {
      if (inc.source != s->id) continue;
      auto parent = out.cells.find(inc.target);
      if (parent == out.cells.end()) continue;
      std::vector<Polyhedron> cells;
      for (const auto& cell : parent->second) {
        auto pre = intersect(preimage(cell, inc.map), s->shape);
        if (dimension(pre) == static_cast<long>(s->dim)) cells.push_back(pre);
      }
      // Disagreeing parents leave the union behind; validation reports it.
      if (induced) cells.insert(cells.end(), induced->begin(), induced->end());
      detail::sort_unique(cells);
      induced = std::move(cells);
    }
    out.cells[s->id] = induced ? *induced : std::vector<Polyhedron>{s->shape};
  }

  std::vector<detail::Piece> pieces;
  for (const auto* s : detail::top_down(coarse)) {
    auto polys = detail::interior_pieces(s->shape, out.cells[s->id]);
    for (std::size_t i = 0; i < polys.size(); ++i) {
      std::string id = polys.size() == 1 ? s->id : s->id + "#" + std::to_string(i);
      auto chart = affine_hull_chart(polys[i]);
      pieces.push_back({id, s->id, polys[i], chart});
    }
  }
  for (const auto& p : pieces) {
    auto local = in_chart(p.polyhedron, p.chart);
    bool smooth = is_locally_smooth(local);
    out.fine.add_stratum(Stratum{p.id, p.chart.dim(), local, !smooth, coarse.stratum(p.coarse).fiber});
    out.map.functor[p.id] = p.coarse;
    out.map.maps[p.id] = p.chart.to_ambient();
  }

  // Coarse morphisms: identities and the coarse inclusions.
  std::vector<Inclusion> morphisms;
  for (const auto& s : coarse.strata()) morphisms.push_back({s.id, s.id, IntegralAffineMap::identity(s.dim)});
  for (const auto& inc : coarse.inclusions()) morphisms.push_back(inc);
  for (const auto& a : pieces)
    for (const auto& kappa : morphisms) {
      if (kappa.source != a.coarse) continue;
      auto img = image_under(a.polyhedron, kappa.map);
      for (const auto& b : pieces) {
        if (b.coarse != kappa.target || &a == &b) continue;
        if (dimension(b.polyhedron) <= dimension(img)) continue;
        if (!as_face_of(b.polyhedron, img)) continue;
        auto m = compose(b.chart.from_ambient(), compose(kappa.map, a.chart.to_ambient()));
        out.fine.add_inclusion(a.id, b.id, m);
      }
    }
  return out;
}

inline Subdivision trivial_subdivision(const AffineComplex& c) { return make_subdivision(c, {}); }

/// Checks both complexes and the map, the integral isomorphism condition
/// on differentials, that the cells of each coarse stratum cover it and
/// meet in common faces, that the fine strata are exactly the cell faces
/// interior to each coarse stratum, and the saturated-basis condition on
/// the cells (an error in strict mode, a warning in permissive mode).
inline ValidationReport validate_subdivision(const Subdivision& s) {
  ValidationReport rep;
  rep.merge(validate_complex(s.coarse), "coarse: ");
  rep.merge(validate_complex(s.fine), "fine: ");
  if (!rep.ok()) return rep;
  rep.merge(validate_map(s.map, s.fine, s.coarse), "map: ");
  if (!rep.ok()) return rep;

  for (const auto& [id, m] : s.map.maps)
    if (!detail::saturated_injective(m.linear))
      rep.error("non-integral-differential", id, "differential is not an integral isomorphism onto its image");

  for (const auto& c : s.coarse.strata()) {
    auto it = s.cells.find(c.id);
    if (it == s.cells.end() || it->second.empty()) {
      rep.error("no-cells", c.id, "no cells recorded for this stratum");
      continue;
    }
    const auto& cells = it->second;
    bool shape_ok = true;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      std::string cid = c.id + "/cell" + std::to_string(i);
      if (dimension(cells[i]) != static_cast<long>(c.dim)) {
        rep.error("cell-not-full-dimensional", cid, "cell is not full dimensional");
        shape_ok = false;
        continue;
      }
      if (!contains(c.shape, cells[i])) {
        rep.error("cell-outside-stratum", cid, "cell leaves the stratum");
        shape_ok = false;
        continue;
      }
      if (!is_locally_smooth(cells[i])) {
        if (s.mode == SubdivisionMode::Strict)
          rep.error("non-saturated-cell", cid, "cell normals do not form an integral basis of a saturated subspace");
        else
          rep.warning("non-saturated-cell", cid, "cell normals do not form an integral basis of a saturated subspace");
      }
    }
    if (!shape_ok) continue;

    for (std::size_t i = 0; i < cells.size(); ++i)
      for (std::size_t j = i + 1; j < cells.size(); ++j) {
        auto both = intersect(cells[i], cells[j]);
        if (both.is_empty_flagged()) continue;
        if (!as_face_of(cells[i], both) || !as_face_of(cells[j], both) || dimension(both) == static_cast<long>(c.dim))
          rep.error("cells-overlap", c.id + "/cell" + std::to_string(i) + "," + std::to_string(j),
                    "cells do not meet in a common face");
      }

    // Cover: every facet interior to the stratum is shared by exactly one
    // other cell.
    for (std::size_t i = 0; i < cells.size(); ++i) {
      for (const auto& f : face_lattice(cells[i]).faces) {
        if (f.dim + 1 != static_cast<long>(c.dim)) continue;
        if (!in_relative_interior(c.shape, relative_interior_point(f.polyhedron))) continue;
        std::size_t partners = 0;
        for (std::size_t j = 0; j < cells.size(); ++j)
          if (j != i && as_face_of(cells[j], f.polyhedron)) ++partners;
        if (partners != 1)
          rep.error(partners == 0 ? "cover-gap" : "cover-overlap", c.id + "/cell" + std::to_string(i),
                    "an interior facet is shared by " + std::to_string(partners) + " other cells");
      }
    }

    auto expected = detail::interior_pieces(c.shape, cells);
    std::vector<Polyhedron> actual;
    for (const auto& [fid, cid] : s.map.functor)
      if (cid == c.id) actual.push_back(image_under(s.fine.stratum(fid).shape, s.map.maps.at(fid)));
    detail::sort_unique(actual);
    auto expected_sorted = expected;
    detail::sort_unique(expected_sorted);
    if (actual != expected_sorted)
      rep.error("fine-strata-mismatch", c.id, "fine strata over this stratum are not the interior cell faces");
  }
  return rep;
}

// Cell charts -----------------------------------------------------------------

struct CellChart {
  IntegerMatrix alphas;  ///< cell normals, rows
  IntegerMatrix betas;   ///< complementary covectors, rows
  ChartSignature roles;  ///< x.beta affine, x.alpha boundary, smooth unchanged

  /// [betas; alphas], unimodular.
  IntegerMatrix transform() const { return vstack(betas, alphas); }

  friend bool operator==(const CellChart& a, const CellChart& b) {
    return a.alphas == b.alphas && a.betas == b.betas && a.roles == b.roles;
  }
};

namespace detail {

// Complement of saturated covectors to a unimodular basis, preferring
// standard basis covectors (first lexicographic choice) when possible.
inline IntegerMatrix complement_rows(const IntegerMatrix& alphas, std::size_t n) {
  const std::size_t r = alphas.rows();
  if (r == n) return IntegerMatrix(0, n);
  std::vector<std::size_t> pick;
  std::optional<IntegerMatrix> found;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (found) return;
    if (pick.size() == n - r) {
      IntegerMatrix b(0, n);
      for (auto i : pick) {
        IntegerVector e(n, Integer(0));
        e[i] = 1;
        b.append_row(e);
      }
      if (abs_value(determinant(vstack(b, alphas))) == 1) found = b;
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  if (n <= 8) rec(rec, 0);
  if (found) return *found;
  auto full = extend_to_unimodular_basis(alphas);
  return full.select_rows(0, n - r);
}

}  // namespace detail

/// Chart of the cell {y.alpha_j >= 0} of the explosion base of a chart with
/// the given signature; normals live in Z^(affine+boundary).
inline CellChart cell_chart(const IntegerMatrix& alphas, const ChartSignature& sig) {
  const std::size_t n = sig.affine + sig.boundary;
  if (alphas.cols() != n && !(alphas.rows() == 0))
    throw DimensionMismatch("cell_chart: normals must have length affine+boundary");
  IntegerMatrix a = alphas.rows() == 0 ? IntegerMatrix(0, n) : alphas;
  if (!is_integral_basis_of_saturated_subspace(a))
    throw InvalidArgument("cell_chart: normals are not an integral basis of a saturated subspace");
  CellChart out;
  out.alphas = a;
  out.betas = detail::complement_rows(a, n);
  out.roles = {n - a.rows(), a.rows(), sig.smooth};
  return out;
}

// Refinement of exploded chart data ------------------------------------------

struct ChartTransition {
  std::string from;
  std::string to;
  IntegerMatrix matrix;  ///< new affine/boundary exponents = matrix * old ones
};

struct RefinedChart {
  ExplodedChart chart;
  /// Cell chart used over each fine stratum (normals in fiber affine
  /// coordinates of the coarse stratum); absent over non-smooth strata.
  std::map<std::string, CellChart> cell_charts;
  std::vector<ChartTransition> transitions;
};

/// The exploded chart data over the fine complex: each fine stratum G in a
/// coarse stratum C with fiber roles (m, k, n) gets roles (m - r, k + r, n)
/// where r is the codimension of G in C, and the action induced through the
/// cell chart of the first cell containing G.
inline RefinedChart refine(const ExplodedChart& e, const Subdivision& s) {
  if (!(e.base == s.coarse)) throw InvalidArgument("refine: chart base differs from the coarse complex");
  auto rep = validate_subdivision(s);
  if (!rep.ok()) throw ValidationError(rep);

  RefinedChart out;
  out.chart.signature = e.signature;
  out.chart.base = s.fine;
  std::map<std::string, IntegerMatrix> transform;
  for (const auto& g : s.fine.strata()) {
    const auto& cid = s.map.functor.at(g.id);
    const auto& c = s.coarse.stratum(cid);
    const auto& sig_c = e.fiber_signatures.at(cid);
    const auto& act_c = e.actions.at(cid);
    const std::size_t r = c.dim - g.dim;
    out.chart.fiber_signatures[g.id] = {sig_c.affine - r, sig_c.boundary + r, sig_c.smooth};

    const auto& gmap = s.map.maps.at(g.id);
    auto gimg = image_under(g.shape, gmap);
    const Polyhedron* cell = nullptr;
    for (const auto& cand : s.cells.at(cid))
      if (as_face_of(cand, gimg)) {
        cell = &cand;
        break;
      }
    if (!cell) throw Error("refine: fine stratum '" + g.id + "' is not a face of any cell");
    auto active = tight_set(*cell, gimg);
    IntegerMatrix act_inv = unimodular_inverse(act_c);
    IntegerMatrix alphas(0, sig_c.affine);
    for (auto i : active) alphas.append_row(left_multiply(cell->inequalities()[i].normal, act_inv));
    if (alphas.rows() == r && is_integral_basis_of_saturated_subspace(alphas)) {
      CellChart cc;
      cc.alphas = alphas;
      cc.betas = detail::complement_rows(alphas, sig_c.affine);
      cc.roles = out.chart.fiber_signatures[g.id];
      out.chart.actions[g.id] = cc.betas * act_c * gmap.linear;
      transform[g.id] = cc.transform();
      out.cell_charts[g.id] = std::move(cc);
    } else {
      // Non-smooth local model: no cell chart; the fiber affine coordinates
      // are the chart coordinates of the stratum itself.
      out.chart.actions[g.id] = IntegerMatrix::identity(g.dim);
    }
  }
  for (const auto& inc : s.fine.inclusions()) {
    if (s.map.functor.at(inc.source) != s.map.functor.at(inc.target)) continue;
    auto a = transform.find(inc.source), b = transform.find(inc.target);
    if (a == transform.end() || b == transform.end()) continue;
    out.transitions.push_back({inc.source, inc.target, b->second * unimodular_inverse(a->second)});
  }
  return out;
}

// Lifting maps ----------------------------------------------------------------

/// A source stratum whose image leaves the closure of the fine stratum
/// containing its interior.
struct WallCrossing {
  std::string source_stratum;
  std::string coarse_stratum;
  std::string fine_stratum;    ///< fine stratum containing the image of the interior
  std::string wall;            ///< fine stratum crossed on the way out (fine_stratum itself when the
                               ///< image of the interior already sits on a wall)
  RationalVector from;         ///< image of an interior point, coarse chart
  RationalVector to;           ///< image of the witness, outside fine_stratum
  RationalVector exit_point;   ///< last point of the segment in fine_stratum
  RationalVector witness;      ///< point of the source stratum
};

using LiftResult = std::variant<StratifiedMap, WallCrossing>;

namespace detail {

inline std::string locate_fine(const Subdivision& s, const std::string& coarse, const RationalVector& p) {
  for (const auto& [fid, cid] : s.map.functor) {
    if (cid != coarse) continue;
    const auto& g = s.fine.stratum(fid);
    auto img = image_under(g.shape, s.map.maps.at(fid));
    if (in_relative_interior(img, p)) return fid;
  }
  throw Error("point of '" + coarse + "' lies in no fine stratum");
}

}  // namespace detail

/// The unique lift of f through the subdivision, or a wall certificate.
inline LiftResult lift_map(const StratifiedMap& f, const AffineComplex& src, const Subdivision& s) {
  StratifiedMap lift;
  for (const auto& x : src.strata()) {
    const auto& cid = f.functor.at(x.id);
    const auto& fx = f.maps.at(x.id);
    auto p = fx(relative_interior_point(x.shape));
    auto gid = detail::locate_fine(s, cid, p);
    const auto& g = s.fine.stratum(gid);
    auto gimg = image_under(g.shape, s.map.maps.at(gid));
    if (contains(preimage(gimg, fx), x.shape)) {
      lift.functor[x.id] = gid;
      lift.maps[x.id] = compose(integral_left_inverse(s.map.maps.at(gid)), fx);
      continue;
    }
    // Find a point of x mapped outside the closed fine stratum.
    auto base = x.shape.as_constraints();
    std::optional<RationalVector> q;
    auto try_violation = [&](const IntegerVector& normal, const Rational& rhs) {
      if (q) return;
      auto sys = base;
      RationalVector a = left_multiply(to_rational(normal), to_rational(fx.linear));
      for (auto& v : a) v = -v;
      sys.push_back({a, Relation::Greater, -(rhs - dot(normal, fx.translation))});
      q = find_point(sys, x.dim);
    };
    for (const auto& c : gimg.inequalities()) try_violation(c.normal, c.rhs);
    for (const auto& c : gimg.equalities()) {
      try_violation(c.normal, c.rhs);
      IntegerVector neg = c.normal;
      for (auto& v : neg) v = -v;
      try_violation(neg, -c.rhs);
    }
    if (!q) throw Error("lift_map: inconsistent containment test");
    auto to = fx(*q);
    RationalVector dir(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) dir[i] = to[i] - p[i];
    Rational t = 1;
    for (const auto& c : gimg.equalities())
      if (dot(c.normal, dir) != 0) t = 0;
    for (const auto& c : gimg.inequalities()) {
      Rational slope = dot(c.normal, dir);
      if (slope < 0) t = std::min(t, (dot(c.normal, p) - c.rhs) / -slope);
    }
    RationalVector exit(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) exit[i] = p[i] + t * dir[i];
    WallCrossing w;
    w.source_stratum = x.id;
    w.coarse_stratum = cid;
    w.fine_stratum = gid;
    w.wall = detail::locate_fine(s, cid, exit);
    w.from = p;
    w.to = to;
    w.exit_point = exit;
    w.witness = *q;
    return w;
  }
  return lift;
}

// Common refinement -----------------------------------------------------------

/// Cells are the full-dimensional pairwise intersections of the cells of
/// two subdivisions of the same complex.
inline Subdivision common_refinement(const Subdivision& s1, const Subdivision& s2) {
  if (!(s1.coarse == s2.coarse)) throw InvalidArgument("common_refinement: different coarse complexes");
  std::map<std::string, std::vector<Polyhedron>> cells;
  for (const auto& c : s1.coarse.strata()) {
    std::vector<Polyhedron> out;
    for (const auto& a : s1.cells.at(c.id))
      for (const auto& b : s2.cells.at(c.id)) {
        auto both = intersect(a, b);
        if (dimension(both) == static_cast<long>(c.dim)) out.push_back(both);
      }
    cells[c.id] = std::move(out);
  }
  auto mode = (s1.mode == SubdivisionMode::Strict && s2.mode == SubdivisionMode::Strict) ? SubdivisionMode::Strict
                                                                                        : SubdivisionMode::Permissive;
  return make_subdivision(s1.coarse, cells, mode);
}

/// The subdivision of s1.fine cut out by the cells of s2.
inline Subdivision induced_subdivision(const Subdivision& s1, const Subdivision& s2) {
  if (!(s1.coarse == s2.coarse)) throw InvalidArgument("induced_subdivision: different coarse complexes");
  std::map<std::string, std::vector<Polyhedron>> cells;
  for (const auto& g : s1.fine.strata()) {
    const auto& cid = s1.map.functor.at(g.id);
    const auto& gm = s1.map.maps.at(g.id);
    std::vector<Polyhedron> out;
    for (const auto& b : s2.cells.at(cid)) {
      auto pre = intersect(preimage(b, gm), g.shape);
      if (dimension(pre) == static_cast<long>(g.dim)) out.push_back(pre);
    }
    cells[g.id] = std::move(out);
  }
  return make_subdivision(s1.fine, cells, s1.mode == s2.mode ? s1.mode : SubdivisionMode::Permissive);
}

}  // namespace exploded
