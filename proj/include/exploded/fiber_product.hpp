#pragma once

// Fiber products of stratified integral affine maps, computed on bases:
// each pair of strata over a common target stratum contributes the slice
// {(a,b) : f(a) = g(b)} of their product, kept when it meets the product of
// relative interiors.

#include "exploded/affine_complex.hpp"

#include <variant>

namespace exploded {

struct FiberProductResult {
  AffineComplex complex;
  StratifiedMap to_a;
  StratifiedMap to_b;
  bool hypothesis_ok = true;
};

namespace detail {

inline std::string pair_id(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

// Constraints of p placed on coordinates [offset, offset + p.dim) of R^total.
inline void embed_constraints(std::vector<LinearConstraint>& out, const Polyhedron& p, std::size_t offset,
                              std::size_t total, bool strict) {
  for (const auto& c : p.as_constraints(strict)) {
    RationalVector row(total, Rational(0));
    for (std::size_t i = 0; i < c.coeffs.size(); ++i) row[offset + i] = c.coeffs[i];
    out.push_back({row, c.rel, c.rhs});
  }
}

// (a, b) -> (alpha(a), beta(b)).
inline IntegralAffineMap product_map(const IntegralAffineMap& alpha, const IntegralAffineMap& beta) {
  IntegerMatrix lin(alpha.target_dim() + beta.target_dim(), alpha.source_dim() + beta.source_dim());
  for (std::size_t i = 0; i < alpha.target_dim(); ++i)
    for (std::size_t j = 0; j < alpha.source_dim(); ++j) lin(i, j) = alpha.linear(i, j);
  for (std::size_t i = 0; i < beta.target_dim(); ++i)
    for (std::size_t j = 0; j < beta.source_dim(); ++j)
      lin(alpha.target_dim() + i, alpha.source_dim() + j) = beta.linear(i, j);
  RationalVector t(alpha.translation);
  t.insert(t.end(), beta.translation.begin(), beta.translation.end());
  return IntegralAffineMap(lin, t);
}

inline IntegralAffineMap coordinate_slice(std::size_t offset, std::size_t count, std::size_t total) {
  IntegerMatrix lin(count, total);
  for (std::size_t i = 0; i < count; ++i) lin(i, offset + i) = 1;
  return IntegralAffineMap(lin, RationalVector(count, Rational(0)));
}

struct ProductPiece {
  std::string id, a, b;
  std::size_t da = 0, db = 0;
  AffineHullChart chart;
};

}  // namespace detail

/// Fiber product of f : A -> C and g : B -> C on bases.  Strata whose local
/// cones are not unimodular are flagged generalized and clear hypothesis_ok.
inline FiberProductResult base_fiber_product(const StratifiedMap& f, const AffineComplex& a, const StratifiedMap& g,
                                             const AffineComplex& b, const AffineComplex& c) {
  ValidationReport rep;
  rep.merge(validate_complex(a), "A: ");
  rep.merge(validate_complex(b), "B: ");
  rep.merge(validate_complex(c), "C: ");
  rep.merge(validate_map(f, a, c), "f: ");
  rep.merge(validate_map(g, b, c), "g: ");
  if (!rep.ok()) throw ValidationError(rep);

  FiberProductResult out;
  std::map<std::pair<std::string, std::string>, detail::ProductPiece> pieces;
  for (const auto& sa : a.strata())
    for (const auto& sb : b.strata()) {
      if (f.functor.at(sa.id) != g.functor.at(sb.id)) continue;
      const auto& fa = f.maps.at(sa.id);
      const auto& gb = g.maps.at(sb.id);
      const std::size_t total = sa.dim + sb.dim;
      std::vector<LinearConstraint> sys;
      detail::embed_constraints(sys, sa.shape, 0, total, true);
      detail::embed_constraints(sys, sb.shape, sa.dim, total, true);
      Polyhedron slice(total);
      for (const auto& ineq : sa.shape.inequalities()) {
        IntegerVector row(total, Integer(0));
        std::copy(ineq.normal.begin(), ineq.normal.end(), row.begin());
        slice.add_inequality(row, ineq.rhs);
      }
      for (const auto& ineq : sb.shape.inequalities()) {
        IntegerVector row(total, Integer(0));
        std::copy(ineq.normal.begin(), ineq.normal.end(), row.begin() + static_cast<std::ptrdiff_t>(sa.dim));
        slice.add_inequality(row, ineq.rhs);
      }
      for (std::size_t i = 0; i < fa.target_dim(); ++i) {
        IntegerVector row(total, Integer(0));
        for (std::size_t j = 0; j < sa.dim; ++j) row[j] = fa.linear(i, j);
        for (std::size_t j = 0; j < sb.dim; ++j) row[sa.dim + j] = -gb.linear(i, j);
        Rational rhs = gb.translation[i] - fa.translation[i];
        slice.add_equality(row, rhs);
        sys.push_back({to_rational(row), Relation::Equal, rhs});
      }
      if (!is_feasible(sys, total)) continue;
      detail::ProductPiece piece;
      piece.id = detail::pair_id(sa.id, sb.id);
      piece.a = sa.id;
      piece.b = sb.id;
      piece.da = sa.dim;
      piece.db = sb.dim;
      piece.chart = affine_hull_chart(slice);
      auto shape = in_chart(slice, piece.chart);
      bool smooth = is_locally_smooth(shape);
      if (!smooth) out.hypothesis_ok = false;
      std::string fiber;
      if (!sa.fiber.empty() || !sb.fiber.empty()) fiber = sa.fiber + " x_C " + sb.fiber;
      out.complex.add_stratum(piece.id, shape, !smooth, fiber);
      auto to_amb = piece.chart.to_ambient();
      out.to_a.functor[piece.id] = sa.id;
      out.to_a.maps[piece.id] = compose(detail::coordinate_slice(0, sa.dim, total), to_amb);
      out.to_b.functor[piece.id] = sb.id;
      out.to_b.maps[piece.id] = compose(detail::coordinate_slice(sa.dim, sb.dim, total), to_amb);
      pieces.emplace(std::make_pair(sa.id, sb.id), std::move(piece));
    }

  // Inclusions: products of inclusions (or identities) of the factors that
  // carry one slice into the other.
  auto arrows = [](const AffineComplex& x, const std::string& id) {
    std::vector<std::pair<std::string, IntegralAffineMap>> outv;
    outv.push_back({id, IntegralAffineMap::identity(x.stratum(id).dim)});
    for (const auto& inc : x.inclusions())
      if (inc.source == id) outv.push_back({inc.target, inc.map});
    return outv;
  };
  for (const auto& [key, small] : pieces) {
    auto from_small = small.chart.to_ambient();
    auto shape = out.complex.stratum(small.id).shape;
    for (const auto& [ta, ma] : arrows(a, small.a))
      for (const auto& [tb, mb] : arrows(b, small.b)) {
        if (ta == small.a && tb == small.b) continue;
        auto it = pieces.find({ta, tb});
        if (it == pieces.end()) continue;
        const auto& big = it->second;
        auto m = compose(big.chart.from_ambient(), compose(detail::product_map(ma, mb), from_small));
        // the product map must land in the affine hull of the bigger slice
        if (compose(big.chart.to_ambient(), m) != compose(detail::product_map(ma, mb), from_small)) continue;
        if (!contains(preimage(out.complex.stratum(big.id).shape, m), shape)) continue;
        out.complex.add_inclusion(small.id, big.id, m);
      }
  }
  return out;
}

// Universal property ----------------------------------------------------------

struct UniversalPropertyFailure {
  std::string stratum;   ///< stratum of the test complex where it fails
  std::string reason;
};

using FactoringResult = std::variant<StratifiedMap, UniversalPropertyFailure>;

/// Given p : D -> A and q : D -> B with f p = g q, builds the unique map
/// D -> fiber product through which both factor.
inline FactoringResult check_universal_property(const FiberProductResult& fp, const AffineComplex& d,
                                                const StratifiedMap& p, const StratifiedMap& q,
                                                const StratifiedMap& f, const StratifiedMap& g) {
  for (const auto& s : d.strata()) {
    auto lhs = compose(f, p), rhs = compose(g, q);
    if (lhs.functor.at(s.id) != rhs.functor.at(s.id) || lhs.maps.at(s.id) != rhs.maps.at(s.id))
      return UniversalPropertyFailure{s.id, "the test square does not commute"};
  }
  // Projections must be jointly injective for the factoring to be unique.
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& s : fp.complex.strata()) {
    if (!seen.insert({fp.to_a.functor.at(s.id), fp.to_b.functor.at(s.id)}).second)
      return UniversalPropertyFailure{s.id, "two strata of the fiber product over the same pair"};
    auto stacked = vstack(fp.to_a.maps.at(s.id).linear, fp.to_b.maps.at(s.id).linear);
    if (rank(stacked) != s.dim) return UniversalPropertyFailure{s.id, "projections are not jointly injective"};
  }
  StratifiedMap h;
  for (const auto& s : d.strata()) {
    auto target = detail::pair_id(p.functor.at(s.id), q.functor.at(s.id));
    if (!fp.complex.has_stratum(target)) return UniversalPropertyFailure{s.id, "no stratum " + target};
    const auto& pa = p.maps.at(s.id);
    const auto& qb = q.maps.at(s.id);
    auto joint = IntegralAffineMap(vstack(pa.linear, qb.linear), [&] {
      RationalVector t(pa.translation);
      t.insert(t.end(), qb.translation.begin(), qb.translation.end());
      return t;
    }());
    // Solve to_a(x) = p(y), to_b(x) = q(y) through the stacked projections.
    auto proj = IntegralAffineMap(vstack(fp.to_a.maps.at(target).linear, fp.to_b.maps.at(target).linear), [&] {
      RationalVector t(fp.to_a.maps.at(target).translation);
      const auto& tb = fp.to_b.maps.at(target).translation;
      t.insert(t.end(), tb.begin(), tb.end());
      return t;
    }());
    auto hs = compose(integral_left_inverse(proj), joint);
    if (compose(proj, hs) != joint) return UniversalPropertyFailure{s.id, "image leaves the fiber product stratum"};
    h.functor[s.id] = target;
    h.maps[s.id] = hs;
  }
  auto rep = validate_map(h, d, fp.complex);
  if (!rep.ok()) return UniversalPropertyFailure{rep.diagnostics().front().subject, "factoring map invalid: " +
                                                                                        rep.diagnostics().front().code};
  if (!(compose(fp.to_a, h) == p) || !(compose(fp.to_b, h) == q))
    return UniversalPropertyFailure{"", "factoring map does not reproduce the test maps"};
  return h;
}

// Transversality --------------------------------------------------------------

/// Affine-level transversality: over each stratum pair with nonempty slice,
/// the differentials of the strata around a and around b (those mapping
/// into the same target stratum) together span the target stratum.
inline ValidationReport is_transverse_base(const StratifiedMap& f, const AffineComplex& a, const StratifiedMap& g,
                                           const AffineComplex& b, const AffineComplex& c) {
  ValidationReport rep;
  auto fp = base_fiber_product(f, a, g, b, c);
  auto star_span = [](const StratifiedMap& m, const AffineComplex& x, const std::string& id, const std::string& target) {
    IntegerMatrix cols = m.maps.at(id).linear;
    for (const auto& inc : x.inclusions())
      if (inc.source == id && m.functor.at(inc.target) == target) cols = hstack(cols, m.maps.at(inc.target).linear);
    return cols;
  };
  for (const auto& s : fp.complex.strata()) {
    const auto& ida = fp.to_a.functor.at(s.id);
    const auto& idb = fp.to_b.functor.at(s.id);
    const auto& target = f.functor.at(ida);
    auto span = hstack(star_span(f, a, ida, target), star_span(g, b, idb, target));
    auto r = rank(span);
    if (r != c.stratum(target).dim)
      rep.error("not-transverse", s.id,
                "differentials span rank " + std::to_string(r) + " of " + std::to_string(c.stratum(target).dim));
  }
  return rep;
}

}  // namespace exploded
