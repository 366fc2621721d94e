#pragma once

// Small named complexes used as examples and test fixtures.

#include "exploded/affine_complex.hpp"
#include "exploded/moduli.hpp"
#include "exploded/tropical.hpp"

namespace exploded::datasets {

inline AffineComplex point() {
  AffineComplex c;
  c.add_stratum("pt", Polyhedron(0));
  return c;
}

/// The segment [lo, hi] with its two endpoints.
inline AffineComplex interval(const Rational& lo, const Rational& hi, const std::string& lo_id = "lo",
                              const std::string& hi_id = "hi", const std::string& edge_id = "I") {
  AffineComplex c;
  Polyhedron seg(1);
  seg.add_inequality({1}, lo).add_inequality({-1}, -hi);
  c.add_stratum(edge_id, seg);
  c.add_stratum(lo_id, Polyhedron(0));
  c.add_stratum(hi_id, Polyhedron(0));
  c.add_inclusion(lo_id, edge_id, IntegralAffineMap(IntegerMatrix(1, 0), RationalVector{lo}));
  c.add_inclusion(hi_id, edge_id, IntegralAffineMap(IntegerMatrix(1, 0), RationalVector{hi}));
  return c;
}

/// [0,inf) with its endpoint.
inline AffineComplex ray(const std::string& ray_id = "ray", const std::string& vertex_id = "0") {
  AffineComplex c;
  c.add_stratum(ray_id, Polyhedron::orthant(1));
  c.add_stratum(vertex_id, Polyhedron(0));
  c.add_inclusion(vertex_id, ray_id, IntegralAffineMap(IntegerMatrix(1, 0), RationalVector{0}));
  return c;
}

/// Base of the symplectic sum degeneration: [1,2] with fibers M1 and M2 at
/// the ends and the normal bundle of N over the interior.
inline AffineComplex symplectic_sum() {
  AffineComplex c;
  Polyhedron seg(1);
  seg.add_inequality({1}, 1).add_inequality({-1}, -2);
  c.add_stratum("[1,2]", seg, false, "ℂ*⋊N");
  c.add_stratum("1", Polyhedron(0), false, "M₁");
  c.add_stratum("2", Polyhedron(0), false, "M₂");
  c.add_inclusion("1", "[1,2]", IntegralAffineMap(IntegerMatrix(1, 0), RationalVector{1}));
  c.add_inclusion("2", "[1,2]", IntegralAffineMap(IntegerMatrix(1, 0), RationalVector{2}));
  return c;
}

/// [0,inf)^2 with its four face strata.
inline AffineComplex quadrant() {
  AffineComplex c;
  c.add_stratum("Q", Polyhedron::orthant(2));
  c.add_stratum("X", Polyhedron::orthant(1));
  c.add_stratum("Y", Polyhedron::orthant(1));
  c.add_stratum("O", Polyhedron(0));
  RationalVector z2{0, 0};
  c.add_inclusion("X", "Q", IntegralAffineMap(IntegerMatrix{{1}, {0}}, z2));
  c.add_inclusion("Y", "Q", IntegralAffineMap(IntegerMatrix{{0}, {1}}, z2));
  c.add_inclusion("O", "Q", IntegralAffineMap(IntegerMatrix(2, 0), z2));
  c.add_inclusion("O", "X", IntegralAffineMap(IntegerMatrix(1, 0), RationalVector{0}));
  c.add_inclusion("O", "Y", IntegralAffineMap(IntegerMatrix(1, 0), RationalVector{0}));
  return c;
}

/// Moment triangle {0 <= h1, 0 <= h2, h1 + h2 <= size} of the projective
/// plane, with its 3 edges and 3 vertices.
inline AffineComplex cp2_triangle(const Rational& size = 5) {
  AffineComplex c;
  Polyhedron tri(2);
  tri.add_inequality({1, 0}, 0).add_inequality({0, 1}, 0).add_inequality({-1, -1}, -size);
  c.add_stratum("T", tri, false, "(ℂ*)²");
  Polyhedron seg(1);
  seg.add_inequality({1}, 0).add_inequality({-1}, -size);
  for (const char* e : {"E0", "E1", "E2"}) c.add_stratum(e, seg, false, "ℂ*");
  for (const char* v : {"V0", "V1", "V2"}) c.add_stratum(v, Polyhedron(0), false, "pt");
  // E0: h1 = 0, E1: h2 = 0, E2: h1 + h2 = size.
  c.add_inclusion("E0", "T", IntegralAffineMap(IntegerMatrix{{0}, {1}}, RationalVector{0, 0}));
  c.add_inclusion("E1", "T", IntegralAffineMap(IntegerMatrix{{1}, {0}}, RationalVector{0, 0}));
  c.add_inclusion("E2", "T", IntegralAffineMap(IntegerMatrix{{1}, {-1}}, RationalVector{0, size}));
  auto pt = [](const Rational& a, const Rational& b) {
    return IntegralAffineMap(IntegerMatrix(2, 0), RationalVector{a, b});
  };
  auto at = [](const Rational& t) { return IntegralAffineMap(IntegerMatrix(1, 0), RationalVector{t}); };
  c.add_inclusion("V0", "T", pt(0, 0));
  c.add_inclusion("V1", "T", pt(size, 0));
  c.add_inclusion("V2", "T", pt(0, size));
  c.add_inclusion("V0", "E0", at(0));
  c.add_inclusion("V2", "E0", at(size));
  c.add_inclusion("V0", "E1", at(0));
  c.add_inclusion("V1", "E1", at(size));
  c.add_inclusion("V1", "E2", at(size));
  c.add_inclusion("V2", "E2", at(0));
  return c;
}

/// Base of the moduli space of stable four-pointed genus zero curves: a
/// vertex with three rays.
inline AffineComplex m04() { return as_affine_complex(4); }
inline AffineComplex m05() { return as_affine_complex(5); }

/// A trivalent tropical curve in R^2 shaped like a triangle with three
/// outgoing legs: sides along (1,0), (-1,1), (0,-1).
inline TropicalGraph triangle_curve(const Rational& side = 1) {
  TropicalGraph g;
  g.n = 2;
  g.add_vertex("R").add_vertex("Q").add_vertex("P");
  g.add_edge("RQ", "R", "Q", EdgeLength::finite(side), {1, 0});
  g.add_edge("QP", "Q", "P", EdgeLength::finite(side), {-1, 1});
  g.add_edge("PR", "P", "R", EdgeLength::finite(side), {0, -1});
  g.add_leg("r", "R", {-1, -1});
  g.add_leg("q", "Q", {2, -1});
  g.add_leg("p", "P", {-1, 2});
  return g;
}

}  // namespace exploded::datasets
