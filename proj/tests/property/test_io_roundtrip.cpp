#include "exploded/datasets.hpp"
#include "exploded/io.hpp"
#include "support/cones.hpp"
#include "support/fiber_cases.hpp"
#include "support/tropical_gen.hpp"

#include <gtest/gtest.h>

using namespace exploded;
using io::json;

namespace {

// Through text, not just through the json value.
template <class T, class Decode>
T through_text(const T& x, Decode decode, const std::string& kind) {
  auto text = io::dump(io::document(kind, io::encode(x)));
  return decode(io::open_document(io::parse_text(text), kind));
}

Integer huge(std::mt19937& rng) {
  Integer v = 1;
  int digits = 5 + static_cast<int>(rng() % 40);
  for (int i = 0; i < digits; ++i) v = v * 10 + static_cast<int>(rng() % 10);
  return rng() % 2 ? v : Integer(-v);
}

Rational random_rational(std::mt19937& rng, bool big) {
  Integer num = big ? huge(rng) : Integer(static_cast<int>(rng() % 19) - 9);
  Integer den = big ? Integer(abs_value(huge(rng)) + 1) : Integer(1 + rng() % 6);
  return Rational(num, den);
}

Polyhedron random_polyhedron(std::mt19937& rng, std::size_t dim, bool big) {
  std::vector<Constraint> ineqs, eqs;
  std::size_t k = rng() % 5;
  for (std::size_t i = 0; i < k; ++i) {
    IntegerVector a(dim);
    for (auto& x : a) x = big && rng() % 3 == 0 ? huge(rng) : Integer(static_cast<int>(rng() % 7) - 3);
    ineqs.push_back({a, random_rational(rng, big)});
  }
  if (rng() % 3 == 0 && dim > 0) {
    IntegerVector a(dim);
    for (auto& x : a) x = static_cast<int>(rng() % 5) - 2;
    eqs.push_back({a, random_rational(rng, false)});
  }
  return Polyhedron(dim, ineqs, eqs);
}

TEST(IoRoundTrip, Polyhedra) {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    auto p = random_polyhedron(rng, rng() % 5, trial % 2 == 1);
    EXPECT_EQ(through_text(p, io::decode_polyhedron, "polyhedron"), p);
    auto c = canonicalize(p);
    EXPECT_EQ(io::decode_polyhedron(io::encode(c)), c);
  }
  EXPECT_TRUE(io::decode_polyhedron(io::encode(Polyhedron::empty_set(3))).is_empty_flagged());
}

TEST(IoRoundTrip, AffineMapsWithBigEntries) {
  std::mt19937 rng(102);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t r = rng() % 4, c = rng() % 4;
    IntegerMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < c; ++k) m(i, k) = huge(rng);
    RationalVector t(r);
    for (auto& x : t) x = random_rational(rng, true);
    IntegralAffineMap f(m, t);
    EXPECT_EQ(io::decode_affine_map(io::parse_text(io::encode(f).dump())), f);
  }
}

TEST(IoRoundTrip, Complexes) {
  std::vector<AffineComplex> cs = {datasets::point(),         datasets::ray(),           datasets::quadrant(),
                                   datasets::symplectic_sum(), datasets::cp2_triangle(3), datasets::m04(),
                                   datasets::m05(),           affine_space_complex(2)};
  for (std::size_t m = 0; m <= 2; ++m)
    for (std::size_t k = 0; k <= 3; ++k) cs.push_back(explode({m, k, 1}).base);
  for (const auto& c : cs) EXPECT_EQ(through_text(c, io::decode_complex, "complex"), c);
}

TEST(IoRoundTrip, ExplodedChartsSubdivisionsAndRefinements) {
  std::mt19937 rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t d = 2 + rng() % 2;
    auto with_affine = explode({1 + rng() % 2, d, rng() % 2});
    EXPECT_EQ(through_text(with_affine, io::decode_exploded_chart, "exploded-chart"), with_affine);
    auto e = explode({0, d, rng() % 2});

    auto fan = support::stellar_fan(d, 1 + rng() % 3, rng);
    auto s = support::subdivide_orthant(e, fan);
    auto s2 = through_text(s, io::decode_subdivision, "subdivision");
    EXPECT_EQ(s2.coarse, s.coarse);
    EXPECT_EQ(s2.fine, s.fine);
    EXPECT_EQ(s2.map.functor, s.map.functor);
    EXPECT_EQ(s2.map.maps, s.map.maps);
    EXPECT_EQ(s2.mode, s.mode);
    EXPECT_EQ(s2.cells, s.cells);

    // Cells alone rebuild the same subdivision.
    json cells_only = {{"coarse", io::encode(s.coarse)}, {"cells", io::encode_cells(s.cells)}};
    auto s3 = io::decode_subdivision(cells_only);
    EXPECT_EQ(s3.fine, s.fine);

    auto r = refine(e, s);
    auto r2 = through_text(r, io::decode_refined_chart, "refined-chart");
    EXPECT_EQ(r2.chart, r.chart);
    EXPECT_EQ(r2.cell_charts, r.cell_charts);
    ASSERT_EQ(r2.transitions.size(), r.transitions.size());
    for (std::size_t i = 0; i < r.transitions.size(); ++i) {
      EXPECT_EQ(r2.transitions[i].from, r.transitions[i].from);
      EXPECT_EQ(r2.transitions[i].to, r.transitions[i].to);
      EXPECT_EQ(r2.transitions[i].matrix, r.transitions[i].matrix);
    }
  }
}

TEST(IoRoundTrip, MapBundles) {
  auto q = datasets::quadrant();
  io::MapBundle b{q, q, StratifiedMap::identity(q)};
  EXPECT_EQ(through_text(b, io::decode_map_bundle, "map"), b);
}

TEST(IoRoundTrip, TropicalGraphsAndRealizations) {
  std::mt19937 rng(104);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 4;
    auto g = support::random_balanced_tree(n, rng() % 13, rng);
    if (trial % 3 == 0) g.metadata["fiber"] = "(C*)^" + std::to_string(n);
    EXPECT_EQ(through_text(g, io::decode_graph, "tropical-graph"), g);
    auto rr = realize(g, {{g.vertices.front(), RationalVector(n, Rational(trial, 3))}});
    if (auto* r = std::get_if<TropicalRealization>(&rr))
      EXPECT_EQ(through_text(*r, io::decode_realization, "tropical-realization"), *r);

    if (!g.edges.empty() && g.edges.front().head) {
      g.edges.front().length = EdgeLength::unknown();
      EXPECT_EQ(through_text(g, io::decode_graph, "tropical-graph"), g);
    }
  }
  for (int trial = 0; trial < 30; ++trial) {
    auto [g, cyc] = support::random_cyclic_graph(2, 4, 2, rng);
    EXPECT_EQ(io::decode_graph(io::encode(g)), g);
    auto& e = g.edges[rng() % g.edges.size()];
    if (e.head) e.length = EdgeLength::finite(e.length.is_finite() ? e.length.value() + Rational(1, 2) : Rational(1));
    auto rr = realize(g, {{g.vertices.front(), {0, 0}}});
    if (auto* d = std::get_if<CycleDefect>(&rr)) {
      auto d2 = io::decode_cycle_defect(io::encode(*d));
      EXPECT_EQ(d2.cycle, d->cycle);
      EXPECT_EQ(d2.defect, d->defect);
    }
  }
}

TEST(IoRoundTrip, ModuliTypesAndPosets) {
  for (std::size_t n = 3; n <= 6; ++n)
    for (const auto& t : enumerate_types(n)) {
      auto t2 = io::decode_moduli_type(io::parse_text(io::encode(t).dump()));
      EXPECT_EQ(t2, t);
    }
  for (std::size_t n = 3; n <= 6; ++n) {
    auto p = strata_poset(n);
    auto p2 = through_text(p, io::decode_poset, "poset");
    EXPECT_EQ(p2.elements(), p.elements());
    EXPECT_EQ(p2.covers(), p.covers());
  }
}

TEST(IoRoundTrip, FiberProducts) {
  std::mt19937 rng(105);
  auto cases = support::diagonal_cases(rng);
  auto more = support::point_preimage_cases(rng);
  cases.insert(cases.end(), more.begin(), more.end());
  for (const auto& fc : cases) {
    auto fp = base_fiber_product(fc.f, fc.a, fc.g, fc.b, fc.c);
    auto fp2 = through_text(fp, io::decode_fiber_product, "fiber-product");
    EXPECT_EQ(fp2.complex, fp.complex) << fc.name;
    EXPECT_EQ(fp2.to_a.functor, fp.to_a.functor);
    EXPECT_EQ(fp2.to_a.maps, fp.to_a.maps);
    EXPECT_EQ(fp2.to_b.functor, fp.to_b.functor);
    EXPECT_EQ(fp2.to_b.maps, fp.to_b.maps);
    EXPECT_EQ(fp2.hypothesis_ok, fp.hypothesis_ok);
  }
}

TEST(IoRoundTrip, ReportsAndWallCrossings) {
  std::mt19937 rng(106);
  for (int trial = 0; trial < 50; ++trial) {
    ValidationReport r;
    for (int i = 0, k = static_cast<int>(rng() % 5); i < k; ++i) {
      auto tag = "code-" + std::to_string(rng() % 7);
      if (rng() % 2)
        r.error(tag, "s" + std::to_string(i), "message with \"quotes\" and \\ backslash");
      else
        r.warning(tag, "s" + std::to_string(i), "note");
    }
    auto r2 = io::decode_report(io::encode(r));
    EXPECT_EQ(r2.diagnostics(), r.diagnostics());

    WallCrossing w{"src", "coarse", "fine", "wall", {random_rational(rng, true)}, {Rational(1)}, {Rational(1, 2)}, {0}};
    auto w2 = through_text(w, io::decode_wall_crossing, "wall-crossing");
    EXPECT_EQ(w2.from, w.from);
    EXPECT_EQ(w2.exit_point, w.exit_point);
    EXPECT_EQ(w2.wall, w.wall);
    EXPECT_EQ(w2.witness, w.witness);
  }
}

TEST(IoRoundTrip, SignaturesAndMonomials) {
  std::mt19937 rng(107);
  for (int trial = 0; trial < 50; ++trial) {
    ChartSignature s{rng() % 4, rng() % 4, rng() % 4};
    EXPECT_EQ(io::decode_signature(io::encode(s)), s);
    LogMonomial f;
    for (std::size_t i = 0; i < s.affine; ++i) f.affine_exponents.push_back(huge(rng));
    for (std::size_t i = 0; i < s.boundary; ++i) f.boundary_exponents.push_back(static_cast<int>(rng() % 5));
    f.smooth_part = trial % 2 ? "g" : "";
    EXPECT_EQ(io::decode_monomial(io::encode(f)), f);
  }
}

}  // namespace
