#include "support/cones.hpp"
#include "exploded/datasets.hpp"

#include <gtest/gtest.h>

using namespace exploded;

namespace {

// Canonical shape of a refinement: for each fine stratum, its coarse stratum,
// its image in coarse coordinates and its fiber signature.
std::set<std::tuple<std::string, Polyhedron, ChartSignature>> shape_of(const ExplodedChart& refined,
                                                                     const StratifiedMap& to_coarse) {
  std::set<std::tuple<std::string, Polyhedron, ChartSignature>> out;
  for (const auto& s : refined.base.strata())
    out.emplace(to_coarse.functor.at(s.id), canonicalize(image_under(s.shape, to_coarse.maps.at(s.id))),
                refined.fiber_signatures.at(s.id));
  return out;
}

StratifiedMap segment_map(const std::string& target, const IntegerVector& a, const IntegerVector& v) {
  StratifiedMap f;
  IntegerMatrix lin(a.size(), 1);
  IntegerVector b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    lin(i, 0) = v[i];
    b[i] = a[i] + v[i];
  }
  f.functor = {{"e", target}, {"a", target}, {"b", target}};
  f.maps["e"] = IntegralAffineMap(lin, to_rational(a));
  f.maps["a"] = IntegralAffineMap(IntegerMatrix(a.size(), 0), to_rational(a));
  f.maps["b"] = IntegralAffineMap(IntegerMatrix(a.size(), 0), to_rational(b));
  return f;
}

}  // namespace

TEST(RefinementProperty, StellarFansRefineSoundly) {
  std::mt19937 rng(20261016);
  for (int trial = 0; trial < 16; ++trial) {
    std::size_t d = 2 + trial % 2;
    auto fan = support::stellar_fan(d, 1 + trial % 4, rng);
    auto e = explode({0, d, 0});
    auto s = support::subdivide_orthant(e, fan);
    auto rep = validate_subdivision(s);
    ASSERT_TRUE(rep.ok()) << rep;
    auto r = refine(e, s);
    EXPECT_TRUE(validate_complex(r.chart.base).ok());
    EXPECT_TRUE(validate_exploded_chart(r.chart).ok());
    EXPECT_EQ(underlying_space_components(r.chart.base).size(), underlying_space_components(e.base).size());
    EXPECT_EQ(support::truncated_volume(s, explosion_stratum_id(d == 2 ? std::vector<std::size_t>{0, 1}
                                                                      : std::vector<std::size_t>{0, 1, 2})),
              Rational(1));
    std::size_t top = 0;
    for (const auto& g : s.fine.strata()) top += g.dim == d;
    EXPECT_EQ(top, fan.cones.size());
  }
}

TEST(RefinementProperty, LiftsExistExactlyWhenACellHoldsTheSegment) {
  std::mt19937 rng(7);
  auto e = explode({0, 2, 0});
  auto seg = datasets::interval(0, 1, "a", "b", "e");
  for (int trial = 0; trial < 6; ++trial) {
    auto fan = support::stellar_fan(2, 2 + trial % 3, rng);
    auto s = support::subdivide_orthant(e, fan);
    for (int k = 0; k < 8; ++k) {
      IntegerVector a{Integer(1 + rng() % 4), Integer(1 + rng() % 4)};
      IntegerVector b{Integer(1 + rng() % 4), Integer(1 + rng() % 4)};
      if (a == b) continue;
      IntegerVector v{b[0] - a[0], b[1] - a[1]};
      auto f = segment_map("S[0,1]", a, v);
      bool expect = std::any_of(fan.cones.begin(), fan.cones.end(), [&](const support::Rays& c) {
        return support::in_cone(c, to_rational(a)) && support::in_cone(c, to_rational(b));
      });
      auto got = lift_map(f, seg, s);
      ASSERT_EQ(std::holds_alternative<StratifiedMap>(got), expect);
      if (expect) {
        const auto& g = std::get<StratifiedMap>(got);
        EXPECT_TRUE(validate_map(g, seg, s.fine).ok());
        EXPECT_EQ(compose(s.map, g), f);
        EXPECT_EQ(std::get<StratifiedMap>(lift_map(f, seg, s)), g);
      } else {
        const auto& w = std::get<WallCrossing>(got);
        auto closure = image_under(s.fine.stratum(w.fine_stratum).shape, s.map.maps.at(w.fine_stratum));
        EXPECT_FALSE(contains_point(closure, w.to));
        EXPECT_TRUE(contains_point(closure, w.exit_point));
        auto wall = image_under(s.fine.stratum(w.wall).shape, s.map.maps.at(w.wall));
        EXPECT_TRUE(in_relative_interior(wall, w.exit_point));
      }
    }
  }
}

TEST(RefinementProperty, RefineIsFunctorialUnderCommonRefinement) {
  std::mt19937 rng(99);
  auto e = explode({0, 2, 0});
  for (int trial = 0; trial < 4; ++trial) {
    auto s1 = support::subdivide_orthant(e, support::stellar_fan(2, 1 + trial % 2, rng));
    auto s2 = support::subdivide_orthant(e, support::stellar_fan(2, 1 + trial % 2, rng));
    auto common = common_refinement(s1, s2);
    auto direct = refine(e, common);

    auto first = refine(e, s1);
    auto s12 = induced_subdivision(s1, s2);
    auto second = refine(first.chart, s12);
    EXPECT_EQ(shape_of(second.chart, compose(s1.map, s12.map)), shape_of(direct.chart, common.map));
  }
}

TEST(RefinementProperty, PointsAlwaysLift) {
  std::mt19937 rng(5);
  auto e = explode({0, 3, 0});
  auto s = support::subdivide_orthant(e, support::stellar_fan(3, 3, rng));
  auto pt = datasets::point();
  for (int k = 0; k < 10; ++k) {
    StratifiedMap f;
    f.functor["pt"] = "S[0,1,2]";
    f.maps["pt"] = IntegralAffineMap(IntegerMatrix(3, 0), {Rational(1 + rng() % 5), Rational(1 + rng() % 5),
                                                           Rational(1 + rng() % 5)});
    auto got = lift_map(f, pt, s);
    ASSERT_TRUE(std::holds_alternative<StratifiedMap>(got));
    EXPECT_EQ(compose(s.map, std::get<StratifiedMap>(got)), f);
  }
}
