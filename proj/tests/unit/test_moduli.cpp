#include "exploded/datasets.hpp"
#include "exploded/moduli.hpp"

#include <gtest/gtest.h>

using namespace exploded;

namespace {

// {12|34}-style two-vertex type: legs in `left` on vertex 0, the rest on 1.
ModuliType two_vertex(std::size_t n, const std::vector<std::size_t>& left) {
  ModuliType t;
  t.vertex_count = 2;
  t.leg_vertex.assign(n, 1);
  for (auto l : left) t.leg_vertex[l - 1] = 0;
  t.edges = {{0, 1}};
  return canonical_numbering(t);
}

std::size_t count_with_edges(const std::vector<ModuliType>& ts, std::size_t k) {
  return static_cast<std::size_t>(
      std::count_if(ts.begin(), ts.end(), [&](const ModuliType& t) { return t.edges.size() == k; }));
}

}  // namespace

TEST(ModuliTypes, SmallCounts) {
  EXPECT_EQ(enumerate_types(3).size(), 1u);
  auto four = enumerate_types(4);
  EXPECT_EQ(four.size(), 4u);
  EXPECT_EQ(count_with_edges(four, 1), 3u);
  auto five = enumerate_types(5);
  EXPECT_EQ(five.size(), 26u);
  EXPECT_EQ(count_with_edges(five, 0), 1u);
  EXPECT_EQ(count_with_edges(five, 1), 10u);
  EXPECT_EQ(count_with_edges(five, 2), 15u);
  EXPECT_EQ(enumerate_types(6).size(), 236u);
  EXPECT_THROW(enumerate_types(2), InvalidArgument);
}

TEST(ModuliTypes, EveryTypeIsStableAndCanonical) {
  for (const auto& t : enumerate_types(6)) {
    EXPECT_TRUE(is_stable(t));
    EXPECT_EQ(canonical_numbering(t), t);
  }
}

TEST(ModuliTypes, CanonicalFormIgnoresNumbering) {
  ModuliType a;
  a.vertex_count = 3;
  a.leg_vertex = {2, 2, 0, 0, 1};
  a.edges = {{0, 1}, {1, 2}};
  ModuliType b;
  b.vertex_count = 3;
  b.leg_vertex = {0, 0, 2, 2, 1};
  b.edges = {{2, 1}, {0, 1}};
  EXPECT_EQ(canonical_form(a), canonical_form(b));
  EXPECT_EQ(canonical_numbering(a), canonical_numbering(b));
  EXPECT_EQ(canonical_form(a), "(1,2,((3,4),5))");
  EXPECT_EQ(canonical_form(single_vertex_type(4)), "(1,2,3,4)");
  EXPECT_EQ(canonical_form(two_vertex(4, {1, 2})), "(1,2,(3,4))");
  EXPECT_EQ(canonical_form(two_vertex(4, {3, 4})), "(1,2,(3,4))");
  EXPECT_NE(canonical_form(two_vertex(4, {1, 3})), canonical_form(two_vertex(4, {1, 2})));
}

TEST(ModuliTypes, StabilityChecks) {
  ModuliType t;
  t.vertex_count = 2;
  t.leg_vertex = {0, 0, 1};
  t.edges = {{0, 1}};
  EXPECT_FALSE(is_stable(t));
  EXPECT_THROW(fiber_dimension(t), InvalidArgument);
  ModuliType cyc;
  cyc.vertex_count = 2;
  cyc.leg_vertex = {0, 0, 1, 1};
  cyc.edges = {{0, 1}, {0, 1}};
  EXPECT_FALSE(is_tree(cyc));
}

TEST(ModuliPoset, Examples) {
  auto p3 = strata_poset(3);
  EXPECT_EQ(p3.size(), 1u);
  EXPECT_TRUE(p3.covers().empty());

  auto p4 = strata_poset(4);
  EXPECT_EQ(p4.size(), 4u);
  EXPECT_EQ(p4.covers().size(), 3u);
  EXPECT_EQ(p4.minimal_elements(), (std::vector<std::string>{"(1,2,3,4)"}));
  EXPECT_EQ(p4.maximal_elements().size(), 3u);

  auto p5 = strata_poset(5);
  std::size_t trivalent = 0;
  for (const auto& t : enumerate_types(5)) {
    if (!is_trivalent(t)) continue;
    ++trivalent;
    std::size_t below = 0;
    for (const auto& [lo, hi] : p5.covers()) below += hi == canonical_form(t);
    EXPECT_EQ(below, 2u);
  }
  EXPECT_EQ(trivalent, 15u);
}

TEST(ModuliComplex, FourPoints) {
  auto c = datasets::m04();
  EXPECT_EQ(c.size(), 4u);
  EXPECT_EQ(c.inclusions().size(), 3u);
  EXPECT_TRUE(validate_complex(c).ok()) << validate_complex(c);
  EXPECT_TRUE(is_complete_base(c));
  EXPECT_EQ(underlying_space_components(c).size(), 1u);
  std::size_t rays = 0;
  for (const auto& s : c.strata()) rays += s.dim == 1;
  EXPECT_EQ(rays, 3u);
  EXPECT_EQ(c.stratum("(1,2,3,4)").fiber, "Mbar_0,4");
  EXPECT_EQ(c.stratum("(1,2,(3,4))").fiber, "(C*)^1");
  EXPECT_EQ(as_affine_complex(3).size(), 1u);
}

TEST(ModuliComplex, FivePoints) {
  auto c = datasets::m05();
  EXPECT_EQ(c.size(), 26u);
  auto rep = validate_complex(c);
  EXPECT_TRUE(rep.ok()) << rep;
  EXPECT_TRUE(is_complete_base(c));
  // each 2-dim cone has 2 rays and 1 vertex as faces
  EXPECT_EQ(c.inclusions().size(), 10u + 15u * 3u);
}

TEST(FiberDimension, Examples) {
  EXPECT_EQ(fiber_dimension(single_vertex_type(4)), (FiberDimension{1, 0}));
  EXPECT_EQ(fiber_dimension(two_vertex(4, {1, 2})), (FiberDimension{0, 1}));
  for (const auto& t : enumerate_types(6))
    if (is_trivalent(t)) EXPECT_EQ(fiber_dimension(t), (FiberDimension{0, 3}));
  for (std::size_t n = 3; n <= 6; ++n)
    for (const auto& t : enumerate_types(n)) {
      auto d = fiber_dimension(t);
      EXPECT_EQ(d.complex_dim + d.torus_rank, n - 3);
    }
}

TEST(ForgetLeg, Examples) {
  EXPECT_EQ(forget_leg(single_vertex_type(5), 5), single_vertex_type(4));
  EXPECT_EQ(forget_leg(two_vertex(4, {1, 2}), 4), single_vertex_type(3));
  // (1,2,(3,(4,5))): forgetting 3 leaves a 2-valent middle vertex.
  ModuliType t;
  t.vertex_count = 3;
  t.leg_vertex = {0, 0, 1, 2, 2};
  t.edges = {{0, 1}, {1, 2}};
  t = canonical_numbering(t);
  auto f = forget_leg(t, 3);
  EXPECT_EQ(canonical_form(f), "(1,2,(3,4))");
  EXPECT_EQ(f.edges.size(), 1u);
  auto g = forget_leg(t, 1);
  EXPECT_EQ(canonical_form(g), "(1,2,(3,4))");
  EXPECT_THROW(forget_leg(single_vertex_type(3), 1), InvalidArgument);
  EXPECT_THROW(forget_leg(single_vertex_type(4), 5), InvalidArgument);
}

TEST(Automorphisms, LabeledLegsPinEverything) {
  for (const auto& t : enumerate_types(4)) EXPECT_EQ(automorphisms(t).order(), 1u);
  // centre vertex with three cherries
  ModuliType y;
  y.vertex_count = 4;
  y.leg_vertex = {1, 1, 2, 2, 3, 3};
  y.edges = {{0, 1}, {0, 2}, {0, 3}};
  y = canonical_numbering(y);
  ASSERT_TRUE(is_stable(y));
  EXPECT_EQ(automorphisms(y).order(), 1u);
  auto unl = automorphisms(y, false);
  EXPECT_EQ(unl.order(), 6u);
  EXPECT_EQ(unl.generators.size(), 2u);
  EXPECT_EQ(unl.length_preserving.size(), 1u);
  EXPECT_EQ(automorphisms(y, false, {2, 2, 2}).length_preserving.size(), 6u);
  EXPECT_EQ(automorphisms(y, false, {1, 2, 2}).length_preserving.size(), 2u);
}
