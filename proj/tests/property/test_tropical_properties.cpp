#include "support/tropical_gen.hpp"

#include <gtest/gtest.h>

using namespace exploded;

namespace {

IntegerMatrix random_unimodular(std::size_t n, std::mt19937& rng) {
  IntegerMatrix a = IntegerMatrix::identity(n);
  for (int k = 0; k < 6; ++k) {
    std::size_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    int c = static_cast<int>(rng() % 5) - 2;
    for (std::size_t col = 0; col < n; ++col) a(i, col) += c * a(j, col);
  }
  return a;
}

}  // namespace

TEST(TropicalProperty, TreesRoundTripThroughRealization) {
  std::mt19937 rng(314);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + trial % 4;
    auto g = support::random_balanced_tree(n, 1 + rng() % 12, rng);
    ASSERT_TRUE(check_balancing(g).ok());
    RationalVector origin(n, Rational(0));
    auto r = realize(g, {{"v0", origin}});
    ASSERT_TRUE(std::holds_alternative<TropicalRealization>(r));
    EXPECT_EQ(lengths_from_positions(g, std::get<TropicalRealization>(r)), g);
  }
}

TEST(TropicalProperty, BalancingIsInvariantUnderUnimodularMaps) {
  std::mt19937 rng(2718);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + trial % 3;
    auto g = support::random_balanced_tree(n, 1 + rng() % 8, rng);
    if (trial % 2) g.edges.pop_back();
    auto a = random_unimodular(n, rng);
    EXPECT_EQ(check_balancing(g).ok(), check_balancing(transform(g, a)).ok());
    EXPECT_EQ(check_balancing(g).error_count(), check_balancing(transform(g, a)).error_count());
  }
}

TEST(TropicalProperty, LegMomentaSumToZero) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto [g, cyclic] = support::random_cyclic_graph(2 + trial % 3, 3 + rng() % 5, rng() % 4, rng);
    ASSERT_TRUE(check_balancing(g).ok());
    for (const auto& x : total_leg_momentum(g)) EXPECT_EQ(x, 0);
  }
}

TEST(TropicalProperty, MutatedCyclesAreDetected) {
  std::mt19937 rng(1618);
  int mutated = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto [g, cyclic] = support::random_cyclic_graph(2 + trial % 3, 3 + rng() % 5, 1 + rng() % 3, rng);
    RationalVector origin(g.n, Rational(0));
    ASSERT_TRUE(std::holds_alternative<TropicalRealization>(realize(g, {{"v0", origin}})));
    if (cyclic.empty()) continue;
    auto id = cyclic[rng() % cyclic.size()];
    for (auto& e : g.edges)
      if (e.id == id) e.length = EdgeLength::finite(e.length.value() + Rational(1, 2));
    ++mutated;
    auto r = realize(g, {{"v0", origin}});
    ASSERT_TRUE(std::holds_alternative<CycleDefect>(r));
  }
  EXPECT_GT(mutated, 20);
}
