#include "exploded/moduli.hpp"
#include "oracles/leg_insertion.hpp"

#include <gtest/gtest.h>

using namespace exploded;

namespace {

oracle::SplitSet split_set(const ModuliType& t) {
  auto s = edge_splits(t);
  return oracle::SplitSet(s.begin(), s.end());
}

}  // namespace

TEST(ModuliProperty, TrivalentTypesMatchLegInsertion) {
  for (std::size_t n = 3; n <= 7; ++n) {
    std::set<oracle::SplitSet> ours;
    for (const auto& t : enumerate_types(n))
      if (is_trivalent(t)) ours.insert(split_set(t));
    auto theirs = oracle::trivalent_trees(n);
    EXPECT_EQ(theirs.size(), oracle::double_factorial(2 * n - 5));
    EXPECT_EQ(ours, std::set<oracle::SplitSet>(theirs.begin(), theirs.end())) << "n=" << n;
  }
}

TEST(ModuliProperty, ForgetLegIsSurjective) {
  for (std::size_t n = 3; n <= 5; ++n) {
    std::set<std::string> hit;
    for (const auto& t : enumerate_types(n + 1)) hit.insert(canonical_form(forget_leg(t, n + 1)));
    std::set<std::string> all;
    for (const auto& t : enumerate_types(n)) all.insert(canonical_form(t));
    EXPECT_EQ(hit, all);
  }
}

TEST(ModuliProperty, ForgetCommutesWithContraction) {
  for (const auto& t : enumerate_types(6))
    for (std::size_t leg = 1; leg <= 6; ++leg) {
      auto ft = forget_leg(t, leg);
      for (std::size_t e = 0; e < t.edges.size(); ++e) {
        auto lhs = forget_leg(contract(t, e), leg);
        // The image of edge e in the forgotten type: edges are named by
        // splits; e disappears if its split degenerates, and two edges
        // merge when they differ only by the forgotten leg.
        auto reduced = [&](std::size_t edge) {
          auto split = edge_split(t, edge);
          split.erase(std::remove(split.begin(), split.end(), leg), split.end());
          for (auto& l : split)
            if (l > leg) --l;
          if (std::find(split.begin(), split.end(), 1) != split.end()) {
            std::vector<std::size_t> other;
            for (std::size_t l = 1; l <= 5; ++l)
              if (std::find(split.begin(), split.end(), l) == split.end()) other.push_back(l);
            split = other;
          }
          return split;
        };
        auto split = reduced(e);
        bool merged = false;
        for (std::size_t o = 0; o < t.edges.size(); ++o) merged |= o != e && reduced(o) == split;
        std::optional<std::size_t> image;
        for (std::size_t f = 0; f < ft.edges.size(); ++f)
          if (!merged && edge_split(ft, f) == split) image = f;
        auto rhs = image ? contract(ft, *image) : ft;
        EXPECT_EQ(canonical_form(lhs), canonical_form(rhs));
      }
    }
}

TEST(ModuliProperty, ComplexesAreValidAndComplete) {
  for (std::size_t n = 3; n <= 6; ++n) {
    auto c = as_affine_complex(n);
    auto rep = validate_complex(c);
    EXPECT_TRUE(rep.ok()) << rep;
    EXPECT_TRUE(is_complete_base(c));
  }
}
