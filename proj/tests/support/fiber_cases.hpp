#pragma once

// Fiber product instances with a brute-force oracle: sample rational grid
// points on every stratum of both factors, match their images in the
// target, and compare with the computed strata.

#include "exploded/datasets.hpp"
#include "exploded/fiber_product.hpp"
#include "support/maps.hpp"

#include <random>
#include <set>

namespace support {

using namespace exploded;

struct FiberCase {
  std::string name;
  AffineComplex a, b, c;
  StratifiedMap f, g;
};

inline std::vector<FiberCase> diagonal_cases(std::mt19937& rng) {
  std::vector<FiberCase> out;
  auto add = [&](std::string name, AffineComplex x) {
    auto id = StratifiedMap::identity(x);
    out.push_back({std::move(name), x, x, x, id, id});
  };
  add("point", datasets::point());
  add("ray", datasets::ray());
  add("quadrant", datasets::quadrant());
  add("symplectic-sum", datasets::symplectic_sum());
  for (int k = 0; k < 3; ++k) {
    int lo = static_cast<int>(rng() % 5) - 2;
    int len = 1 + static_cast<int>(rng() % 3);
    add("interval", datasets::interval(lo, lo + len));
  }
  for (int k = 0; k < 3; ++k) add("triangle", datasets::cp2_triangle(1 + static_cast<int>(rng() % 3)));
  return out;
}

inline std::vector<FiberCase> point_preimage_cases(std::mt19937& rng) {
  std::vector<FiberCase> out;
  auto pt = datasets::point();
  auto line = affine_space_complex(1);
  // Integer levels and coefficients at most 2 keep every preimage stratum
  // reachable by points with denominator 4.
  auto random_level = [&](int lo, int hi) { return Rational(lo + static_cast<int>(rng() % (hi - lo + 1))); };
  for (int k = 0; k < 4; ++k) {
    IntegerMatrix l{{static_cast<int>(rng() % 3) - 1, 1 + static_cast<int>(rng() % 2)}};
    auto q = datasets::quadrant();
    auto f = through_top(q, "Q", IntegralAffineMap(l, {0}), "R");
    out.push_back({"quadrant-level-set", q, pt, line, f, constant_map(pt, "R", {random_level(-1, 3)})});
  }
  for (int k = 0; k < 4; ++k) {
    const std::vector<IntegerVector> levels{{1, 0}, {2, 0}, {1, 1}, {2, 1}, {1, -1}, {0, 1}};
    const auto& row = levels[rng() % levels.size()];
    IntegerMatrix l{{row[0], row[1]}};
    auto t = datasets::cp2_triangle(2);
    auto f = through_top(t, "T", IntegralAffineMap(l, {0}), "R");
    out.push_back({"triangle-level-set", t, pt, line, f, constant_map(pt, "R", {random_level(-2, 4)})});
  }
  for (int k = 0; k < 3; ++k) {
    auto i = datasets::interval(0, 2);
    auto f = through_top(i, "I", IntegralAffineMap(IntegerMatrix{{1}}, {0}), "R");
    out.push_back({"interval-point", i, pt, line, f, constant_map(pt, "R", {random_level(-1, 3)})});
  }
  for (int k = 0; k < 3; ++k) {
    auto t = datasets::cp2_triangle(2);
    auto f = StratifiedMap::identity(t);
    // a point in a random stratum of the triangle
    const auto& s = t.strata()[rng() % t.size()];
    RationalVector p(s.dim);
    for (auto& x : p) x = Rational(1 + static_cast<int>(rng() % 3), 4);
    out.push_back({"triangle-point-in-" + s.id, t, pt, t, f, constant_map(pt, s.id, p)});
  }
  return out;
}

struct Sample {
  std::string a, b;
  RationalVector pa, pb;
};

// All matched pairs of grid points (denominator 4, box [-4,4]) lying in the
// relative interiors of their strata.
inline std::vector<Sample> matched_samples(const FiberCase& fc) {
  std::map<std::pair<std::string, RationalVector>, std::vector<std::pair<std::string, RationalVector>>> by_image;
  for (const auto& s : fc.a.strata())
    for (const auto& x : grid(s.dim, 4, 4))
      if (in_relative_interior(s.shape, x))
        by_image[{fc.f.functor.at(s.id), fc.f.maps.at(s.id)(x)}].push_back({s.id, x});
  std::vector<Sample> out;
  for (const auto& s : fc.b.strata())
    for (const auto& y : grid(s.dim, 4, 4)) {
      if (!in_relative_interior(s.shape, y)) continue;
      auto it = by_image.find({fc.g.functor.at(s.id), fc.g.maps.at(s.id)(y)});
      if (it == by_image.end()) continue;
      for (const auto& [aid, x] : it->second) out.push_back({aid, s.id, x, y});
    }
  return out;
}

// Empty when the computed fiber product agrees with the samples: every
// sample lies in the relative interior of the stratum for its pair, and
// every stratum is hit.
inline std::string compare_with_samples(const FiberProductResult& fp, const std::vector<Sample>& samples) {
  std::set<std::string> hit;
  for (const auto& s : samples) {
    std::string id = "(" + s.a + "," + s.b + ")";
    if (!fp.complex.has_stratum(id)) return "sample over missing stratum " + id;
    const auto& st = fp.complex.stratum(id);
    auto ta = fp.to_a.maps.at(id), tb = fp.to_b.maps.at(id);
    IntegralAffineMap joint(vstack(ta.linear, tb.linear), [&] {
      RationalVector t(ta.translation);
      t.insert(t.end(), tb.translation.begin(), tb.translation.end());
      return t;
    }());
    RationalVector ab(s.pa);
    ab.insert(ab.end(), s.pb.begin(), s.pb.end());
    auto x = integral_left_inverse(joint)(ab);
    if (joint(x) != ab) return "sample off the affine hull of " + id;
    if (!in_relative_interior(st.shape, x)) return "sample outside the interior of " + id;
    hit.insert(id);
  }
  for (const auto& st : fp.complex.strata())
    if (!hit.count(st.id)) return "stratum " + st.id + " has no sample";
  return "";
}

// Test complexes for the universal property: the fiber product itself with
// its projections, single points at up to three distinct samples, and an
// interval collapsed onto the first sample.
struct TestSquare {
  AffineComplex d;
  StratifiedMap p, q;
};

inline std::vector<TestSquare> test_squares(const FiberProductResult& fp, const std::vector<Sample>& samples) {
  std::vector<TestSquare> out{{fp.complex, fp.to_a, fp.to_b}};
  if (samples.empty()) return out;
  auto pt = datasets::point();
  std::set<std::size_t> picks{0, samples.size() / 2, samples.size() - 1};
  for (auto i : picks) {
    const auto& s = samples[i];
    out.push_back({pt, constant_map(pt, s.a, s.pa), constant_map(pt, s.b, s.pb)});
  }
  auto seg = datasets::interval(0, 1);
  out.push_back({seg, constant_map(seg, samples[0].a, samples[0].pa), constant_map(seg, samples[0].b, samples[0].pb)});
  return out;
}

}  // namespace support
