#pragma once

#include "exploded/affine_complex.hpp"

namespace support {

using namespace exploded;

// The map sending every stratum through its inclusion into `top` and then
// through the affine map `onto` into the single stratum `target`.
inline StratifiedMap through_top(const AffineComplex& c, const std::string& top, const IntegralAffineMap& onto,
                                 const std::string& target) {
  StratifiedMap f;
  for (const auto& s : c.strata()) {
    IntegralAffineMap inc = IntegralAffineMap::identity(s.dim);
    if (s.id != top) {
      auto incs = c.inclusions_between(s.id, top);
      if (incs.size() != 1) throw InvalidArgument("through_top: no unique inclusion of " + s.id);
      inc = incs.front()->map;
    }
    f.functor[s.id] = target;
    f.maps[s.id] = compose(onto, inc);
  }
  return f;
}

inline StratifiedMap constant_map(const AffineComplex& c, const std::string& target, const RationalVector& value) {
  StratifiedMap f;
  for (const auto& s : c.strata()) {
    f.functor[s.id] = target;
    f.maps[s.id] = IntegralAffineMap(IntegerMatrix(value.size(), s.dim), value);
  }
  return f;
}

// Rational points with denominator dividing `den` in [-bound, bound]^d.
inline std::vector<RationalVector> grid(std::size_t d, int bound, int den) {
  std::vector<RationalVector> out{RationalVector{}};
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<RationalVector> next;
    for (const auto& p : out)
      for (int k = -bound * den; k <= bound * den; ++k) {
        auto q = p;
        q.push_back(Rational(k, den));
        next.push_back(q);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace support
