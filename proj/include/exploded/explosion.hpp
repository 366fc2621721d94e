#pragma once

// Explosion of a log smooth coordinate chart as coordinate-role
// bookkeeping: the cone base with its face strata, the fiber signature
// over each stratum, and the exponent data of log smooth monomials.

#include "exploded/affine_complex.hpp"

namespace exploded {

/// Coordinate roles of a chart: m affine, k boundary, n smooth.
struct ChartSignature {
  std::size_t affine = 0;
  std::size_t boundary = 0;
  std::size_t smooth = 0;

  std::size_t total() const { return affine + boundary + smooth; }

  friend bool operator==(const ChartSignature& a, const ChartSignature& b) {
    return a.affine == b.affine && a.boundary == b.boundary && a.smooth == b.smooth;
  }
  friend bool operator<(const ChartSignature& a, const ChartSignature& b) {
    return std::tie(a.affine, a.boundary, a.smooth) < std::tie(b.affine, b.boundary, b.smooth);
  }
  friend std::ostream& operator<<(std::ostream& os, const ChartSignature& s) {
    return os << "(" << s.affine << "," << s.boundary << "," << s.smooth << ")";
  }
};

namespace detail {

inline std::vector<std::size_t> checked_index_set(const std::vector<std::size_t>& set, std::size_t k) {
  std::vector<std::size_t> s = set;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InvalidArgument("boundary index repeated");
  for (auto i : s)
    if (i >= k) throw InvalidArgument("boundary index " + std::to_string(i) + " out of range");
  return s;
}

}  // namespace detail

/// Boundary indices are 0-based positions among the boundary coordinates.
inline ChartSignature restrict_to_normal_neighborhood(const ChartSignature& sig, const std::vector<std::size_t>& set) {
  auto s = detail::checked_index_set(set, sig.boundary);
  return {sig.affine + s.size(), sig.boundary - s.size(), sig.smooth};
}

/// Where each coordinate of the restricted chart came from: entry j is the
/// old global coordinate index (affine, then boundary, then smooth) of new
/// coordinate j.  Freed boundary coordinates follow the old affine ones.
inline std::vector<std::size_t> normal_neighborhood_renaming(const ChartSignature& sig,
                                                             const std::vector<std::size_t>& set) {
  auto s = detail::checked_index_set(set, sig.boundary);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sig.affine; ++i) out.push_back(i);
  for (auto b : s) out.push_back(sig.affine + b);
  for (std::size_t b = 0; b < sig.boundary; ++b)
    if (!std::binary_search(s.begin(), s.end(), b)) out.push_back(sig.affine + b);
  for (std::size_t i = 0; i < sig.smooth; ++i) out.push_back(sig.affine + sig.boundary + i);
  return out;
}

/// Old boundary positions that remain boundary after restricting to the set.
inline std::vector<std::size_t> remaining_boundary(const ChartSignature& sig, const std::vector<std::size_t>& set) {
  auto s = detail::checked_index_set(set, sig.boundary);
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < sig.boundary; ++b)
    if (!std::binary_search(s.begin(), s.end(), b)) out.push_back(b);
  return out;
}

/// Exponent data of g + sum a_i log(x_i): integer exponents on affine and
/// boundary coordinates and an uninterpreted tag for the smooth part g.
struct LogMonomial {
  IntegerVector affine_exponents;
  IntegerVector boundary_exponents;
  std::string smooth_part;

  friend bool operator==(const LogMonomial& a, const LogMonomial& b) {
    return a.affine_exponents == b.affine_exponents && a.boundary_exponents == b.boundary_exponents &&
           a.smooth_part == b.smooth_part;
  }

  /// Sum of log functions (product of the underlying functions).
  friend LogMonomial operator+(const LogMonomial& a, const LogMonomial& b) {
    if (a.affine_exponents.size() != b.affine_exponents.size() ||
        a.boundary_exponents.size() != b.boundary_exponents.size())
      throw DimensionMismatch("log monomials live on different charts");
    LogMonomial out = a;
    for (std::size_t i = 0; i < b.affine_exponents.size(); ++i) out.affine_exponents[i] += b.affine_exponents[i];
    for (std::size_t i = 0; i < b.boundary_exponents.size(); ++i)
      out.boundary_exponents[i] += b.boundary_exponents[i];
    if (a.smooth_part.empty())
      out.smooth_part = b.smooth_part;
    else if (!b.smooth_part.empty())
      out.smooth_part = a.smooth_part + "+" + b.smooth_part;
    return out;
  }
};

/// Restriction to the normal neighborhood bundle of the stratum where the
/// boundary coordinates in the set vanish: their log terms become the new
/// affine coordinates.
inline LogMonomial restrict_monomial(const LogMonomial& f, const std::vector<std::size_t>& set) {
  auto s = detail::checked_index_set(set, f.boundary_exponents.size());
  LogMonomial out;
  out.affine_exponents = f.affine_exponents;
  for (auto b : s) out.affine_exponents.push_back(f.boundary_exponents[b]);
  for (std::size_t b = 0; b < f.boundary_exponents.size(); ++b)
    if (!std::binary_search(s.begin(), s.end(), b)) out.boundary_exponents.push_back(f.boundary_exponents[b]);
  if (!f.smooth_part.empty()) {
    std::string label;
    for (std::size_t i = 0; i < s.size(); ++i) label += (i ? "," : "") + std::to_string(s[i]);
    out.smooth_part = "restrict[" + label + "](" + f.smooth_part + ")";
  }
  return out;
}

/// Checks the exponent-level criteria for a map of charts to be log smooth:
/// affine coordinates pull back to integral sums of affine and boundary
/// coordinates, boundary coordinates to nonnegative sums of boundary
/// coordinates, smooth coordinates to functions without log terms.
/// `pullbacks` has one entry per target coordinate (affine, boundary, smooth).
inline ValidationReport check_log_smooth_pullback(const std::vector<LogMonomial>& pullbacks, const ChartSignature& src,
                                                  const ChartSignature& dst) {
  ValidationReport rep;
  if (pullbacks.size() != dst.total()) {
    rep.error("arity", "map", "expected " + std::to_string(dst.total()) + " pullbacks, got " +
                                  std::to_string(pullbacks.size()));
    return rep;
  }
  for (std::size_t j = 0; j < pullbacks.size(); ++j) {
    const auto& f = pullbacks[j];
    std::string role = j < dst.affine ? "affine" : j < dst.affine + dst.boundary ? "boundary" : "smooth";
    std::string subject = role + "[" + std::to_string(j) + "]";
    if (f.affine_exponents.size() != src.affine || f.boundary_exponents.size() != src.boundary) {
      rep.error("arity", subject, "exponent vectors do not match the source chart");
      continue;
    }
    if (role == "boundary") {
      for (const auto& a : f.affine_exponents)
        if (a != 0) {
          rep.error("boundary-has-affine-term", subject, "boundary coordinate pulls back with an affine log term");
          break;
        }
      for (const auto& b : f.boundary_exponents)
        if (b < 0) {
          rep.error("negative-boundary-exponent", subject,
                    "boundary coordinate must pull back to a nonnegative sum of boundary coordinates");
          break;
        }
    } else if (role == "smooth") {
      bool any = false;
      for (const auto& a : f.affine_exponents) any = any || a != 0;
      for (const auto& b : f.boundary_exponents) any = any || b != 0;
      if (any) rep.error("smooth-has-log-term", subject, "smooth coordinate pulls back with a log term");
    }
  }
  return rep;
}

/// Base complex with fiber signatures and monodromy-free actions of base
/// tangent vectors on fiber affine coordinates.
struct ExplodedChart {
  ChartSignature signature;
  AffineComplex base;
  std::map<std::string, ChartSignature> fiber_signatures;
  /// Rows index fiber affine coordinates, columns base tangent directions.
  std::map<std::string, IntegerMatrix> actions;

  friend bool operator==(const ExplodedChart& a, const ExplodedChart& b) {
    return a.signature == b.signature && a.base == b.base && a.fiber_signatures == b.fiber_signatures &&
           a.actions == b.actions;
  }
};

/// Id of the explosion stratum where exactly the listed boundary
/// coordinates are positive.
inline std::string explosion_stratum_id(const std::vector<std::size_t>& free_boundary) {
  std::string s = "S[";
  for (std::size_t i = 0; i < free_boundary.size(); ++i) s += (i ? "," : "") + std::to_string(free_boundary[i]);
  return s + "]";
}

/// R^m x [0,inf)^k with the bounded-below coordinates last.
inline Polyhedron affine_times_orthant(std::size_t m, std::size_t k) {
  Polyhedron p(m + k);
  for (std::size_t i = 0; i < k; ++i) {
    IntegerVector e(m + k, Integer(0));
    e[m + i] = 1;
    p.add_inequality(e, 0);
  }
  return canonicalize(p);
}

inline ExplodedChart explode(const ChartSignature& sig) {
  const std::size_t m = sig.affine, k = sig.boundary;
  if (k >= 8 * sizeof(std::size_t)) throw InvalidArgument("explode: too many boundary coordinates");
  ExplodedChart out;
  out.signature = sig;
  std::vector<std::vector<std::size_t>> subsets;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t{1} << i)) s.push_back(i);
    subsets.push_back(std::move(s));
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  for (const auto& s : subsets) {
    auto id = explosion_stratum_id(s);
    out.base.add_stratum(id, affine_times_orthant(m, s.size()));
    out.fiber_signatures[id] = restrict_to_normal_neighborhood(sig, s);
    out.actions[id] = IntegerMatrix::identity(m + s.size());
  }
  // Face J of stratum I (J strictly inside I): coordinates of I \ J vanish.
  for (const auto& big : subsets)
    for (const auto& small : subsets) {
      if (small.size() >= big.size()) continue;
      if (!std::includes(big.begin(), big.end(), small.begin(), small.end())) continue;
      IntegerMatrix l(m + big.size(), m + small.size());
      for (std::size_t i = 0; i < m; ++i) l(i, i) = 1;
      for (std::size_t j = 0; j < small.size(); ++j) {
        auto pos = std::lower_bound(big.begin(), big.end(), small[j]) - big.begin();
        l(m + static_cast<std::size_t>(pos), m + j) = 1;
      }
      out.base.add_inclusion(explosion_stratum_id(small), explosion_stratum_id(big),
                             IntegralAffineMap(l, RationalVector(m + big.size(), Rational(0))));
    }
  return out;
}

/// Exploded chart data is coherent: valid base, one signature and action
/// per stratum, total role count constant, affine count equal to the
/// stratum dimension, and actions of full rank.
inline ValidationReport validate_exploded_chart(const ExplodedChart& e) {
  ValidationReport rep = validate_complex(e.base);
  for (const auto& s : e.base.strata()) {
    auto it = e.fiber_signatures.find(s.id);
    if (it == e.fiber_signatures.end()) {
      rep.error("missing-fiber", s.id, "no fiber signature");
      continue;
    }
    if (it->second.total() != e.signature.total())
      rep.error("role-count", s.id, "fiber has " + std::to_string(it->second.total()) + " coordinates, chart has " +
                                        std::to_string(e.signature.total()));
    if (it->second.affine != s.dim)
      rep.error("affine-count", s.id, "fiber affine count differs from stratum dimension");
    auto a = e.actions.find(s.id);
    if (a == e.actions.end()) {
      rep.error("missing-action", s.id, "no action matrix");
      continue;
    }
    if (a->second.rows() != it->second.affine || a->second.cols() != s.dim)
      rep.error("action-shape", s.id, "action matrix has the wrong shape");
    else if (s.dim > 0 && abs_value(determinant(a->second)) != 1)
      rep.error("action-not-unimodular", s.id, "action is not an integral isomorphism");
  }
  return rep;
}

/// The standard fibration R^n: base R^n, every fiber R^n.
inline ExplodedChart standard_fibration(std::size_t n) {
  ExplodedChart out;
  out.signature = {n, 0, 0};
  out.base.add_stratum("R", Polyhedron(n));
  out.fiber_signatures["R"] = {n, 0, 0};
  out.actions["R"] = IntegerMatrix::identity(n);
  return out;
}

}  // namespace exploded
