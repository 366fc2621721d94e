#pragma once

// Genus-zero combinatorial types: stable trees with n labeled legs, their
// contraction poset, the cone complex they index, and the forgetful map.

#include "exploded/affine_complex.hpp"

#include <deque>
#include <functional>
#include <set>
#include <unordered_set>

namespace exploded {

/// Legs are labeled 1..n; leg i sits on vertex leg_vertex[i-1].  Internal
/// edges join vertices.  Types built by the library are kept in canonical
/// numbering, so structural equality is isomorphism.
struct ModuliType {
  std::size_t vertex_count = 1;
  std::vector<std::size_t> leg_vertex;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::size_t n() const { return leg_vertex.size(); }

  std::size_t valence(std::size_t v) const {
    std::size_t val = 0;
    for (auto x : leg_vertex) val += x == v;
    for (auto [a, b] : edges) val += (a == v) + (b == v);
    return val;
  }

  friend bool operator==(const ModuliType&, const ModuliType&) = default;
};

namespace detail {

inline std::vector<std::vector<std::size_t>> tree_neighbors(const ModuliType& t) {
  std::vector<std::vector<std::size_t>> adj(t.vertex_count);
  for (auto [a, b] : t.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

inline std::vector<std::vector<std::size_t>> legs_at(const ModuliType& t) {
  std::vector<std::vector<std::size_t>> legs(t.vertex_count);
  for (std::size_t i = 0; i < t.leg_vertex.size(); ++i) legs[t.leg_vertex[i]].push_back(i + 1);
  return legs;
}

// Nested encoding of the branch at v seen from parent; items ordered by their
// smallest leg.  Also returns that smallest leg.
inline std::pair<std::string, std::size_t> encode_branch(const std::vector<std::vector<std::size_t>>& adj,
                                                         const std::vector<std::vector<std::size_t>>& legs,
                                                         std::size_t v, std::size_t parent) {
  std::vector<std::pair<std::size_t, std::string>> items;
  for (auto l : legs[v]) items.push_back({l, std::to_string(l)});
  for (auto w : adj[v]) {
    if (w == parent) continue;
    auto [s, m] = encode_branch(adj, legs, w, v);
    items.push_back({m, s});
  }
  std::sort(items.begin(), items.end());
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i].second;
  return {out + ")", items.empty() ? SIZE_MAX : items.front().first};
}

}  // namespace detail

inline bool is_tree(const ModuliType& t) {
  if (t.vertex_count == 0 || t.edges.size() + 1 != t.vertex_count) return false;
  for (auto v : t.leg_vertex)
    if (v >= t.vertex_count) return false;
  std::vector<std::size_t> parent(t.vertex_count);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (auto [a, b] : t.edges) {
    if (a >= t.vertex_count || b >= t.vertex_count) return false;
    auto ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent[ra] = rb;
  }
  return true;
}

inline bool is_stable(const ModuliType& t) {
  if (!is_tree(t)) return false;
  for (std::size_t v = 0; v < t.vertex_count; ++v)
    if (t.valence(v) < 3) return false;
  return true;
}

/// Canonical nested encoding rooted at the vertex carrying leg 1.
inline std::string canonical_form(const ModuliType& t) {
  if (!is_tree(t) || t.leg_vertex.empty()) throw InvalidArgument("canonical_form: not a tree with legs");
  return detail::encode_branch(detail::tree_neighbors(t), detail::legs_at(t), t.leg_vertex[0], SIZE_MAX).first;
}

/// Renumbers vertices in depth-first order from leg 1's vertex, visiting
/// branches by smallest leg; edges listed as (parent, child) in that order.
inline ModuliType canonical_numbering(const ModuliType& t) {
  if (!is_tree(t) || t.leg_vertex.empty()) throw InvalidArgument("canonical_numbering: not a tree with legs");
  auto adj = detail::tree_neighbors(t);
  auto legs = detail::legs_at(t);
  // smallest leg in each branch, seen from its parent
  std::function<std::size_t(std::size_t, std::size_t)> min_leg = [&](std::size_t v, std::size_t p) {
    std::size_t m = SIZE_MAX;
    for (auto l : legs[v]) m = std::min(m, l);
    for (auto w : adj[v])
      if (w != p) m = std::min(m, min_leg(w, v));
    return m;
  };
  ModuliType out;
  out.vertex_count = t.vertex_count;
  out.leg_vertex.assign(t.n(), 0);
  std::size_t next = 0;
  std::function<void(std::size_t, std::size_t, std::size_t)> visit = [&](std::size_t v, std::size_t p,
                                                                         std::size_t pnew) {
    std::size_t me = next++;
    if (p != SIZE_MAX) out.edges.push_back({pnew, me});
    for (auto l : legs[v]) out.leg_vertex[l - 1] = me;
    std::vector<std::pair<std::size_t, std::size_t>> kids;
    for (auto w : adj[v])
      if (w != p) kids.push_back({min_leg(w, v), w});
    std::sort(kids.begin(), kids.end());
    for (auto [m, w] : kids) visit(w, v, me);
  };
  visit(t.leg_vertex[0], SIZE_MAX, 0);
  return out;
}

/// One vertex carrying all n legs.
inline ModuliType single_vertex_type(std::size_t n) {
  if (n < 3) throw InvalidArgument("a stable genus zero type needs at least 3 legs");
  ModuliType t;
  t.leg_vertex.assign(n, 0);
  return t;
}

/// The legs on the side of edge e away from leg 1, sorted.  Splits name
/// edges independently of vertex numbering.
inline std::vector<std::size_t> edge_split(const ModuliType& t, std::size_t e) {
  auto adj = detail::tree_neighbors(t);
  auto legs = detail::legs_at(t);
  auto [a, b] = t.edges.at(e);
  // the side not containing leg 1's vertex
  std::vector<bool> seen(t.vertex_count, false);
  std::function<bool(std::size_t, std::size_t, std::size_t)> reaches = [&](std::size_t v, std::size_t p,
                                                                           std::size_t target) {
    if (v == target) return true;
    for (auto w : adj[v])
      if (w != p && reaches(w, v, target)) return true;
    return false;
  };
  std::size_t far = reaches(a, b, t.leg_vertex[0]) ? b : a;
  std::size_t near = far == a ? b : a;
  std::vector<std::size_t> out;
  std::function<void(std::size_t, std::size_t)> collect = [&](std::size_t v, std::size_t p) {
    for (auto l : legs[v]) out.push_back(l);
    for (auto w : adj[v])
      if (w != p) collect(w, v);
  };
  collect(far, near);
  std::sort(out.begin(), out.end());
  return out;
}

/// Edge indices ordered by split; this order fixes the length coordinates.
inline std::vector<std::vector<std::size_t>> edge_splits(const ModuliType& t) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t e = 0; e < t.edges.size(); ++e) out.push_back(edge_split(t, e));
  std::sort(out.begin(), out.end());
  return out;
}

/// Shrinks edge e to length zero, merging its endpoints.
inline ModuliType contract(const ModuliType& t, std::size_t e) {
  if (e >= t.edges.size()) throw InvalidArgument("contract: no such edge");
  auto [keep, gone] = t.edges[e];
  if (keep > gone) std::swap(keep, gone);
  auto renum = [&](std::size_t v) {
    if (v == gone) v = keep;
    return v > gone ? v - 1 : v;
  };
  ModuliType out;
  out.vertex_count = t.vertex_count - 1;
  for (auto v : t.leg_vertex) out.leg_vertex.push_back(renum(v));
  for (std::size_t i = 0; i < t.edges.size(); ++i)
    if (i != e) out.edges.push_back({renum(t.edges[i].first), renum(t.edges[i].second)});
  return canonical_numbering(out);
}

/// Complex dimension of the fiber (product of the vertex moduli spaces)
/// and the rank of the gluing torus (one factor per internal edge).
struct FiberDimension {
  std::size_t complex_dim = 0;
  std::size_t torus_rank = 0;
  friend bool operator==(const FiberDimension&, const FiberDimension&) = default;
};

inline FiberDimension fiber_dimension(const ModuliType& t) {
  if (!is_stable(t)) throw InvalidArgument("fiber_dimension: unstable type");
  FiberDimension d;
  for (std::size_t v = 0; v < t.vertex_count; ++v) d.complex_dim += t.valence(v) - 3;
  d.torus_rank = t.edges.size();
  return d;
}

/// All splittings of one vertex into two joined vertices of valence >= 3.
inline std::vector<ModuliType> vertex_splittings(const ModuliType& t) {
  std::vector<ModuliType> out;
  for (std::size_t v = 0; v < t.vertex_count; ++v) {
    // half-edges at v: legs (tag 0) and edges (tag 1)
    std::vector<std::pair<int, std::size_t>> half;
    for (std::size_t i = 0; i < t.leg_vertex.size(); ++i)
      if (t.leg_vertex[i] == v) half.push_back({0, i});
    for (std::size_t e = 0; e < t.edges.size(); ++e)
      if (t.edges[e].first == v || t.edges[e].second == v) half.push_back({1, e});
    const std::size_t d = half.size();
    if (d < 4) continue;
    // The first half-edge stays on v, so each split appears once.
    for (std::size_t mask = 0; mask < (std::size_t(1) << (d - 1)); ++mask) {
      std::size_t moved = static_cast<std::size_t>(__builtin_popcountll(mask));
      if (moved < 2 || d - moved < 2) continue;
      ModuliType s = t;
      std::size_t w = s.vertex_count++;
      for (std::size_t i = 1; i < d; ++i) {
        if (!((mask >> (i - 1)) & 1)) continue;
        auto [tag, idx] = half[i];
        if (tag == 0) {
          s.leg_vertex[idx] = w;
        } else {
          auto& ed = s.edges[idx];
          (ed.first == v ? ed.first : ed.second) = w;
        }
      }
      s.edges.push_back({v, w});
      out.push_back(canonical_numbering(s));
    }
  }
  return out;
}

/// Every stable type with n labeled legs, ordered by number of edges, then
/// by canonical form.
inline std::vector<ModuliType> enumerate_types(std::size_t n) {
  auto start = single_vertex_type(n);
  std::vector<std::vector<ModuliType>> by_edges(n - 2);
  by_edges[0].push_back(start);
  for (std::size_t k = 0; k + 1 < by_edges.size(); ++k) {
    std::unordered_set<std::string> seen;
    for (const auto& t : by_edges[k])
      for (auto& s : vertex_splittings(t))
        if (seen.insert(canonical_form(s)).second) by_edges[k + 1].push_back(std::move(s));
  }
  std::vector<ModuliType> out;
  for (auto& level : by_edges) {
    std::vector<std::pair<std::string, ModuliType>> keyed;
    for (auto& t : level) keyed.push_back({canonical_form(t), std::move(t)});
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [k, t] : keyed) out.push_back(std::move(t));
  }
  return out;
}

inline bool is_trivalent(const ModuliType& t) { return t.edges.size() + 3 == t.n(); }

/// Covering relation: contracting one edge gives a type covered by the
/// original.  Single-edge-fewer types sit below.
inline Poset strata_poset(std::size_t n) {
  auto types = enumerate_types(n);
  std::vector<std::string> names;
  for (const auto& t : types) names.push_back(canonical_form(t));
  Poset p(names);
  for (const auto& t : types) {
    auto name = canonical_form(t);
    for (std::size_t e = 0; e < t.edges.size(); ++e) p.add_cover(canonical_form(contract(t, e)), name);
  }
  return p;
}

namespace detail {

inline std::string moduli_fiber_label(const ModuliType& t) {
  std::string out;
  for (std::size_t v = 0; v < t.vertex_count; ++v) {
    auto val = t.valence(v);
    if (val > 3) out += (out.empty() ? "" : " x ") + std::string("Mbar_0,") + std::to_string(val);
  }
  if (!t.edges.empty()) out += (out.empty() ? "" : " x ") + std::string("(C*)^") + std::to_string(t.edges.size());
  return out.empty() ? "pt" : out;
}

}  // namespace detail

/// One stratum [0,inf)^{edges} per type, coordinates the edge lengths in
/// split order, with an inclusion for every set of contracted edges.
inline AffineComplex as_affine_complex(std::size_t n) {
  auto types = enumerate_types(n);
  AffineComplex c;
  std::map<std::string, std::vector<std::vector<std::size_t>>> splits;
  for (const auto& t : types) {
    auto k = t.edges.size();
    Polyhedron shape(k);
    for (std::size_t i = 0; i < k; ++i) {
      IntegerVector e(k, Integer(0));
      e[i] = 1;
      shape.add_inequality(e, 0);
    }
    auto name = canonical_form(t);
    c.add_stratum(name, shape, false, detail::moduli_fiber_label(t));
    splits[name] = edge_splits(t);
  }
  for (const auto& t : types) {
    auto name = canonical_form(t);
    const auto& big = splits.at(name);
    const std::size_t k = t.edges.size();
    for (std::size_t mask = 1; mask < (std::size_t(1) << k); ++mask) {
      ModuliType face = t;
      // contract the chosen edges one at a time, locating them by split
      for (std::size_t e = 0; e < k; ++e) {
        if (!((mask >> e) & 1)) continue;
        auto target = edge_split(t, e);
        for (std::size_t f = 0; f < face.edges.size(); ++f)
          if (edge_split(face, f) == target) {
            face = contract(face, f);
            break;
          }
      }
      auto fname = canonical_form(face);
      const auto& small = splits.at(fname);
      IntegerMatrix lin(k, small.size());
      for (std::size_t j = 0; j < small.size(); ++j) {
        auto pos = std::find(big.begin(), big.end(), small[j]) - big.begin();
        lin(static_cast<std::size_t>(pos), j) = 1;
      }
      c.add_inclusion(fname, name, IntegralAffineMap(lin, RationalVector(k, Rational(0))));
    }
  }
  return c;
}

/// Deletes a leg, relabels the later legs down by one, and stabilizes.
inline ModuliType forget_leg(const ModuliType& t, std::size_t leg) {
  if (leg < 1 || leg > t.n()) throw InvalidArgument("forget_leg: no such leg");
  if (t.n() < 4) throw InvalidArgument("forget_leg: the result would have fewer than 3 legs");
  ModuliType s = t;
  std::size_t v = s.leg_vertex[leg - 1];
  s.leg_vertex.erase(s.leg_vertex.begin() + static_cast<std::ptrdiff_t>(leg - 1));
  if (s.valence(v) < 3) {
    std::vector<std::size_t> incident;
    for (std::size_t e = 0; e < s.edges.size(); ++e)
      if (s.edges[e].first == v || s.edges[e].second == v) incident.push_back(e);
    // valence 2: either one leg and one edge, or two edges; both are
    // removed by contracting an incident edge
    s = contract(s, incident.front());
  }
  return canonical_numbering(s);
}

// Automorphisms ---------------------------------------------------------------

/// Vertex permutations preserving edges and, in labeled mode, the leg at
/// each vertex (otherwise only the number of legs).
struct AutomorphismGroup {
  std::vector<std::vector<std::size_t>> elements;    ///< images of vertices 0..V-1
  std::vector<std::vector<std::size_t>> generators;
  std::size_t order() const { return elements.size(); }
  /// Elements mapping every edge to an edge of the same length.
  std::vector<std::vector<std::size_t>> length_preserving;
};

inline AutomorphismGroup automorphisms(const ModuliType& t, bool labeled = true,
                                       const std::vector<Rational>& lengths = {}) {
  if (!is_stable(t)) throw InvalidArgument("automorphisms: unstable type");
  if (!lengths.empty() && lengths.size() != t.edges.size())
    throw DimensionMismatch("automorphisms: one length per edge expected");
  const std::size_t vcount = t.vertex_count;
  auto legs = detail::legs_at(t);
  std::set<std::pair<std::size_t, std::size_t>> edge_set;
  for (auto [a, b] : t.edges) edge_set.insert({std::min(a, b), std::max(a, b)});
  auto compatible = [&](std::size_t v, std::size_t w) {
    return labeled ? legs[v] == legs[w] : legs[v].size() == legs[w].size();
  };

  AutomorphismGroup out;
  std::vector<std::size_t> image(vcount, SIZE_MAX);
  std::vector<bool> used(vcount, false);
  std::function<void(std::size_t)> extend = [&](std::size_t v) {
    if (v == vcount) {
      for (auto [a, b] : edge_set)
        if (!edge_set.count({std::min(image[a], image[b]), std::max(image[a], image[b])})) return;
      out.elements.push_back(image);
      return;
    }
    for (std::size_t w = 0; w < vcount; ++w) {
      if (used[w] || !compatible(v, w) || t.valence(v) != t.valence(w)) continue;
      image[v] = w;
      used[w] = true;
      extend(v + 1);
      used[w] = false;
    }
  };
  extend(0);
  std::sort(out.elements.begin(), out.elements.end());

  // Greedy generating set: add an element whenever it is not yet generated.
  auto mul = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::vector<std::size_t> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
    return c;
  };
  std::vector<std::size_t> id(vcount);
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<std::size_t>> generated{id};
  for (const auto& g : out.elements) {
    if (generated.count(g)) continue;
    out.generators.push_back(g);
    std::deque<std::vector<std::size_t>> queue(generated.begin(), generated.end());
    while (!queue.empty()) {
      auto x = queue.front();
      queue.pop_front();
      for (const auto& h : out.generators) {
        auto y = mul(h, x);
        if (generated.insert(y).second) queue.push_back(y);
      }
    }
  }

  for (const auto& g : out.elements) {
    bool keeps = true;
    for (std::size_t e = 0; e < t.edges.size() && keeps; ++e) {
      auto [a, b] = t.edges[e];
      std::pair<std::size_t, std::size_t> img{std::min(g[a], g[b]), std::max(g[a], g[b])};
      std::size_t f = 0;
      while (f < t.edges.size() &&
             std::make_pair(std::min(t.edges[f].first, t.edges[f].second),
                            std::max(t.edges[f].first, t.edges[f].second)) != img)
        ++f;
      // generic lengths (none given) are pairwise distinct
      keeps = lengths.empty() ? f == e : lengths[f] == lengths[e];
    }
    if (keeps) out.length_preserving.push_back(g);
  }
  return out;
}

}  // namespace exploded
