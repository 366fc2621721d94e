#pragma once

// Tropical curves: graphs with integral momenta on edge ends, balancing at
// vertices, and realization as piecewise-linear maps to R^n.

#include "exploded/lattice.hpp"
#include "exploded/linear_system.hpp"
#include "exploded/report.hpp"

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <variant>

namespace exploded {

class EdgeLength {
 public:
  enum class Kind { Finite, Infinite, Unknown };

  static EdgeLength finite(const Rational& l) { return EdgeLength(Kind::Finite, l); }
  static EdgeLength infinite() { return EdgeLength(Kind::Infinite, 0); }
  static EdgeLength unknown() { return EdgeLength(Kind::Unknown, 0); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  const Rational& value() const {
    if (kind_ != Kind::Finite) throw InvalidArgument("edge length is not a finite number");
    return value_;
  }

  friend bool operator==(const EdgeLength& a, const EdgeLength& b) {
    return a.kind_ == b.kind_ && a.value_ == b.value_;
  }
  friend std::string to_string(const EdgeLength& l) {
    switch (l.kind_) {
      case Kind::Finite: return to_string(l.value_);
      case Kind::Infinite: return "inf";
      case Kind::Unknown: return "?";
    }
    return "?";
  }

 private:
  EdgeLength(Kind k, Rational v) : kind_(k), value_(std::move(v)) {}
  Kind kind_ = Kind::Unknown;
  Rational value_;
};

/// A bounded edge joins tail and head; a leg has no head and infinite length.
/// Momenta are stored per end, each pointing out of its vertex.
struct TropicalEdge {
  std::string id;
  std::string tail;
  std::optional<std::string> head;
  EdgeLength length = EdgeLength::unknown();
  IntegerVector tail_momentum;
  IntegerVector head_momentum;

  bool is_leg() const { return !head.has_value(); }
  friend bool operator==(const TropicalEdge&, const TropicalEdge&) = default;
};

struct TropicalGraph {
  std::size_t n = 0;
  std::vector<std::string> vertices;
  std::vector<TropicalEdge> edges;
  std::map<std::string, std::string> metadata;

  TropicalGraph& add_vertex(const std::string& v) {
    vertices.push_back(v);
    return *this;
  }
  TropicalGraph& add_edge(const std::string& id, const std::string& tail, const std::string& head,
                          const EdgeLength& length, const IntegerVector& momentum) {
    IntegerVector back(momentum);
    for (auto& x : back) x = -x;
    edges.push_back({id, tail, head, length, momentum, back});
    return *this;
  }
  TropicalGraph& add_leg(const std::string& id, const std::string& vertex, const IntegerVector& momentum) {
    edges.push_back({id, vertex, std::nullopt, EdgeLength::infinite(), momentum, {}});
    return *this;
  }
  const TropicalEdge& edge(const std::string& id) const {
    for (const auto& e : edges)
      if (e.id == id) return e;
    throw InvalidArgument("no edge '" + id + "'");
  }

  friend bool operator==(const TropicalGraph&, const TropicalGraph&) = default;
};

inline ValidationReport validate_graph(const TropicalGraph& g) {
  ValidationReport rep;
  std::set<std::string> vs;
  for (const auto& v : g.vertices)
    if (!vs.insert(v).second) rep.error("duplicate-vertex", v, "vertex listed twice");
  std::set<std::string> es;
  for (const auto& e : g.edges) {
    if (!es.insert(e.id).second) rep.error("duplicate-edge", e.id, "edge listed twice");
    if (!vs.count(e.tail) || (e.head && !vs.count(*e.head)))
      rep.error("unknown-vertex", e.id, "edge attached to an unknown vertex");
    if (e.tail_momentum.size() != g.n || (!e.is_leg() && e.head_momentum.size() != g.n)) {
      rep.error("dimension-mismatch", e.id, "momentum is not in Z^" + std::to_string(g.n));
      continue;
    }
    if (e.is_leg()) {
      if (e.length.kind() != EdgeLength::Kind::Infinite) rep.error("finite-leg", e.id, "a leg must have length inf");
      continue;
    }
    if (e.length.kind() == EdgeLength::Kind::Infinite)
      rep.error("infinite-edge", e.id, "a bounded edge must have finite length");
    if (e.length.is_finite() && e.length.value() <= 0)
      rep.error("nonpositive-length", e.id, "length " + to_string(e.length.value()) + " is not positive");
    for (std::size_t i = 0; i < g.n; ++i)
      if (e.tail_momentum[i] != -e.head_momentum[i]) {
        rep.error("momentum-mismatch", e.id, "momenta at the two ends are not opposite");
        break;
      }
  }
  return rep;
}

inline std::map<std::string, IntegerVector> balancing_defects(const TropicalGraph& g) {
  std::map<std::string, IntegerVector> sum;
  for (const auto& v : g.vertices) sum[v] = IntegerVector(g.n, Integer(0));
  auto add = [&](const std::string& v, const IntegerVector& m) {
    auto& s = sum.at(v);
    for (std::size_t i = 0; i < g.n; ++i) s[i] += m[i];
  };
  for (const auto& e : g.edges) {
    add(e.tail, e.tail_momentum);
    if (e.head) add(*e.head, e.head_momentum);
  }
  return sum;
}

/// Every vertex whose exiting momenta do not sum to zero is reported with
/// its defect.
inline ValidationReport check_balancing(const TropicalGraph& g) {
  auto rep = validate_graph(g);
  if (!rep.ok()) return rep;
  for (const auto& [v, d] : balancing_defects(g))
    if (std::any_of(d.begin(), d.end(), [](const Integer& x) { return x != 0; }))
      rep.error("unbalanced", v, "defect " + to_string(d));
  return rep;
}

inline IntegerVector total_leg_momentum(const TropicalGraph& g) {
  IntegerVector s(g.n, Integer(0));
  for (const auto& e : g.edges)
    if (e.is_leg())
      for (std::size_t i = 0; i < g.n; ++i) s[i] += e.tail_momentum[i];
  return s;
}

inline bool is_trivalent_tropical(const TropicalGraph& g) {
  std::map<std::string, int> valence;
  for (const auto& v : g.vertices) valence[v] = 0;
  for (const auto& e : g.edges) {
    ++valence[e.tail];
    if (e.head) ++valence[*e.head];
  }
  return std::all_of(valence.begin(), valence.end(), [](const auto& kv) { return kv.second == 3; });
}

/// Momenta pushed through x -> A x; A must be unimodular.
inline TropicalGraph transform(const TropicalGraph& g, const IntegerMatrix& a) {
  if (a.rows() != g.n || a.cols() != g.n) throw DimensionMismatch("transform: matrix size");
  if (abs_value(determinant(a)) != 1) throw InvalidArgument("transform: matrix is not unimodular");
  TropicalGraph out = g;
  for (auto& e : out.edges) {
    e.tail_momentum = a * e.tail_momentum;
    if (!e.is_leg()) e.head_momentum = a * e.head_momentum;
  }
  return out;
}

// Realization -----------------------------------------------------------------

struct TropicalRealization {
  std::map<std::string, RationalVector> positions;
  friend bool operator==(const TropicalRealization&, const TropicalRealization&) = default;
};

/// A closed walk (edges with traversal sign) along which the displacements
/// l * momentum do not sum to zero, or along which two anchors disagree.
struct CycleDefect {
  std::vector<std::pair<std::string, int>> cycle;
  RationalVector defect;
};

using RealizationResult = std::variant<TropicalRealization, CycleDefect>;

namespace detail {

struct Step {
  std::string edge;
  int sign;  // +1 traversed tail to head
  std::string to;
};

inline std::map<std::string, std::vector<Step>> adjacency(const TropicalGraph& g) {
  std::map<std::string, std::vector<Step>> adj;
  for (const auto& v : g.vertices) adj[v];
  for (const auto& e : g.edges) {
    if (e.is_leg()) continue;
    adj[e.tail].push_back({e.id, +1, *e.head});
    adj[*e.head].push_back({e.id, -1, e.tail});
  }
  return adj;
}

inline RationalVector displacement(const TropicalEdge& e, int sign) {
  const auto& m = sign > 0 ? e.tail_momentum : e.head_momentum;
  RationalVector d(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) d[i] = e.length.value() * m[i];
  return d;
}

}  // namespace detail

/// Propagates positions from the anchors along bounded edges, checking
/// every edge that closes a cycle (and every extra anchor) exactly.
inline RealizationResult realize(const TropicalGraph& g, const std::map<std::string, RationalVector>& anchors) {
  auto rep = validate_graph(g);
  if (!rep.ok()) throw ValidationError(rep);
  for (const auto& e : g.edges)
    if (!e.is_leg() && !e.length.is_finite()) throw InvalidArgument("realize: edge '" + e.id + "' has no length");
  for (const auto& [v, p] : anchors) {
    if (std::find(g.vertices.begin(), g.vertices.end(), v) == g.vertices.end())
      throw InvalidArgument("realize: anchor at unknown vertex '" + v + "'");
    if (p.size() != g.n) throw DimensionMismatch("realize: anchor dimension");
  }
  auto adj = detail::adjacency(g);
  TropicalRealization out;
  std::map<std::string, std::pair<std::string, int>> parent;  // vertex -> edge used to reach it

  auto path_to_root = [&](std::string v) {
    std::vector<std::pair<std::string, int>> path;
    while (parent.count(v)) {
      auto [eid, sign] = parent.at(v);
      path.push_back({eid, sign});
      const auto& e = g.edge(eid);
      v = sign > 0 ? e.tail : *e.head;
    }
    std::reverse(path.begin(), path.end());
    return path;
  };
  auto walk = [&](const std::string& from, const std::string& to) {
    // root->from reversed, then root->to
    auto a = path_to_root(from), b = path_to_root(to);
    std::size_t common = 0;
    while (common < a.size() && common < b.size() && a[common] == b[common]) ++common;
    std::vector<std::pair<std::string, int>> w;
    for (std::size_t i = a.size(); i-- > common;) w.push_back({a[i].first, -a[i].second});
    for (std::size_t i = common; i < b.size(); ++i) w.push_back(b[i]);
    return w;
  };

  for (const auto& root : g.vertices) {
    if (out.positions.count(root)) continue;
    auto anchor = anchors.find(root);
    if (anchor == anchors.end()) continue;
    out.positions[root] = anchor->second;
    std::deque<std::string> queue{root};
    std::set<std::string> used;
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (const auto& st : adj.at(v)) {
        if (used.count(st.edge)) continue;
        used.insert(st.edge);
        const auto& e = g.edge(st.edge);
        auto d = detail::displacement(e, st.sign);
        RationalVector expect = out.positions.at(v);
        for (std::size_t i = 0; i < g.n; ++i) expect[i] += d[i];
        auto have = out.positions.find(st.to);
        if (have == out.positions.end()) {
          auto other = anchors.find(st.to);
          if (other != anchors.end() && other->second != expect) {
            CycleDefect c;
            c.cycle = path_to_root(v);
            c.cycle.push_back({st.edge, st.sign});
            c.defect.resize(g.n);
            for (std::size_t i = 0; i < g.n; ++i) c.defect[i] = expect[i] - other->second[i];
            return c;
          }
          out.positions[st.to] = expect;
          parent[st.to] = {st.edge, st.sign};
          queue.push_back(st.to);
          continue;
        }
        if (have->second != expect) {
          CycleDefect c;
          c.cycle = walk(st.to, v);
          c.cycle.push_back({st.edge, st.sign});
          c.defect.resize(g.n);
          for (std::size_t i = 0; i < g.n; ++i) c.defect[i] = expect[i] - have->second[i];
          return c;
        }
      }
    }
  }
  for (const auto& v : g.vertices)
    if (!out.positions.count(v)) throw InvalidArgument("realize: component of '" + v + "' has no anchor");
  return out;
}

/// Recomputes bounded edge lengths from vertex positions.  Throws if a
/// displacement is not a non-negative multiple of the edge momentum.
inline TropicalGraph lengths_from_positions(TropicalGraph g, const TropicalRealization& r) {
  for (auto& e : g.edges) {
    if (e.is_leg()) continue;
    const auto& a = r.positions.at(e.tail);
    const auto& b = r.positions.at(*e.head);
    std::optional<Rational> l;
    for (std::size_t i = 0; i < g.n; ++i) {
      Rational d = b[i] - a[i];
      if (e.tail_momentum[i] == 0) {
        if (d != 0) throw InvalidArgument("edge '" + e.id + "' is not parallel to its momentum");
        continue;
      }
      Rational li = d / Rational(e.tail_momentum[i]);
      if (l && *l != li) throw InvalidArgument("edge '" + e.id + "' is not parallel to its momentum");
      l = li;
    }
    if (!l) {
      e.length = EdgeLength::unknown();
      continue;
    }
    if (*l <= 0) throw InvalidArgument("edge '" + e.id + "' points against its momentum");
    e.length = EdgeLength::finite(*l);
  }
  return g;
}

// Solving for lengths ---------------------------------------------------------

struct LengthSolution {
  enum class Kind { Unique, Family, Inconsistent };
  Kind kind = Kind::Inconsistent;
  std::vector<std::string> unknowns;           ///< edges whose length was unknown
  std::map<std::string, Rational> lengths;     ///< a positive solution
  std::vector<std::map<std::string, Rational>> directions;  ///< basis of length directions
  std::string reason;                          ///< why no positive solution exists
  std::size_t dimension() const { return directions.size(); }
};

/// Unknowns: the unknown edge lengths and all vertex positions.  Equations:
/// head - tail = l * momentum on each bounded edge, and the anchors.
inline LengthSolution solve_lengths(const TropicalGraph& g, const std::map<std::string, RationalVector>& anchors) {
  auto rep = validate_graph(g);
  if (!rep.ok()) throw ValidationError(rep);
  LengthSolution out;
  std::map<std::string, std::size_t> lvar, pvar;
  for (const auto& e : g.edges)
    if (!e.is_leg() && e.length.kind() == EdgeLength::Kind::Unknown) {
      lvar[e.id] = lvar.size();
      out.unknowns.push_back(e.id);
    }
  for (const auto& v : g.vertices) pvar[v] = lvar.size() + g.n * pvar.size();
  const std::size_t nv = lvar.size() + g.n * g.vertices.size();

  RationalMatrix a(0, nv);
  RationalVector b;
  for (const auto& e : g.edges) {
    if (e.is_leg()) continue;
    for (std::size_t i = 0; i < g.n; ++i) {
      RationalVector row(nv, Rational(0));
      row[pvar.at(*e.head) + i] = 1;
      row[pvar.at(e.tail) + i] = -1;
      Rational rhs = 0;
      if (lvar.count(e.id))
        row[lvar.at(e.id)] = -Rational(e.tail_momentum[i]);
      else
        rhs = e.length.value() * e.tail_momentum[i];
      a.append_row(row);
      b.push_back(rhs);
    }
  }
  for (const auto& [v, p] : anchors) {
    if (!pvar.count(v)) throw InvalidArgument("solve_lengths: anchor at unknown vertex '" + v + "'");
    if (p.size() != g.n) throw DimensionMismatch("solve_lengths: anchor dimension");
    for (std::size_t i = 0; i < g.n; ++i) {
      RationalVector row(nv, Rational(0));
      row[pvar.at(v) + i] = 1;
      a.append_row(row);
      b.push_back(p[i]);
    }
  }
  auto sol = solve_rational_linear(a, b);
  if (!sol.consistent()) {
    out.reason = "closure and anchor equations are inconsistent";
    return out;
  }
  // Length part of the solution space: particular + span of projected kernel.
  const std::size_t k = lvar.size();
  RationalMatrix proj(0, k);
  for (const auto& dir : sol.kernel) proj.append_row(RationalVector(dir.begin(), dir.begin() + k));
  std::vector<RationalVector> dirs;
  if (proj.rows() > 0) {
    auto m = proj;
    auto piv = rref_in_place(m);
    for (std::size_t r = 0; r < piv.size(); ++r) dirs.push_back(m.row(r));
  }
  // Positive point of particular + sum t_j dirs_j.
  std::vector<LinearConstraint> sys;
  for (std::size_t i = 0; i < k; ++i) {
    RationalVector c(dirs.size());
    for (std::size_t j = 0; j < dirs.size(); ++j) c[j] = dirs[j][i];
    sys.push_back({c, Relation::Greater, -sol.particular[i]});
  }
  auto t = find_point(sys, dirs.size());
  if (!t) {
    out.reason = "no solution has all lengths positive";
    return out;
  }
  for (const auto& [id, i] : lvar) {
    Rational l = sol.particular[i];
    for (std::size_t j = 0; j < dirs.size(); ++j) l += (*t)[j] * dirs[j][i];
    out.lengths[id] = l;
  }
  for (const auto& d : dirs) {
    std::map<std::string, Rational> m;
    for (const auto& [id, i] : lvar) m[id] = d[i];
    out.directions.push_back(std::move(m));
  }
  out.kind = dirs.empty() ? LengthSolution::Kind::Unique : LengthSolution::Kind::Family;
  return out;
}

/// DOT rendering; with a realization in R^2 the positions become pos
/// attributes.
inline std::string to_dot(const TropicalGraph& g, const TropicalRealization* r = nullptr) {
  std::ostringstream os;
  os << "graph tropical {\n";
  for (const auto& v : g.vertices) {
    os << "  \"" << v << "\"";
    if (r && g.n == 2 && r->positions.count(v)) {
      const auto& p = r->positions.at(v);
      os << " [pos=\"" << p[0].convert_to<double>() << "," << p[1].convert_to<double>() << "!\"]";
    }
    os << ";\n";
  }
  for (const auto& e : g.edges) {
    if (e.is_leg()) {
      os << "  \"" << e.id << "\" [shape=point];\n";
      os << "  \"" << e.tail << "\" -- \"" << e.id << "\" [label=\"" << to_string(e.tail_momentum) << "\"];\n";
    } else {
      os << "  \"" << e.tail << "\" -- \"" << *e.head << "\" [label=\"" << to_string(e.tail_momentum) << " l="
         << to_string(e.length) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace exploded
