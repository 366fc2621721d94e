#pragma once

// Stratified integral affine spaces: a finite category whose objects are
// polyhedral strata, each in its own integral affine chart, and whose
// morphisms are integral affine inclusions onto faces.

#include "exploded/polyhedra.hpp"
#include "exploded/poset.hpp"
#include "exploded/report.hpp"

#include <numeric>

namespace exploded {

struct Stratum {
  std::string id;
  std::size_t dim = 0;
  Polyhedron shape;            ///< in R^dim, full dimensional
  bool generalized = false;    ///< permits non-smooth local models
  std::string fiber;           ///< free-text fiber metadata, never interpreted

  friend bool operator==(const Stratum& a, const Stratum& b) {
    return a.id == b.id && a.dim == b.dim && a.shape == b.shape && a.generalized == b.generalized &&
           a.fiber == b.fiber;
  }
};

struct Inclusion {
  std::string source;
  std::string target;
  IntegralAffineMap map;

  friend bool operator==(const Inclusion& a, const Inclusion& b) {
    return a.source == b.source && a.target == b.target && a.map == b.map;
  }
};

class AffineComplex {
 public:
  AffineComplex() = default;

  /// Shapes are stored canonicalized.  Duplicate ids are kept so that
  /// validation can report them.
  AffineComplex& add_stratum(Stratum s) {
    s.shape = canonicalize(s.shape);
    index_.emplace(s.id, strata_.size());
    strata_.push_back(std::move(s));
    return *this;
  }
  AffineComplex& add_stratum(std::string id, Polyhedron shape, bool generalized = false, std::string fiber = "") {
    std::size_t d = shape.ambient_dim();
    return add_stratum(Stratum{std::move(id), d, std::move(shape), generalized, std::move(fiber)});
  }
  AffineComplex& add_inclusion(Inclusion inc) {
    inclusions_.push_back(std::move(inc));
    return *this;
  }
  AffineComplex& add_inclusion(std::string source, std::string target, IntegralAffineMap map) {
    return add_inclusion(Inclusion{std::move(source), std::move(target), std::move(map)});
  }

  const std::vector<Stratum>& strata() const { return strata_; }
  const std::vector<Inclusion>& inclusions() const { return inclusions_; }
  std::size_t size() const { return strata_.size(); }

  bool has_stratum(const std::string& id) const { return index_.count(id) > 0; }
  const Stratum& stratum(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw InvalidArgument("unknown stratum '" + id + "'");
    return strata_[it->second];
  }
  Stratum& stratum_mut(const std::string& id) {
    auto it = index_.find(id);
    if (it == index_.end()) throw InvalidArgument("unknown stratum '" + id + "'");
    return strata_[it->second];
  }

  std::vector<const Inclusion*> inclusions_between(const std::string& source, const std::string& target) const {
    std::vector<const Inclusion*> out;
    for (const auto& inc : inclusions_)
      if (inc.source == source && inc.target == target) out.push_back(&inc);
    return out;
  }
  std::vector<const Inclusion*> inclusions_into(const std::string& target) const {
    std::vector<const Inclusion*> out;
    for (const auto& inc : inclusions_)
      if (inc.target == target) out.push_back(&inc);
    return out;
  }

  std::vector<std::string> ids() const {
    std::vector<std::string> out;
    for (const auto& s : strata_) out.push_back(s.id);
    return out;
  }

  friend bool operator==(const AffineComplex& a, const AffineComplex& b) {
    return a.strata_ == b.strata_ && a.inclusions_ == b.inclusions_;
  }

 private:
  std::vector<Stratum> strata_;
  std::vector<Inclusion> inclusions_;
  std::multimap<std::string, std::size_t> index_;
};

/// A stratified integral affine map: a functor on strata and one integral
/// affine map per source stratum.
struct StratifiedMap {
  std::map<std::string, std::string> functor;
  std::map<std::string, IntegralAffineMap> maps;

  friend bool operator==(const StratifiedMap& a, const StratifiedMap& b) {
    return a.functor == b.functor && a.maps == b.maps;
  }

  static StratifiedMap identity(const AffineComplex& c) {
    StratifiedMap f;
    for (const auto& s : c.strata()) {
      f.functor[s.id] = s.id;
      f.maps[s.id] = IntegralAffineMap::identity(s.dim);
    }
    return f;
  }
};

/// outer o inner.
inline StratifiedMap compose(const StratifiedMap& outer, const StratifiedMap& inner) {
  StratifiedMap out;
  for (const auto& [a, b] : inner.functor) {
    auto it = outer.functor.find(b);
    if (it == outer.functor.end()) throw InvalidArgument("compose: stratum '" + b + "' not in domain of outer map");
    out.functor[a] = it->second;
    out.maps[a] = compose(outer.maps.at(b), inner.maps.at(a));
  }
  return out;
}

namespace detail {

inline std::string active_label(const std::vector<std::size_t>& act) {
  std::string s = "{";
  for (std::size_t i = 0; i < act.size(); ++i) s += (i ? "," : "") + std::to_string(act[i]);
  return s + "}";
}

// Columns of an injective integral linear map span a saturated sublattice.
inline bool saturated_injective(const IntegerMatrix& linear) {
  if (linear.cols() == 0) return true;
  if (rank(linear) != linear.cols()) return false;
  return is_integral_basis_of_saturated_subspace(linear.transpose());
}

}  // namespace detail

/// Every violated axiom, with offending ids.  Empty report iff valid.
inline ValidationReport validate_complex(const AffineComplex& c) {
  ValidationReport rep;
  std::set<std::string> seen;
  std::map<std::string, FaceLattice> faces;
  for (const auto& s : c.strata()) {
    if (!seen.insert(s.id).second) {
      rep.error("duplicate-id", s.id, "stratum id used more than once");
      continue;
    }
    if (s.shape.ambient_dim() != s.dim) {
      rep.error("dimension-mismatch", s.id, "shape lives in R^" + std::to_string(s.shape.ambient_dim()) +
                                                " but stratum dimension is " + std::to_string(s.dim));
      continue;
    }
    if (is_empty(s.shape)) {
      rep.error("empty-shape", s.id, "shape is empty");
      continue;
    }
    if (dimension(s.shape) != static_cast<long>(s.dim)) {
      rep.error("not-full-dimensional", s.id, "shape has dimension " + std::to_string(dimension(s.shape)));
      continue;
    }
    auto fl = face_lattice(s.shape);
    if (!s.generalized) {
      for (const auto& f : fl.faces) {
        if (f.active.empty()) continue;
        IntegerMatrix normals(0, s.dim);
        for (auto i : f.active) normals.append_row(s.shape.inequalities()[i].normal);
        if (!is_integral_basis_of_saturated_subspace(normals))
          rep.error("non-smooth-face", s.id,
                    "local model at face " + detail::active_label(f.active) + " is not [0,inf)^k x R^m");
      }
    }
    faces.emplace(s.id, std::move(fl));
  }

  // Which face of the target each inclusion hits.
  std::map<std::string, std::map<std::size_t, std::vector<std::size_t>>> hits;  // target -> face -> inclusions
  std::vector<bool> good(c.inclusions().size(), false);
  for (std::size_t k = 0; k < c.inclusions().size(); ++k) {
    const auto& inc = c.inclusions()[k];
    std::string label = inc.source + "->" + inc.target;
    if (!faces.count(inc.source) || !faces.count(inc.target)) {
      if (!c.has_stratum(inc.source) || !c.has_stratum(inc.target))
        rep.error("unknown-stratum", label, "inclusion references a missing stratum");
      continue;
    }
    const auto& src = c.stratum(inc.source);
    const auto& dst = c.stratum(inc.target);
    if (inc.map.source_dim() != src.dim || inc.map.target_dim() != dst.dim) {
      rep.error("dimension-mismatch", label, "inclusion map has the wrong shape");
      continue;
    }
    if (!detail::saturated_injective(inc.map.linear)) {
      rep.error("non-integral-inclusion", label,
                "differential is not an integral isomorphism onto a saturated sublattice");
      continue;
    }
    auto img = image_under(src.shape, inc.map);
    const auto& fl = faces.at(inc.target);
    std::optional<std::size_t> which;
    for (std::size_t fi = 0; fi < fl.faces.size(); ++fi)
      if (fl.faces[fi].polyhedron == img) which = fi;
    if (!which) {
      rep.error("not-a-face", label, "image of the source is not a face of the target");
      continue;
    }
    if (fl.faces[*which].active.empty()) {
      rep.error("not-proper", label, "image is the whole target, not a boundary face");
      continue;
    }
    hits[inc.target][*which].push_back(k);
    good[k] = true;
  }

  for (const auto& [id, fl] : faces) {
    for (std::size_t fi = 0; fi < fl.faces.size(); ++fi) {
      if (fl.faces[fi].active.empty()) continue;
      auto n = hits.count(id) && hits[id].count(fi) ? hits[id][fi].size() : 0;
      if (n == 0)
        rep.error("missing-inclusion", id,
                  "face " + detail::active_label(fl.faces[fi].active) + " is not the image of any inclusion");
      else if (n > 1)
        rep.error("duplicate-inclusion", id,
                  "face " + detail::active_label(fl.faces[fi].active) + " is the image of " + std::to_string(n) +
                      " inclusions");
    }
  }

  // Closure under composition.
  std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> by_pair;
  std::map<std::string, std::vector<std::size_t>> by_source;
  for (std::size_t k = 0; k < c.inclusions().size(); ++k) {
    if (!good[k]) continue;
    const auto& inc = c.inclusions()[k];
    by_pair[{inc.source, inc.target}].push_back(k);
    by_source[inc.source].push_back(k);
  }
  for (std::size_t k = 0; k < c.inclusions().size(); ++k) {
    if (!good[k]) continue;
    const auto& first = c.inclusions()[k];
    auto it = by_source.find(first.target);
    if (it == by_source.end()) continue;
    for (auto j : it->second) {
      const auto& second = c.inclusions()[j];
      auto composite = compose(second.map, first.map);
      bool found = false;
      auto p = by_pair.find({first.source, second.target});
      if (p != by_pair.end())
        for (auto m : p->second)
          if (c.inclusions()[m].map == composite) found = true;
      if (!found)
        rep.error("composition-not-closed", first.source + "->" + first.target + "->" + second.target,
                  "composite inclusion is missing");
    }
  }

  for (const auto& [key, list] : by_pair)
    if (list.size() > 1)
      rep.warning("self-gluing", key.first + "->" + key.second,
                  std::to_string(list.size()) + " distinct inclusions between the same strata");
  return rep;
}

/// Checks functoriality, interior-to-interior and containment of images.
inline ValidationReport validate_map(const StratifiedMap& f, const AffineComplex& src, const AffineComplex& dst) {
  ValidationReport rep;
  for (const auto& s : src.strata()) {
    auto it = f.functor.find(s.id);
    if (it == f.functor.end()) {
      rep.error("functor-undefined", s.id, "no image stratum assigned");
      continue;
    }
    if (!dst.has_stratum(it->second)) {
      rep.error("unknown-stratum", s.id, "image stratum '" + it->second + "' does not exist");
      continue;
    }
    auto mit = f.maps.find(s.id);
    if (mit == f.maps.end()) {
      rep.error("map-undefined", s.id, "no affine map given");
      continue;
    }
    const auto& t = dst.stratum(it->second);
    const auto& m = mit->second;
    if (m.source_dim() != s.dim || m.target_dim() != t.dim) {
      rep.error("dimension-mismatch", s.id, "affine map has the wrong shape");
      continue;
    }
    if (!contains(preimage(t.shape, m), s.shape)) {
      rep.error("image-outside-target", s.id, "image is not contained in stratum '" + t.id + "'");
      continue;
    }
    if (!in_relative_interior(t.shape, m(relative_interior_point(s.shape))))
      rep.error("interior-not-preserved", s.id, "interior is not sent into the interior of '" + t.id + "'");
  }
  if (!rep.ok()) return rep;

  for (const auto& inc : src.inclusions()) {
    const auto& a = f.functor.at(inc.source);
    const auto& b = f.functor.at(inc.target);
    auto lhs = compose(f.maps.at(inc.target), inc.map);
    std::string label = inc.source + "->" + inc.target;
    if (a == b) {
      if (lhs != f.maps.at(inc.source))
        rep.error("not-functorial", label, "map on the face differs from the restriction");
      continue;
    }
    bool found = false;
    for (const auto* k : dst.inclusions_between(a, b))
      if (compose(k->map, f.maps.at(inc.source)) == lhs) found = true;
    if (!found)
      rep.error("not-functorial", label, "no inclusion " + a + "->" + b + " makes the square commute");
  }
  return rep;
}

/// Connected components of the underlying space, each sorted, listed in
/// order of their smallest id.
inline std::vector<std::vector<std::string>> underlying_space_components(const AffineComplex& c) {
  auto ids = c.ids();
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < ids.size(); ++i) idx[ids[i]] = i;
  std::vector<std::size_t> parent(ids.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& inc : c.inclusions()) {
    if (!idx.count(inc.source) || !idx.count(inc.target)) continue;
    auto a = find(idx[inc.source]), b = find(idx[inc.target]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::size_t, std::vector<std::string>> groups;
  for (std::size_t i = 0; i < ids.size(); ++i) groups[find(i)].push_back(ids[i]);
  std::vector<std::vector<std::string>> out;
  for (auto& [k, v] : groups) out.push_back(std::move(v));
  return out;
}

/// Strata ordered by inclusion; covers are inclusions that do not factor
/// through a third stratum.
inline Poset strata_poset(const AffineComplex& c) {
  auto ids = c.ids();
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  Poset p(ids);
  std::set<std::pair<std::string, std::string>> rel;
  for (const auto& inc : c.inclusions())
    if (inc.source != inc.target) rel.insert({inc.source, inc.target});
  // Transitive closure, in case the complex is not closed under composition.
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [a, b] : std::vector<std::pair<std::string, std::string>>(rel.begin(), rel.end()))
      for (auto it = rel.lower_bound({b, ""}); it != rel.end() && it->first == b; ++it)
        if (rel.insert({a, it->second}).second) grew = true;
  }
  std::map<std::string, std::vector<std::string>> above;
  for (const auto& [a, b] : rel) above[a].push_back(b);
  for (const auto& [a, b] : rel) {
    bool cover = true;
    for (const auto& mid : above[a])
      if (mid != b && rel.count({mid, b})) {
        cover = false;
        break;
      }
    if (cover) p.add_cover(a, b);
  }
  return p;
}

/// Every boundary and corner face of every stratum is present in the
/// complex as the image of an inclusion.
inline bool is_complete_base(const AffineComplex& c) {
  for (const auto& s : c.strata()) {
    if (s.shape.ambient_dim() != s.dim || is_empty(s.shape)) return false;
    auto fl = face_lattice(s.shape);
    std::set<Polyhedron> covered;
    for (const auto* inc : c.inclusions_into(s.id)) {
      if (!c.has_stratum(inc->source)) continue;
      const auto& src = c.stratum(inc->source);
      if (inc->map.source_dim() != src.dim || inc->map.target_dim() != s.dim || !inc->map.is_injective()) continue;
      covered.insert(image_under(src.shape, inc->map));
    }
    for (const auto& f : fl.faces)
      if (!f.active.empty() && !covered.count(f.polyhedron)) return false;
  }
  return true;
}

/// Same complex with strata sorted by id and inclusions by (source,
/// target, map); equal complexes listed in different orders become equal.
inline AffineComplex sorted(const AffineComplex& c) {
  auto strata = c.strata();
  std::sort(strata.begin(), strata.end(), [](const Stratum& a, const Stratum& b) { return a.id < b.id; });
  auto incs = c.inclusions();
  std::sort(incs.begin(), incs.end(), [](const Inclusion& a, const Inclusion& b) {
    return std::tie(a.source, a.target, a.map) < std::tie(b.source, b.target, b.map);
  });
  AffineComplex out;
  for (auto& s : strata) out.add_stratum(std::move(s));
  for (auto& i : incs) out.add_inclusion(std::move(i));
  return out;
}

/// Strata poset as DOT text.
inline std::string to_dot(const AffineComplex& c, const std::string& name = "complex") {
  return strata_poset(c).to_dot(name);
}

// Small building blocks ------------------------------------------------------

/// The single-stratum complex R^n.
inline AffineComplex affine_space_complex(std::size_t n, const std::string& id = "R") {
  AffineComplex c;
  c.add_stratum(id, Polyhedron(n));
  return c;
}

}  // namespace exploded
