#pragma once

// JSON interchange.  Integers and rationals are written as decimal strings
// ("-3", "5/2"); every top-level document carries "format" and "kind".

#include "exploded/explosion.hpp"
#include "exploded/fiber_product.hpp"
#include "exploded/moduli.hpp"
#include "exploded/poset.hpp"
#include "exploded/refinement.hpp"
#include "exploded/tropical.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace exploded::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kFormat = "exploded-kit/1";

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw FormatError(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field '") + key + "'");
  return *it;
}

inline std::string text(const json& j, const char* what) {
  if (!j.is_string()) throw FormatError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

inline std::size_t count(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw FormatError(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

inline bool flag(const json& j, const char* what) {
  if (!j.is_boolean()) throw FormatError(std::string(what) + " must be a boolean");
  return j.get<bool>();
}

inline const json& array(const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  return j;
}

inline const json& object(const json& j, const char* what) {
  if (!j.is_object()) throw FormatError(std::string(what) + " must be an object");
  return j;
}

inline std::string optional_text(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? std::string() : text(*it, key);
}

}  // namespace detail

// Scalars and vectors ---------------------------------------------------------

inline json encode(const Integer& v) { return to_string(v); }
inline json encode(const Rational& v) { return to_string(v); }

// Plain JSON integers are accepted on input too.
inline Integer decode_integer(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (!j.is_string()) throw FormatError("integer must be a decimal string");
  return parse_integer(j.get<std::string>());
}

inline Rational decode_rational(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) throw FormatError("rational must be a string 'p/q'");
  return parse_rational(j.get<std::string>());
}

inline json encode(const IntegerVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(encode(x));
  return out;
}

inline json encode(const RationalVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(encode(x));
  return out;
}

inline IntegerVector decode_integer_vector(const json& j) {
  IntegerVector out;
  for (const auto& x : detail::array(j, "vector")) out.push_back(decode_integer(x));
  return out;
}

inline RationalVector decode_rational_vector(const json& j) {
  RationalVector out;
  for (const auto& x : detail::array(j, "vector")) out.push_back(decode_rational(x));
  return out;
}

inline json encode(const IntegerMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(encode(m.row(i)));
  return {{"shape", {m.rows(), m.cols()}}, {"rows", rows}};
}

inline IntegerMatrix decode_integer_matrix(const json& j) {
  const auto& shape = detail::array(detail::field(j, "shape"), "shape");
  if (shape.size() != 2) throw FormatError("matrix shape must be [rows, cols]");
  std::size_t r = detail::count(shape[0], "rows"), c = detail::count(shape[1], "cols");
  const auto& rows = detail::array(detail::field(j, "rows"), "rows");
  if (rows.size() != r) throw FormatError("matrix row count differs from its shape");
  IntegerMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    auto row = decode_integer_vector(rows[i]);
    if (row.size() != c) throw FormatError("matrix row length differs from its shape");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = row[k];
  }
  return m;
}

inline json encode(const IntegralAffineMap& f) {
  return {{"linear", encode(f.linear)}, {"translation", encode(f.translation)}};
}

inline IntegralAffineMap decode_affine_map(const json& j) {
  try {
    return IntegralAffineMap(decode_integer_matrix(detail::field(j, "linear")),
                             decode_rational_vector(detail::field(j, "translation")));
  } catch (const DimensionMismatch& e) {
    throw FormatError(e.what());
  }
}

// Polyhedra and complexes -----------------------------------------------------

inline json encode(const Constraint& c) { return json::array({encode(c.normal), encode(c.rhs)}); }

inline Constraint decode_constraint(const json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("constraint must be [covector, rhs]");
  return {decode_integer_vector(j[0]), decode_rational(j[1])};
}

inline json encode(const Polyhedron& p) {
  json ineqs = json::array(), eqs = json::array();
  for (const auto& c : p.inequalities()) ineqs.push_back(encode(c));
  for (const auto& c : p.equalities()) eqs.push_back(encode(c));
  json out = {{"dim", p.ambient_dim()}, {"ineqs", ineqs}, {"eqs", eqs}};
  if (p.is_empty_flagged()) out["empty"] = true;
  return out;
}

inline Polyhedron decode_polyhedron(const json& j) {
  std::size_t dim = detail::count(detail::field(j, "dim"), "dim");
  if (j.contains("empty") && detail::flag(j["empty"], "empty")) return Polyhedron::empty_set(dim);
  std::vector<Constraint> ineqs, eqs;
  for (const auto& c : detail::array(detail::field(j, "ineqs"), "ineqs")) ineqs.push_back(decode_constraint(c));
  if (j.contains("eqs"))
    for (const auto& c : detail::array(j["eqs"], "eqs")) eqs.push_back(decode_constraint(c));
  try {
    return Polyhedron(dim, std::move(ineqs), std::move(eqs));
  } catch (const DimensionMismatch& e) {
    throw FormatError(e.what());
  }
}

inline json encode(const Stratum& s) {
  return {{"id", s.id}, {"dim", s.dim}, {"shape", encode(s.shape)}, {"generalized", s.generalized}, {"fiber", s.fiber}};
}

inline json encode(const Inclusion& inc) {
  return {{"source", inc.source}, {"target", inc.target}, {"map", encode(inc.map)}};
}

inline json encode(const AffineComplex& c) {
  json strata = json::array(), incs = json::array();
  for (const auto& s : c.strata()) strata.push_back(encode(s));
  for (const auto& inc : c.inclusions()) incs.push_back(encode(inc));
  return {{"strata", strata}, {"inclusions", incs}};
}

inline AffineComplex decode_complex(const json& j) {
  AffineComplex c;
  for (const auto& s : detail::array(detail::field(j, "strata"), "strata")) {
    Stratum st;
    st.id = detail::text(detail::field(s, "id"), "stratum id");
    st.shape = decode_polyhedron(detail::field(s, "shape"));
    st.dim = s.contains("dim") ? detail::count(s["dim"], "dim") : st.shape.ambient_dim();
    if (st.dim != st.shape.ambient_dim()) throw FormatError("stratum '" + st.id + "': dim differs from its shape");
    st.generalized = s.contains("generalized") && detail::flag(s["generalized"], "generalized");
    st.fiber = detail::optional_text(s, "fiber");
    c.add_stratum(std::move(st));
  }
  if (j.contains("inclusions"))
    for (const auto& inc : detail::array(j["inclusions"], "inclusions"))
      c.add_inclusion(detail::text(detail::field(inc, "source"), "source"),
                      detail::text(detail::field(inc, "target"), "target"),
                      decode_affine_map(detail::field(inc, "map")));
  return c;
}

inline json encode(const StratifiedMap& f) {
  json functor = json::object(), maps = json::object();
  for (const auto& [a, b] : f.functor) functor[a] = b;
  for (const auto& [a, m] : f.maps) maps[a] = encode(m);
  return {{"functor", functor}, {"maps", maps}};
}

inline StratifiedMap decode_stratified_map(const json& j) {
  StratifiedMap f;
  for (const auto& [k, v] : detail::object(detail::field(j, "functor"), "functor").items())
    f.functor[k] = detail::text(v, "functor target");
  for (const auto& [k, v] : detail::object(detail::field(j, "maps"), "maps").items()) f.maps[k] = decode_affine_map(v);
  return f;
}

/// A stratified map together with its source and target complexes.
struct MapBundle {
  AffineComplex source;
  AffineComplex target;
  StratifiedMap map;
  friend bool operator==(const MapBundle& a, const MapBundle& b) {
    return a.source == b.source && a.target == b.target && a.map.functor == b.map.functor && a.map.maps == b.map.maps;
  }
};

inline json encode(const MapBundle& m) {
  json out = encode(m.map);
  out["source"] = encode(m.source);
  out["target"] = encode(m.target);
  return out;
}

inline MapBundle decode_map_bundle(const json& j) {
  return {decode_complex(detail::field(j, "source")), decode_complex(detail::field(j, "target")),
          decode_stratified_map(j)};
}

// Explosion and refinement ----------------------------------------------------

inline json encode(const ChartSignature& s) { return json::array({s.affine, s.boundary, s.smooth}); }

inline ChartSignature decode_signature(const json& j) {
  if (!j.is_array() || j.size() != 3) throw FormatError("signature must be [affine, boundary, smooth]");
  return {detail::count(j[0], "affine"), detail::count(j[1], "boundary"), detail::count(j[2], "smooth")};
}

inline json encode(const LogMonomial& f) {
  return {{"affine", encode(f.affine_exponents)}, {"boundary", encode(f.boundary_exponents)}, {"smooth", f.smooth_part}};
}

inline LogMonomial decode_monomial(const json& j) {
  return {decode_integer_vector(detail::field(j, "affine")), decode_integer_vector(detail::field(j, "boundary")),
          detail::optional_text(j, "smooth")};
}

inline json encode(const ExplodedChart& e) {
  json sigs = json::object(), actions = json::object();
  for (const auto& [id, s] : e.fiber_signatures) sigs[id] = encode(s);
  for (const auto& [id, a] : e.actions) actions[id] = encode(a);
  return {{"signature", encode(e.signature)}, {"base", encode(e.base)}, {"fiber_signatures", sigs}, {"actions", actions}};
}

inline ExplodedChart decode_exploded_chart(const json& j) {
  ExplodedChart e;
  e.signature = decode_signature(detail::field(j, "signature"));
  e.base = decode_complex(detail::field(j, "base"));
  for (const auto& [k, v] : detail::object(detail::field(j, "fiber_signatures"), "fiber_signatures").items())
    e.fiber_signatures[k] = decode_signature(v);
  for (const auto& [k, v] : detail::object(detail::field(j, "actions"), "actions").items())
    e.actions[k] = decode_integer_matrix(v);
  return e;
}

inline json encode_cells(const std::map<std::string, std::vector<Polyhedron>>& cells) {
  json out = json::object();
  for (const auto& [id, list] : cells) {
    json arr = json::array();
    for (const auto& p : list) arr.push_back(encode(p));
    out[id] = arr;
  }
  return out;
}

inline std::map<std::string, std::vector<Polyhedron>> decode_cells(const json& j) {
  std::map<std::string, std::vector<Polyhedron>> out;
  for (const auto& [k, v] : detail::object(j, "cells").items()) {
    auto& list = out[k];
    for (const auto& p : detail::array(v, "cell list")) list.push_back(decode_polyhedron(p));
  }
  return out;
}

inline json encode(const Subdivision& s) {
  return {{"mode", s.mode == SubdivisionMode::Strict ? "strict" : "permissive"},
          {"coarse", encode(s.coarse)},
          {"cells", encode_cells(s.cells)},
          {"fine", encode(s.fine)},
          {"map", encode(s.map)}};
}

/// With "fine" and "map" present they are taken as given (validation
/// catches inconsistencies); otherwise the subdivision is built from the
/// cells.
inline Subdivision decode_subdivision(const json& j) {
  SubdivisionMode mode = SubdivisionMode::Strict;
  if (j.contains("mode")) {
    auto m = detail::text(j["mode"], "mode");
    if (m == "permissive")
      mode = SubdivisionMode::Permissive;
    else if (m != "strict")
      throw FormatError("unknown subdivision mode '" + m + "'");
  }
  auto coarse = decode_complex(detail::field(j, "coarse"));
  auto cells = j.contains("cells") ? decode_cells(j["cells"]) : std::map<std::string, std::vector<Polyhedron>>{};
  if (j.contains("fine") && j.contains("map")) {
    Subdivision s;
    s.coarse = std::move(coarse);
    s.fine = decode_complex(j["fine"]);
    s.map = decode_stratified_map(j["map"]);
    s.mode = mode;
    s.cells = std::move(cells);
    return s;
  }
  try {
    return make_subdivision(coarse, cells, mode);
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
}

inline json encode(const CellChart& c) {
  return {{"alphas", encode(c.alphas)}, {"betas", encode(c.betas)}, {"roles", encode(c.roles)}};
}

inline CellChart decode_cell_chart(const json& j) {
  return {decode_integer_matrix(detail::field(j, "alphas")), decode_integer_matrix(detail::field(j, "betas")),
          decode_signature(detail::field(j, "roles"))};
}

inline json encode(const ChartTransition& t) {
  return {{"from", t.from}, {"to", t.to}, {"matrix", encode(t.matrix)}};
}

inline json encode(const RefinedChart& r) {
  json cells = json::object(), trans = json::array();
  for (const auto& [id, c] : r.cell_charts) cells[id] = encode(c);
  for (const auto& t : r.transitions) trans.push_back(encode(t));
  return {{"chart", encode(r.chart)}, {"cell_charts", cells}, {"transitions", trans}};
}

inline RefinedChart decode_refined_chart(const json& j) {
  RefinedChart r;
  r.chart = decode_exploded_chart(detail::field(j, "chart"));
  for (const auto& [k, v] : detail::object(detail::field(j, "cell_charts"), "cell_charts").items())
    r.cell_charts[k] = decode_cell_chart(v);
  for (const auto& t : detail::array(detail::field(j, "transitions"), "transitions"))
    r.transitions.push_back({detail::text(detail::field(t, "from"), "from"), detail::text(detail::field(t, "to"), "to"),
                             decode_integer_matrix(detail::field(t, "matrix"))});
  return r;
}

inline json encode(const WallCrossing& w) {
  return {{"source_stratum", w.source_stratum}, {"coarse_stratum", w.coarse_stratum}, {"fine_stratum", w.fine_stratum},
          {"wall", w.wall},                     {"from", encode(w.from)},               {"to", encode(w.to)},
          {"exit_point", encode(w.exit_point)}, {"witness", encode(w.witness)}};
}

inline WallCrossing decode_wall_crossing(const json& j) {
  WallCrossing w;
  w.source_stratum = detail::text(detail::field(j, "source_stratum"), "source_stratum");
  w.coarse_stratum = detail::text(detail::field(j, "coarse_stratum"), "coarse_stratum");
  w.fine_stratum = detail::text(detail::field(j, "fine_stratum"), "fine_stratum");
  w.wall = detail::text(detail::field(j, "wall"), "wall");
  w.from = decode_rational_vector(detail::field(j, "from"));
  w.to = decode_rational_vector(detail::field(j, "to"));
  w.exit_point = decode_rational_vector(detail::field(j, "exit_point"));
  w.witness = decode_rational_vector(detail::field(j, "witness"));
  return w;
}

// Tropical curves -------------------------------------------------------------

inline json encode(const EdgeLength& l) { return to_string(l); }

inline EdgeLength decode_length(const json& j) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "inf") return EdgeLength::infinite();
    if (s == "?") return EdgeLength::unknown();
  }
  return EdgeLength::finite(decode_rational(j));
}

inline json encode(const TropicalGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges) {
    json je = {{"id", e.id}, {"tail", e.tail}};
    if (e.head) je["head"] = *e.head;
    je["length"] = encode(e.length);
    je["tail_momentum"] = encode(e.tail_momentum);
    if (e.head) je["head_momentum"] = encode(e.head_momentum);
    edges.push_back(je);
  }
  json meta = json::object();
  for (const auto& [k, v] : g.metadata) meta[k] = v;
  return {{"n", g.n}, {"vertices", g.vertices}, {"edges", edges}, {"metadata", meta}};
}

/// A bounded edge may give a single "momentum" (tail end) instead of both.
inline TropicalGraph decode_graph(const json& j) {
  TropicalGraph g;
  g.n = detail::count(detail::field(j, "n"), "n");
  for (const auto& v : detail::array(detail::field(j, "vertices"), "vertices")) g.vertices.push_back(detail::text(v, "vertex"));
  for (const auto& je : detail::array(detail::field(j, "edges"), "edges")) {
    TropicalEdge e;
    e.id = detail::text(detail::field(je, "id"), "edge id");
    e.tail = detail::text(detail::field(je, "tail"), "tail");
    if (je.contains("head")) e.head = detail::text(je["head"], "head");
    e.length = je.contains("length") ? decode_length(je["length"])
                                     : (e.head ? EdgeLength::unknown() : EdgeLength::infinite());
    if (je.contains("momentum")) {
      e.tail_momentum = decode_integer_vector(je["momentum"]);
      if (e.head) {
        e.head_momentum = e.tail_momentum;
        for (auto& x : e.head_momentum) x = -x;
      }
    } else {
      e.tail_momentum = decode_integer_vector(detail::field(je, "tail_momentum"));
      if (e.head) e.head_momentum = decode_integer_vector(detail::field(je, "head_momentum"));
    }
    g.edges.push_back(std::move(e));
  }
  if (j.contains("metadata"))
    for (const auto& [k, v] : detail::object(j["metadata"], "metadata").items()) g.metadata[k] = detail::text(v, "metadata");
  return g;
}

inline json encode(const TropicalRealization& r) {
  json pos = json::object();
  for (const auto& [v, p] : r.positions) pos[v] = encode(p);
  return {{"positions", pos}};
}

inline TropicalRealization decode_realization(const json& j) {
  TropicalRealization r;
  for (const auto& [k, v] : detail::object(detail::field(j, "positions"), "positions").items())
    r.positions[k] = decode_rational_vector(v);
  return r;
}

inline json encode(const CycleDefect& d) {
  json cycle = json::array();
  for (const auto& [e, s] : d.cycle) cycle.push_back({{"edge", e}, {"sign", s}});
  return {{"cycle", cycle}, {"defect", encode(d.defect)}};
}

inline CycleDefect decode_cycle_defect(const json& j) {
  CycleDefect d;
  for (const auto& step : detail::array(detail::field(j, "cycle"), "cycle")) {
    const auto& s = detail::field(step, "sign");
    if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1)) throw FormatError("sign must be 1 or -1");
    d.cycle.emplace_back(detail::text(detail::field(step, "edge"), "edge"), s.get<int>());
  }
  d.defect = decode_rational_vector(detail::field(j, "defect"));
  return d;
}

inline json encode(const LengthSolution& s) {
  static const char* kinds[] = {"unique", "family", "inconsistent"};
  json lengths = json::object(), dirs = json::array();
  for (const auto& [e, l] : s.lengths) lengths[e] = encode(l);
  for (const auto& d : s.directions) {
    json jd = json::object();
    for (const auto& [e, l] : d) jd[e] = encode(l);
    dirs.push_back(jd);
  }
  json out = {{"kind", kinds[static_cast<int>(s.kind)]}, {"unknowns", s.unknowns}, {"lengths", lengths},
              {"directions", dirs}};
  if (!s.reason.empty()) out["reason"] = s.reason;
  return out;
}

// Moduli ----------------------------------------------------------------------

inline json encode(const ModuliType& t) {
  json edges = json::array();
  for (auto [a, b] : t.edges) edges.push_back({a, b});
  return {{"canonical", canonical_form(t)},
          {"vertex_count", t.vertex_count},
          {"leg_vertex", t.leg_vertex},
          {"edges", edges}};
}

inline ModuliType decode_moduli_type(const json& j) {
  ModuliType t;
  t.vertex_count = detail::count(detail::field(j, "vertex_count"), "vertex_count");
  for (const auto& v : detail::array(detail::field(j, "leg_vertex"), "leg_vertex"))
    t.leg_vertex.push_back(detail::count(v, "leg vertex"));
  for (const auto& e : detail::array(detail::field(j, "edges"), "edges")) {
    if (!e.is_array() || e.size() != 2) throw FormatError("edge must be [a, b]");
    t.edges.emplace_back(detail::count(e[0], "edge end"), detail::count(e[1], "edge end"));
  }
  for (auto v : t.leg_vertex)
    if (v >= t.vertex_count) throw FormatError("leg on a nonexistent vertex");
  for (auto [a, b] : t.edges)
    if (a >= t.vertex_count || b >= t.vertex_count) throw FormatError("edge on a nonexistent vertex");
  return t;
}

inline json encode(const Poset& p) {
  json covers = json::array();
  for (const auto& [a, b] : p.covers()) covers.push_back({a, b});
  return {{"elements", p.elements()}, {"covers", covers}};
}

inline Poset decode_poset(const json& j) {
  std::vector<std::string> elements;
  for (const auto& e : detail::array(detail::field(j, "elements"), "elements"))
    elements.push_back(detail::text(e, "element"));
  Poset p(std::move(elements));
  for (const auto& c : detail::array(detail::field(j, "covers"), "covers")) {
    if (!c.is_array() || c.size() != 2) throw FormatError("cover must be [lower, upper]");
    try {
      p.add_cover(detail::text(c[0], "lower"), detail::text(c[1], "upper"));
    } catch (const InvalidArgument& e) {
      throw FormatError(e.what());
    }
  }
  return p;
}

// Fiber products and reports --------------------------------------------------

inline json encode(const FiberProductResult& r) {
  return {{"complex", encode(r.complex)},
          {"to_a", encode(r.to_a)},
          {"to_b", encode(r.to_b)},
          {"hypothesis_ok", r.hypothesis_ok}};
}

inline FiberProductResult decode_fiber_product(const json& j) {
  return {decode_complex(detail::field(j, "complex")), decode_stratified_map(detail::field(j, "to_a")),
          decode_stratified_map(detail::field(j, "to_b")), detail::flag(detail::field(j, "hypothesis_ok"), "hypothesis_ok")};
}

inline json encode(const ValidationReport& r) {
  json diags = json::array();
  for (const auto& d : r.diagnostics())
    diags.push_back({{"severity", d.severity == Severity::Error ? "error" : "warning"},
                     {"code", d.code},
                     {"subject", d.subject},
                     {"message", d.message}});
  return {{"ok", r.ok()}, {"errors", r.error_count()}, {"warnings", r.warning_count()}, {"diagnostics", diags}};
}

inline ValidationReport decode_report(const json& j) {
  ValidationReport r;
  for (const auto& d : detail::array(detail::field(j, "diagnostics"), "diagnostics")) {
    auto sev = detail::text(detail::field(d, "severity"), "severity");
    auto code = detail::text(detail::field(d, "code"), "code");
    auto subject = detail::text(detail::field(d, "subject"), "subject");
    auto message = detail::text(detail::field(d, "message"), "message");
    if (sev == "error")
      r.error(code, subject, message);
    else if (sev == "warning")
      r.warning(code, subject, message);
    else
      throw FormatError("unknown severity '" + sev + "'");
  }
  return r;
}

// Documents -------------------------------------------------------------------

/// {"format": ..., "kind": kind, ...body}
inline json document(const std::string& kind, const json& body) {
  json out = {{"format", kFormat}, {"kind", kind}};
  for (const auto& [k, v] : body.items()) out[k] = v;
  return out;
}

/// Checks the format tag and kind; returns the document itself.
inline const json& open_document(const json& doc, const std::string& kind) {
  if (!doc.is_object()) throw FormatError("document must be a JSON object");
  auto f = doc.find("format");
  if (f == doc.end()) throw FormatError("document has no format tag");
  if (!f->is_string() || f->get<std::string>() != kFormat)
    throw FormatError("unsupported format " + f->dump() + ", expected \"" + kFormat + "\"");
  auto k = doc.find("kind");
  if (k == doc.end() || !k->is_string()) throw FormatError("document has no kind");
  if (k->get<std::string>() != kind)
    throw FormatError("expected a '" + kind + "' document, got '" + k->get<std::string>() + "'");
  return doc;
}

inline std::string document_kind(const json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) throw FormatError("document has no kind");
  return doc["kind"].get<std::string>();
}

inline json parse_text(const std::string& s) {
  try {
    return json::parse(s);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << content;
  if (!out) throw FormatError("write to '" + path + "' failed");
}

// Decoding errors from nlohmann itself (type mismatches in odd places) are
// folded into FormatError.
template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(e.what());
  }
}

}  // namespace exploded::io
