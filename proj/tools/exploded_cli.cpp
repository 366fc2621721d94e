// exploded: command line front end.
//
// Exit status: 0 success, 1 validation failure or a negative certificate
// (wall crossing, cycle defect, unbalanced graph, failed universal check),
// 2 usage, I/O or format error.  Errors are reported as JSON on stderr.

#include "exploded/datasets.hpp"
#include "exploded/io.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace exploded;
using io::json;

namespace {

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(what) {}
};

// Loaded documents keyed by path; each typed accessor validates before
// handing the object out.
class Workspace {
 public:
  const json& document(const std::string& path) {
    auto it = docs_.find(path);
    if (it == docs_.end()) it = docs_.emplace(path, io::read_file(path)).first;
    return it->second;
  }

  const json& document(const std::string& path, const std::string& kind) {
    return io::open_document(document(path), kind);
  }

  AffineComplex complex(const std::string& path) {
    auto c = io::guarded([&] { return io::decode_complex(document(path, "complex")); });
    require(validate_complex(c), path);
    return c;
  }

  io::MapBundle map(const std::string& path) {
    auto m = io::guarded([&] { return io::decode_map_bundle(document(path, "map")); });
    require(validate_complex(m.source), path + " (source)");
    require(validate_complex(m.target), path + " (target)");
    require(validate_map(m.map, m.source, m.target), path);
    return m;
  }

  Subdivision subdivision(const std::string& path) {
    auto s = io::guarded([&] { return io::decode_subdivision(document(path, "subdivision")); });
    require(validate_subdivision(s), path);
    return s;
  }

  ExplodedChart chart(const std::string& path) {
    auto e = io::guarded([&] { return io::decode_exploded_chart(document(path, "exploded-chart")); });
    require(validate_exploded_chart(e), path);
    return e;
  }

  TropicalGraph graph(const std::string& path) {
    auto g = io::guarded([&] { return io::decode_graph(document(path, "tropical-graph")); });
    require(validate_graph(g), path);
    return g;
  }

 private:
  static void require(const ValidationReport& r, const std::string& what) {
    if (r.ok()) return;
    ValidationReport tagged;
    tagged.merge(r, what + ": ");
    throw ValidationError(tagged);
  }

  std::map<std::string, json> docs_;
};

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    io::write_file(out, text);
}

void emit_document(const std::string& out, const std::string& kind, const json& body) {
  emit(out, io::dump(io::document(kind, body)));
}

ChartSignature parse_signature(const std::string& text) {
  std::vector<std::size_t> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto v = parse_integer(item);
    if (v < 0) throw UsageError("signature entries must be non-negative");
    parts.push_back(static_cast<std::size_t>(v));
  }
  if (parts.size() != 3) throw UsageError("signature must be m,k,n");
  return {parts[0], parts[1], parts[2]};
}

std::map<std::string, RationalVector> parse_anchors(const std::vector<std::string>& specs) {
  std::map<std::string, RationalVector> out;
  for (const auto& s : specs) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("anchor must look like vertex=x,y");
    RationalVector p;
    std::stringstream ss(s.substr(eq + 1));
    std::string item;
    while (std::getline(ss, item, ',')) p.push_back(parse_rational(item));
    out[s.substr(0, eq)] = p;
  }
  return out;
}

// Subcommands -----------------------------------------------------------------

int run_validate(Workspace& ws, const std::string& path) {
  const auto& doc = ws.document(path);
  auto kind = io::document_kind(doc);
  io::open_document(doc, kind);
  ValidationReport rep;
  io::guarded([&] {
    if (kind == "complex") {
      rep = validate_complex(io::decode_complex(doc));
    } else if (kind == "map") {
      auto m = io::decode_map_bundle(doc);
      rep.merge(validate_complex(m.source), "source: ");
      rep.merge(validate_complex(m.target), "target: ");
      if (rep.ok()) rep.merge(validate_map(m.map, m.source, m.target));
    } else if (kind == "subdivision") {
      rep = validate_subdivision(io::decode_subdivision(doc));
    } else if (kind == "exploded-chart") {
      rep = validate_exploded_chart(io::decode_exploded_chart(doc));
    } else if (kind == "refined-chart") {
      rep = validate_exploded_chart(io::decode_refined_chart(doc).chart);
    } else if (kind == "tropical-graph") {
      auto g = io::decode_graph(doc);
      rep = validate_graph(g);
      if (rep.ok()) rep.merge(check_balancing(g));
    } else if (kind == "fiber-product") {
      auto fp = io::decode_fiber_product(doc);
      rep = validate_complex(fp.complex);
      if (!fp.hypothesis_ok) rep.warning("generalized", "", "transversality hypothesis failed; generalized strata present");
    } else {
      throw FormatError("cannot validate a '" + kind + "' document");
    }
  });
  std::cout << io::dump(io::document("validation-report", io::encode(rep)));
  return rep.ok() ? 0 : 1;
}

int run_explode(const std::string& sig_text, const std::string& out) {
  auto e = explode(parse_signature(sig_text));
  if (!out.empty()) emit_document(out, "exploded-chart", io::encode(e));
  if (out == "-") return 0;
  std::cout << "stratum\tdim\tfiber\n";
  for (const auto& s : e.base.strata()) {
    std::ostringstream row;
    row << s.id << "\t" << s.dim << "\t" << e.fiber_signatures.at(s.id) << "\n";
    std::cout << row.str();
  }
  return 0;
}

int run_refine(Workspace& ws, const std::string& complex_path, const std::string& sub_path, const std::string& out) {
  auto s = ws.subdivision(sub_path);
  auto kind = io::document_kind(ws.document(complex_path));
  if (kind == "complex") {
    auto c = ws.complex(complex_path);
    if (!(c == s.coarse)) throw InvalidArgument("the subdivision is not of this complex");
    emit_document(out, "subdivision", io::encode(s));
    return 0;
  }
  auto e = ws.chart(complex_path);
  auto r = refine(e, s);
  emit_document(out, "refined-chart", io::encode(r));
  return 0;
}

int run_lift(Workspace& ws, const std::string& map_path, const std::string& sub_path, const std::string& out) {
  auto m = ws.map(map_path);
  auto s = ws.subdivision(sub_path);
  if (!(m.target == s.coarse)) throw InvalidArgument("the map does not land in the subdivided complex");
  auto res = lift_map(m.map, m.source, s);
  if (auto* f = std::get_if<StratifiedMap>(&res)) {
    emit_document(out, "map", io::encode(io::MapBundle{m.source, s.fine, *f}));
    return 0;
  }
  emit_document(out, "wall-crossing", io::encode(std::get<WallCrossing>(res)));
  return 1;
}

int run_balance(Workspace& ws, const std::string& path) {
  auto g = ws.graph(path);
  auto rep = check_balancing(g);
  json body = io::encode(rep);
  json defects = json::object();
  for (const auto& [v, d] : balancing_defects(g)) defects[v] = io::encode(d);
  body["defects"] = defects;
  body["total_leg_momentum"] = io::encode(total_leg_momentum(g));
  body["trivalent"] = is_trivalent_tropical(g);
  std::cout << io::dump(io::document("balancing-report", body));
  return rep.ok() ? 0 : 1;
}

int run_realize(Workspace& ws, const std::string& path, const std::vector<std::string>& anchor_specs, bool dot,
                const std::string& out) {
  auto g = ws.graph(path);
  auto anchors = parse_anchors(anchor_specs);
  if (anchors.empty() && !g.vertices.empty()) anchors[g.vertices.front()] = RationalVector(g.n, Rational(0));
  for (const auto& [v, p] : anchors) {
    if (std::find(g.vertices.begin(), g.vertices.end(), v) == g.vertices.end())
      throw UsageError("anchor on unknown vertex '" + v + "'");
    if (p.size() != g.n) throw UsageError("anchor '" + v + "' has the wrong number of coordinates");
  }
  bool unknown = false;
  for (const auto& e : g.edges) unknown |= !e.is_leg() && !e.length.is_finite();
  if (unknown) {
    auto sol = solve_lengths(g, anchors);
    emit_document(out, "length-solution", io::encode(sol));
    return sol.kind == LengthSolution::Kind::Inconsistent ? 1 : 0;
  }
  auto res = realize(g, anchors);
  if (auto* r = std::get_if<TropicalRealization>(&res)) {
    if (dot) {
      emit(out, to_dot(g, r));
    } else {
      json body = io::encode(*r);
      body["graph"] = io::encode(g);
      emit_document(out, "tropical-realization", body);
    }
    return 0;
  }
  emit_document(out, "cycle-defect", io::encode(std::get<CycleDefect>(res)));
  return 1;
}

int run_moduli(std::size_t n, bool list, bool poset_dot, const std::string& complex_out) {
  if (n < 3) throw UsageError("moduli needs n >= 3");
  bool any = list || poset_dot || !complex_out.empty();
  if (list || !any) {
    auto types = enumerate_types(n);
    if (list) {
      std::ostringstream os;
      os << "type\tedges\tcomplex_dim\ttorus_rank\n";
      for (const auto& t : types) {
        auto fd = fiber_dimension(t);
        os << canonical_form(t) << "\t" << t.edges.size() << "\t" << fd.complex_dim << "\t" << fd.torus_rank << "\n";
      }
      std::cout << os.str();
    } else {
      std::size_t trivalent = 0;
      for (const auto& t : types) trivalent += is_trivalent(t);
      std::cout << "n=" << n << " types=" << types.size() << " trivalent=" << trivalent << "\n";
    }
  }
  if (poset_dot) std::cout << strata_poset(n).to_dot("moduli");
  if (!complex_out.empty()) emit_document(complex_out, "complex", io::encode(as_affine_complex(n)));
  return 0;
}

int run_fiber_product(Workspace& ws, const std::string& f_path, const std::string& g_path, const std::string& out,
                      const std::string& test_path) {
  auto f = ws.map(f_path);
  auto g = ws.map(g_path);
  if (!(f.target == g.target)) throw InvalidArgument("the two maps have different targets");
  auto fp = base_fiber_product(f.map, f.source, g.map, g.source, f.target);
  json body = io::encode(fp);
  body["transversality"] = io::encode(is_transverse_base(f.map, f.source, g.map, g.source, f.target));
  if (test_path.empty()) {
    emit_document(out, "fiber-product", body);
    return 0;
  }
  if (!out.empty()) emit_document(out, "fiber-product", body);

  const auto& doc = ws.document(test_path, "universal-test");
  auto [d, p, q] = io::guarded([&] {
    return std::make_tuple(io::decode_complex(io::detail::field(doc, "complex")),
                           io::decode_stratified_map(io::detail::field(doc, "p")),
                           io::decode_stratified_map(io::detail::field(doc, "q")));
  });
  ValidationReport rep = validate_complex(d);
  if (rep.ok()) rep.merge(validate_map(p, d, f.source), "p: ");
  if (rep.ok()) rep.merge(validate_map(q, d, g.source), "q: ");
  if (!rep.ok()) throw ValidationError(rep);

  auto res = check_universal_property(fp, d, p, q, f.map, g.map);
  json check;
  if (auto* h = std::get_if<StratifiedMap>(&res)) {
    check = {{"ok", true}, {"factorization", io::encode(*h)}};
  } else {
    const auto& fail = std::get<UniversalPropertyFailure>(res);
    check = {{"ok", false}, {"stratum", fail.stratum}, {"reason", fail.reason}};
  }
  std::cout << io::dump(io::document("universal-check", check));
  return std::holds_alternative<StratifiedMap>(res) ? 0 : 1;
}

const std::vector<std::string> kExamples = {"point",        "interval",    "m04",   "m05", "symplectic-sum",
                                            "cp2-triangle", "quadrant",    "r-n",   "tropical-curve"};

int run_examples(const std::string& name, std::size_t dim, const std::string& out) {
  if (name.empty()) {
    for (const auto& n : kExamples) std::cout << n << "\n";
    return 0;
  }
  if (name == "point") return emit_document(out, "complex", io::encode(datasets::point())), 0;
  if (name == "interval") return emit_document(out, "complex", io::encode(datasets::interval(1, 2))), 0;
  if (name == "m04") return emit_document(out, "complex", io::encode(datasets::m04())), 0;
  if (name == "m05") return emit_document(out, "complex", io::encode(datasets::m05())), 0;
  if (name == "symplectic-sum") return emit_document(out, "complex", io::encode(datasets::symplectic_sum())), 0;
  if (name == "cp2-triangle") return emit_document(out, "complex", io::encode(datasets::cp2_triangle())), 0;
  if (name == "quadrant") return emit_document(out, "complex", io::encode(datasets::quadrant())), 0;
  if (name == "r-n") return emit_document(out, "exploded-chart", io::encode(standard_fibration(dim))), 0;
  if (name == "tropical-curve") return emit_document(out, "tropical-graph", io::encode(datasets::triangle_curve())), 0;
  throw UsageError("unknown example '" + name + "'");
}

int run_dot(Workspace& ws, const std::string& path) {
  const auto& doc = ws.document(path);
  auto kind = io::document_kind(doc);
  io::open_document(doc, kind);
  io::guarded([&] {
    if (kind == "complex") {
      std::cout << to_dot(io::decode_complex(doc));
    } else if (kind == "poset") {
      std::cout << io::decode_poset(doc).to_dot();
    } else if (kind == "tropical-graph") {
      std::cout << to_dot(io::decode_graph(doc));
    } else if (kind == "tropical-realization" && doc.contains("graph")) {
      auto r = io::decode_realization(doc);
      std::cout << to_dot(io::decode_graph(doc["graph"]), &r);
    } else {
      throw FormatError("no DOT rendering for a '" + kind + "' document");
    }
  });
  return 0;
}

int report_error(const std::string& category, const std::string& message, const ValidationReport* rep = nullptr) {
  json body = {{"category", category}, {"message", message}};
  if (rep) body["report"] = io::encode(*rep);
  std::cerr << io::document("error", body).dump() << "\n";
  return category == "validation" ? 1 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact combinatorics of exploded fibrations", "exploded"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string seed;
  app.add_option("--seed", seed, "Reserved; always rejected");

  Workspace ws;
  std::function<int()> action;
  std::string out;

  auto* validate = app.add_subcommand("validate", "Validate a document of any supported kind");
  std::string validate_path;
  validate->add_option("file", validate_path)->required();
  validate->callback([&] { action = [&] { return run_validate(ws, validate_path); }; });

  auto* explode_cmd = app.add_subcommand("explode", "Explosion base of a chart with signature m,k,n");
  std::string signature;
  explode_cmd->add_option("--signature", signature, "m,k,n")->required();
  explode_cmd->add_option("--out", out, "Write the exploded chart here ('-' for stdout)");
  explode_cmd->callback([&] { action = [&] { return run_explode(signature, out); }; });

  auto* refine_cmd = app.add_subcommand("refine", "Refine an exploded chart (or complex) along a subdivision");
  std::string complex_path, sub_path;
  refine_cmd->add_option("--complex", complex_path)->required();
  refine_cmd->add_option("--subdivision", sub_path)->required();
  refine_cmd->add_option("--out", out);
  refine_cmd->callback([&] { action = [&] { return run_refine(ws, complex_path, sub_path, out); }; });

  auto* lift_cmd = app.add_subcommand("lift", "Lift a map through a subdivision of its target");
  std::string map_path;
  lift_cmd->add_option("--map", map_path)->required();
  lift_cmd->add_option("--subdivision", sub_path)->required();
  lift_cmd->add_option("--out", out);
  lift_cmd->callback([&] { action = [&] { return run_lift(ws, map_path, sub_path, out); }; });

  auto* balance_cmd = app.add_subcommand("balance", "Check the balancing condition of a tropical graph");
  std::string graph_path;
  balance_cmd->add_option("--graph", graph_path)->required();
  balance_cmd->callback([&] { action = [&] { return run_balance(ws, graph_path); }; });

  auto* realize_cmd = app.add_subcommand("realize", "Place the vertices of a tropical graph");
  std::vector<std::string> anchors;
  bool dot = false;
  realize_cmd->add_option("--graph", graph_path)->required();
  realize_cmd->add_option("--anchor", anchors, "vertex=x,y,...")->take_all();
  realize_cmd->add_flag("--dot", dot, "Emit DOT with position attributes");
  realize_cmd->add_option("--out", out);
  realize_cmd->callback([&] { action = [&] { return run_realize(ws, graph_path, anchors, dot, out); }; });

  auto* moduli_cmd = app.add_subcommand("moduli", "Stable genus zero types with n legs");
  std::size_t n = 0;
  bool list = false, poset_dot = false;
  std::string as_complex;
  moduli_cmd->add_option("--n", n)->required();
  moduli_cmd->add_flag("--list", list);
  moduli_cmd->add_flag("--poset-dot", poset_dot);
  moduli_cmd->add_option("--as-complex", as_complex, "Write the base complex here ('-' for stdout)");
  moduli_cmd->callback([&] { action = [&] { return run_moduli(n, list, poset_dot, as_complex); }; });

  auto* fp_cmd = app.add_subcommand("fiber-product", "Base-level fiber product of two maps");
  std::string f_path, g_path, test_path;
  fp_cmd->add_option("--f", f_path)->required();
  fp_cmd->add_option("--g", g_path)->required();
  fp_cmd->add_option("--out", out);
  fp_cmd->add_option("--check-universal", test_path, "universal-test document with D, p and q");
  fp_cmd->callback([&] { action = [&] { return run_fiber_product(ws, f_path, g_path, out, test_path); }; });

  auto* examples_cmd = app.add_subcommand("examples", "Write a shipped dataset (list them without --name)");
  std::string name;
  std::size_t dim = 2;
  examples_cmd->add_option("--name", name);
  examples_cmd->add_option("--dim", dim, "Dimension for r-n");
  examples_cmd->add_option("--out", out);
  examples_cmd->callback([&] { action = [&] { return run_examples(name, dim, out); }; });

  auto* dot_cmd = app.add_subcommand("dot", "DOT rendering of a complex, poset or tropical graph");
  std::string dot_path;
  dot_cmd->add_option("file", dot_path)->required();
  dot_cmd->callback([&] { action = [&] { return run_dot(ws, dot_path); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return report_error("usage", e.what());
  }
  if (app.count("--seed")) return report_error("usage", "--seed is reserved: no command uses randomness");

  try {
    return action();
  } catch (const ValidationError& e) {
    return report_error("validation", e.what(), &e.report());
  } catch (const FormatError& e) {
    return report_error("format", e.what());
  } catch (const UsageError& e) {
    return report_error("usage", e.what());
  } catch (const InvalidArgument& e) {
    return report_error("invalid-argument", e.what());
  } catch (const std::exception& e) {
    return report_error("internal", e.what());
  }
}
