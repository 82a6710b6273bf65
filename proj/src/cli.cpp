#include "bgpa/cli.hpp"

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bgpa/catalog.hpp"
#include "bgpa/json_io.hpp"

namespace bgpa {

namespace {

struct Options {
  double tolerance = kDefaultTolerance;
  std::size_t closure_bound = kDefaultClosureBound;
  std::string torus;
  std::string graph_path;
  std::string group_path;
  int levels = 4;
  int depth = 3;
  bool table = false;
  std::string dot_path;
  std::string reference;
  std::string catalog_name;
  std::vector<std::string> catalog_params;
  std::string catalog_group;
  std::string catalog_part = "both";
};

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

AlgebraPtr load_algebra(const Options& o) { return algebra_from_input(graph_from_json(load_json_file(o.graph_path)), o.tolerance); }

GroupAction load_group(const PlanarAlgebra& algebra, const Options& o) {
  GroupSpec spec = group_from_json(algebra, load_json_file(o.group_path), o.tolerance);
  if (o.torus == "scalar") spec.scalar_torus = true;
  if (o.torus == "edge") spec.edge_torus = true;
  return group_closure(algebra, spec, o.closure_bound, o.tolerance);
}

Json cycle_to_json(const BipartiteGraph& g, const Cycle& c) {
  Json edges = Json::array();
  for (const Step& s : c.steps) edges.push_back(s.edge);
  return Json{{"base", g.vertex(c.base).id}, {"chord", c.chord}, {"edges", edges}};
}

int run_analyze(const Options& o, std::ostream& out) {
  GraphInput input = graph_from_json(load_json_file(o.graph_path));
  const BipartiteGraph g = input.graph;
  const AlgebraPtr algebra = algebra_from_input(std::move(input), o.tolerance);
  const CycleSpace cycles = cycle_rank(g);
  Json basis = Json::array();
  for (const Cycle& c : cycles.basis) basis.push_back(cycle_to_json(g, c));
  const auto autos = find_graph_autos(g, algebra->spin().mu, o.tolerance);
  emit(out, Json{{"vertices", g.num_vertices()},
                 {"edges", g.num_edges()},
                 {"modulus", modulus_to_json(g, check_modulus(g, algebra->spin().mu, o.tolerance))},
                 {"index", algebra->has_modulus() ? Json(algebra->modulus() * algebra->modulus()) : Json(nullptr)},
                 {"spin", graph_to_json(g, &algebra->spin().mu)["spin"]},
                 {"cycle_rank", cycles.rank},
                 {"cycle_basis", basis},
                 {"automorphisms", autos.size()}});
  return 0;
}

std::vector<int> compose_perm(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(b.size());
  for (std::size_t v = 0; v < b.size(); ++v) out[v] = a[b[v]];
  return out;
}

int run_autgroup(const Options& o, std::ostream& out) {
  const AlgebraPtr algebra = load_algebra(o);
  const BipartiteGraph& g = algebra->graph();
  const auto autos = find_graph_autos(g, algebra->spin().mu, o.tolerance);
  std::vector<std::vector<int>> gens;
  std::set<std::vector<int>> span{autos.front()};
  for (const auto& a : autos) {
    if (span.count(a)) continue;
    gens.push_back(a);
    std::vector<std::vector<int>> frontier(span.begin(), span.end());
    while (!frontier.empty()) {
      std::vector<std::vector<int>> next;
      for (const auto& x : frontier) {
        for (const auto& s : gens) {
          auto y = compose_perm(s, x);
          if (span.insert(y).second) next.push_back(std::move(y));
        }
      }
      frontier = std::move(next);
    }
  }
  GroupSpec spec;
  for (const auto& k : gens) spec.generators.push_back(graph_auto_op(*algebra, k, o.tolerance));
  emit(out, Json{{"order", autos.size()}, {"generators", group_to_json(*algebra, spec)}});
  return 0;
}

int run_fixedpoint(const Options& o, std::ostream& out) {
  const AlgebraPtr algebra = load_algebra(o);
  const GroupAction group = load_group(*algebra, o);
  emit(out, tower_to_json(fixed_tower(algebra, group, o.levels, o.tolerance)));
  return 0;
}

int run_spa(const Options& o, std::ostream& out) {
  const AlgebraPtr algebra = load_algebra(o);
  const GroupAction group = load_group(*algebra, o);
  const SPAReport report = spa_verdict(algebra, group, o.levels, o.tolerance);
  if (o.table) {
    out << spa_report_table(report);
  } else {
    emit(out, spa_report_to_json(report));
  }
  return report.verdict ? 0 : 2;
}

int run_principal(const Options& o, std::ostream& out, std::ostream& err) {
  const AlgebraPtr algebra = load_algebra(o);
  const GroupAction group = load_group(*algebra, o);
  const FixedTower tower = fixed_tower(algebra, group, o.depth, o.tolerance);
  const SPAReport report = spa_verdict(tower, o.tolerance);
  Json j{{"verdict", report.verdict ? "pass" : "fail"},
         {"index", report.index ? Json(*report.index) : Json(nullptr)}};
  if (!report.verdict) {
    err << "warning: not a subfactor planar algebra; the graph below is diagnostic only\n";
    j["reasons"] = report.reasons;
  }
  const PrincipalGraphResult result = principal_graph(tower, o.depth, o.tolerance);
  j["principal_graph"] = principal_to_json(result);
  if (!o.reference.empty()) {
    if (o.reference != "cube-s4") throw Error(Error::Kind::InvalidArgument, "unknown reference '" + o.reference + "'");
    j["comparison"] = comparison_to_json(compare_principal_graphs(result.graph, cube_s4_reference_graph(), o.depth));
  }
  if (!o.dot_path.empty()) {
    std::ofstream dot(o.dot_path);
    if (!dot) throw Error(Error::Kind::Io, "cannot write '" + o.dot_path + "'");
    dot << to_dot(result.graph);
  }
  emit(out, j);
  return report.verdict && result.consistent ? 0 : 2;
}

int int_param(const std::vector<std::string>& params, std::size_t i, int fallback) {
  if (params.size() <= i) return fallback;
  try {
    return std::stoi(params[i]);
  } catch (const std::exception&) {
    throw Error(Error::Kind::InvalidArgument, "expected an integer, got '" + params[i] + "'");
  }
}

std::pair<FiniteGroup, std::vector<int>> named_group(const std::string& name) {
  if (name == "z2x2") return {klein_four(), {1, 2}};
  if (name == "s3") return {symmetric_group(3), {permutation_index({2, 1, 3}), permutation_index({2, 3, 1})}};
  if (name.size() > 1 && name[0] == 'z') {
    const int n = int_param({name.substr(1)}, 0, 0);
    if (n < 2) throw Error(Error::Kind::InvalidArgument, "cyclic groups need order at least 2");
    return {cyclic_group(n), {1}};
  }
  throw Error(Error::Kind::InvalidArgument, "unknown group '" + name + "' (z2x2, s3, zN)");
}

int run_catalog(const Options& o, std::ostream& out) {
  const auto& p = o.catalog_params;
  Example ex;
  if (o.catalog_name == "cube") {
    ex.algebra = cube_algebra();
    ex.group = cube_group(*ex.algebra, o.catalog_group.empty() ? "s4" : o.catalog_group);
  } else if (o.catalog_name == "star") {
    const int n = int_param(p, 0, 3);
    if (n < 1) throw Error(Error::Kind::InvalidArgument, "star needs at least one leaf");
    ex.algebra = star_algebra(n);
    if (o.catalog_group != "trivial") ex.group = star_group(*ex.algebra);
  } else if (o.catalog_name == "multiedge") {
    const int m = int_param(p, 0, 2);
    if (m < 1) throw Error(Error::Kind::InvalidArgument, "multiedge needs at least one edge");
    ex.algebra = multiedge_algebra(m);
    if (o.catalog_group != "trivial") ex.group = multiedge_group(*ex.algebra, o.catalog_group != "perm");
  } else if (o.catalog_name == "diagonal") {
    const auto [group, gens] = named_group(p.empty() ? "z2x2" : p[0]);
    ex = diagonal_example(group, gens);
  } else if (o.catalog_name == "bh-coset") {
    const FiniteGroup s3 = symmetric_group(3);
    ex = bh_coset_example(s3, generated_subgroup(s3, {permutation_index({2, 1, 3})}),
                          generated_subgroup(s3, {permutation_index({2, 3, 1})}));
  } else {
    throw Error(Error::Kind::InvalidArgument,
                "unknown catalog entry '" + o.catalog_name + "' (cube, star, multiedge, diagonal, bh-coset)");
  }
  if (o.catalog_group == "trivial") ex.group = GroupSpec{};
  const Json graph = graph_to_json(ex.algebra->graph(), &ex.algebra->spin().mu);
  const Json group = group_to_json(*ex.algebra, ex.group);
  if (o.catalog_part == "graph") {
    emit(out, graph);
  } else if (o.catalog_part == "group") {
    emit(out, group);
  } else {
    emit(out, Json{{"graph", graph}, {"group", group}});
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Bipartite graph planar algebras: fixed points, axiom checks and principal graphs"};
  app.require_subcommand(1);
  app.add_option("--tolerance", o.tolerance, "relative tolerance for numeric checks")->check(CLI::PositiveNumber);
  app.add_option("--closure-bound", o.closure_bound, "largest group the closure may produce");
  app.add_option("--torus", o.torus, "adjoin a torus of multiplication operators")
      ->check(CLI::IsMember({"scalar", "edge"}));

  auto* analyze = app.add_subcommand("analyze", "modulus, cycle rank and automorphism count of a graph");
  auto* autgroup = app.add_subcommand("autgroup", "generators of the graph automorphism group");
  auto* fixedpoint = app.add_subcommand("fixedpoint", "dimensions of the fixed-point tower");
  auto* spa = app.add_subcommand("spa", "subfactor planar algebra axiom report");
  auto* principal = app.add_subcommand("principal", "principal graph of a fixed-point algebra");
  auto* catalog = app.add_subcommand("catalog", "emit a catalog graph and group");
  for (auto* sub : {analyze, autgroup, fixedpoint, spa, principal}) {
    sub->fallthrough();
    sub->add_option("graph", o.graph_path, "graph JSON")->required()->check(CLI::ExistingFile);
  }
  for (auto* sub : {fixedpoint, spa, principal}) {
    sub->add_option("group", o.group_path, "group JSON")->required()->check(CLI::ExistingFile);
  }
  fixedpoint->add_option("--levels", o.levels, "top level")->check(CLI::NonNegativeNumber);
  spa->add_option("--levels", o.levels, "top level")->check(CLI::Range(1, 64));
  spa->add_flag("--table", o.table, "human-readable table instead of JSON");
  principal->add_option("--depth", o.depth, "depth of the principal graph")->check(CLI::Range(1, 64));
  principal->add_option("--dot", o.dot_path, "write the graph as DOT");
  principal->add_option("--compare-reference", o.reference, "compare with a reference graph (cube-s4)");
  catalog->fallthrough();
  catalog->add_option("name", o.catalog_name, "cube, star, multiedge, diagonal or bh-coset")->required();
  catalog->add_option("params", o.catalog_params, "star: n; multiedge: m; diagonal: z2x2 | s3 | zN");
  catalog->add_option("--group", o.catalog_group, "cube: trivial | z2x2 | a4 | s4; multiedge: perm | torus; any: trivial");
  catalog->add_option("--part", o.catalog_part, "graph, group or both")->check(CLI::IsMember({"graph", "group", "both"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    emit(out, error_to_json("usage", e.what()));
    return 1;
  }

  try {
    if (*analyze) return run_analyze(o, out);
    if (*autgroup) return run_autgroup(o, out);
    if (*fixedpoint) return run_fixedpoint(o, out);
    if (*spa) return run_spa(o, out);
    if (*principal) return run_principal(o, out, err);
    return run_catalog(o, out);
  } catch (const Error& e) {
    emit(out, error_to_json(to_string(e.kind()), e.what()));
  } catch (const std::exception& e) {
    emit(out, error_to_json("internal", e.what()));
  }
  return 1;
}

}  // namespace bgpa
