#include "bgpa/json_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace bgpa {

namespace {

const Json& unwrap(const Json& j, const char* key) {
  if (j.is_object() && j.contains(key)) return j.at(key);
  return j;
}

Parity parse_parity(const Json& j) {
  const std::string p = j.get<std::string>();
  if (p == "even" || p == "+") return Parity::Even;
  if (p == "odd" || p == "-") return Parity::Odd;
  throw Error(Error::Kind::InvalidGraph, "parity must be 'even' or 'odd', got '" + p + "'");
}

Json complex_to_json(Scalar z) { return Json::array({z.real(), z.imag()}); }

Scalar complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw Error(Error::Kind::InvalidArgument, "complex numbers are [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::string bundle_key(const BipartiteGraph& g, int b) {
  return g.vertex(g.bundle(b).even).id + "," + g.vertex(g.bundle(b).odd).id;
}

AutomorphismOp generator_from_json(const PlanarAlgebra& algebra, const Json& j, double tol) {
  const BipartiteGraph& g = algebra.graph();
  AutomorphismOp graph_part = identity_op(g);
  if (j.contains("perm")) {
    std::vector<int> partial(g.num_vertices(), -1);
    for (const auto& [from, to] : j.at("perm").items()) {
      const auto v = g.find(from);
      const auto w = g.find(to.get<std::string>());
      if (!v || !w) throw Error(Error::Kind::InvalidAutomorphism, "permutation names an unknown vertex");
      partial[*v] = *w;
    }
    const auto autos = find_graph_autos(g, algebra.spin().mu, tol, partial);
    if (autos.empty()) throw Error(Error::Kind::InvalidAutomorphism, "permutation is not a graph automorphism");
    if (autos.size() > 1) {
      throw Error(Error::Kind::InvalidAutomorphism, "partial permutation does not extend uniquely");
    }
    graph_part = graph_auto_op(algebra, autos.front(), tol);
  }
  AutomorphismOp inner = identity_op(g);
  if (j.contains("blocks")) {
    std::map<int, Matrix> blocks;
    for (const auto& [key, entries] : j.at("blocks").items()) {
      const auto comma = key.find(',');
      if (comma == std::string::npos) throw Error(Error::Kind::InvalidArgument, "block keys are \"even,odd\"");
      const auto v = g.find(key.substr(0, comma));
      const auto w = g.find(key.substr(comma + 1));
      if (!v || !w) throw Error(Error::Kind::InvalidAutomorphism, "block names an unknown vertex");
      const auto b = g.bundle_between(*v, *w);
      if (!b) throw Error(Error::Kind::InvalidAutomorphism, "block on a non-adjacent pair " + key);
      const auto n = static_cast<Eigen::Index>(g.bundle(*b).edges.size());
      if (static_cast<Eigen::Index>(entries.size()) != n * n) {
        throw Error(Error::Kind::InvalidAutomorphism, "block " + key + " needs " + std::to_string(n * n) + " entries");
      }
      Matrix m(n, n);
      for (Eigen::Index i = 0; i < n * n; ++i) m(i / n, i % n) = complex_from_json(entries[i]);
      blocks.emplace(*b, std::move(m));
    }
    inner = mult_op(algebra, blocks, tol);
  }
  return compose(g, graph_part, inner);
}

void apply_torus(GroupSpec& spec, const Json& t) {
  if (t.is_boolean()) {
    spec.scalar_torus = spec.scalar_torus || t.get<bool>();
  } else if (t == "scalar") {
    spec.scalar_torus = true;
  } else if (t == "edge") {
    spec.edge_torus = true;
  } else {
    throw Error(Error::Kind::InvalidArgument, "torus must be true, \"scalar\" or \"edge\"");
  }
}

}  // namespace

GraphInput graph_from_json(const Json& root) {
  const Json& j = unwrap(root, "graph");
  try {
    std::vector<BipartiteGraph::VertexSpec> vs;
    for (const auto& v : j.at("vertices")) vs.push_back({v.at("id").get<std::string>(), parse_parity(v.at("parity"))});
    std::vector<BipartiteGraph::EdgeSpec> es;
    if (j.contains("edges")) {
      for (const auto& e : j.at("edges")) es.push_back({e.at("even").get<std::string>(), e.at("odd").get<std::string>()});
    }
    GraphInput input{BipartiteGraph::build(std::move(vs), es), std::nullopt};
    if (j.contains("spin")) {
      std::vector<double> mu(input.graph.num_vertices(), 0.0);
      std::vector<bool> seen(mu.size(), false);
      for (const auto& [id, value] : j.at("spin").items()) {
        const auto v = input.graph.find(id);
        if (!v) throw Error(Error::Kind::InvalidGraph, "spin names an unknown vertex '" + id + "'");
        mu[*v] = value.get<double>();
        seen[*v] = true;
      }
      for (std::size_t v = 0; v < mu.size(); ++v) {
        if (!seen[v]) throw Error(Error::Kind::InvalidGraph, "spin is missing vertex '" + input.graph.vertex(static_cast<int>(v)).id + "'");
      }
      input.spin = std::move(mu);
    }
    return input;
  } catch (const Json::exception& e) {
    throw Error(Error::Kind::InvalidGraph, std::string("malformed graph JSON: ") + e.what());
  }
}

Json graph_to_json(const BipartiteGraph& g, const std::vector<double>* spin) {
  Json out;
  out["vertices"] = Json::array();
  for (const Vertex& v : g.vertices()) out["vertices"].push_back({{"id", v.id}, {"parity", std::string(to_string(v.parity))}});
  out["edges"] = Json::array();
  for (const Edge& e : g.edges()) out["edges"].push_back({{"even", g.vertex(e.even).id}, {"odd", g.vertex(e.odd).id}});
  if (spin) {
    Json s = Json::object();
    for (int v = 0; v < g.num_vertices(); ++v) s[g.vertex(v).id] = (*spin)[v];
    out["spin"] = s;
  }
  return out;
}

AlgebraPtr algebra_from_input(GraphInput input, double tol) {
  if (!input.spin) {
    SpinVector spin = perron_spin(input.graph);
    return PlanarAlgebra::create(std::move(input.graph), std::move(spin));
  }
  for (double m : *input.spin) {
    if (!(m > 0.0)) throw Error(Error::Kind::InvalidArgument, "spin must be strictly positive");
  }
  const ModulusCheck check = check_modulus(input.graph, *input.spin, tol);
  SpinVector spin{std::move(*input.spin), std::nullopt};
  if (check.ok) spin.modulus = check.delta;
  return PlanarAlgebra::create(std::move(input.graph), std::move(spin));
}

GroupSpec group_from_json(const PlanarAlgebra& algebra, const Json& root, double tol) {
  const Json& j = unwrap(root, "group");
  GroupSpec spec;
  try {
    const Json* gens = &j;
    if (j.is_object()) {
      if (j.contains("torus")) apply_torus(spec, j.at("torus"));
      if (!j.contains("generators")) return spec;
      gens = &j.at("generators");
    }
    if (!gens->is_array()) throw Error(Error::Kind::InvalidArgument, "group file must be a list of generators");
    for (const auto& item : *gens) {
      if (item.contains("torus")) {
        apply_torus(spec, item.at("torus"));
        if (!item.contains("perm") && !item.contains("blocks")) continue;
      }
      spec.generators.push_back(generator_from_json(algebra, item, tol));
    }
  } catch (const Json::exception& e) {
    throw Error(Error::Kind::InvalidArgument, std::string("malformed group JSON: ") + e.what());
  }
  return spec;
}

Json group_to_json(const PlanarAlgebra& algebra, const GroupSpec& spec) {
  const BipartiteGraph& g = algebra.graph();
  Json out = Json::array();
  for (const auto& op : spec.generators) {
    Json item = Json::object();
    bool moves = false;
    for (int v = 0; v < g.num_vertices(); ++v) moves = moves || op.kappa[v] != v;
    if (moves) {
      Json perm = Json::object();
      for (int v = 0; v < g.num_vertices(); ++v) perm[g.vertex(v).id] = g.vertex(op.kappa[v]).id;
      item["perm"] = perm;
    }
    // Graph parts carry identity blocks, so these are the inner blocks.
    Json blocks = Json::object();
    for (int b = 0; b < g.num_bundles(); ++b) {
      const Matrix& m = op.blocks[b];
      if ((m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= kDefaultTolerance) continue;
      Json entries = Json::array();
      for (Eigen::Index i = 0; i < m.size(); ++i) entries.push_back(complex_to_json(m(i / m.cols(), i % m.cols())));
      blocks[bundle_key(g, b)] = entries;
    }
    if (!blocks.empty()) item["blocks"] = blocks;
    out.push_back(item);
  }
  if (spec.edge_torus) out.push_back({{"torus", "edge"}});
  if (spec.scalar_torus) out.push_back({{"torus", true}});
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Error::Kind::Io, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(Error::Kind::Io, "cannot parse '" + path + "': " + e.what());
  }
}

Json modulus_to_json(const BipartiteGraph& g, const ModulusCheck& check) {
  Json out{{"ok", check.ok}, {"delta", check.delta}};
  Json violations = Json::array();
  for (const auto& v : check.violations) {
    violations.push_back({{"vertex", g.vertex(v.vertex).id}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  }
  out["violations"] = violations;
  return out;
}

Json tower_to_json(const FixedTower& tower) {
  Json levels = Json::array();
  for (int n = 0; n <= tower.depth(); ++n) {
    levels.push_back({{"level", n}, {"plus", tower.plus[n].dim()}, {"minus", tower.minus[n].dim()}});
  }
  return Json{{"group_order", tower.group.order()},
              {"torus", tower.group.edge_torus ? "edge" : (tower.group.scalar_torus ? "scalar" : "none")},
              {"levels", levels},
              {"embedding_residual", tower.embedding_residual}};
}

Json spa_report_to_json(const SPAReport& r) {
  Json out;
  out["verdict"] = r.verdict ? "pass" : "fail";
  out["zero_box_dims"] = Json::array({r.zero_box_dims.first, r.zero_box_dims.second});
  Json dims = Json::array();
  for (const auto& [p, m] : r.finite_dims) dims.push_back(Json::array({p, m}));
  out["finite_dims"] = dims;
  out["modulus"] = r.modulus ? Json(*r.modulus) : Json(nullptr);
  out["index"] = r.index ? Json(*r.index) : Json(nullptr);
  Json sph{{"passed", r.spherical}};
  if (r.sphericality) {
    sph["worst_gap"] = r.sphericality->worst_gap;
    sph["ratio"] = r.sphericality->ratio ? complex_to_json(*r.sphericality->ratio) : Json(nullptr);
    sph["ratio_constant"] = r.sphericality->ratio_constant;
    sph["mass_ratio"] = r.sphericality->mass_ratio;
    Json details = Json::array();
    for (const auto& c : r.sphericality->details) {
      details.push_back({{"basis_index", c.basis_index},
                         {"left", complex_to_json(c.left)},
                         {"right", complex_to_json(c.right)},
                         {"gap", c.gap}});
    }
    sph["details"] = details;
  }
  out["spherical"] = sph;
  Json pos = Json::array();
  for (const auto& p : r.positivity) {
    pos.push_back({{"level", p.level},
                   {"sign", std::string(to_string(p.sign))},
                   {"dim", p.dim},
                   {"positive", p.positive},
                   {"min_eigenvalue", p.min_eigenvalue ? Json(*p.min_eigenvalue) : Json(nullptr)},
                   {"max_eigenvalue", p.max_eigenvalue ? Json(*p.max_eigenvalue) : Json(nullptr)},
                   {"identity_deviation", p.identity_deviation}});
  }
  out["positive"] = Json{{"passed", r.positive}, {"levels", pos}};
  out["embedding_residual"] = r.embedding_residual;
  out["reasons"] = r.reasons;
  return out;
}

std::string spa_report_table(const SPAReport& r) {
  std::ostringstream os;
  auto row = [&](const std::string& name, const std::string& value) {
    os << std::left << std::setw(18) << name << value << '\n';
  };
  std::ostringstream dims;
  for (const auto& [p, m] : r.finite_dims) dims << p << '/' << m << ' ';
  row("verdict", r.verdict ? "pass" : "fail");
  row("zero-box dims", "(" + std::to_string(r.zero_box_dims.first) + ", " + std::to_string(r.zero_box_dims.second) + ")");
  row("dims (+/-)", dims.str());
  std::ostringstream num;
  num << std::setprecision(12);
  if (r.modulus) num << *r.modulus << "  index " << *r.index;
  row("modulus", r.modulus ? num.str() : "none");
  std::ostringstream gap;
  if (r.sphericality) gap << "  worst gap " << r.sphericality->worst_gap;
  row("spherical", std::string(r.spherical ? "yes" : "no") + gap.str());
  row("positive", r.positive ? "yes" : "no");
  for (const auto& p : r.positivity) {
    std::ostringstream line;
    line << "dim " << p.dim;
    if (p.min_eigenvalue) line << "  min eigenvalue " << *p.min_eigenvalue;
    row("  level " + std::to_string(p.level) + std::string(to_string(p.sign)), line.str());
  }
  for (const auto& reason : r.reasons) row("reason", reason);
  return os.str();
}

Json principal_to_json(const PrincipalGraphResult& result) {
  const PrincipalGraph& g = result.graph;
  Json nodes = Json::array();
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    nodes.push_back({{"name", g.nodes[i].name},
                     {"depth", g.nodes[i].depth},
                     {"parity", g.nodes[i].depth % 2 == 0 ? "even" : "odd"},
                     {"star", static_cast<int>(i) == g.star}});
  }
  Json links = Json::array();
  for (const auto& l : g.links) {
    links.push_back({{"from", g.nodes[l.a].name}, {"to", g.nodes[l.b].name}, {"multiplicity", l.multiplicity}});
  }
  Json blocks = Json::array();
  for (const auto& level : result.levels) {
    Json dims = Json::array();
    for (const auto& b : level.blocks) dims.push_back(b.dim);
    blocks.push_back(dims);
  }
  return Json{{"nodes", nodes},
              {"links", links},
              {"block_dims", blocks},
              {"fixed_dims", result.fixed_dims},
              {"walk_dims", result.walk_dims},
              {"consistent", result.consistent}};
}

Json comparison_to_json(const GraphComparison& c) {
  return Json{{"agree", c.isomorphic},
              {"computed_dims", c.computed_dims},
              {"reference_dims", c.reference_dims},
              {"differing_levels", c.differing_levels},
              {"summary", c.summary}};
}

Json error_to_json(std::string_view kind, const std::string& message) {
  return Json{{"error", {{"kind", std::string(kind)}, {"message", message}}}};
}

}  // namespace bgpa
