#include "bgpa/catalog.hpp"

#include <algorithm>
#include <numeric>

namespace bgpa {

namespace {

const std::vector<std::string> kCubeEven{"000", "011", "101", "110"};
const std::vector<std::string> kCubeOdd{"001", "010", "100", "111"};

AlgebraPtr with_perron(BipartiteGraph g) {
  SpinVector spin = perron_spin(g);
  return PlanarAlgebra::create(std::move(g), std::move(spin));
}

AutomorphismOp from_vertex_map(const PlanarAlgebra& algebra, const std::vector<int>& partial) {
  const auto autos = find_graph_autos(algebra.graph(), algebra.spin().mu, kDefaultTolerance, partial);
  if (autos.size() != 1) {
    throw Error(Error::Kind::InvalidAutomorphism, "vertex map does not extend to a unique graph automorphism");
  }
  return graph_auto_op(algebra, autos.front());
}

Matrix permutation_matrix(const std::vector<int>& images) {
  const auto n = static_cast<Eigen::Index>(images.size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) m(images[j], j) = 1.0;
  return m;
}

// Generators of S_n as 0-based image lists: a transposition and an n-cycle.
std::vector<std::vector<int>> symmetric_generators(int n) {
  std::vector<std::vector<int>> out;
  if (n < 2) return out;
  std::vector<int> swap(n), cycle(n);
  std::iota(swap.begin(), swap.end(), 0);
  std::swap(swap[0], swap[1]);
  for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  out.push_back(swap);
  if (n > 2) out.push_back(cycle);
  return out;
}

}  // namespace

BipartiteGraph cube_graph() {
  std::vector<BipartiteGraph::VertexSpec> vs;
  for (const auto& id : kCubeEven) vs.push_back({id, Parity::Even});
  for (const auto& id : kCubeOdd) vs.push_back({id, Parity::Odd});
  std::vector<BipartiteGraph::EdgeSpec> es;
  for (const auto& v : kCubeEven) {
    for (int bit = 0; bit < 3; ++bit) {
      std::string w = v;
      w[bit] = w[bit] == '0' ? '1' : '0';
      es.push_back({v, w});
    }
  }
  return BipartiteGraph::build(std::move(vs), es);
}

AlgebraPtr cube_algebra() { return with_perron(cube_graph()); }

AutomorphismOp cube_even_permutation(const PlanarAlgebra& cube, const std::vector<int>& images) {
  const BipartiteGraph& g = cube.graph();
  if (images.size() != 4) throw Error(Error::Kind::InvalidArgument, "expected images of the four even vertices");
  std::vector<int> partial(g.num_vertices(), -1);
  for (int i = 0; i < 4; ++i) partial[g.index_of(kCubeEven[i])] = g.index_of(kCubeEven[images[i] - 1]);
  return from_vertex_map(cube, partial);
}

GroupSpec cube_group(const PlanarAlgebra& cube, std::string_view name) {
  GroupSpec spec;
  std::vector<std::vector<int>> gens;
  if (name == "trivial") {
  } else if (name == "z2x2") {
    gens = {{2, 1, 4, 3}, {3, 4, 1, 2}};
  } else if (name == "a4") {
    gens = {{2, 3, 1, 4}, {1, 3, 4, 2}};
  } else if (name == "s4") {
    gens = {{2, 1, 3, 4}, {2, 3, 4, 1}};
  } else {
    throw Error(Error::Kind::InvalidArgument, "unknown cube group: " + std::string(name));
  }
  for (const auto& images : gens) spec.generators.push_back(cube_even_permutation(cube, images));
  return spec;
}

BipartiteGraph star_graph(int n) {
  if (n < 1) throw Error(Error::Kind::InvalidArgument, "star needs at least one leaf");
  std::vector<BipartiteGraph::VertexSpec> vs{{"c", Parity::Even}};
  std::vector<BipartiteGraph::EdgeSpec> es;
  for (int i = 1; i <= n; ++i) {
    vs.push_back({"l" + std::to_string(i), Parity::Odd});
    es.push_back({"c", "l" + std::to_string(i)});
  }
  return BipartiteGraph::build(std::move(vs), es);
}

AlgebraPtr star_algebra(int n) { return with_perron(star_graph(n)); }

GroupSpec star_group(const PlanarAlgebra& star) {
  const BipartiteGraph& g = star.graph();
  const int n = g.num_vertices() - 1;
  GroupSpec spec;
  for (const auto& images : symmetric_generators(n)) {
    std::vector<int> kappa(g.num_vertices());
    kappa[0] = 0;
    for (int i = 0; i < n; ++i) kappa[i + 1] = images[i] + 1;
    spec.generators.push_back(graph_auto_op(star, kappa));
  }
  return spec;
}

BipartiteGraph multiedge_graph(int m) {
  if (m < 1) throw Error(Error::Kind::InvalidArgument, "multi-edge graph needs at least one edge");
  std::vector<BipartiteGraph::EdgeSpec> es(m, {"v", "w"});
  return BipartiteGraph::build({{"v", Parity::Even}, {"w", Parity::Odd}}, es);
}

AlgebraPtr multiedge_algebra(int m) { return with_perron(multiedge_graph(m)); }

GroupSpec multiedge_group(const PlanarAlgebra& multi, bool edge_torus) {
  const int m = multi.graph().num_edges();
  GroupSpec spec;
  spec.edge_torus = edge_torus;
  for (const auto& images : symmetric_generators(m)) {
    spec.generators.push_back(mult_op(multi, {{0, permutation_matrix(images)}}));
  }
  return spec;
}

Example diagonal_example(const FiniteGroup& g, const std::vector<int>& generators) {
  const int n = g.order();
  std::vector<BipartiteGraph::VertexSpec> vs;
  for (int x = 0; x < n; ++x) vs.push_back({"x:" + g.name(x), Parity::Even});
  for (int y = 0; y < n; ++y) vs.push_back({"y:" + g.name(y), Parity::Odd});
  std::vector<int> hs{g.identity()};
  hs.insert(hs.end(), generators.begin(), generators.end());
  std::vector<BipartiteGraph::EdgeSpec> es;
  for (int x = 0; x < n; ++x) {
    for (int h : hs) es.push_back({"x:" + g.name(x), "y:" + g.name(g.mul(x, h))});
  }
  Example ex{"diagonal", with_perron(BipartiteGraph::build(std::move(vs), es)), {}};
  // Left translation by every non-identity element.
  for (int s = 0; s < n; ++s) {
    if (s == g.identity()) continue;
    std::vector<int> kappa(2 * n);
    for (int x = 0; x < n; ++x) {
      kappa[x] = g.mul(s, x);
      kappa[n + x] = n + g.mul(s, x);
    }
    ex.group.generators.push_back(graph_auto_op(*ex.algebra, kappa));
  }
  return ex;
}

Example bh_coset_example(const FiniteGroup& g, const std::vector<int>& h, const std::vector<int>& k) {
  std::vector<int> common;
  std::set_intersection(h.begin(), h.end(), k.begin(), k.end(), std::back_inserter(common));
  if (common.size() != 1) throw Error(Error::Kind::InvalidArgument, "H and K must intersect trivially");
  const int n = g.order();
  // Coset of x: the smallest element of x S.
  auto coset_rep = [&](int x, const std::vector<int>& s) {
    int best = n;
    for (int y : s) best = std::min(best, g.mul(x, y));
    return best;
  };
  std::vector<int> h_reps, k_reps;
  for (int x = 0; x < n; ++x) {
    if (coset_rep(x, h) == x) h_reps.push_back(x);
    if (coset_rep(x, k) == x) k_reps.push_back(x);
  }
  std::vector<BipartiteGraph::VertexSpec> vs;
  for (int x : h_reps) vs.push_back({"H:" + g.name(x), Parity::Even});
  for (int x : k_reps) vs.push_back({"K:" + g.name(x), Parity::Odd});
  std::vector<BipartiteGraph::EdgeSpec> es;
  for (int x = 0; x < n; ++x) es.push_back({"H:" + g.name(coset_rep(x, h)), "K:" + g.name(coset_rep(x, k))});
  Example ex{"bh-coset", with_perron(BipartiteGraph::build(std::move(vs), es)), {}};
  const BipartiteGraph& graph = ex.algebra->graph();
  for (int s = 0; s < n; ++s) {
    if (s == g.identity()) continue;
    std::vector<int> kappa(graph.num_vertices());
    for (int x : h_reps) kappa[graph.index_of("H:" + g.name(x))] = graph.index_of("H:" + g.name(coset_rep(g.mul(s, x), h)));
    for (int x : k_reps) kappa[graph.index_of("K:" + g.name(x))] = graph.index_of("K:" + g.name(coset_rep(g.mul(s, x), k)));
    ex.group.generators.push_back(graph_auto_op(*ex.algebra, kappa));
  }
  return ex;
}

std::vector<Example> catalog_examples() {
  std::vector<Example> out;
  const AlgebraPtr cube = cube_algebra();
  for (const char* name : {"z2x2", "a4", "s4"}) out.push_back({std::string("cube/") + name, cube, cube_group(*cube, name)});
  const AlgebraPtr star = star_algebra(3);
  out.push_back({"star3/s3", star, star_group(*star)});
  for (int m : {2, 3}) {
    const AlgebraPtr multi = multiedge_algebra(m);
    out.push_back({"multiedge" + std::to_string(m) + "/torus", multi, multiedge_group(*multi, true)});
  }
  out.push_back(diagonal_example(klein_four(), {1, 2}));
  out.back().name = "diagonal/z2x2";
  const FiniteGroup s3 = symmetric_group(3);
  out.push_back(bh_coset_example(s3, generated_subgroup(s3, {permutation_index({2, 1, 3})}),
                                 generated_subgroup(s3, {permutation_index({2, 3, 1})})));
  out.back().name = "bh-coset/s3";
  return out;
}

std::vector<Example> catalog_graphs() {
  std::vector<Example> out;
  out.push_back({"cube", cube_algebra(), {}});
  out.push_back({"star3", star_algebra(3), {}});
  out.push_back({"star1", star_algebra(1), {}});
  out.push_back({"multiedge2", multiedge_algebra(2), {}});
  out.push_back({"multiedge3", multiedge_algebra(3), {}});
  Example diag = diagonal_example(klein_four(), {1, 2});
  out.push_back({"diagonal/z2x2", diag.algebra, {}});
  const FiniteGroup s3 = symmetric_group(3);
  Example bh = bh_coset_example(s3, generated_subgroup(s3, {permutation_index({2, 1, 3})}),
                                generated_subgroup(s3, {permutation_index({2, 3, 1})}));
  out.push_back({"bh-coset/s3", bh.algebra, {}});
  return out;
}

}  // namespace bgpa
