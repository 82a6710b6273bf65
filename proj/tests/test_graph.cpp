#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "bgpa/catalog.hpp"
#include "bgpa/graph.hpp"

using namespace bgpa;

namespace {

BipartiteGraph path_graph() {
  return BipartiteGraph::build({{"a", Parity::Even}, {"b", Parity::Odd}, {"c", Parity::Even}}, {{"a", "b"}, {"c", "b"}});
}

// Closed walks of length 2n from vertices of one parity, read off adjacency powers.
long long walk_count(const BipartiteGraph& g, int n, Sign sign) {
  const Eigen::MatrixXd a = g.adjacency();
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  for (int i = 0; i < 2 * n; ++i) p = p * a;
  double total = 0.0;
  for (int v : g.vertices_of(parity_of(sign))) total += p(v, v);
  return std::llround(total);
}

// Sum over ordered pairs of equal-endpoint paths: sum_{v, w} (A^n)_{vw}^2.
long long loop_count(const BipartiteGraph& g, int n, Sign sign) {
  const Eigen::MatrixXd a = g.adjacency();
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  for (int i = 0; i < n; ++i) p = p * a;
  double total = 0.0;
  for (int v : g.vertices_of(parity_of(sign))) total += p.row(v).squaredNorm();
  return std::llround(total);
}

}  // namespace

TEST_CASE("build validates input") {
  CHECK_NOTHROW(BipartiteGraph::build({{"x", Parity::Even}}, {}));
  CHECK_THROWS_AS(BipartiteGraph::build({}, {}), Error);
  CHECK_THROWS_AS(BipartiteGraph::build({{"x", Parity::Even}, {"x", Parity::Odd}}, {}), Error);
  CHECK_THROWS_AS(BipartiteGraph::build({{"x", Parity::Even}, {"y", Parity::Even}}, {{"x", "y"}}), Error);
  CHECK_THROWS_AS(BipartiteGraph::build({{"x", Parity::Even}}, {{"x", "z"}}), Error);
}

TEST_CASE("bundles and multiplicities") {
  const BipartiteGraph g = multiedge_graph(3);
  CHECK(g.num_edges() == 3);
  CHECK(g.num_bundles() == 1);
  CHECK(g.multiplicity(0, 1) == 3);
  CHECK(g.multiplicity(1, 0) == 3);
  for (int e = 0; e < 3; ++e) CHECK(g.edge(e).local_index == e + 1);
  CHECK(path_graph().multiplicity(0, 2) == 0);
  CHECK_FALSE(path_graph().bundle_between(0, 2).has_value());
}

TEST_CASE("path and loop counts match adjacency powers") {
  for (const auto& g : {cube_graph(), star_graph(3), multiedge_graph(2), path_graph()}) {
    for (int n = 0; n <= 3; ++n) {
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        long long paths = 0;
        const Eigen::MatrixXd a = g.adjacency();
        Eigen::MatrixXd p = Eigen::MatrixXd::Identity(a.rows(), a.cols());
        for (int i = 0; i < n; ++i) p = p * a;
        for (int v : g.vertices_of(parity_of(s))) paths += std::llround(p.row(v).sum());
        CHECK(static_cast<long long>(enumerate_paths(g, n, s).size()) == paths);
        CHECK(static_cast<long long>(enumerate_loops(g, n, s).size()) == loop_count(g, n, s));
        CHECK(loop_count(g, n, s) == walk_count(g, n, s));
      }
    }
  }
}

TEST_CASE("cube loop counts") {
  const BipartiteGraph g = cube_graph();
  const long long expected[] = {4, 12, 84, 732, 6564};
  for (int n = 0; n <= 4; ++n) CHECK(static_cast<long long>(enumerate_loops(g, n, Sign::Plus).size()) == expected[n]);
}

TEST_CASE("loops round-trip through the cyclic form") {
  const BipartiteGraph g = cube_graph();
  for (const LoopRef& loop : enumerate_loops(g, 2, Sign::Minus)) {
    const auto cyc = loop.cyclic();
    CHECK(cyc.size() == 4);
    CHECK(LoopRef::from_cyclic(g, loop.pi.source, cyc) == loop);
  }
}

TEST_CASE("Perron spin against a dense eigensolver") {
  for (const auto& g : {cube_graph(), star_graph(3), star_graph(1), multiedge_graph(3), path_graph()}) {
    const SpinVector spin = perron_spin(g);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.adjacency());
    const double rho = solver.eigenvalues().cwiseAbs().maxCoeff();
    REQUIRE(spin.modulus.has_value());
    CHECK(*spin.modulus == doctest::Approx(rho).epsilon(1e-12));
    const ModulusCheck check = check_modulus(g, spin.mu);
    CHECK(check.ok);
    CHECK(check.violations.empty());
    CHECK(spin.mu[g.vertices_of(Parity::Even).front()] == doctest::Approx(1.0));
  }
  CHECK(*perron_spin(path_graph()).modulus == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("modulus check rejects perturbed spins") {
  const BipartiteGraph g = cube_graph();
  std::vector<double> mu = perron_spin(g).mu;
  mu[2] *= 1.1;
  const ModulusCheck check = check_modulus(g, mu);
  CHECK_FALSE(check.ok);
  CHECK_FALSE(check.violations.empty());
}

TEST_CASE("disconnected graphs have no Perron spin") {
  const BipartiteGraph g =
      BipartiteGraph::build({{"a", Parity::Even}, {"b", Parity::Odd}, {"c", Parity::Even}, {"d", Parity::Odd}},
                            {{"a", "b"}, {"c", "d"}});
  CHECK(g.components().size() == 2);
  try {
    perron_spin(g);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == Error::Kind::Disconnected);
  }
}

TEST_CASE("cycle rank equals the incidence kernel dimension") {
  for (const auto& g : {cube_graph(), star_graph(3), multiedge_graph(3), path_graph()}) {
    Eigen::MatrixXd inc = Eigen::MatrixXd::Zero(g.num_vertices(), g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
      inc(g.edge(e).even, e) = 1.0;
      inc(g.edge(e).odd, e) = -1.0;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(inc);
    const CycleSpace cs = cycle_rank(g);
    CHECK(cs.rank == g.num_edges() - lu.rank());
    CHECK(static_cast<int>(cs.basis.size()) == cs.rank);
    for (const Cycle& c : cs.basis) {
      // Each basis cycle is closed and lies in the kernel.
      Eigen::VectorXd flow = Eigen::VectorXd::Zero(g.num_edges());
      for (const Step& s : c.steps) flow[s.edge] += s.forward ? 1.0 : -1.0;
      CHECK((inc * flow).norm() < 1e-12);
      CHECK(flow[c.chord] != 0.0);
    }
  }
  CHECK(cycle_rank(cube_graph()).rank == 5);
}
