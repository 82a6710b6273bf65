#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "bgpa/catalog.hpp"
#include "bgpa/fixedpoint.hpp"
#include "support.hpp"

using namespace bgpa;
using bgpa::test::random_element;

namespace {

using Perm = std::vector<int>;

std::set<Perm> perm_closure(const std::vector<Perm>& gens, int size) {
  Perm id(size);
  for (int i = 0; i < size; ++i) id[i] = i;
  std::set<Perm> out{id};
  std::vector<Perm> frontier{id};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const Perm& x : frontier) {
      for (const Perm& s : gens) {
        Perm y(size);
        for (int i = 0; i < size; ++i) y[i] = s[x[i]];
        if (out.insert(y).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

// Burnside count of loop orbits under vertex permutations of a simple graph.
long long burnside_loop_orbits(const BipartiteGraph& g, const std::vector<Perm>& vertex_gens, int n, Sign s) {
  const auto group = perm_closure(vertex_gens, g.num_vertices());
  const auto loops = enumerate_loops(g, n, s);
  long long fixed_total = 0;
  for (const Perm& k : group) {
    for (const LoopRef& loop : loops) {
      bool fixed = true;
      for (const Step& st : loop.cyclic()) {
        const Edge& e = g.edge(st.edge);
        if (k[e.even] != e.even || k[e.odd] != e.odd) fixed = false;
      }
      if (k[loop.pi.source] != loop.pi.source) fixed = false;
      fixed_total += fixed;
    }
  }
  REQUIRE(fixed_total % static_cast<long long>(group.size()) == 0);
  return fixed_total / static_cast<long long>(group.size());
}

std::vector<Perm> kappas(const GroupSpec& spec) {
  std::vector<Perm> out;
  for (const auto& op : spec.generators) out.push_back(op.kappa);
  return out;
}

// Loops whose net signed traversal of every edge is zero.
long long balanced_loops(const BipartiteGraph& g, int n, Sign s) {
  long long count = 0;
  for (const LoopRef& loop : enumerate_loops(g, n, s)) {
    std::vector<int> net(g.num_edges(), 0);
    for (const Step& st : loop.cyclic()) net[st.edge] += st.forward ? 1 : -1;
    bool ok = true;
    for (int x : net) ok = ok && x == 0;
    count += ok;
  }
  return count;
}

}  // namespace

TEST_CASE("fixed dimensions equal Burnside orbit counts on the cube") {
  const AlgebraPtr cube = cube_algebra();
  for (const char* name : {"trivial", "z2x2", "a4", "s4"}) {
    CAPTURE(name);
    const GroupSpec spec = cube_group(*cube, name);
    const GroupAction act = group_closure(*cube, spec);
    for (int n = 0; n <= 2; ++n) {
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        CHECK(fixed_basis(cube, act, n, s).dim() == burnside_loop_orbits(cube->graph(), kappas(spec), n, s));
      }
    }
  }
}

TEST_CASE("fixed vectors are invariant and orthonormal") {
  std::mt19937_64 rng(5);
  for (const Example& ex : catalog_examples()) {
    CAPTURE(ex.name);
    const GroupAction act = group_closure(*ex.algebra, ex.group);
    for (int n = 0; n <= 2; ++n) {
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        const FixedBasis basis = fixed_basis(ex.algebra, act, n, s);
        const auto elems = basis.elements();
        const Matrix gram = gram_matrix(elems);
        CHECK((gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() < 1e-9);
        for (const auto& x : elems) {
          for (const auto& op : act.generators) CHECK(max_difference(apply_auto(op, x), x) < 1e-9);
        }
        // Projection of a group average lands in the span.
        const auto y = random_element(ex.algebra, n, s, rng);
        AlgebraElement avg(ex.algebra, n, s);
        for (const auto& op : act.elements) avg += apply_auto(op, y);
        avg *= Scalar(1.0 / static_cast<double>(act.order()));
        if (!act.contains_full_scalar_torus()) CHECK(basis.project(avg).second < 1e-9 * std::max(1.0, avg.max_abs()));
      }
    }
  }
}

TEST_CASE("torus-fixed loops on the cube") {
  const AlgebraPtr cube = cube_algebra();
  const auto& g = cube->graph();
  CHECK(torus_fixed_loops(*cube, 2, Sign::Plus, TorusKind::Scalar).size() == 60);
  for (int n = 1; n <= 3; ++n) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      CHECK(static_cast<long long>(torus_fixed_loops(*cube, n, s, TorusKind::Edge).size()) == balanced_loops(g, n, s));
      CHECK(torus_fixed_loops(*cube, n, s, TorusKind::Scalar).size() == torus_fixed_loops(*cube, n, s, TorusKind::Edge).size());
    }
  }
}

TEST_CASE("multi-edge commutant") {
  for (int m : {2, 3}) {
    const AlgebraPtr multi = multiedge_algebra(m);
    const GroupAction trivial = group_closure(*multi, GroupSpec{});
    CHECK(fixed_basis(multi, trivial, 1, Sign::Plus).dim() == m * m);
    const GroupAction full = group_closure(*multi, multiedge_group(*multi, true));
    CHECK(fixed_basis(multi, full, 1, Sign::Plus).dim() == 1);
    // Permutations alone fix the span of 1 and the all-ones matrix.
    const GroupAction perms = group_closure(*multi, multiedge_group(*multi, false));
    CHECK(fixed_basis(multi, perms, 1, Sign::Plus).dim() == 2);
  }
}

TEST_CASE("star with the symmetric group") {
  const AlgebraPtr star = star_algebra(3);
  const FixedTower tower = fixed_tower(star, group_closure(*star, star_group(*star)), 2);
  CHECK(tower.plus[0].dim() == 1);
  CHECK(tower.plus[1].dim() == 1);
  CHECK(tower.plus[2].dim() == 2);
  CHECK(tower.embedding_residual < 1e-9);
}

TEST_CASE("closure is checked before averaging") {
  const AlgebraPtr cube = cube_algebra();
  GroupAction broken = group_closure(*cube, cube_group(*cube, "s4"));
  broken.elements.pop_back();
  CHECK_THROWS_AS(verify_closed(*cube, broken), Error);
  CHECK_THROWS_AS(fixed_basis(cube, broken, 1, Sign::Plus), Error);
}
