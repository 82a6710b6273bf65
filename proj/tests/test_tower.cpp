#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bgpa/catalog.hpp"
#include "bgpa/tower.hpp"

using namespace bgpa;

namespace {

FixedTower cube_tower(const char* group, int levels) {
  const AlgebraPtr cube = cube_algebra();
  return fixed_tower(cube, group_closure(*cube, cube_group(*cube, group)), levels);
}

}  // namespace

TEST_CASE("Jones projections") {
  const AlgebraPtr cube = cube_algebra();
  for (int n = 1; n <= 3; ++n) {
    const AlgebraElement e = jones_projection(cube, n, Sign::Plus);
    CHECK(e.level() == n + 1);
    CHECK(max_difference(e * e, e) < 1e-12);
    CHECK(max_difference(adjoint(e), e) < 1e-12);
    // tau(e) = tau(1) / delta^2 with the unnormalized trace.
    CHECK(trace(e).real() == doctest::Approx(std::pow(3.0, n - 1)));
  }
}

TEST_CASE("simple summands") {
  for (const char* group : {"z2x2", "a4", "s4"}) {
    CAPTURE(group);
    const FixedTower tower = cube_tower(group, 3);
    for (int n = 0; n <= 3; ++n) {
      const AlgebraDecomposition d = decompose_algebra(tower.plus[n]);
      int total = 0;
      AlgebraElement sum(tower.algebra, n, Sign::Plus);
      for (const SimpleBlock& b : d.blocks) {
        total += b.dim * b.dim;
        CHECK(max_difference(b.central * b.central, b.central) < 1e-8);
        CHECK(b.trace > 0.0);
        sum += b.central;
      }
      CHECK(total == tower.plus[n].dim());
      CHECK(max_difference(sum, AlgebraElement::identity(tower.algebra, n, Sign::Plus)) < 1e-8);
      // The seed does not change the answer.
      const AlgebraDecomposition again = decompose_algebra(tower.plus[n], 12345);
      REQUIRE(again.blocks.size() == d.blocks.size());
      for (std::size_t i = 0; i < d.blocks.size(); ++i) CHECK(again.blocks[i].dim == d.blocks[i].dim);
    }
  }
}

TEST_CASE("inclusion matrices carry dimensions") {
  const FixedTower tower = cube_tower("a4", 3);
  for (int n = 0; n < 3; ++n) {
    const auto lo = decompose_algebra(tower.plus[n]);
    const auto hi = decompose_algebra(tower.plus[n + 1]);
    const Eigen::MatrixXi lambda = inclusion_matrix(lo, hi);
    for (Eigen::Index j = 0; j < lambda.cols(); ++j) {
      int d = 0;
      for (Eigen::Index i = 0; i < lambda.rows(); ++i) d += lambda(i, j) * lo.blocks[i].dim;
      CHECK(d == hi.blocks[j].dim);
    }
  }
}

TEST_CASE("walk dimensions equal fixed dimensions") {
  for (const Example& ex : catalog_examples()) {
    CAPTURE(ex.name);
    const FixedTower tower = fixed_tower(ex.algebra, group_closure(*ex.algebra, ex.group), 3);
    const PrincipalGraphResult r = principal_graph(tower, 3);
    CHECK(r.consistent);
    for (int n = 0; n <= 3; ++n) CHECK(r.graph.walk_dimension(n) == tower.plus[n].dim());
  }
}

TEST_CASE("cube principal graphs against the reference figure") {
  const PrincipalGraph reference = cube_s4_reference_graph();
  CHECK(reference.walk_dimension(2) == 7);

  const PrincipalGraphResult a4 = principal_graph(cube_tower("a4", 3), 3);
  const GraphComparison ca = compare_principal_graphs(a4.graph, reference, 3);
  CHECK(ca.isomorphic);
  CHECK(ca.differing_levels.empty());

  const PrincipalGraphResult s4 = principal_graph(cube_tower("s4", 2), 2);
  const GraphComparison cs = compare_principal_graphs(s4.graph, reference, 2);
  CHECK_FALSE(cs.isomorphic);
  CHECK(cs.computed_dims == std::vector<long long>{1, 1, 4});
  CHECK(cs.reference_dims == std::vector<long long>{1, 1, 7});
  CHECK(cs.differing_levels == std::vector<int>{2});
  CHECK(s4.consistent);
}

TEST_CASE("star principal graph at index 3") {
  const AlgebraPtr star = star_algebra(3);
  const FixedTower tower = fixed_tower(star, group_closure(*star, star_group(*star)), 3);
  const PrincipalGraphResult r = principal_graph(tower, 3);
  CHECK(r.consistent);
  // Index 3 forces A_5 rooted at an end, whose walk counts are 1, 1, 2, 5.
  CHECK(r.walk_dims == std::vector<long long>{1, 1, 2, 5});
}

TEST_CASE("DOT output") {
  const PrincipalGraphResult r = principal_graph(cube_tower("a4", 2), 2);
  const std::string dot = to_dot(r.graph);
  CHECK(dot.find("graph") != std::string::npos);
  CHECK(dot.find("xlabel=\"*\"") != std::string::npos);
}

TEST_CASE("diagonal oracle") {
  const FiniteGroup z22 = klein_four();
  CHECK(diagonal_dim_oracle(z22, {1, 2}, 1) == 3);
  for (const auto& [group, gens] : std::vector<std::pair<FiniteGroup, std::vector<int>>>{
           {klein_four(), {1, 2}},
           {symmetric_group(3), {permutation_index({2, 1, 3}), permutation_index({2, 3, 1})}},
           {cyclic_group(4), {1}}}) {
    const Example ex = diagonal_example(group, gens);
    const FixedTower tower = fixed_tower(ex.algebra, group_closure(*ex.algebra, ex.group), 3);
    for (int n = 0; n <= 3; ++n) CHECK(tower.plus[n].dim() == diagonal_dim_oracle(group, gens, n));
  }
}

TEST_CASE("BH oracle") {
  const FiniteGroup z2 = cyclic_group(2);
  const WordOracle free = free_product_oracle(z2, z2);
  CHECK(bh_dim_oracle(z2, z2, free, 1) == 1);
  CHECK(bh_dim_oracle(z2, z2, free, 2) == 3);

  const FiniteGroup s3 = symmetric_group(3);
  const auto h = generated_subgroup(s3, {permutation_index({2, 1, 3})});
  const auto k = generated_subgroup(s3, {permutation_index({2, 3, 1})});
  const Example ex = bh_coset_example(s3, h, k);
  const FixedTower tower = fixed_tower(ex.algebra, group_closure(*ex.algebra, ex.group), 3);
  // H and K as abstract cyclic groups with explicit embeddings into S3.
  const FiniteGroup hz = cyclic_group(2);
  const FiniteGroup kz = cyclic_group(3);
  const std::vector<int> k_embed{k[0], permutation_index({2, 3, 1}), permutation_index({3, 1, 2})};
  const WordOracle ambient = ambient_group_oracle(s3, h, k_embed);
  for (int n = 0; n <= 3; ++n) CHECK(tower.plus[n].dim() == bh_dim_oracle(hz, kz, ambient, n));
  CHECK_THROWS_AS(bh_dim_oracle(hz, kz, ambient, 3, 10), Error);
}
