#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bgpa/catalog.hpp"
#include "bgpa/generators.hpp"
#include "support.hpp"

using namespace bgpa;
using bgpa::test::random_element;

namespace {

Matrix rotation(double t) {
  Matrix m(2, 2);
  m << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return m;
}

// Largest violation of g commuting with the planar structure on one random element.
double contract_residual(const AutomorphismOp& op, const AlgebraElement& x, const AlgebraElement& y) {
  const auto g = [&](const AlgebraElement& a) { return apply_auto(op, a); };
  double r = 0.0;
  r = std::max(r, max_difference(g(x * y), g(x) * g(y)));
  r = std::max(r, max_difference(g(adjoint(x)), adjoint(g(x))));
  r = std::max(r, max_difference(g(right_embed(x)), right_embed(g(x))));
  r = std::max(r, max_difference(g(left_embed(x)), left_embed(g(x))));
  if (x.level() > 0) {
    r = std::max(r, max_difference(g(right_cap(x)), right_cap(g(x))));
    r = std::max(r, max_difference(g(left_cap(x)), left_cap(g(x))));
  }
  return r;
}

}  // namespace

TEST_CASE("cube graph automorphisms") {
  const AlgebraPtr cube = cube_algebra();
  CHECK(find_graph_autos(cube->graph(), cube->spin().mu).size() == 24);
  std::vector<int> partial(8, -1);
  partial[0] = 1;
  partial[1] = 0;
  partial[2] = 2;
  CHECK(find_graph_autos(cube->graph(), cube->spin().mu, kDefaultTolerance, partial).size() == 1);
  CHECK(find_graph_autos(star_graph(3), star_algebra(3)->spin().mu).size() == 6);
}

TEST_CASE("validate rejects bad operators") {
  const AlgebraPtr cube = cube_algebra();
  AutomorphismOp op = identity_op(cube->graph());
  op.kappa = {1, 0, 2, 3, 4, 5, 6, 7};  // swaps two even vertices but fixes every odd one
  CHECK_THROWS_AS(validate(*cube, op), Error);
  op = identity_op(cube->graph());
  op.kappa[0] = 4;  // parity change
  CHECK_THROWS_AS(validate(*cube, op), Error);
  const AlgebraPtr multi = multiedge_algebra(2);
  Matrix m(2, 2);
  m << 1, 1, 0, 1;
  CHECK_THROWS_AS(mult_op(*multi, {{0, m}}), Error);
}

TEST_CASE("compose and inverse") {
  const AlgebraPtr multi = multiedge_algebra(2);
  const auto& g = multi->graph();
  const AutomorphismOp a = mult_op(*multi, {{0, rotation(0.3)}});
  const AutomorphismOp b = mult_op(*multi, {{0, rotation(0.5)}});
  CHECK(approx_equal(compose(g, a, b), mult_op(*multi, {{0, rotation(0.8)}})));
  CHECK(is_identity(compose(g, a, inverse(g, a))));

  const AlgebraPtr cube = cube_algebra();
  const auto s4 = group_closure(*cube, cube_group(*cube, "s4"));
  std::mt19937_64 rng(9);
  const auto x = random_element(cube, 2, Sign::Plus, rng);
  for (std::size_t i = 0; i < s4.order(); i += 5) {
    for (std::size_t j = 0; j < s4.order(); j += 7) {
      const auto& p = s4.elements[i];
      const auto& q = s4.elements[j];
      CHECK(max_difference(apply_auto(compose(cube->graph(), p, q), x), apply_auto(p, apply_auto(q, x))) < 1e-9);
    }
  }
}

TEST_CASE("group orders") {
  const AlgebraPtr cube = cube_algebra();
  CHECK(group_closure(*cube, cube_group(*cube, "trivial")).order() == 1);
  CHECK(group_closure(*cube, cube_group(*cube, "z2x2")).order() == 4);
  CHECK(group_closure(*cube, cube_group(*cube, "a4")).order() == 12);
  CHECK(group_closure(*cube, cube_group(*cube, "s4")).order() == 24);
  CHECK_THROWS_AS(group_closure(*cube, cube_group(*cube, "s4"), 10), Error);
  const AlgebraPtr multi = multiedge_algebra(3);
  CHECK(group_closure(*multi, multiedge_group(*multi, false)).order() == 6);
  // An irrational rotation generates an infinite group.
  const AlgebraPtr m2 = multiedge_algebra(2);
  GroupSpec spec;
  spec.generators.push_back(mult_op(*m2, {{0, rotation(1.0)}}));
  CHECK_THROWS_AS(group_closure(*m2, spec, 1000), Error);
}

TEST_CASE("vertex gauge phases act trivially") {
  const AlgebraPtr cube = cube_algebra();
  const auto& g = cube->graph();
  std::map<int, Matrix> blocks;
  // Phase z on every edge at even vertex 0 and conj(z) on every edge at odd vertex 4.
  const Scalar z = std::polar(1.0, 0.7);
  for (int b = 0; b < g.num_bundles(); ++b) {
    Scalar phase = 1.0;
    if (g.bundle(b).even == 0) phase *= z;
    if (g.bundle(b).odd == g.vertices_of(Parity::Odd).front()) phase *= std::conj(z);
    blocks[b] = Matrix::Constant(1, 1, phase);
  }
  const AutomorphismOp op = mult_op(*cube, blocks);
  CHECK(action_distance(cube, op, identity_op(g), 3) < 1e-12);
  CHECK(is_identity(canonical(g, op)));
}

TEST_CASE("automorphisms commute with the planar structure") {
  std::mt19937_64 rng(21);
  for (const Example& ex : catalog_examples()) {
    CAPTURE(ex.name);
    const GroupAction act = group_closure(*ex.algebra, ex.group);
    for (std::size_t i = 0; i < act.order(); i += std::max<std::size_t>(1, act.order() / 6)) {
      const AutomorphismOp& op = act.elements[i];
      for (int n = 0; n <= 2; ++n) {
        for (Sign s : {Sign::Plus, Sign::Minus}) {
          const auto x = random_element(ex.algebra, n, s, rng);
          const auto y = random_element(ex.algebra, n, s, rng);
          CHECK(contract_residual(op, x, y) < 1e-9);
        }
      }
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        const AlgebraElement tl = tl_generator(ex.algebra, s).element;
        CHECK(max_difference(apply_auto(op, tl), tl) < 1e-9);
      }
    }
  }
}

TEST_CASE("scalar operators realize characters of the cycle space") {
  const AlgebraPtr cube = cube_algebra();
  const CycleSpace cs = cycle_rank(cube->graph());
  std::vector<Scalar> chi;
  for (int i = 0; i < cs.rank; ++i) chi.push_back(std::polar(1.0, 0.4 + 0.9 * i));
  const AutomorphismOp op = scalar_op_from_character(*cube, cs, chi);
  for (int i = 0; i < cs.rank; ++i) CHECK(std::abs(loop_phase(cube->graph(), op, cs.basis[i].steps) - chi[i]) < 1e-12);
}

TEST_CASE("decompose then recompose is the identity") {
  for (const Example& ex : catalog_examples()) {
    CAPTURE(ex.name);
    const auto& g = ex.algebra->graph();
    const GroupAction act = group_closure(*ex.algebra, ex.group);
    for (const AutomorphismOp& op : act.elements) {
      const AutoDecomposition d = decompose_auto(ex.algebra, op);
      CHECK(action_distance(ex.algebra, recompose(g, d), op, 2) < 1e-9);
    }
  }
  // A mixture of all three kinds on the double edge.
  const AlgebraPtr m2 = multiedge_algebra(2);
  const CycleSpace cs = cycle_rank(m2->graph());
  const AutomorphismOp mixed =
      compose(m2->graph(), mult_op(*m2, {{0, rotation(0.4)}}),
              scalar_op_from_character(*m2, cs, {std::polar(1.0, 1.3)}));
  const AutoDecomposition d = decompose_auto(m2, mixed);
  CHECK(action_distance(m2, recompose(m2->graph(), d), mixed, 3) < 1e-9);
}
