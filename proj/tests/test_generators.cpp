#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bgpa/catalog.hpp"
#include "bgpa/generators.hpp"
#include "support.hpp"

using namespace bgpa;
using bgpa::test::entry;
using bgpa::test::far_end;
using bgpa::test::random_element;

namespace {

std::vector<AlgebraPtr> sample_algebras() { return {cube_algebra(), star_algebra(3), multiedge_algebra(2)}; }

// State sum for the cup-cap tangle: each critical point of the closed string
// contributes mu(inside) / mu(outside).
AlgebraElement tl_oracle(const AlgebraPtr& alg, Sign sign) {
  const BipartiteGraph& g = alg->graph();
  AlgebraElement out(alg, 2, sign);
  for (const PathRef& pi : enumerate_paths(g, 2, sign)) {
    for (const PathRef& eps : enumerate_paths(g, 2, sign)) {
      if (pi.source != eps.source || pi.target != pi.source || eps.target != eps.source) continue;
      if (pi.steps[0].edge != pi.steps[1].edge || eps.steps[0].edge != eps.steps[1].edge) continue;
      const int v = pi.source;
      const double w = alg->mu(far_end(g, pi.steps[0])) * alg->mu(far_end(g, eps.steps[0])) / (alg->mu(v) * alg->mu(v));
      out.set(out.basis().find(pi), out.basis().find(eps), w);
    }
  }
  return out;
}

// Closing the last strand: one cap and one cup around the region at t(e).
AlgebraElement right_cap_oracle(const AlgebraElement& a) {
  const AlgebraPtr& alg = a.algebra_ptr();
  const BipartiteGraph& g = alg->graph();
  AlgebraElement out(alg, a.level() - 1, a.sign());
  for (const LoopRef& loop : enumerate_loops(g, a.level() - 1, a.sign())) {
    Scalar sum = 0.0;
    const int t = loop.pi.target;
    for (int e : g.incident(t)) {
      const int far = g.other_end(e, t);
      std::vector<int> pe, qe;
      for (const Step& s : loop.pi.steps) pe.push_back(s.edge);
      for (const Step& s : loop.eps.steps) qe.push_back(s.edge);
      pe.push_back(e);
      qe.push_back(e);
      const double w = alg->mu(far) * alg->mu(far) / (alg->mu(t) * alg->mu(t));
      sum += w * entry(a, make_path(g, loop.pi.source, pe), make_path(g, loop.eps.source, qe));
    }
    out.set(out.basis().find(loop.pi), out.basis().find(loop.eps), sum);
  }
  return out;
}

AlgebraElement left_cap_oracle(const AlgebraElement& a) {
  const AlgebraPtr& alg = a.algebra_ptr();
  const BipartiteGraph& g = alg->graph();
  AlgebraElement out(alg, a.level() - 1, flip(a.sign()));
  for (const LoopRef& loop : enumerate_loops(g, a.level() - 1, flip(a.sign()))) {
    Scalar sum = 0.0;
    const int s = loop.pi.source;
    for (int e : g.incident(s)) {
      const int far = g.other_end(e, s);
      std::vector<int> ep{e}, eq{e};
      for (const Step& st : loop.pi.steps) ep.push_back(st.edge);
      for (const Step& st : loop.eps.steps) eq.push_back(st.edge);
      const double w = alg->mu(far) * alg->mu(far) / (alg->mu(s) * alg->mu(s));
      sum += w * entry(a, make_path(g, far, ep), make_path(g, far, eq));
    }
    out.set(out.basis().find(loop.pi), out.basis().find(loop.eps), sum);
  }
  return out;
}

AlgebraElement embed_left(AlgebraElement a, int times) {
  for (int i = 0; i < times; ++i) a = left_embed(a);
  return a;
}

AlgebraElement embed_right(AlgebraElement a, int times) {
  for (int i = 0; i < times; ++i) a = right_embed(a);
  return a;
}

}  // namespace

TEST_CASE("TL squares to delta TL and matches the state sum") {
  for (const auto& alg : sample_algebras()) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const TLElement tl = tl_generator(alg, s);
      CHECK(max_difference(tl.element, tl_oracle(alg, s)) < 1e-12);
      CHECK(max_difference(tl.element * tl.element, tl.element * Scalar(alg->modulus())) < 1e-9);
      CHECK(max_difference(tl.element, adjoint(tl.element)) < 1e-12);
    }
  }
}

TEST_CASE("TL eigenvectors y_v") {
  for (const auto& alg : sample_algebras()) {
    const TLElement tl = tl_generator(alg, Sign::Plus);
    const auto basis = alg->basis(2, Sign::Plus);
    REQUIRE(tl.vertices.size() == tl.eigenvectors.size());
    for (std::size_t i = 0; i < tl.vertices.size(); ++i) {
      const Vector& y = tl.eigenvectors[i];
      Vector ty = Vector::Zero(y.size());
      for (int k = 0; k < basis->num_loops(); ++k) {
        const auto [p, q] = basis->loop(k);
        ty[p] += tl.element(p, q) * y[q];
      }
      CHECK((ty - tl.eigenvalues[i] * y).norm() < 1e-9 * std::max(1.0, y.norm()));
      CHECK(std::abs(tl.eigenvalues[i] - alg->modulus()) < 1e-9);
    }
  }
}

TEST_CASE("TL at a strand position is an embedded TL") {
  const AlgebraPtr alg = cube_algebra();
  const AlgebraElement tl = tl_generator(alg, Sign::Plus).element;
  CHECK(max_difference(tl_at(alg, 4, Sign::Plus, 1), embed_right(tl, 2)) < 1e-12);
  CHECK(max_difference(tl_at(alg, 4, Sign::Plus, 3), embed_left(tl, 2)) < 1e-12);
  CHECK_THROWS_AS(tl_at(alg, 3, Sign::Plus, 3), Error);
}

TEST_CASE("caps match the state sum") {
  std::mt19937_64 rng(11);
  for (const auto& alg : sample_algebras()) {
    for (int n = 1; n <= 3; ++n) {
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        const AlgebraElement a = random_element(alg, n, s, rng);
        CHECK(max_difference(right_cap(a), right_cap_oracle(a)) < 1e-12);
        CHECK(max_difference(left_cap(a), left_cap_oracle(a)) < 1e-12);
      }
    }
  }
}

TEST_CASE("capping identities") {
  std::mt19937_64 rng(7);
  for (const auto& alg : {cube_algebra(), star_algebra(3)}) {
    for (int n = 2; n <= 3; ++n) {
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        const AlgebraElement left_tl = tl_at(alg, n + 1, flip(s), 1);
        const AlgebraElement right_tl = tl_at(alg, n + 1, s, n);
        for (int trial = 0; trial < 5; ++trial) {
          const AlgebraElement a = random_element(alg, n, s, rng);
          const double scale = a.max_abs();
          CHECK(max_difference(left_tl * left_embed(a) * left_tl, left_tl * embed_left(left_cap(a), 2)) < 1e-9 * scale);
          CHECK(max_difference(right_tl * right_embed(a) * right_tl, embed_right(right_cap(a), 2) * right_tl) <
                1e-9 * scale);
        }
      }
    }
  }
}

TEST_CASE("half rotation is the pi rotation of a 1-box") {
  std::mt19937_64 rng(3);
  for (const auto& alg : sample_algebras()) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const AlgebraElement x = random_element(alg, 1, s, rng);
      const AlgebraElement y = random_element(alg, 1, s, rng);
      const AlgebraElement hx = half_rotation(x);
      CHECK(hx.sign() == flip(s));
      CHECK(max_difference(half_rotation(hx), x) < 1e-12);
      CHECK(max_difference(half_rotation(x * y), half_rotation(y) * hx) < 1e-9);
      CHECK(max_difference(half_rotation(adjoint(x)), adjoint(hx)) < 1e-12);
      // Rotating moves the left cap to the right cap.
      CHECK(max_difference(right_cap(hx), left_cap(x)) < 1e-9);
      CHECK(max_difference(left_cap(hx), right_cap(x)) < 1e-9);
    }
  }
}

TEST_CASE("half rotation by hand-enumerated states") {
  // Double edge with an unbalanced spin. Drawn with one maximum and one
  // minimum, the rotation tangle has regions L and R on either side of the
  // inner disk; the maximum has L concave and the minimum has R concave, so a
  // state contributes mu(L)/mu(R) * mu(R)/mu(L) = 1 times the input entry.
  const AlgebraPtr alg = PlanarAlgebra::create(multiedge_graph(2), SpinVector{{1.0, 2.0}, std::nullopt});
  const BipartiteGraph& g = alg->graph();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const AlgebraElement unit = loop_unit(alg, LoopRef{make_path(g, 0, {i}), make_path(g, 0, {j}), Sign::Plus});
      const AlgebraElement h = half_rotation(unit);
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          // The only compatible state reads the input loop (e_i, e_j) at output loop (rev e_j, rev e_i).
          const Scalar expected = (a == j && b == i) ? 1.0 : 0.0;
          CHECK(entry(h, make_path(g, 1, {a}), make_path(g, 1, {b})) == expected);
        }
      }
    }
  }
}

TEST_CASE("inner form is positive on loop units") {
  const AlgebraPtr alg = cube_algebra();
  const auto basis = alg->basis(2, Sign::Plus);
  std::vector<AlgebraElement> units;
  for (int k = 0; k < basis->num_loops(); ++k) units.push_back(loop_unit(alg, 2, Sign::Plus, k));
  const Matrix gram = gram_matrix(units);
  CHECK((gram - gram.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  for (Eigen::Index i = 0; i < gram.rows(); ++i) CHECK(gram(i, i).real() > 0.0);
}
