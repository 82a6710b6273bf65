#pragma once

#include <random>

#include "bgpa/algebra.hpp"

namespace bgpa::test {

inline AlgebraElement random_element(const AlgebraPtr& algebra, int level, Sign sign, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  const int n = algebra->basis(level, sign)->num_loops();
  Vector coords(n);
  for (int i = 0; i < n; ++i) coords[i] = Scalar(normal(rng), normal(rng));
  return AlgebraElement::from_loop_coordinates(algebra, level, sign, coords);
}

/// Entry of `a` at the loop (pi, eps), both given as vertex-and-edge paths.
inline Scalar entry(const AlgebraElement& a, const PathRef& pi, const PathRef& eps) {
  const PathBasis& b = a.basis();
  const int i = b.find(pi), j = b.find(eps);
  if (i < 0 || j < 0) return 0.0;
  return a(i, j);
}

inline int far_end(const BipartiteGraph& g, const Step& s) {
  const Edge& e = g.edge(s.edge);
  return s.forward ? e.odd : e.even;
}

}  // namespace bgpa::test
