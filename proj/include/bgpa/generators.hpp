#pragma once

#include <vector>

#include "bgpa/algebra.hpp"

namespace bgpa {

/// The Temperley-Lieb 2-box together with its eigen-data: for each vertex v
/// of the matching parity, y_v = sum over edges e at v of mu(t(e)) c(e, rev e)
/// is an eigenvector with eigenvalue delta_v, and TL vanishes off their span.
struct TLElement {
  AlgebraElement element;
  std::vector<int> vertices;
  std::vector<Vector> eigenvectors;  // coordinates in the level-2 path basis
  std::vector<double> eigenvalues;
};

TLElement tl_generator(const AlgebraPtr& algebra, Sign sign);

/// TL acting on strands (position, position+1) of a level-`level` space,
/// i.e. l^{position-1} r^{level-position-1}(TL) with the sign that makes it land in `sign`.
AlgebraElement tl_at(const AlgebraPtr& algebra, int level, Sign sign, int position);

/// Close the rightmost strand: V_n^{+/-} -> V_{n-1}^{+/-}.
AlgebraElement right_cap(const AlgebraElement& a);
/// Close the leftmost strand: V_n^{+/-} -> V_{n-1}^{-/+}.
AlgebraElement left_cap(const AlgebraElement& a);

/// Rotation by pi of a 1-box: V_1^{+/-} -> V_1^{-/+}, H(A)(rev q, rev p) = A(p, q).
/// The cup and cap of the rotation tangle carry reciprocal weights, so no
/// spin factor survives.
AlgebraElement half_rotation(const AlgebraElement& a);

}  // namespace bgpa
