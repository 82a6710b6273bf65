#pragma once

#include <utility>
#include <vector>

#include "bgpa/automorphism.hpp"

namespace bgpa {

enum class TorusKind {
  Scalar,  // one phase per adjacent vertex pair
  Edge,    // one phase per edge
};

/// Loop indices of V_n^{+/-} fixed by every operator of the torus: those whose
/// net signed traversal count vanishes on every vertex pair (or every edge).
std::vector<int> torus_fixed_loops(const PlanarAlgebra& algebra, int n, Sign sign, TorusKind kind);

using SparseCoords = std::vector<std::pair<int, Scalar>>;  // (loop index, value), sorted

/// An orthonormal basis of the fixed subspace of one box space, kept as
/// sparse loop coordinates. Elements are materialized on request.
class FixedBasis {
 public:
  FixedBasis(AlgebraPtr algebra, int level, Sign sign) : algebra_(std::move(algebra)), level_(level), sign_(sign) {}

  int level() const { return level_; }
  Sign sign() const { return sign_; }
  int dim() const { return static_cast<int>(vectors_.size()); }
  const AlgebraPtr& algebra() const { return algebra_; }

  const SparseCoords& coords(int k) const { return vectors_[k]; }
  /// The loop whose orbit average produced vector k.
  int representative(int k) const { return representatives_[k]; }
  AlgebraElement element(int k) const;
  std::vector<AlgebraElement> elements() const;

  /// Coefficients of `a` against the basis, and the norm of what is left over.
  std::pair<Vector, double> project(const AlgebraElement& a) const;

  void push(SparseCoords coords, int representative);

 private:
  AlgebraPtr algebra_;
  int level_;
  Sign sign_;
  std::vector<SparseCoords> vectors_;
  std::vector<int> representatives_;
};

/// Basis of {x : g(x) = x for every g}, from orbit averages of loop units
/// orthonormalized in the trace form. With a torus flag the loops are first
/// restricted to torus-fixed ones.
FixedBasis fixed_basis(const AlgebraPtr& algebra, const GroupAction& group, int n, Sign sign,
                       double tol = kDefaultTolerance);

struct FixedTower {
  AlgebraPtr algebra;
  GroupAction group;
  std::vector<FixedBasis> plus;
  std::vector<FixedBasis> minus;
  double embedding_residual = 0.0;  // worst distance of an embedded basis vector from the next fixed span

  int depth() const { return static_cast<int>(plus.size()) - 1; }
  const FixedBasis& at(int n, Sign s) const { return s == Sign::Plus ? plus.at(n) : minus.at(n); }
};

/// Fixed bases for levels 0..N of both signs. Throws Error::NotClosed if a
/// right or left embedding leaves the fixed span.
FixedTower fixed_tower(const AlgebraPtr& algebra, const GroupAction& group, int levels, double tol = kDefaultTolerance);

/// Throws Error::NotClosed unless composing any generator with any element stays in the set.
void verify_closed(const PlanarAlgebra& algebra, const GroupAction& group, double tol = kDefaultTolerance);

}  // namespace bgpa
