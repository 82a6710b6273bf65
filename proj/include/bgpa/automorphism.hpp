#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "bgpa/algebra.hpp"

namespace bgpa {

/// A planar algebra automorphism, stored structurally as Ad U where U first
/// applies a unitary on each parallel-edge space and then relabels vertices
/// by kappa (keeping local edge numbers). Steps traversed odd-to-even pick up
/// the complex conjugate block.
struct AutomorphismOp {
  std::vector<int> kappa;      // vertex permutation
  double lambda = 1.0;         // mu(kappa v) = lambda mu(v)
  std::vector<Matrix> blocks;  // one unitary per bundle, size n(v,w)
};

AutomorphismOp identity_op(const BipartiteGraph& g);
/// (a o b): apply b first.
AutomorphismOp compose(const BipartiteGraph& g, const AutomorphismOp& a, const AutomorphismOp& b);
AutomorphismOp inverse(const BipartiteGraph& g, const AutomorphismOp& a);
bool approx_equal(const AutomorphismOp& a, const AutomorphismOp& b, double tol = kDefaultTolerance);
bool is_identity(const AutomorphismOp& a, double tol = kDefaultTolerance);

/// Representative of the gauge class of `a`: vertex phases (which act
/// trivially on every loop) are fixed along a spanning tree of bundles so
/// that the first sizeable entry of each tree block is real positive.
AutomorphismOp canonical(const BipartiteGraph& g, const AutomorphismOp& a);

/// Throws Error::InvalidAutomorphism if kappa is not a parity- and
/// multiplicity-preserving permutation with a constant spin ratio, or a block
/// is not unitary.
void validate(const PlanarAlgebra& algebra, const AutomorphismOp& op, double tol = kDefaultTolerance);

/// All parity-preserving permutations with n(kv,kw) = n(v,w) and a constant
/// ratio mu(kv)/mu(v). `partial` pins selected vertices (-1 = free).
std::vector<std::vector<int>> find_graph_autos(const BipartiteGraph& g, const std::vector<double>& mu,
                                               double tol = kDefaultTolerance,
                                               const std::vector<int>& partial = {});

AutomorphismOp graph_auto_op(const PlanarAlgebra& algebra, const std::vector<int>& kappa,
                             double tol = kDefaultTolerance);

/// Multiplication operator from unitary blocks keyed by bundle; missing bundles are identity.
AutomorphismOp mult_op(const PlanarAlgebra& algebra, const std::map<int, Matrix>& blocks,
                       double tol = kDefaultTolerance);

/// Scalar phases on chord edges realizing the character chi on the
/// fundamental cycles of `cycles` (one unit complex number per basis cycle).
AutomorphismOp scalar_op_from_character(const PlanarAlgebra& algebra, const CycleSpace& cycles,
                                        const std::vector<Scalar>& chi, double tol = kDefaultTolerance);

/// Phase that a diagonal (scalar or per-edge) op puts on a closed walk.
Scalar loop_phase(const BipartiteGraph& g, const AutomorphismOp& op, const std::vector<Step>& steps);

/// The action of one automorphism on one box space, with the path-space
/// unitary cached per block.
class AutoAction {
 public:
  AutoAction(const AutomorphismOp& op, const PlanarAlgebra& algebra, std::shared_ptr<const PathBasis> basis);

  /// U x_p as (path index, coefficient) pairs.
  const std::vector<std::pair<int, Scalar>>& transform(int path) const { return images_[path]; }
  /// Image of the loop unit E(pi, eps), as (loop index, coefficient) pairs.
  std::vector<std::pair<int, Scalar>> transform_loop(int loop_index) const;
  AlgebraElement apply(const AlgebraElement& a) const;

 private:
  std::shared_ptr<const PathBasis> basis_;
  std::vector<std::vector<std::pair<int, Scalar>>> images_;
  std::vector<int> block_image_;
  std::vector<Matrix> block_unitary_;  // rows: image block paths, cols: source block paths
};

AlgebraElement apply_auto(const AutomorphismOp& op, const AlgebraElement& a);

struct GroupSpec {
  std::vector<AutomorphismOp> generators;
  bool scalar_torus = false;  // adjoin every scalar multiplication operator
  bool edge_torus = false;    // adjoin every diagonal (per-edge phase) operator
};

/// A finite group of automorphisms (elements[0] is the identity), plus
/// optional continuous tori handled combinatorially by the fixed-point code.
struct GroupAction {
  std::vector<AutomorphismOp> elements;
  std::vector<AutomorphismOp> generators;
  bool scalar_torus = false;
  bool edge_torus = false;

  std::size_t order() const { return elements.size(); }
  bool contains_full_scalar_torus() const { return scalar_torus || edge_torus; }
};

/// Rounded entries of an op, usable as a hash key for canonical ops.
std::vector<long long> fingerprint(const AutomorphismOp& op);

inline constexpr std::size_t kDefaultClosureBound = 1'000'000;

/// Closure under composition. Throws Error::BoundExceeded when more than
/// `bound` elements appear.
GroupAction group_closure(const PlanarAlgebra& algebra, const GroupSpec& spec,
                          std::size_t bound = kDefaultClosureBound, double tol = kDefaultTolerance);

struct AutoDecomposition {
  AutomorphismOp graph_part;
  AutomorphismOp inner_part;
  std::vector<Scalar> character;  // on the fundamental cycle basis
  AutomorphismOp scalar_part;
};

/// Factor op = graph_part o inner_part o scalar_part by reading its action on
/// V_0, then V_1, then on the cycle basis.
AutoDecomposition decompose_auto(const AlgebraPtr& algebra, const AutomorphismOp& op, double tol = kDefaultTolerance);
AutomorphismOp recompose(const BipartiteGraph& g, const AutoDecomposition& d);

/// Largest entry difference between the two actions on every loop unit up to `max_level`.
double action_distance(const AlgebraPtr& algebra, const AutomorphismOp& a, const AutomorphismOp& b, int max_level);

}  // namespace bgpa
