#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bgpa/finite_group.hpp"
#include "bgpa/fixedpoint.hpp"

namespace bgpa {

struct SimpleBlock {
  AlgebraElement central;  // minimal central projection
  int dim = 0;             // the block is M_dim
  double trace = 0.0;      // tau(central)
};

struct AlgebraDecomposition {
  int level = 0;
  Sign sign = Sign::Plus;
  int dim = 0;  // dimension of the decomposed algebra
  std::vector<SimpleBlock> blocks;
};

/// Simple summands of the *-algebra spanned by an orthonormal fixed basis.
/// The central element sum_k b_k h b_k^* of a random positive h is split
/// into eigenspaces; a second random h must give the same split. Throws
/// Error::NotClosed if the span is not a *-algebra.
AlgebraDecomposition decompose_algebra(const FixedBasis& basis, std::uint64_t seed = 0x5eed);

/// Entry (i, j) is the multiplicity of lower block i in upper block j under right_embed.
Eigen::MatrixXi inclusion_matrix(const AlgebraDecomposition& lower, const AlgebraDecomposition& upper);

/// delta^{-1} TL on strands (n, n+1), an element of V_{n+1}^{sign}.
AlgebraElement jones_projection(const AlgebraPtr& algebra, int n, Sign sign);

struct PrincipalGraph {
  struct Node {
    std::string name;
    int depth;
  };
  struct Link {
    int a;  // shallower end
    int b;
    int multiplicity;
  };
  std::vector<Node> nodes;
  std::vector<Link> links;
  int star = 0;

  /// Number of walks of length n from the star to each node.
  std::vector<long long> walks(int n) const;
  /// Sum over nodes of walks(n)^2.
  long long walk_dimension(int n) const;
  int max_depth() const;
};

struct PrincipalGraphResult {
  PrincipalGraph graph;
  std::vector<AlgebraDecomposition> levels;  // the plus tower, levels 0..depth
  std::vector<Eigen::MatrixXi> inclusions;   // level n -> n+1
  std::vector<int> fixed_dims;
  std::vector<long long> walk_dims;
  bool consistent = false;  // walk_dims == fixed_dims
};

/// Bratteli diagram of the plus tower with old blocks (those under the
/// Jones projection) identified two levels down.
PrincipalGraphResult principal_graph(const FixedTower& tower, int depth, double tol = kDefaultTolerance);

/// Three leaves on a white vertex, joined by a double edge to a black vertex
/// carrying three more leaves; the star is one of the first leaves.
PrincipalGraph cube_s4_reference_graph();

struct GraphComparison {
  bool isomorphic = false;
  std::vector<long long> computed_dims;
  std::vector<long long> reference_dims;
  std::vector<int> differing_levels;
  std::string summary;
};

/// Compares pointed graphs up to `depth` (isomorphism fixing the star, and walk dimensions).
GraphComparison compare_principal_graphs(const PrincipalGraph& computed, const PrincipalGraph& reference, int depth);

std::string to_dot(const PrincipalGraph& g);

/// Count of 2n-tuples from {1, g_1, .., g_k} (as listed, 1 prepended) with a_1 a_2^{-1} a_3 ... a_{2n}^{-1} = 1.
long long diagonal_dim_oracle(const FiniteGroup& g, const std::vector<int>& generators, int n);

struct Letter {
  bool from_k;  // otherwise from H
  int element;
};
using WordOracle = std::function<bool(const std::vector<Letter>&)>;

/// Normal-form reduction in the free product H * K.
WordOracle free_product_oracle(const FiniteGroup& h, const FiniteGroup& k);
/// Evaluation inside a finite group containing H and K; h_embed and k_embed map element indices.
WordOracle ambient_group_oracle(const FiniteGroup& g, const std::vector<int>& h_embed, const std::vector<int>& k_embed);

/// Count of tuples (k_1, h_1, .., k_n, h_n) with k_1 h_1 ... k_n h_n = 1.
/// Throws Error::BoundExceeded if more than `max_tuples` words would be tested.
long long bh_dim_oracle(const FiniteGroup& h, const FiniteGroup& k, const WordOracle& trivial, int n,
                        long long max_tuples = 50'000'000);

}  // namespace bgpa
