#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bgpa/automorphism.hpp"
#include "bgpa/finite_group.hpp"

namespace bgpa {

/// A graph with its spin and a group of automorphisms acting on it.
struct Example {
  std::string name;
  AlgebraPtr algebra;
  GroupSpec group;
};

/// Q3 with the bipartition by coordinate-weight parity. Even vertices in
/// order 000, 011, 101, 110 (labelled 1..4 for group generators), odd
/// vertices 001, 010, 100, 111.
BipartiteGraph cube_graph();
AlgebraPtr cube_algebra();
/// Permutation of the four even cube vertices (images of 1..4) extended to
/// the unique graph automorphism.
AutomorphismOp cube_even_permutation(const PlanarAlgebra& cube, const std::vector<int>& images);
/// One of "trivial", "z2x2", "a4", "s4".
GroupSpec cube_group(const PlanarAlgebra& cube, std::string_view name);

/// K(1,n): one even centre "c", odd leaves "l1".."ln".
BipartiteGraph star_graph(int n);
AlgebraPtr star_algebra(int n);
/// S_n permuting the leaves.
GroupSpec star_group(const PlanarAlgebra& star);

/// Two vertices "v" (even) and "w" (odd) joined by m parallel edges.
BipartiteGraph multiedge_graph(int m);
AlgebraPtr multiedge_algebra(int m);
/// S_m permuting the parallel edges; `edge_torus` adds every diagonal unitary.
GroupSpec multiedge_group(const PlanarAlgebra& multi, bool edge_torus);

/// One even vertex "x:<g>" and one odd vertex "y:<g>" per element, joined by
/// an edge for each h in {1, g_1, .., g_n} with y = x h. G acts by left translation.
Example diagonal_example(const FiniteGroup& g, const std::vector<int>& generators);

/// Even vertices are the cosets gH, odd vertices the cosets gK, and each
/// group element g gives an edge gH -- gK. G acts by left translation.
/// Requires H and K to meet trivially.
Example bh_coset_example(const FiniteGroup& g, const std::vector<int>& h, const std::vector<int>& k);

/// Cube with Z2^2, A4, S4; star K(1,3) with S3; multi-edge m=2,3 with
/// permutations and the edge torus; diagonal Z2^2; S3 coset graph.
std::vector<Example> catalog_examples();
/// Every catalog graph with the trivial group.
std::vector<Example> catalog_graphs();

}  // namespace bgpa
