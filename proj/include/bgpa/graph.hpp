#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bgpa/core.hpp"

namespace bgpa {

struct Vertex {
  std::string id;
  Parity parity;
};

/// An edge always joins an even vertex to an odd vertex. Parallel edges
/// between the same pair form a bundle and carry local indices 1..n(v,w).
struct Edge {
  int even;
  int odd;
  int local_index;  // 1-based, in input order
  int bundle;
};

/// All parallel edges between one (even, odd) pair.
struct Bundle {
  int even;
  int odd;
  std::vector<int> edges;  // ordered by local index
};

class BipartiteGraph {
 public:
  struct VertexSpec {
    std::string id;
    Parity parity;
  };
  struct EdgeSpec {
    std::string even;
    std::string odd;
  };

  BipartiteGraph() = default;

  /// Validates and numbers the graph. Throws Error::InvalidGraph on a
  /// duplicate id, an unknown endpoint, an edge joining equal parities, or
  /// an empty vertex list.
  static BipartiteGraph build(std::vector<VertexSpec> vertices, const std::vector<EdgeSpec>& edges);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_bundles() const { return static_cast<int>(bundles_.size()); }

  const Vertex& vertex(int v) const { return vertices_.at(v); }
  const Edge& edge(int e) const { return edges_.at(e); }
  const Bundle& bundle(int b) const { return bundles_.at(b); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Bundle>& bundles() const { return bundles_; }

  Parity parity(int v) const { return vertices_.at(v).parity; }
  /// Vertex indices of one parity, in input order.
  const std::vector<int>& vertices_of(Parity p) const { return p == Parity::Even ? even_ : odd_; }
  /// Position of a vertex inside `vertices_of(parity(v))`.
  int rank_in_parity(int v) const { return rank_.at(v); }

  /// Incident edges of v, in edge order.
  const std::vector<int>& incident(int v) const { return incident_.at(v); }
  int other_end(int e, int v) const;
  int degree(int v) const { return static_cast<int>(incident_.at(v).size()); }

  /// Number of edges between v and w (either order); n(v,w) = 0 when not adjacent.
  int multiplicity(int v, int w) const;
  std::optional<int> bundle_between(int v, int w) const;

  int index_of(const std::string& id) const;
  std::optional<int> find(const std::string& id) const;

  /// Connection matrix: entry (v,w) counts edges between v and w.
  Eigen::MatrixXd adjacency() const;
  /// Connected components as sorted vertex lists, ordered by smallest member.
  std::vector<std::vector<int>> components() const;
  bool connected() const { return components().size() <= 1; }

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b);

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<Bundle> bundles_;
  std::vector<int> even_;
  std::vector<int> odd_;
  std::vector<int> rank_;
  std::vector<std::vector<int>> incident_;
  std::unordered_map<std::string, int> index_;
  std::unordered_map<long long, int> bundle_index_;
};

/// Positive weight per vertex (indexed like the graph) with optional modulus.
struct SpinVector {
  std::vector<double> mu;
  std::optional<double> modulus;

  double operator[](int v) const { return mu.at(v); }
};

/// The modulus spin vector from the Perron-Frobenius eigenvector of the
/// connection matrix (mu^2 is the eigenvector), normalized so the first even
/// vertex has weight 1. Throws Error::Disconnected or Error::InvalidGraph.
SpinVector perron_spin(const BipartiteGraph& g);

struct ModulusViolation {
  int vertex;
  double lhs;  // sum over incident edges of mu(far end)^2
  double rhs;  // delta * mu(v)^2
};

struct ModulusCheck {
  bool ok = false;
  double delta = 0.0;  // the consensus ratio
  std::vector<double> ratios;  // per vertex
  std::vector<ModulusViolation> violations;
};

ModulusCheck check_modulus(const BipartiteGraph& g, const std::vector<double>& mu,
                           double tol = kDefaultTolerance);

/// One traversal of an edge. `forward` means even-to-odd.
struct Step {
  int edge;
  bool forward;

  friend bool operator==(const Step&, const Step&) = default;
};

struct PathRef {
  int source = 0;
  int target = 0;
  std::vector<Step> steps;

  int length() const { return static_cast<int>(steps.size()); }
  friend bool operator==(const PathRef&, const PathRef&) = default;
};

Sign sign_of(const BipartiteGraph& g, const PathRef& p);
/// Vertex sequence s(p), ..., t(p).
std::vector<int> vertices_along(const BipartiteGraph& g, const PathRef& p);
/// Builds a path from a start vertex and edge ids; throws if the edges do not chain.
PathRef make_path(const BipartiteGraph& g, int source, const std::vector<int>& edges);
bool is_valid_path(const BipartiteGraph& g, const PathRef& p);

/// Null when t(p) != s(q).
std::optional<PathRef> concat(const PathRef& p, const PathRef& q);
PathRef reverse_path(const PathRef& p);

/// A loop of length 2n, as a pair of equal-endpoint paths.
struct LoopRef {
  PathRef pi;
  PathRef eps;
  Sign sign = Sign::Plus;

  int level() const { return pi.length(); }
  /// pi followed by the reverse of eps.
  std::vector<Step> cyclic() const;
  static LoopRef from_cyclic(const BipartiteGraph& g, int base, const std::vector<Step>& steps);
  friend bool operator==(const LoopRef&, const LoopRef&) = default;
};

/// All paths of length n from vertices of the given sign, ordered by
/// (start vertex, edge ids).
std::vector<PathRef> enumerate_paths(const BipartiteGraph& g, int n, Sign sign);
/// All loops of length 2n, ordered by (pi, eps) in path order.
std::vector<LoopRef> enumerate_loops(const BipartiteGraph& g, int n, Sign sign);

struct Cycle {
  int chord;  // the non-tree edge, traversed forward
  int base;   // even endpoint of the chord
  std::vector<Step> steps;
};

struct CycleSpace {
  int rank = 0;
  std::vector<Cycle> basis;
  std::vector<bool> tree_edge;
};

/// |E| - |V| + 1 with a fundamental cycle basis from a BFS spanning tree.
CycleSpace cycle_rank(const BipartiteGraph& g);

}  // namespace bgpa
