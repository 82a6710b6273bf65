#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bgpa/graph.hpp"

namespace bgpa {

/// The path basis of H_n^{+/-}: paths of one length from vertices of one
/// parity, grouped into (source, target) blocks. Loops of V_n^{+/-} are pairs of
/// paths in the same block, numbered by (pi, eps) in path order.
class PathBasis {
 public:
  struct Block {
    int source;
    int target;
    std::vector<int> paths;
  };

  PathBasis(const BipartiteGraph& g, int level, Sign sign, const PathBasis* shorter,
            const PathBasis* shorter_flipped);

  int level() const { return level_; }
  Sign sign() const { return sign_; }
  int size() const { return static_cast<int>(paths_.size()); }
  const PathRef& path(int i) const { return paths_.at(i); }
  const std::vector<PathRef>& paths() const { return paths_; }

  /// Index of the path with the given start and edge ids, or -1.
  int find(int source, std::span<const int> edges) const;
  int find(const PathRef& p) const;

  const std::vector<Block>& blocks() const { return blocks_; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  int block_of(int path) const { return block_of_[path]; }
  int offset_in_block(int path) const { return offset_[path]; }
  int block_index(int source, int target) const;

  /// Index of p with its last step removed, in the (level-1, sign) basis.
  int drop_last(int path) const { return drop_last_.at(path); }
  /// Index of p with its first step removed, in the (level-1, -sign) basis.
  int drop_first(int path) const { return drop_first_.at(path); }
  int first_edge(int path) const { return paths_[path].steps.front().edge; }
  int last_edge(int path) const { return paths_[path].steps.back().edge; }

  int num_loops() const { return num_loops_; }
  int loop_index(int pi, int eps) const { return loop_offset_[pi] + offset_[eps]; }
  std::pair<int, int> loop(int k) const { return loops_.at(k); }

 private:
  int level_;
  Sign sign_;
  std::vector<PathRef> paths_;
  std::map<std::vector<int>, int> lookup_;  // key: source followed by edge ids
  std::vector<Block> blocks_;
  std::map<std::pair<int, int>, int> block_lookup_;
  std::vector<int> block_of_;
  std::vector<int> offset_;
  std::vector<int> drop_last_;
  std::vector<int> drop_first_;
  std::vector<int> loop_offset_;
  std::vector<std::pair<int, int>> loops_;
  int num_loops_ = 0;
};

/// A bipartite graph planar algebra: the graph, its spin vector, and a
/// cache of path bases. Always handled through shared_ptr so elements can
/// refer back to it.
class PlanarAlgebra : public std::enable_shared_from_this<PlanarAlgebra> {
 public:
  static std::shared_ptr<const PlanarAlgebra> create(BipartiteGraph g, SpinVector spin);

  const BipartiteGraph& graph() const { return graph_; }
  const SpinVector& spin() const { return spin_; }
  double mu(int v) const { return spin_.mu[v]; }

  /// The modulus delta; throws Error::Precondition when the spin has none.
  double modulus() const;
  bool has_modulus() const { return spin_.modulus.has_value(); }

  std::shared_ptr<const PathBasis> basis(int level, Sign sign) const;

  /// Sum of mu^4 over vertices of one parity.
  double partition_mass(Sign sign) const;

 private:
  PlanarAlgebra(BipartiteGraph g, SpinVector spin);

  BipartiteGraph graph_;
  SpinVector spin_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, int>, std::shared_ptr<const PathBasis>> cache_;
};

using AlgebraPtr = std::shared_ptr<const PlanarAlgebra>;

/// An element of V_n^{+/-}, stored as dense (source, target) blocks of the
/// path basis. Absent blocks are zero.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(AlgebraPtr algebra, int level, Sign sign);

  static AlgebraElement identity(AlgebraPtr algebra, int level, Sign sign);

  int level() const { return basis_->level(); }
  Sign sign() const { return basis_->sign(); }
  const PathBasis& basis() const { return *basis_; }
  const std::shared_ptr<const PathBasis>& basis_ptr() const { return basis_; }
  const PlanarAlgebra& algebra() const { return *algebra_; }
  const AlgebraPtr& algebra_ptr() const { return algebra_; }

  Scalar operator()(int pi, int eps) const;
  void add(int pi, int eps, Scalar value);
  void set(int pi, int eps, Scalar value);

  bool has_block(int b) const { return blocks_[b].size() > 0; }
  const Matrix& block(int b) const { return blocks_[b]; }
  /// The block, allocated as zero when absent.
  Matrix& block_mut(int b);
  void set_block(int b, Matrix m) { blocks_[b] = std::move(m); }

  double max_abs() const;
  bool is_zero(double tol = 0.0) const { return max_abs() <= tol; }

  /// Entries in loop order.
  Vector loop_coordinates() const;
  static AlgebraElement from_loop_coordinates(AlgebraPtr algebra, int level, Sign sign, const Vector& coords);

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(Scalar s);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, Scalar s) { return a *= s; }
  friend AlgebraElement operator*(Scalar s, AlgebraElement a) { return a *= s; }

 private:
  void require_compatible(const AlgebraElement& other) const;

  AlgebraPtr algebra_;
  std::shared_ptr<const PathBasis> basis_;
  std::vector<Matrix> blocks_;
};

/// Diagonal of V_0^{+/-}: one value per vertex of the matching parity.
struct ZeroBoxElement {
  Sign sign = Sign::Plus;
  std::vector<Scalar> values;  // indexed by rank in parity

  bool is_scalar(double tol) const;
};

ZeroBoxElement to_zero_box(const AlgebraElement& a);
AlgebraElement from_zero_box(AlgebraPtr algebra, const ZeroBoxElement& z);
/// The projection p_v (even v) or q_w (odd w) in V_0.
ZeroBoxElement vertex_projection(const PlanarAlgebra& algebra, int v);

/// Matrix unit with entry 1 at (pi, eps). Throws if the loop is not on the graph.
AlgebraElement loop_unit(AlgebraPtr algebra, const LoopRef& loop);
AlgebraElement loop_unit(AlgebraPtr algebra, int level, Sign sign, int loop_index);

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);
inline AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return multiply(a, b); }
AlgebraElement adjoint(const AlgebraElement& a);

/// l(A): prepend one strand on the left; level n+1, sign flipped.
AlgebraElement left_embed(const AlgebraElement& a);
/// r(A): append one strand on the right; level n+1, same sign.
AlgebraElement right_embed(const AlgebraElement& a);

double max_difference(const AlgebraElement& a, const AlgebraElement& b);

/// Partition function on V_0 (mu^4 weights), normalized to mass 1 on the parity class.
Scalar normalized_trace(const PlanarAlgebra& algebra, const ZeroBoxElement& z);

/// <A, B> = RC^n(B* A), a V_0 element.
ZeroBoxElement inner_form(const AlgebraElement& a, const AlgebraElement& b);
/// Entry (i, j) is the scalarized <b_j, b_i>; Hermitian.
Matrix gram_matrix(const std::vector<AlgebraElement>& basis);

/// tau(A): normalized trace of RC^n(A). Computed from the per-block weights
/// mu(s)^2 mu(t)^2 / Z, which agree with repeated right capping.
Scalar trace(const AlgebraElement& a);
/// tau(A B) without forming the product.
Scalar trace_of_product(const AlgebraElement& a, const AlgebraElement& b);
/// Weight of loop units in the trace form: tau(E(pi,eps)^* E(pi,eps)).
double loop_weight(const PlanarAlgebra& algebra, const PathBasis& basis, int loop_index);

std::string path_label(const BipartiteGraph& g, const PathRef& p);
/// Text form: a header `level sign` and one line per nonzero entry `pi eps re im`.
std::string to_debug_string(const AlgebraElement& a, double tol = 0.0);

}  // namespace bgpa
