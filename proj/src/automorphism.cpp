#include "bgpa/automorphism.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>

namespace bgpa {

namespace {

Matrix bundle_identity(const BipartiteGraph& g, int b) {
  const auto n = static_cast<Eigen::Index>(g.bundle(b).edges.size());
  return Matrix::Identity(n, n);
}

int image_bundle(const BipartiteGraph& g, const AutomorphismOp& op, int b) {
  const Bundle& bun = g.bundle(b);
  const auto img = g.bundle_between(op.kappa[bun.even], op.kappa[bun.odd]);
  if (!img) throw Error(Error::Kind::InvalidAutomorphism, "vertex map does not preserve adjacency");
  return *img;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool same_ratio(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

}  // namespace

AutomorphismOp identity_op(const BipartiteGraph& g) {
  AutomorphismOp op;
  op.kappa.resize(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) op.kappa[v] = v;
  for (int b = 0; b < g.num_bundles(); ++b) op.blocks.push_back(bundle_identity(g, b));
  return op;
}

AutomorphismOp compose(const BipartiteGraph& g, const AutomorphismOp& a, const AutomorphismOp& b) {
  AutomorphismOp out;
  out.kappa.resize(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) out.kappa[v] = a.kappa[b.kappa[v]];
  out.lambda = a.lambda * b.lambda;
  out.blocks.resize(g.num_bundles());
  for (int k = 0; k < g.num_bundles(); ++k) out.blocks[k] = a.blocks[image_bundle(g, b, k)] * b.blocks[k];
  return out;
}

AutomorphismOp inverse(const BipartiteGraph& g, const AutomorphismOp& a) {
  AutomorphismOp out;
  out.kappa.resize(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) out.kappa[a.kappa[v]] = v;
  out.lambda = 1.0 / a.lambda;
  out.blocks.resize(g.num_bundles());
  for (int k = 0; k < g.num_bundles(); ++k) out.blocks[image_bundle(g, a, k)] = a.blocks[k].adjoint();
  return out;
}

bool approx_equal(const AutomorphismOp& a, const AutomorphismOp& b, double tol) {
  if (a.kappa != b.kappa || a.blocks.size() != b.blocks.size()) return false;
  if (!same_ratio(a.lambda, b.lambda, tol)) return false;
  for (std::size_t k = 0; k < a.blocks.size(); ++k) {
    if (a.blocks[k].rows() != b.blocks[k].rows()) return false;
    if ((a.blocks[k] - b.blocks[k]).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

bool is_identity(const AutomorphismOp& a, double tol) {
  for (std::size_t v = 0; v < a.kappa.size(); ++v) {
    if (a.kappa[v] != static_cast<int>(v)) return false;
  }
  if (!same_ratio(a.lambda, 1.0, tol)) return false;
  for (const Matrix& m : a.blocks) {
    if ((m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

AutomorphismOp canonical(const BipartiteGraph& g, const AutomorphismOp& a) {
  // Vertex phases phi multiply block (v,w) by conj(phi(v)) phi(w).
  std::vector<Scalar> phi(g.num_vertices(), Scalar(0.0));
  std::vector<bool> seen(g.num_vertices(), false);
  AutomorphismOp out = a;
  for (int root = 0; root < g.num_vertices(); ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    phi[root] = 1.0;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int e : g.incident(v)) {
        const int w = g.other_end(e, v);
        if (seen[w]) continue;
        seen[w] = true;
        const Matrix& m = a.blocks[g.edge(e).bundle];
        Scalar pivot = 0.0;
        for (Eigen::Index i = 0; i < m.rows() && pivot == Scalar(0.0); ++i) {
          for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (std::abs(m(i, j)) > 1e-3) {
              pivot = m(i, j) / std::abs(m(i, j));
              break;
            }
          }
        }
        // Choose phi(w) so that conj(phi(even)) phi(odd) pivot is 1.
        if (g.parity(v) == Parity::Even) {
          phi[w] = phi[v] * std::conj(pivot);
        } else {
          phi[w] = phi[v] * pivot;
        }
        q.push(w);
      }
    }
  }
  for (int k = 0; k < g.num_bundles(); ++k) {
    const Bundle& b = g.bundle(k);
    out.blocks[k] = a.blocks[k] * std::conj(phi[b.even]) * phi[b.odd];
  }
  return out;
}

void validate(const PlanarAlgebra& algebra, const AutomorphismOp& op, double tol) {
  const BipartiteGraph& g = algebra.graph();
  const int n = g.num_vertices();
  if (static_cast<int>(op.kappa.size()) != n) {
    throw Error(Error::Kind::InvalidAutomorphism, "vertex map has the wrong size");
  }
  std::vector<bool> hit(n, false);
  for (int v = 0; v < n; ++v) {
    const int w = op.kappa[v];
    if (w < 0 || w >= n || hit[w]) throw Error(Error::Kind::InvalidAutomorphism, "vertex map is not a permutation");
    hit[w] = true;
    if (g.parity(w) != g.parity(v)) {
      throw Error(Error::Kind::InvalidAutomorphism, "vertex map does not preserve parity at " + g.vertex(v).id);
    }
    if (!same_ratio(algebra.mu(w), op.lambda * algebra.mu(v), tol)) {
      throw Error(Error::Kind::InvalidAutomorphism, "spin ratio is not the constant lambda at " + g.vertex(v).id);
    }
  }
  for (int v : g.vertices_of(Parity::Even)) {
    for (int w : g.vertices_of(Parity::Odd)) {
      if (g.multiplicity(v, w) != g.multiplicity(op.kappa[v], op.kappa[w])) {
        throw Error(Error::Kind::InvalidAutomorphism,
                    "edge multiplicity not preserved at " + g.vertex(v).id + "," + g.vertex(w).id);
      }
    }
  }
  if (static_cast<int>(op.blocks.size()) != g.num_bundles()) {
    throw Error(Error::Kind::InvalidAutomorphism, "expected one block per adjacent vertex pair");
  }
  for (int k = 0; k < g.num_bundles(); ++k) {
    const auto m = static_cast<Eigen::Index>(g.bundle(k).edges.size());
    if (op.blocks[k].rows() != m || !is_unitary(op.blocks[k], tol)) {
      const Bundle& b = g.bundle(k);
      throw Error(Error::Kind::InvalidAutomorphism,
                  "block at " + g.vertex(b.even).id + "," + g.vertex(b.odd).id + " is not unitary of size " +
                      std::to_string(m));
    }
  }
}

std::vector<std::vector<int>> find_graph_autos(const BipartiteGraph& g, const std::vector<double>& mu, double tol,
                                               const std::vector<int>& partial) {
  const int n = g.num_vertices();
  std::vector<std::vector<int>> out;
  std::vector<int> kappa(n, -1);
  std::vector<bool> used(n, false);
  double ratio = 0.0;

  auto consistent = [&](int v, int w) {
    if (g.parity(v) != g.parity(w) || g.degree(v) != g.degree(w)) return false;
    if (v > 0 && !same_ratio(mu[w] / mu[v], ratio, tol)) return false;
    for (int u = 0; u < v; ++u) {
      if (g.parity(u) == g.parity(v)) continue;
      if (g.multiplicity(u, v) != g.multiplicity(kappa[u], w)) return false;
    }
    return true;
  };

  auto search = [&](auto&& self, int v) -> void {
    if (v == n) {
      out.push_back(kappa);
      return;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w]) continue;
      if (v < static_cast<int>(partial.size()) && partial[v] >= 0 && partial[v] != w) continue;
      if (v == 0) ratio = mu[w] / mu[0];
      if (!consistent(v, w)) continue;
      kappa[v] = w;
      used[w] = true;
      self(self, v + 1);
      used[w] = false;
      kappa[v] = -1;
    }
  };
  search(search, 0);
  return out;
}

AutomorphismOp graph_auto_op(const PlanarAlgebra& algebra, const std::vector<int>& kappa, double tol) {
  const BipartiteGraph& g = algebra.graph();
  AutomorphismOp op = identity_op(g);
  if (static_cast<int>(kappa.size()) != g.num_vertices()) {
    throw Error(Error::Kind::InvalidAutomorphism, "vertex map has the wrong size");
  }
  op.kappa = kappa;
  const int first = g.vertices_of(Parity::Even).empty() ? 0 : g.vertices_of(Parity::Even).front();
  if (kappa[first] < 0 || kappa[first] >= g.num_vertices()) {
    throw Error(Error::Kind::InvalidAutomorphism, "vertex map is not a permutation");
  }
  op.lambda = algebra.mu(kappa[first]) / algebra.mu(first);
  validate(algebra, op, tol);
  return op;
}

AutomorphismOp mult_op(const PlanarAlgebra& algebra, const std::map<int, Matrix>& blocks, double tol) {
  const BipartiteGraph& g = algebra.graph();
  AutomorphismOp op = identity_op(g);
  for (const auto& [b, m] : blocks) {
    if (b < 0 || b >= g.num_bundles()) throw Error(Error::Kind::InvalidAutomorphism, "block on a non-adjacent pair");
    op.blocks[b] = m;
  }
  validate(algebra, op, tol);
  return op;
}

AutomorphismOp scalar_op_from_character(const PlanarAlgebra& algebra, const CycleSpace& cycles,
                                        const std::vector<Scalar>& chi, double tol) {
  const BipartiteGraph& g = algebra.graph();
  if (chi.size() != cycles.basis.size()) {
    throw Error(Error::Kind::InvalidArgument, "character needs one value per basis cycle");
  }
  AutomorphismOp op = identity_op(g);
  for (std::size_t k = 0; k < chi.size(); ++k) {
    if (std::abs(std::abs(chi[k]) - 1.0) > tol) {
      throw Error(Error::Kind::InvalidArgument, "character values must have modulus 1");
    }
    const Edge& e = g.edge(cycles.basis[k].chord);
    const auto j = static_cast<Eigen::Index>(e.local_index - 1);
    op.blocks[e.bundle](j, j) *= chi[k];
  }
  return op;
}

Scalar loop_phase(const BipartiteGraph& g, const AutomorphismOp& op, const std::vector<Step>& steps) {
  Scalar phase = 1.0;
  for (const Step& s : steps) {
    const Edge& e = g.edge(s.edge);
    const auto j = static_cast<Eigen::Index>(e.local_index - 1);
    const Scalar d = op.blocks[e.bundle](j, j);
    phase *= s.forward ? d : std::conj(d);
  }
  return phase;
}

AutoAction::AutoAction(const AutomorphismOp& op, const PlanarAlgebra& algebra, std::shared_ptr<const PathBasis> basis)
    : basis_(std::move(basis)) {
  const BipartiteGraph& g = algebra.graph();
  const PathBasis& pb = *basis_;
  images_.resize(pb.size());
  for (int p = 0; p < pb.size(); ++p) {
    const PathRef& path = pb.path(p);
    std::vector<std::pair<std::vector<int>, Scalar>> partial{{{}, Scalar(1.0)}};
    for (const Step& s : path.steps) {
      const Edge& e = g.edge(s.edge);
      const Matrix& m = op.blocks[e.bundle];
      const Bundle& target = g.bundle(image_bundle(g, op, e.bundle));
      const auto j = static_cast<Eigen::Index>(e.local_index - 1);
      std::vector<std::pair<std::vector<int>, Scalar>> next;
      for (const auto& [edges, coeff] : partial) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
          const Scalar c = s.forward ? m(i, j) : std::conj(m(i, j));
          if (c == Scalar(0.0)) continue;
          auto extended = edges;
          extended.push_back(target.edges[i]);
          next.emplace_back(std::move(extended), coeff * c);
        }
      }
      partial = std::move(next);
    }
    auto& img = images_[p];
    for (const auto& [edges, coeff] : partial) {
      const int q = pb.find(op.kappa[path.source], edges);
      if (q < 0) throw Error(Error::Kind::InvalidAutomorphism, "image of a path is not a path");
      img.emplace_back(q, coeff);
    }
    std::sort(img.begin(), img.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  block_image_.resize(pb.num_blocks());
  block_unitary_.resize(pb.num_blocks());
  for (int k = 0; k < pb.num_blocks(); ++k) {
    const auto& blk = pb.blocks()[k];
    const int target = pb.block_index(op.kappa[blk.source], op.kappa[blk.target]);
    block_image_[k] = target;
    const auto n = static_cast<Eigen::Index>(blk.paths.size());
    Matrix u = Matrix::Zero(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
      for (const auto& [q, coeff] : images_[blk.paths[c]]) u(pb.offset_in_block(q), c) += coeff;
    }
    block_unitary_[k] = std::move(u);
  }
}

std::vector<std::pair<int, Scalar>> AutoAction::transform_loop(int loop_index) const {
  const auto [pi, eps] = basis_->loop(loop_index);
  std::vector<std::pair<int, Scalar>> out;
  for (const auto& [a, ca] : images_[pi]) {
    for (const auto& [b, cb] : images_[eps]) out.emplace_back(basis_->loop_index(a, b), ca * std::conj(cb));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

AlgebraElement AutoAction::apply(const AlgebraElement& a) const {
  if (a.basis_ptr() != basis_) throw Error(Error::Kind::InvalidArgument, "action built for a different box space");
  AlgebraElement out(a.algebra_ptr(), a.level(), a.sign());
  for (int k = 0; k < basis_->num_blocks(); ++k) {
    if (!a.has_block(k)) continue;
    out.set_block(block_image_[k], block_unitary_[k] * a.block(k) * block_unitary_[k].adjoint());
  }
  return out;
}

AlgebraElement apply_auto(const AutomorphismOp& op, const AlgebraElement& a) {
  return AutoAction(op, a.algebra(), a.basis_ptr()).apply(a);
}

std::vector<long long> fingerprint(const AutomorphismOp& op) {
  constexpr double scale = 1e7;
  std::vector<long long> key(op.kappa.begin(), op.kappa.end());
  key.push_back(std::llround(op.lambda * scale));
  for (const Matrix& m : op.blocks) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      key.push_back(std::llround(m(i).real() * scale));
      key.push_back(std::llround(m(i).imag() * scale));
    }
  }
  return key;
}

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<long long>& k) const {
    std::size_t h = k.size();
    for (long long x : k) h ^= std::hash<long long>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace

GroupAction group_closure(const PlanarAlgebra& algebra, const GroupSpec& spec, std::size_t bound, double tol) {
  const BipartiteGraph& g = algebra.graph();
  GroupAction out;
  out.scalar_torus = spec.scalar_torus;
  out.edge_torus = spec.edge_torus;
  for (const auto& gen : spec.generators) {
    validate(algebra, gen, tol);
    out.generators.push_back(canonical(g, gen));
  }
  std::unordered_map<std::vector<long long>, int, KeyHash> index;
  out.elements.push_back(identity_op(g));
  index.emplace(fingerprint(out.elements.front()), 0);
  // Breadth-first over words in the generators; in a finite group the
  // inverses appear as positive powers.
  for (std::size_t head = 0; head < out.elements.size(); ++head) {
    for (const auto& gen : out.generators) {
      AutomorphismOp next = canonical(g, compose(g, gen, out.elements[head]));
      auto key = fingerprint(next);
      if (index.count(key)) continue;
      if (out.elements.size() >= bound) {
        throw Error(Error::Kind::BoundExceeded,
                    "group closure exceeded " + std::to_string(bound) +
                        " elements; the group may be infinite (use the torus flag for scalar tori)");
      }
      index.emplace(std::move(key), static_cast<int>(out.elements.size()));
      out.elements.push_back(std::move(next));
    }
  }
  return out;
}

AutoDecomposition decompose_auto(const AlgebraPtr& algebra, const AutomorphismOp& op, double tol) {
  const BipartiteGraph& g = algebra->graph();
  validate(*algebra, op, tol);
  AutoDecomposition d;

  // The vertex permutation from the action on the vertex projections.
  std::vector<int> kappa(g.num_vertices(), -1);
  for (Sign sign : {Sign::Plus, Sign::Minus}) {
    const auto basis = algebra->basis(0, sign);
    const AutoAction act(op, *algebra, basis);
    for (int i = 0; i < basis->size(); ++i) {
      const auto image = act.transform_loop(basis->loop_index(i, i));
      for (const auto& [k, c] : image) {
        if (std::abs(c) > 0.5) kappa[basis->path(i).source] = basis->path(basis->loop(k).first).source;
      }
    }
  }
  d.graph_part = graph_auto_op(*algebra, kappa, tol);

  // Inner part: on V_1^+ the residual acts as X -> O X O* on each bundle.
  const AutomorphismOp r1 = compose(g, inverse(g, d.graph_part), op);
  const auto b1 = algebra->basis(1, Sign::Plus);
  const AutoAction act1(r1, *algebra, b1);
  std::map<int, Matrix> blocks;
  for (int k = 0; k < g.num_bundles(); ++k) {
    const Bundle& bun = g.bundle(k);
    const auto n = static_cast<Eigen::Index>(bun.edges.size());
    auto path_of = [&](Eigen::Index i) {
      const int e = bun.edges[i];
      return b1->find(bun.even, std::vector<int>{e});
    };
    auto image = [&](Eigen::Index i, Eigen::Index j) {
      Matrix m = Matrix::Zero(n, n);
      for (const auto& [loop, c] : act1.transform_loop(b1->loop_index(path_of(i), path_of(j)))) {
        const auto [p, q] = b1->loop(loop);
        m(b1->offset_in_block(p), b1->offset_in_block(q)) += c;
      }
      return m;
    };
    // o_0 o_0* = image(E_00); o_i = image(E_i0) o_0.
    const Matrix p0 = image(0, 0);
    Eigen::Index pivot = 0;
    p0.diagonal().real().maxCoeff(&pivot);
    const Vector o0 = p0.col(pivot) / std::sqrt(p0(pivot, pivot).real());
    Matrix o(n, n);
    o.col(0) = o0;
    for (Eigen::Index i = 1; i < n; ++i) o.col(i) = image(i, 0) * o0;
    blocks.emplace(k, o);
  }
  d.inner_part = mult_op(*algebra, blocks, std::max(tol, 1e-8));

  // What remains acts trivially on V_1 and is read off on the cycle basis.
  const AutomorphismOp r2 = compose(g, inverse(g, d.inner_part), r1);
  const CycleSpace cycles = cycle_rank(g);
  for (const Cycle& c : cycles.basis) {
    const LoopRef loop = LoopRef::from_cyclic(g, c.base, c.steps);
    const auto basis = algebra->basis(loop.level(), loop.sign);
    const AutoAction act(r2, *algebra, basis);
    const int idx = basis->loop_index(basis->find(loop.pi), basis->find(loop.eps));
    Scalar chi = 0.0;
    for (const auto& [k, v] : act.transform_loop(idx)) {
      if (k == idx) chi += v;
    }
    d.character.push_back(chi / std::abs(chi));
  }
  d.scalar_part = scalar_op_from_character(*algebra, cycles, d.character, std::max(tol, 1e-8));
  return d;
}

AutomorphismOp recompose(const BipartiteGraph& g, const AutoDecomposition& d) {
  return compose(g, d.graph_part, compose(g, d.inner_part, d.scalar_part));
}

double action_distance(const AlgebraPtr& algebra, const AutomorphismOp& a, const AutomorphismOp& b, int max_level) {
  double worst = 0.0;
  for (int n = 0; n <= max_level; ++n) {
    for (Sign sign : {Sign::Plus, Sign::Minus}) {
      const auto basis = algebra->basis(n, sign);
      const AutoAction act_a(a, *algebra, basis);
      const AutoAction act_b(b, *algebra, basis);
      for (int k = 0; k < basis->num_loops(); ++k) {
        std::map<int, Scalar> diff;
        for (const auto& [i, c] : act_a.transform_loop(k)) diff[i] += c;
        for (const auto& [i, c] : act_b.transform_loop(k)) diff[i] -= c;
        for (const auto& [i, c] : diff) worst = std::max(worst, std::abs(c));
      }
    }
  }
  return worst;
}

}  // namespace bgpa
