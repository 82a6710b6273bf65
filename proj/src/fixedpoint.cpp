#include "bgpa/fixedpoint.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace bgpa {

std::vector<int> torus_fixed_loops(const PlanarAlgebra& algebra, int n, Sign sign, TorusKind kind) {
  const BipartiteGraph& g = algebra.graph();
  const auto basis = algebra.basis(n, sign);
  std::vector<int> out;
  std::vector<int> net(kind == TorusKind::Scalar ? g.num_bundles() : g.num_edges(), 0);
  for (int k = 0; k < basis->num_loops(); ++k) {
    const auto [pi, eps] = basis->loop(k);
    std::fill(net.begin(), net.end(), 0);
    auto slot = [&](int e) { return kind == TorusKind::Scalar ? g.edge(e).bundle : e; };
    for (const Step& s : basis->path(pi).steps) net[slot(s.edge)] += s.forward ? 1 : -1;
    // eps is traversed backwards in the cyclic loop.
    for (const Step& s : basis->path(eps).steps) net[slot(s.edge)] -= s.forward ? 1 : -1;
    if (std::all_of(net.begin(), net.end(), [](int x) { return x == 0; })) out.push_back(k);
  }
  return out;
}

void FixedBasis::push(SparseCoords coords, int representative) {
  vectors_.push_back(std::move(coords));
  representatives_.push_back(representative);
}

AlgebraElement FixedBasis::element(int k) const {
  AlgebraElement a(algebra_, level_, sign_);
  const PathBasis& b = a.basis();
  for (const auto& [loop, value] : vectors_.at(k)) {
    const auto [pi, eps] = b.loop(loop);
    a.set(pi, eps, value);
  }
  return a;
}

std::vector<AlgebraElement> FixedBasis::elements() const {
  std::vector<AlgebraElement> out;
  for (int k = 0; k < dim(); ++k) out.push_back(element(k));
  return out;
}

std::pair<Vector, double> FixedBasis::project(const AlgebraElement& a) const {
  const PathBasis& b = a.basis();
  if (a.level() != level_ || a.sign() != sign_) throw Error(Error::Kind::InvalidArgument, "projection onto another box space");
  Vector coeffs = Vector::Zero(dim());
  Vector x = a.loop_coordinates();
  for (int k = 0; k < dim(); ++k) {
    Scalar c = 0.0;
    for (const auto& [loop, value] : vectors_[k]) c += std::conj(value) * x(loop) * loop_weight(*algebra_, b, loop);
    coeffs(k) = c;
  }
  for (int k = 0; k < dim(); ++k) {
    for (const auto& [loop, value] : vectors_[k]) x(loop) -= coeffs(k) * value;
  }
  double rest = 0.0;
  for (int loop = 0; loop < x.size(); ++loop) rest += std::norm(x(loop)) * loop_weight(*algebra_, b, loop);
  return {coeffs, std::sqrt(rest)};
}

void verify_closed(const PlanarAlgebra& algebra, const GroupAction& group, double tol) {
  const BipartiteGraph& g = algebra.graph();
  std::set<std::vector<long long>> keys;
  for (const auto& e : group.elements) keys.insert(fingerprint(canonical(g, e)));
  if (group.elements.empty() || !is_identity(canonical(g, group.elements.front()), tol)) {
    throw Error(Error::Kind::NotClosed, "group does not start with the identity");
  }
  for (const auto& gen : group.generators) {
    for (const auto& e : group.elements) {
      if (!keys.count(fingerprint(canonical(g, compose(g, gen, e))))) {
        throw Error(Error::Kind::NotClosed, "group is not closed under composition");
      }
    }
  }
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

FixedBasis fixed_basis(const AlgebraPtr& algebra, const GroupAction& group, int n, Sign sign, double tol) {
  verify_closed(*algebra, group, tol);
  const auto basis = algebra->basis(n, sign);
  const int num_loops = basis->num_loops();

  std::vector<bool> allowed(num_loops, true);
  std::vector<int> loops(num_loops);
  std::iota(loops.begin(), loops.end(), 0);
  if (group.scalar_torus || group.edge_torus) {
    loops = torus_fixed_loops(*algebra, n, sign, group.edge_torus ? TorusKind::Edge : TorusKind::Scalar);
    std::fill(allowed.begin(), allowed.end(), false);
    for (int k : loops) allowed[k] = true;
  }

  std::vector<AutoAction> actions;
  actions.reserve(group.elements.size());
  for (const auto& op : group.elements) actions.emplace_back(op, *algebra, basis);

  // Orbit averages, and components of the union of their supports.
  UnionFind uf(num_loops);
  std::vector<std::map<int, Scalar>> columns(num_loops);
  const double inv_order = 1.0 / static_cast<double>(group.elements.size());
  for (int loop : loops) {
    for (const auto& act : actions) {
      for (const auto& [k, c] : act.transform_loop(loop)) {
        if (std::abs(c) <= 1e-15) continue;
        if (!allowed[k]) {
          throw Error(Error::Kind::Precondition, "group does not preserve the torus-fixed loops");
        }
        uf.unite(loop, k);
        columns[loop][k] += c * inv_order;
      }
    }
  }
  std::map<int, std::vector<int>> components;
  for (int loop : loops) components[uf.find(loop)].push_back(loop);

  FixedBasis out(algebra, n, sign);
  for (const auto& [root, members] : components) {
    std::map<int, int> local;
    for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<int>(i);
    const auto m = static_cast<Eigen::Index>(members.size());
    Eigen::VectorXd sqrt_w(m);
    for (Eigen::Index i = 0; i < m; ++i) sqrt_w(i) = std::sqrt(loop_weight(*algebra, *basis, members[i]));
    std::vector<Vector> accepted;
    for (int loop : members) {
      Vector u = Vector::Zero(m);
      for (const auto& [k, c] : columns[loop]) u(local.at(k)) += c;
      u = u.cwiseProduct(sqrt_w.cast<Scalar>());
      const double norm0 = u.norm();
      if (norm0 <= 1e-14) continue;
      for (int pass = 0; pass < 2; ++pass) {
        for (const Vector& q : accepted) u -= q.dot(u) * q;
      }
      const double norm = u.norm();
      if (norm <= 1e-8 * norm0) continue;
      u /= norm;
      accepted.push_back(u);
      SparseCoords coords;
      for (Eigen::Index i = 0; i < m; ++i) {
        const Scalar v = u(i) / sqrt_w(i);
        if (std::abs(v) > 1e-14) coords.emplace_back(members[i], v);
      }
      out.push(std::move(coords), loop);
    }
  }
  return out;
}

FixedTower fixed_tower(const AlgebraPtr& algebra, const GroupAction& group, int levels, double tol) {
  if (levels < 0) throw Error(Error::Kind::InvalidArgument, "levels must be nonnegative");
  FixedTower tower{algebra, group, {}, {}, 0.0};
  for (int n = 0; n <= levels; ++n) {
    tower.plus.push_back(fixed_basis(algebra, group, n, Sign::Plus, tol));
    tower.minus.push_back(fixed_basis(algebra, group, n, Sign::Minus, tol));
  }
  for (int n = 0; n < levels; ++n) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const FixedBasis& lower = tower.at(n, s);
      for (int k = 0; k < lower.dim(); ++k) {
        const AlgebraElement x = lower.element(k);
        const double r = tower.at(n + 1, s).project(right_embed(x)).second;
        const double l = tower.at(n + 1, flip(s)).project(left_embed(x)).second;
        tower.embedding_residual = std::max({tower.embedding_residual, r, l});
      }
    }
  }
  if (tower.embedding_residual > std::sqrt(tol)) {
    throw Error(Error::Kind::NotClosed, "embedding leaves the fixed span (residual " +
                                            std::to_string(tower.embedding_residual) + ")");
  }
  return tower;
}

}  // namespace bgpa
