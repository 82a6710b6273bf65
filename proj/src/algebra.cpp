#include "bgpa/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace bgpa {

PathBasis::PathBasis(const BipartiteGraph& g, int level, Sign sign, const PathBasis* shorter,
                     const PathBasis* shorter_flipped)
    : level_(level), sign_(sign) {
  if (level == 0) {
    for (int v : g.vertices_of(parity_of(sign))) paths_.push_back(PathRef{v, v, {}});
  } else {
    for (int i = 0; i < shorter->size(); ++i) {
      const PathRef& p = shorter->path(i);
      for (int e : g.incident(p.target)) {
        PathRef q = p;
        q.steps.push_back({e, g.parity(p.target) == Parity::Even});
        q.target = g.other_end(e, p.target);
        paths_.push_back(std::move(q));
        drop_last_.push_back(i);
      }
    }
  }
  for (int i = 0; i < size(); ++i) {
    const PathRef& p = paths_[i];
    std::vector<int> key{p.source};
    for (const Step& s : p.steps) key.push_back(s.edge);
    lookup_.emplace(std::move(key), i);
    block_lookup_.emplace(std::make_pair(p.source, p.target), 0);
  }
  int b = 0;
  for (auto& [ends, index] : block_lookup_) {
    index = b++;
    blocks_.push_back(Block{ends.first, ends.second, {}});
  }
  block_of_.resize(size());
  offset_.resize(size());
  for (int i = 0; i < size(); ++i) {
    const int blk = block_lookup_.at({paths_[i].source, paths_[i].target});
    block_of_[i] = blk;
    offset_[i] = static_cast<int>(blocks_[blk].paths.size());
    blocks_[blk].paths.push_back(i);
  }
  if (level > 0) {
    drop_first_.resize(size());
    for (int i = 0; i < size(); ++i) {
      const PathRef& p = paths_[i];
      std::vector<int> rest;
      for (std::size_t k = 1; k < p.steps.size(); ++k) rest.push_back(p.steps[k].edge);
      drop_first_[i] = shorter_flipped->find(g.other_end(p.steps.front().edge, p.source), rest);
    }
  }
  loop_offset_.resize(size());
  for (int i = 0; i < size(); ++i) {
    loop_offset_[i] = num_loops_;
    const auto& members = blocks_[block_of_[i]].paths;
    for (int j : members) loops_.emplace_back(i, j);
    num_loops_ += static_cast<int>(members.size());
  }
}

int PathBasis::find(int source, std::span<const int> edges) const {
  std::vector<int> key{source};
  key.insert(key.end(), edges.begin(), edges.end());
  auto it = lookup_.find(key);
  return it == lookup_.end() ? -1 : it->second;
}

int PathBasis::find(const PathRef& p) const {
  std::vector<int> edges;
  for (const Step& s : p.steps) edges.push_back(s.edge);
  const int i = find(p.source, edges);
  if (i >= 0 && !(paths_[i] == p)) return -1;
  return i;
}

int PathBasis::block_index(int source, int target) const {
  auto it = block_lookup_.find({source, target});
  return it == block_lookup_.end() ? -1 : it->second;
}

PlanarAlgebra::PlanarAlgebra(BipartiteGraph g, SpinVector spin) : graph_(std::move(g)), spin_(std::move(spin)) {}

std::shared_ptr<const PlanarAlgebra> PlanarAlgebra::create(BipartiteGraph g, SpinVector spin) {
  if (static_cast<int>(spin.mu.size()) != g.num_vertices()) {
    throw Error(Error::Kind::InvalidArgument, "spin vector size does not match graph");
  }
  for (double m : spin.mu) {
    if (!(m > 0.0) || !std::isfinite(m)) throw Error(Error::Kind::InvalidArgument, "spin must be strictly positive");
  }
  return std::shared_ptr<const PlanarAlgebra>(new PlanarAlgebra(std::move(g), std::move(spin)));
}

double PlanarAlgebra::modulus() const {
  if (!spin_.modulus) throw Error(Error::Kind::Precondition, "spin vector has no modulus");
  return *spin_.modulus;
}

std::shared_ptr<const PathBasis> PlanarAlgebra::basis(int level, Sign sign) const {
  if (level < 0) throw Error(Error::Kind::InvalidArgument, "negative level");
  const auto key = std::make_pair(level, static_cast<int>(sign));
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  std::shared_ptr<const PathBasis> shorter, flipped;
  if (level > 0) {
    shorter = basis(level - 1, sign);
    flipped = basis(level - 1, flip(sign));
  }
  auto built = std::make_shared<const PathBasis>(graph_, level, sign, shorter.get(), flipped.get());
  std::lock_guard lock(mutex_);
  return cache_.emplace(key, std::move(built)).first->second;
}

double PlanarAlgebra::partition_mass(Sign sign) const {
  double total = 0.0;
  for (int v : graph_.vertices_of(parity_of(sign))) total += std::pow(spin_.mu[v], 4);
  return total;
}

AlgebraElement::AlgebraElement(AlgebraPtr algebra, int level, Sign sign)
    : algebra_(std::move(algebra)), basis_(algebra_->basis(level, sign)), blocks_(basis_->num_blocks()) {}

AlgebraElement AlgebraElement::identity(AlgebraPtr algebra, int level, Sign sign) {
  AlgebraElement a(std::move(algebra), level, sign);
  for (int b = 0; b < a.basis().num_blocks(); ++b) {
    const auto n = static_cast<Eigen::Index>(a.basis().blocks()[b].paths.size());
    a.blocks_[b] = Matrix::Identity(n, n);
  }
  return a;
}

Scalar AlgebraElement::operator()(int pi, int eps) const {
  const int b = basis_->block_of(pi);
  if (basis_->block_of(eps) != b || !has_block(b)) return Scalar(0.0);
  return blocks_[b](basis_->offset_in_block(pi), basis_->offset_in_block(eps));
}

Matrix& AlgebraElement::block_mut(int b) {
  if (!has_block(b)) {
    const auto n = static_cast<Eigen::Index>(basis_->blocks()[b].paths.size());
    blocks_[b] = Matrix::Zero(n, n);
  }
  return blocks_[b];
}

void AlgebraElement::add(int pi, int eps, Scalar value) {
  const int b = basis_->block_of(pi);
  if (basis_->block_of(eps) != b) {
    throw Error(Error::Kind::InvalidArgument, "paths do not share endpoints");
  }
  block_mut(b)(basis_->offset_in_block(pi), basis_->offset_in_block(eps)) += value;
}

void AlgebraElement::set(int pi, int eps, Scalar value) {
  const int b = basis_->block_of(pi);
  if (basis_->block_of(eps) != b) {
    throw Error(Error::Kind::InvalidArgument, "paths do not share endpoints");
  }
  block_mut(b)(basis_->offset_in_block(pi), basis_->offset_in_block(eps)) = value;
}

double AlgebraElement::max_abs() const {
  double m = 0.0;
  for (const auto& blk : blocks_) {
    if (blk.size() > 0) m = std::max(m, blk.cwiseAbs().maxCoeff());
  }
  return m;
}

Vector AlgebraElement::loop_coordinates() const {
  Vector out = Vector::Zero(basis_->num_loops());
  for (int b = 0; b < basis_->num_blocks(); ++b) {
    if (!has_block(b)) continue;
    const auto& members = basis_->blocks()[b].paths;
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = 0; j < members.size(); ++j) {
        out(basis_->loop_index(members[i], members[j])) = blocks_[b](i, j);
      }
    }
  }
  return out;
}

AlgebraElement AlgebraElement::from_loop_coordinates(AlgebraPtr algebra, int level, Sign sign, const Vector& coords) {
  AlgebraElement a(std::move(algebra), level, sign);
  if (coords.size() != a.basis().num_loops()) throw Error(Error::Kind::InvalidArgument, "coordinate size mismatch");
  for (int k = 0; k < coords.size(); ++k) {
    if (coords(k) == Scalar(0.0)) continue;
    const auto [pi, eps] = a.basis().loop(k);
    a.set(pi, eps, coords(k));
  }
  return a;
}

void AlgebraElement::require_compatible(const AlgebraElement& other) const {
  if (basis_ != other.basis_) {
    throw Error(Error::Kind::InvalidArgument, "elements live in different box spaces");
  }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  require_compatible(other);
  for (int b = 0; b < basis_->num_blocks(); ++b) {
    if (other.has_block(b)) block_mut(b) += other.blocks_[b];
  }
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  require_compatible(other);
  for (int b = 0; b < basis_->num_blocks(); ++b) {
    if (other.has_block(b)) block_mut(b) -= other.blocks_[b];
  }
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Scalar s) {
  for (auto& blk : blocks_) {
    if (blk.size() > 0) blk *= s;
  }
  return *this;
}

bool ZeroBoxElement::is_scalar(double tol) const {
  for (const Scalar& v : values) {
    if (std::abs(v - values.front()) > tol) return false;
  }
  return true;
}

ZeroBoxElement to_zero_box(const AlgebraElement& a) {
  if (a.level() != 0) throw Error(Error::Kind::InvalidArgument, "zero-box conversion needs level 0");
  ZeroBoxElement z{a.sign(), std::vector<Scalar>(a.basis().size(), Scalar(0.0))};
  for (int i = 0; i < a.basis().size(); ++i) z.values[i] = a(i, i);
  return z;
}

AlgebraElement from_zero_box(AlgebraPtr algebra, const ZeroBoxElement& z) {
  AlgebraElement a(std::move(algebra), 0, z.sign);
  if (static_cast<int>(z.values.size()) != a.basis().size()) {
    throw Error(Error::Kind::InvalidArgument, "zero-box size mismatch");
  }
  for (int i = 0; i < a.basis().size(); ++i) {
    if (z.values[i] != Scalar(0.0)) a.set(i, i, z.values[i]);
  }
  return a;
}

ZeroBoxElement vertex_projection(const PlanarAlgebra& algebra, int v) {
  const Parity p = algebra.graph().parity(v);
  ZeroBoxElement z{sign_of(p), std::vector<Scalar>(algebra.graph().vertices_of(p).size(), Scalar(0.0))};
  z.values[algebra.graph().rank_in_parity(v)] = 1.0;
  return z;
}

AlgebraElement loop_unit(AlgebraPtr algebra, const LoopRef& loop) {
  const BipartiteGraph& g = algebra->graph();
  if (!is_valid_path(g, loop.pi) || !is_valid_path(g, loop.eps) || loop.pi.length() != loop.eps.length() ||
      loop.pi.source != loop.eps.source || loop.pi.target != loop.eps.target ||
      sign_of(g.parity(loop.pi.source)) != loop.sign) {
    throw Error(Error::Kind::InvalidArgument, "loop is not on the graph");
  }
  AlgebraElement a(algebra, loop.level(), loop.sign);
  a.set(a.basis().find(loop.pi), a.basis().find(loop.eps), 1.0);
  return a;
}

AlgebraElement loop_unit(AlgebraPtr algebra, int level, Sign sign, int loop_index) {
  AlgebraElement a(std::move(algebra), level, sign);
  const auto [pi, eps] = a.basis().loop(loop_index);
  a.set(pi, eps, 1.0);
  return a;
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.basis_ptr() != b.basis_ptr()) {
    throw Error(Error::Kind::InvalidArgument, "multiply needs equal level and sign");
  }
  AlgebraElement c(a.algebra_ptr(), a.level(), a.sign());
  for (int k = 0; k < a.basis().num_blocks(); ++k) {
    if (a.has_block(k) && b.has_block(k)) c.set_block(k, a.block(k) * b.block(k));
  }
  return c;
}

AlgebraElement adjoint(const AlgebraElement& a) {
  AlgebraElement c(a.algebra_ptr(), a.level(), a.sign());
  for (int k = 0; k < a.basis().num_blocks(); ++k) {
    if (a.has_block(k)) c.set_block(k, a.block(k).adjoint());
  }
  return c;
}

AlgebraElement left_embed(const AlgebraElement& a) {
  const BipartiteGraph& g = a.algebra().graph();
  AlgebraElement out(a.algebra_ptr(), a.level() + 1, flip(a.sign()));
  const PathBasis& src = a.basis();
  const PathBasis& dst = out.basis();
  for (int k = 0; k < src.num_blocks(); ++k) {
    if (!a.has_block(k)) continue;
    const auto& blk = src.blocks()[k];
    for (int e : g.incident(blk.source)) {
      const int start = g.other_end(e, blk.source);
      std::vector<int> rows;
      for (int p : blk.paths) {
        std::vector<int> edges{e};
        for (const Step& s : src.path(p).steps) edges.push_back(s.edge);
        rows.push_back(dst.find(start, edges));
      }
      const int target_block = dst.block_of(rows.front());
      Matrix& m = out.block_mut(target_block);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows.size(); ++j) {
          m(dst.offset_in_block(rows[i]), dst.offset_in_block(rows[j])) = a.block(k)(i, j);
        }
      }
    }
  }
  return out;
}

AlgebraElement right_embed(const AlgebraElement& a) {
  const BipartiteGraph& g = a.algebra().graph();
  AlgebraElement out(a.algebra_ptr(), a.level() + 1, a.sign());
  const PathBasis& src = a.basis();
  const PathBasis& dst = out.basis();
  for (int k = 0; k < src.num_blocks(); ++k) {
    if (!a.has_block(k)) continue;
    const auto& blk = src.blocks()[k];
    for (int e : g.incident(blk.target)) {
      std::vector<int> rows;
      for (int p : blk.paths) {
        std::vector<int> edges;
        for (const Step& s : src.path(p).steps) edges.push_back(s.edge);
        edges.push_back(e);
        rows.push_back(dst.find(blk.source, edges));
      }
      const int target_block = dst.block_of(rows.front());
      Matrix& m = out.block_mut(target_block);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows.size(); ++j) {
          m(dst.offset_in_block(rows[i]), dst.offset_in_block(rows[j])) = a.block(k)(i, j);
        }
      }
    }
  }
  return out;
}

double max_difference(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.basis_ptr() != b.basis_ptr()) {
    throw Error(Error::Kind::InvalidArgument, "elements live in different box spaces");
  }
  double m = 0.0;
  for (int k = 0; k < a.basis().num_blocks(); ++k) {
    if (a.has_block(k) && b.has_block(k)) {
      m = std::max(m, (a.block(k) - b.block(k)).cwiseAbs().maxCoeff());
    } else if (a.has_block(k)) {
      m = std::max(m, a.block(k).cwiseAbs().maxCoeff());
    } else if (b.has_block(k)) {
      m = std::max(m, b.block(k).cwiseAbs().maxCoeff());
    }
  }
  return m;
}

Scalar normalized_trace(const PlanarAlgebra& algebra, const ZeroBoxElement& z) {
  const auto& verts = algebra.graph().vertices_of(parity_of(z.sign));
  Scalar total = 0.0;
  for (std::size_t i = 0; i < verts.size(); ++i) total += z.values[i] * std::pow(algebra.mu(verts[i]), 4);
  return total / algebra.partition_mass(z.sign);
}

namespace {

double block_weight(const PlanarAlgebra& algebra, const PathBasis::Block& blk, Sign sign) {
  const double ms = algebra.mu(blk.source);
  const double mt = algebra.mu(blk.target);
  return ms * ms * mt * mt / algebra.partition_mass(sign);
}

}  // namespace

Scalar trace(const AlgebraElement& a) {
  Scalar total = 0.0;
  for (int k = 0; k < a.basis().num_blocks(); ++k) {
    if (a.has_block(k)) total += block_weight(a.algebra(), a.basis().blocks()[k], a.sign()) * a.block(k).trace();
  }
  return total;
}

Scalar trace_of_product(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.basis_ptr() != b.basis_ptr()) {
    throw Error(Error::Kind::InvalidArgument, "elements live in different box spaces");
  }
  Scalar total = 0.0;
  for (int k = 0; k < a.basis().num_blocks(); ++k) {
    if (a.has_block(k) && b.has_block(k)) {
      total += block_weight(a.algebra(), a.basis().blocks()[k], a.sign()) *
               a.block(k).cwiseProduct(b.block(k).transpose()).sum();
    }
  }
  return total;
}

double loop_weight(const PlanarAlgebra& algebra, const PathBasis& basis, int loop_index) {
  const int pi = basis.loop(loop_index).first;
  return block_weight(algebra, basis.blocks()[basis.block_of(pi)], basis.sign());
}

std::string path_label(const BipartiteGraph& g, const PathRef& p) {
  std::string out = g.vertex(p.source).id;
  for (const Step& s : p.steps) out += ":" + std::to_string(s.edge);
  return out;
}

std::string to_debug_string(const AlgebraElement& a, double tol) {
  std::ostringstream os;
  os << a.level() << ' ' << to_string(a.sign()) << '\n';
  os << std::setprecision(17);
  const auto& g = a.algebra().graph();
  for (int k = 0; k < a.basis().num_loops(); ++k) {
    const auto [pi, eps] = a.basis().loop(k);
    const Scalar v = a(pi, eps);
    if (std::abs(v) <= tol || v == Scalar(0.0)) continue;
    os << path_label(g, a.basis().path(pi)) << ' ' << path_label(g, a.basis().path(eps)) << ' ' << v.real() << ' '
       << v.imag() << '\n';
  }
  return os.str();
}

}  // namespace bgpa
