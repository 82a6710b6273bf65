#include "bgpa/generators.hpp"

#include <cmath>

namespace bgpa {

TLElement tl_generator(const AlgebraPtr& algebra, Sign sign) {
  TLElement tl{tl_at(algebra, 2, sign, 1), {}, {}, {}};
  const BipartiteGraph& g = algebra->graph();
  const PathBasis& basis = tl.element.basis();
  for (int v : g.vertices_of(parity_of(sign))) {
    Vector y = Vector::Zero(basis.size());
    double numerator = 0.0;
    for (int e : g.incident(v)) {
      const double m = algebra->mu(g.other_end(e, v));
      const std::vector<int> edges{e, e};
      y(basis.find(v, edges)) += m;
      numerator += m * m;
    }
    tl.vertices.push_back(v);
    tl.eigenvectors.push_back(std::move(y));
    tl.eigenvalues.push_back(numerator / (algebra->mu(v) * algebra->mu(v)));
  }
  return tl;
}

AlgebraElement tl_at(const AlgebraPtr& algebra, int level, Sign sign, int position) {
  if (position < 1 || position >= level) {
    throw Error(Error::Kind::InvalidArgument, "TL position must lie in [1, level-1]");
  }
  const BipartiteGraph& g = algebra->graph();
  AlgebraElement out(algebra, level, sign);
  const PathBasis& basis = out.basis();
  const int k = position - 1;  // 0-based index of the first strand
  for (int p = 0; p < basis.size(); ++p) {
    const PathRef& path = basis.path(p);
    if (path.steps[k].edge != path.steps[k + 1].edge) continue;
    const int v = vertices_along(g, path)[k];
    const double inner_a = algebra->mu(g.other_end(path.steps[k].edge, v));
    std::vector<int> edges;
    for (const Step& s : path.steps) edges.push_back(s.edge);
    for (int f : g.incident(v)) {
      edges[k] = edges[k + 1] = f;
      const int q = basis.find(path.source, edges);
      const double inner_f = algebra->mu(g.other_end(f, v));
      out.set(p, q, inner_a * inner_f / (algebra->mu(v) * algebra->mu(v)));
    }
  }
  return out;
}

AlgebraElement right_cap(const AlgebraElement& a) {
  if (a.level() == 0) throw Error(Error::Kind::InvalidArgument, "cannot cap a 0-box");
  const PathBasis& src = a.basis();
  AlgebraElement out(a.algebra_ptr(), a.level() - 1, a.sign());
  const PathBasis& dst = out.basis();
  for (int k = 0; k < src.num_blocks(); ++k) {
    if (!a.has_block(k)) continue;
    const auto& blk = src.blocks()[k];
    const Matrix& m = a.block(k);
    for (std::size_t i = 0; i < blk.paths.size(); ++i) {
      for (std::size_t j = 0; j < blk.paths.size(); ++j) {
        const int pi = blk.paths[i];
        const int eps = blk.paths[j];
        if (src.last_edge(pi) != src.last_edge(eps) || m(i, j) == Scalar(0.0)) continue;
        const int p = src.drop_last(pi);
        const int q = src.drop_last(eps);
        const double num = a.algebra().mu(blk.target);
        const double den = a.algebra().mu(dst.path(p).target);
        out.add(p, q, m(i, j) * (num * num) / (den * den));
      }
    }
  }
  return out;
}

AlgebraElement left_cap(const AlgebraElement& a) {
  if (a.level() == 0) throw Error(Error::Kind::InvalidArgument, "cannot cap a 0-box");
  const PathBasis& src = a.basis();
  AlgebraElement out(a.algebra_ptr(), a.level() - 1, flip(a.sign()));
  const PathBasis& dst = out.basis();
  for (int k = 0; k < src.num_blocks(); ++k) {
    if (!a.has_block(k)) continue;
    const auto& blk = src.blocks()[k];
    const Matrix& m = a.block(k);
    for (std::size_t i = 0; i < blk.paths.size(); ++i) {
      for (std::size_t j = 0; j < blk.paths.size(); ++j) {
        const int pi = blk.paths[i];
        const int eps = blk.paths[j];
        if (src.first_edge(pi) != src.first_edge(eps) || m(i, j) == Scalar(0.0)) continue;
        const int p = src.drop_first(pi);
        const int q = src.drop_first(eps);
        const double num = a.algebra().mu(blk.source);
        const double den = a.algebra().mu(dst.path(p).source);
        out.add(p, q, m(i, j) * (num * num) / (den * den));
      }
    }
  }
  return out;
}

AlgebraElement half_rotation(const AlgebraElement& a) {
  if (a.level() != 1) throw Error(Error::Kind::InvalidArgument, "half rotation acts on 1-boxes");
  AlgebraElement out(a.algebra_ptr(), 1, flip(a.sign()));
  const PathBasis& src = a.basis();
  const PathBasis& dst = out.basis();
  for (int k = 0; k < src.num_blocks(); ++k) {
    if (!a.has_block(k)) continue;
    const auto& blk = src.blocks()[k];
    for (std::size_t i = 0; i < blk.paths.size(); ++i) {
      for (std::size_t j = 0; j < blk.paths.size(); ++j) {
        const std::vector<int> p_edge{src.first_edge(blk.paths[i])};
        const std::vector<int> q_edge{src.first_edge(blk.paths[j])};
        const int rev_p = dst.find(blk.target, p_edge);
        const int rev_q = dst.find(blk.target, q_edge);
        out.set(rev_q, rev_p, a.block(k)(i, j));
      }
    }
  }
  return out;
}

ZeroBoxElement inner_form(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.basis_ptr() != b.basis_ptr()) throw Error(Error::Kind::InvalidArgument, "inner form needs matching levels");
  AlgebraElement x = multiply(adjoint(b), a);
  while (x.level() > 0) x = right_cap(x);
  return to_zero_box(x);
}

Matrix gram_matrix(const std::vector<AlgebraElement>& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Matrix gram = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      bool overlap = false;
      for (int k = 0; k < basis[i].basis().num_blocks() && !overlap; ++k) {
        overlap = basis[i].has_block(k) && basis[j].has_block(k);
      }
      if (!overlap) continue;
      const Scalar v = normalized_trace(basis[i].algebra(), inner_form(basis[j], basis[i]));
      gram(i, j) = v;
      gram(j, i) = std::conj(v);
    }
  }
  return gram;
}

}  // namespace bgpa
