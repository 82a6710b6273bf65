#include "bgpa/spa.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "bgpa/generators.hpp"

namespace bgpa {

std::pair<int, int> zero_box_dims(const PlanarAlgebra& algebra, const GroupAction& group) {
  const BipartiteGraph& g = algebra.graph();
  std::vector<int> root(g.num_vertices());
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (const auto& op : group.elements) {
    for (int v = 0; v < g.num_vertices(); ++v) {
      const int a = find(v), b = find(op.kappa[v]);
      if (a != b) root[std::max(a, b)] = std::min(a, b);
    }
  }
  int even = 0, odd = 0;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (find(v) != v) continue;
    (g.parity(v) == Parity::Even ? even : odd) += 1;
  }
  return {even, odd};
}

SphericalityResult sphericality_check(const FixedBasis& level_one, double tol) {
  if (level_one.level() != 1 || level_one.sign() != Sign::Plus) {
    throw Error(Error::Kind::InvalidArgument, "sphericality is checked on the fixed V_1^+");
  }
  const PlanarAlgebra& algebra = *level_one.algebra();
  const double delta = algebra.modulus();
  SphericalityResult out;
  out.mass_ratio = algebra.partition_mass(Sign::Plus) / algebra.partition_mass(Sign::Minus);
  for (int k = 0; k < level_one.dim(); ++k) {
    const AlgebraElement x = level_one.element(k);
    const ZeroBoxElement l = to_zero_box(left_cap(x));
    const ZeroBoxElement r = to_zero_box(right_cap(x));
    const double scale = std::max(1.0, x.max_abs());
    if (!l.is_scalar(kDefaultTolerance * scale * delta) || !r.is_scalar(kDefaultTolerance * scale * delta)) {
      throw Error(Error::Kind::Precondition, "caps of a fixed 1-box are not scalars; zero-box spaces are not 1-dimensional");
    }
    CapComparison c{k, normalized_trace(algebra, l), normalized_trace(algebra, r), 0.0};
    c.gap = std::abs(c.left - c.right) / delta;
    out.worst_gap = std::max(out.worst_gap, c.gap);
    if (std::abs(c.right) > tol) {
      const Scalar ratio = c.left / c.right;
      if (!out.ratio) {
        out.ratio = ratio;
      } else if (std::abs(*out.ratio - ratio) > tol) {
        out.ratio_constant = false;
      }
    }
    out.details.push_back(c);
  }
  out.spherical = out.worst_gap < tol && out.ratio_constant;
  return out;
}

PositivityResult positivity_of(const std::vector<AlgebraElement>& elements, int level, Sign sign, double tol) {
  PositivityResult out;
  out.level = level;
  out.sign = sign;
  out.dim = static_cast<int>(elements.size());
  if (elements.empty()) return out;
  const Matrix gram = gram_matrix(elements);
  out.identity_deviation = (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  out.min_eigenvalue = ev.minCoeff();
  out.max_eigenvalue = ev.maxCoeff();
  out.positive = *out.min_eigenvalue > tol * std::abs(*out.max_eigenvalue);
  return out;
}

PositivityResult positivity_check(const FixedBasis& basis, double tol) {
  return positivity_of(basis.elements(), basis.level(), basis.sign(), tol);
}

SPAReport spa_verdict(const FixedTower& tower, double tol) {
  SPAReport report;
  const PlanarAlgebra& algebra = *tower.algebra;
  report.embedding_residual = tower.embedding_residual;
  for (int n = 0; n <= tower.depth(); ++n) report.finite_dims.emplace_back(tower.plus[n].dim(), tower.minus[n].dim());

  report.zero_box_dims = zero_box_dims(algebra, tower.group);
  report.zero_box_ok = report.zero_box_dims == std::make_pair(1, 1);
  if (!report.zero_box_ok) {
    report.reasons.push_back("zero-box spaces have dimensions (" + std::to_string(report.zero_box_dims.first) + ", " +
                             std::to_string(report.zero_box_dims.second) + ")");
  }
  if (!report.finite_dims.empty() && report.finite_dims.front() != report.zero_box_dims) {
    report.reasons.push_back("orbit count disagrees with the level-0 fixed dimension");
    report.zero_box_ok = false;
  }

  if (algebra.has_modulus()) {
    report.modulus = algebra.modulus();
    report.index = *report.modulus * *report.modulus;
  } else {
    report.reasons.push_back("spin vector has no modulus");
  }

  if (report.zero_box_ok && report.modulus && tower.depth() >= 1) {
    report.sphericality = sphericality_check(tower.plus[1], kTraceGapTolerance);
    report.spherical = report.sphericality->spherical;
    if (!report.spherical) report.reasons.push_back("left and right traces differ");
  } else if (tower.depth() < 1) {
    report.reasons.push_back("sphericality needs at least level 1");
  }

  report.positive = true;
  for (int n = 0; n <= tower.depth(); ++n) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      PositivityResult p = positivity_check(tower.at(n, s), tol);
      if (!p.positive) {
        report.positive = false;
        report.reasons.push_back("inner product not positive definite at level " + std::to_string(n) + " " +
                                 std::string(to_string(s)));
      }
      report.positivity.push_back(std::move(p));
    }
  }
  report.verdict = report.zero_box_ok && report.spherical && report.positive && report.modulus.has_value();
  return report;
}

SPAReport spa_verdict(const AlgebraPtr& algebra, const GroupAction& group, int levels, double tol) {
  return spa_verdict(fixed_tower(algebra, group, levels, tol), tol);
}

}  // namespace bgpa
