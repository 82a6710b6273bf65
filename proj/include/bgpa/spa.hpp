#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bgpa/fixedpoint.hpp"

namespace bgpa {

/// Orbit counts of the vertex permutations on even and odd vertices.
std::pair<int, int> zero_box_dims(const PlanarAlgebra& algebra, const GroupAction& group);

struct CapComparison {
  int basis_index;
  Scalar left;   // normalized trace of left_cap(x)
  Scalar right;  // normalized trace of right_cap(x)
  double gap;    // |left - right| / delta
};

struct SphericalityResult {
  bool spherical = false;
  double worst_gap = 0.0;
  /// left/right over elements whose right cap is nonzero.
  std::optional<Scalar> ratio;
  bool ratio_constant = true;
  /// sum of mu^4 over even vertices over the same sum over odd vertices.
  double mass_ratio = 1.0;
  std::vector<CapComparison> details;
};

/// Compares scalarized left and right caps of every fixed V_1^+ basis
/// element. Throws Error::Precondition if some cap is not a scalar.
SphericalityResult sphericality_check(const FixedBasis& level_one, double tol = kTraceGapTolerance);

struct PositivityResult {
  int level = 0;
  Sign sign = Sign::Plus;
  int dim = 0;
  bool positive = true;
  std::optional<double> min_eigenvalue;
  std::optional<double> max_eigenvalue;
  double identity_deviation = 0.0;  // max |Gram - I|
};

/// Gram matrix of the basis computed through multiplication, adjoint and
/// repeated right capping, then its extreme eigenvalues.
PositivityResult positivity_check(const FixedBasis& basis, double tol = kDefaultTolerance);
/// The same for an arbitrary list of elements of one box space.
PositivityResult positivity_of(const std::vector<AlgebraElement>& elements, int level, Sign sign,
                               double tol = kDefaultTolerance);

struct SPAReport {
  std::pair<int, int> zero_box_dims{0, 0};
  std::vector<std::pair<int, int>> finite_dims;  // per level: (plus, minus)
  std::optional<SphericalityResult> sphericality;
  std::vector<PositivityResult> positivity;
  std::optional<double> modulus;
  std::optional<double> index;
  double embedding_residual = 0.0;
  bool zero_box_ok = false;
  bool spherical = false;
  bool positive = false;
  bool verdict = false;
  std::vector<std::string> reasons;  // why the verdict failed
};

/// Aggregates every axiom check on the fixed tower up to level N.
SPAReport spa_verdict(const FixedTower& tower, double tol = kDefaultTolerance);
SPAReport spa_verdict(const AlgebraPtr& algebra, const GroupAction& group, int levels,
                      double tol = kDefaultTolerance);

}  // namespace bgpa
