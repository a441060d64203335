#pragma once

#include <memory>
#include <string>
#include <vector>

#include "helmscat/geometry.hpp"
#include "helmscat/mfs.hpp"
#include "helmscat/skeleton.hpp"

namespace helmscat {

/// Field of the MFS sources on the proxy: D(i, j) = phi(z_i - y_j).
ComplexMatrix build_source_field(const ProxySurface& proxy, const Discretization& disc, const Kernel& kernel);

/// Translation C = pinv(B) D mapping MFS strengths to collocation-point
/// strengths with the same field on the proxy.
ComplexMatrix build_translation(const ComplexMatrix& b, const ComplexMatrix& d, double rel_cutoff);

/// Per-shape operators; identical for translated copies of a scatterer.
struct ScatteringFactors {
  LocalSystem local;
  Skeletonization skel;
  ComplexMatrix C;    // m x n
  ComplexMatrix ZC;   // Z^* C, k x n
  ComplexMatrix S;    // Z^* C pinv(A) U, k x k
  double translation_mismatch = 0.0;  // ||B C - D||_F / ||D||_F

  Index rank() const { return skel.rank; }
  Index m() const { return local.A.rows(); }
  Index n() const { return local.A.cols(); }
  /// Z^* C pinv(A) v for full boundary data v.
  ComplexVector effective_charges(const ComplexVector& v) const;
  /// pinv(A) w.
  ComplexVector mfs_strengths(const ComplexVector& w) const;
};

struct OperatorSettings {
  double eps = 1e-10;
  double rel_cutoff = kDefaultRelCutoff;
  double proxy_factor = kDefaultProxyFactor;
  int proxy_points = 0;  // <= 0: m + 1
};

ComplexMatrix build_scattering_matrix(const ScatteringFactors& f);

ScatteringFactors build_scattering_factors(const Discretization& disc, const ProxySurface& proxy,
                                           const Kernel& kernel, const OperatorSettings& settings);

/// One placed scatterer: its own discretization and proxy, shared factors.
struct ScattererOperator {
  std::shared_ptr<const Body> body;
  DiscretizationSpec spec;
  Discretization disc;
  ProxySurface proxy;
  std::shared_ptr<const ScatteringFactors> factors;
  std::vector<Vec3> skeleton_points;

  Index rank() const { return factors->rank(); }
};

/// Cache key: everything the factors depend on except the position.
std::string operator_key(const Body& body, const DiscretizationSpec& spec, const Kernel& kernel,
                         const OperatorSettings& settings);

ScattererOperator make_operator(std::shared_ptr<const Body> body, const DiscretizationSpec& spec,
                                const ProxySurface& proxy, Discretization disc,
                                std::shared_ptr<const ScatteringFactors> factors);

}  // namespace helmscat
