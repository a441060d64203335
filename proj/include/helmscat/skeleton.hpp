#pragma once

#include <string>
#include <vector>

#include "helmscat/densela.hpp"
#include "helmscat/geometry.hpp"
#include "helmscat/specfun.hpp"

namespace helmscat {

/// Outgoing matrix B(i, j) = phi(z_i - x_j), proxy points by collocation points.
ComplexMatrix build_outgoing(const ProxySurface& proxy, const Discretization& disc, const Kernel& kernel);

/// Skeleton subset of the collocation points.
///
/// Outgoing fields: B ~= B(:, skeleton) Z^*. Incoming fields sampled on the
/// boundary: w ~= U w(skeleton) with U = conj(Z).
struct Skeletonization {
  std::vector<Index> skeleton;
  ComplexMatrix Z;
  ComplexMatrix U;
  Index rank = 0;
  double eps = 0.0;
  double residual = 0.0;  // ||B - B(:, skeleton) Z^*||_F / ||B||_F
  std::vector<std::string> warnings;
};

/// Interpolation weights above this magnitude trigger a warning.
inline constexpr double kInterpWarnLevel = 1e3;

Skeletonization skeletonize(const ComplexMatrix& b, double eps);

}  // namespace helmscat
