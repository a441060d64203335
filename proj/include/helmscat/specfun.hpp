#pragma once

#include <span>

#include "helmscat/types.hpp"

namespace helmscat {

/// Bessel function of the first kind, order zero. Throws DomainError for
/// negative or non-finite x.
double bessel_j0(double x);

/// Bessel function of the second kind, order zero. Requires x > 0.
double bessel_y0(double x);

/// H0^(1)(x) = J0(x) + i Y0(x) for real x > 0.
cplx hankel0_first(double x);

/// Free-space fundamental solution of -Laplace - kappa^2 in two or three
/// dimensions:
///   2D: (i/4) H0^(1)(kappa r)
///   3D: exp(i kappa r) / (4 pi r)
class Kernel {
 public:
  Kernel(int dim, double kappa);

  int dim() const { return dim_; }
  double kappa() const { return kappa_; }
  double wavelength() const { return 2.0 * kPi / kappa_; }

  /// phi(r) for a separation r > 0.
  cplx at_distance(double r) const;

  /// phi(x - y). Symmetric in its arguments.
  cplx operator()(const Vec3& x, const Vec3& y) const;

  /// Dense matrix M(i, j) = phi(targets[i] - sources[j]).
  ComplexMatrix matrix(std::span<const Vec3> targets, std::span<const Vec3> sources) const;

  /// sum_j phi(x - sources[j]) q[j] for every target x.
  ComplexVector potential(std::span<const Vec3> targets, std::span<const Vec3> sources,
                          const ComplexVector& q) const;

 private:
  int dim_;
  double kappa_;
};

/// Separations below this are treated as coincident points.
inline constexpr double kCoincidentDistance = 1e-300;

}  // namespace helmscat
