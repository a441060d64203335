#include "helmscat/skeleton.hpp"

#include <cstdio>

namespace helmscat {

ComplexMatrix build_outgoing(const ProxySurface& proxy, const Discretization& disc, const Kernel& kernel) {
  for (const auto& x : disc.colloc) {
    if (!proxy.contains(x)) throw GeometryError("proxy surface does not enclose the collocation points");
  }
  return kernel.matrix(proxy.points, disc.colloc);
}

Skeletonization skeletonize(const ComplexMatrix& b, double eps) {
  IdFactorization id = column_id(b, eps);
  Skeletonization sk;
  sk.skeleton = std::move(id.skeleton);
  sk.Z = std::move(id.interp);
  sk.U = sk.Z.conjugate();
  sk.rank = id.rank;
  sk.eps = eps;
  sk.residual = id.achieved_residual;
  if (sk.residual > 10.0 * eps) {
    throw Error("skeletonize: ID residual " + std::to_string(sk.residual) + " exceeds 10*eps");
  }
  const double zmax = sk.Z.cwiseAbs().maxCoeff();
  if (zmax > kInterpWarnLevel) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "large interpolation weight %.3g (proxy radius may be too small)", zmax);
    sk.warnings.emplace_back(buf);
  }
  return sk;
}

}  // namespace helmscat
