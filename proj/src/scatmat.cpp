#include "helmscat/scatmat.hpp"

#include <cstdio>

namespace helmscat {

ComplexMatrix build_source_field(const ProxySurface& proxy, const Discretization& disc, const Kernel& kernel) {
  for (const auto& y : disc.sources) {
    if (!proxy.contains(y)) throw GeometryError("proxy surface does not enclose the MFS sources");
  }
  return kernel.matrix(proxy.points, disc.sources);
}

ComplexMatrix build_translation(const ComplexMatrix& b, const ComplexMatrix& d, double rel_cutoff) {
  return lsq_solve(b, d, rel_cutoff);
}

ComplexVector ScatteringFactors::effective_charges(const ComplexVector& v) const {
  return ZC * local.pinv.apply(v);
}

ComplexVector ScatteringFactors::mfs_strengths(const ComplexVector& w) const { return local.pinv.apply(w); }

ComplexMatrix build_scattering_matrix(const ScatteringFactors& f) {
  const ComplexMatrix pu = f.local.pinv.apply(f.skel.U);
  const ComplexMatrix cpu = f.C * pu;
  return f.skel.Z.adjoint() * cpu;
}

ScatteringFactors build_scattering_factors(const Discretization& disc, const ProxySurface& proxy,
                                           const Kernel& kernel, const OperatorSettings& settings) {
  ScatteringFactors f;
  f.local = build_local_system(disc, kernel, settings.rel_cutoff);
  const ComplexMatrix b = build_outgoing(proxy, disc, kernel);
  f.skel = skeletonize(b, settings.eps);
  const ComplexMatrix d = build_source_field(proxy, disc, kernel);
  f.C = build_translation(b, d, settings.rel_cutoff);
  f.translation_mismatch = (b * f.C - d).norm() / d.norm();
  f.ZC = f.skel.Z.adjoint() * f.C;
  f.S = build_scattering_matrix(f);
  if (!f.S.allFinite()) throw Error("scattering matrix has non-finite entries");
  return f;
}

std::string operator_key(const Body& body, const DiscretizationSpec& spec, const Kernel& kernel,
                         const OperatorSettings& settings) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "|dim=%d|kappa=%.17g|eps=%.17g|cut=%.17g|proxy=%.17g,%d", kernel.dim(),
                kernel.kappa(), settings.eps, settings.rel_cutoff, settings.proxy_factor, settings.proxy_points);
  return body.shape_key() + "|" + to_string(spec) + buf;
}

ScattererOperator make_operator(std::shared_ptr<const Body> body, const DiscretizationSpec& spec,
                                const ProxySurface& proxy, Discretization disc,
                                std::shared_ptr<const ScatteringFactors> factors) {
  if (factors->m() != disc.m() || factors->n() != disc.n()) {
    throw PreconditionError("make_operator: factors do not match the discretization");
  }
  ScattererOperator op;
  op.body = std::move(body);
  op.spec = spec;
  op.disc = std::move(disc);
  op.proxy = proxy;
  op.factors = std::move(factors);
  op.skeleton_points.reserve(op.factors->skel.skeleton.size());
  for (Index i : op.factors->skel.skeleton) op.skeleton_points.push_back(op.disc.colloc[static_cast<std::size_t>(i)]);
  return op;
}

}  // namespace helmscat
