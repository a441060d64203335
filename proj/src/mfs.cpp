#include "helmscat/mfs.hpp"

namespace helmscat {

LocalSystem build_local_system(const Discretization& disc, const Kernel& kernel, double rel_cutoff) {
  if (disc.m() < 1 || disc.n() < 1) throw PreconditionError("build_local_system: empty discretization");
  if (disc.dim != kernel.dim()) throw PreconditionError("build_local_system: dimension mismatch");
  LocalSystem sys;
  sys.A = kernel.matrix(disc.colloc, disc.sources);
  sys.pinv = PinvOperator(sys.A, rel_cutoff);
  return sys;
}

LocalSolve solve_local_dirichlet(const LocalSystem& sys, const ComplexVector& w) {
  if (w.size() != sys.A.rows()) throw PreconditionError("solve_local_dirichlet: data length mismatch");
  if (!w.allFinite()) throw PreconditionError("solve_local_dirichlet: non-finite data");
  LocalSolve out;
  const double wn = w.norm();
  if (wn == 0.0) {
    out.q = ComplexVector::Zero(sys.A.cols());
    return out;
  }
  out.q = sys.pinv.apply(w);
  out.residual = (sys.A * out.q - w).norm() / wn;
  return out;
}

}  // namespace helmscat
