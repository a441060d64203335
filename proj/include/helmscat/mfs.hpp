#pragma once

#include "helmscat/densela.hpp"
#include "helmscat/geometry.hpp"
#include "helmscat/specfun.hpp"

namespace helmscat {

/// Single-body collocation system A(i, j) = phi(x_i - y_j) with its
/// factored pseudo-inverse.
struct LocalSystem {
  ComplexMatrix A;
  PinvOperator pinv;
};

LocalSystem build_local_system(const Discretization& disc, const Kernel& kernel, double rel_cutoff);

struct LocalSolve {
  ComplexVector q;
  double residual = 0.0;  // ||A q - w|| / ||w||, 0 for w == 0
};

/// Least-squares MFS strengths q = pinv(A) w for boundary data w.
LocalSolve solve_local_dirichlet(const LocalSystem& sys, const ComplexVector& w);

}  // namespace helmscat
