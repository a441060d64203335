#pragma once

#include <functional>
#include <vector>

#include "helmscat/types.hpp"

namespace helmscat {

/// Thin singular value decomposition M = U diag(s) V^*, s descending.
struct Svd {
  ComplexMatrix U;
  RealVector s;
  ComplexMatrix V;
};

/// Backward-stable thin SVD (LAPACK gesdd, falling back to gesvd).
Svd thin_svd(const ComplexMatrix& m);

/// Singular values only, descending.
RealVector singular_values(const ComplexMatrix& m);

/// Column interpolative decomposition M ~= M(:, skeleton) * interp^*.
///
/// interp is cols x rank and carries the rank x rank identity in the rows
/// listed by skeleton. achieved_residual is ||M - M(:,skeleton) interp^*||_F
/// divided by ||M||_F.
struct IdFactorization {
  std::vector<Index> skeleton;
  ComplexMatrix interp;
  Index rank = 0;
  double achieved_residual = 0.0;
};

/// Householder column-pivoted QR halted once |R(j,j)| <= eps |R(0,0)|, then
/// converted to an interpolative decomposition. Skeleton indices are kept in
/// pivot order.
IdFactorization column_id(const ComplexMatrix& m, double eps);

/// Truncated-SVD pseudo-inverse. Singular values sigma_i <= rel_cutoff *
/// sigma_1 are dropped. Only the retained factors are stored; the operator is
/// immutable after construction.
///
/// Large matrices of low numerical rank are first reduced by a column-pivoted
/// QR halted at 0.1 * rel_cutoff; singular_values() then holds only the
/// leading values.
class PinvOperator {
 public:
  PinvOperator() = default;
  PinvOperator(const ComplexMatrix& a, double rel_cutoff);

  ComplexVector apply(const ComplexVector& b) const;
  ComplexMatrix apply(const ComplexMatrix& b) const;

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index rank() const { return s_.size(); }
  double rel_cutoff() const { return rel_cutoff_; }
  const RealVector& singular_values() const { return all_s_; }

  // Factor access for serialization.
  const ComplexMatrix& left() const { return u_; }
  const RealVector& retained() const { return s_; }
  const ComplexMatrix& right() const { return v_; }
  static PinvOperator from_factors(ComplexMatrix u, RealVector s, ComplexMatrix v, RealVector all_s,
                                   double rel_cutoff);

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  double rel_cutoff_ = 0.0;
  ComplexMatrix u_;
  RealVector s_;
  ComplexMatrix v_;
  RealVector all_s_;
};

/// Default truncation level for every pseudo-inverse in the solver.
inline constexpr double kDefaultRelCutoff = 1e-13;

/// Stabilized least squares: returns pinv(B) D, minimizing ||B C - D||_F over
/// the retained singular subspace of B.
ComplexMatrix lsq_solve(const ComplexMatrix& b, const ComplexMatrix& d, double rel_cutoff);

using LinearOperator = std::function<ComplexVector(const ComplexVector&)>;

struct GmresResult {
  ComplexVector x;
  int iterations = 0;  // Arnoldi steps
  int matvecs = 0;     // calls to the operator, including residual checks
  std::vector<double> residual_history;  // relative residual estimates, [0] == 1
  double final_residual = 0.0;           // recomputed ||b - A x|| / ||b||
  bool converged = false;
};

/// Unrestarted GMRES (modified Gram-Schmidt Arnoldi with one
/// reorthogonalization pass, complex Givens rotations) from a zero initial
/// guess. Hitting max_iter is reported through `converged`, not thrown.
GmresResult gmres(const LinearOperator& apply, const ComplexVector& b, double tol, int max_iter);

/// 2-norm condition number sigma_max / sigma_min; infinity when singular.
double cond2(const ComplexMatrix& m);

}  // namespace helmscat
