#include "helmscat/densela.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace helmscat {

namespace {

void require_nonempty(const ComplexMatrix& m, const char* what) {
  if (m.rows() < 1 || m.cols() < 1) throw PreconditionError(std::string(what) + ": empty matrix");
}

lapack_int to_lapack(Index n) { return static_cast<lapack_int>(n); }

}  // namespace

Svd thin_svd(const ComplexMatrix& m) {
  require_nonempty(m, "thin_svd");
  if (!m.allFinite()) throw PreconditionError("thin_svd: non-finite entries");
  const Index rows = m.rows();
  const Index cols = m.cols();
  const Index k = std::min(rows, cols);
  Svd out;
  out.U.resize(rows, k);
  out.s.resize(k);
  ComplexMatrix vt(k, cols);

  ComplexMatrix a = m;
  lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', to_lapack(rows), to_lapack(cols), a.data(),
                                   to_lapack(rows), out.s.data(), out.U.data(), to_lapack(rows),
                                   vt.data(), to_lapack(k));
  if (info > 0) {
    // gesdd occasionally fails to converge; QR-iteration SVD is slower but robust.
    a = m;
    std::vector<double> superb(static_cast<std::size_t>(std::max<Index>(k - 1, 1)));
    info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'S', 'S', to_lapack(rows), to_lapack(cols), a.data(),
                          to_lapack(rows), out.s.data(), out.U.data(), to_lapack(rows), vt.data(),
                          to_lapack(k), superb.data());
  }
  if (info != 0) throw Error("thin_svd: LAPACK failure, info=" + std::to_string(info));
  out.V = vt.adjoint();
  return out;
}

RealVector singular_values(const ComplexMatrix& m) {
  require_nonempty(m, "singular_values");
  const Index k = std::min(m.rows(), m.cols());
  RealVector s(k);
  ComplexMatrix a = m;
  lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', to_lapack(m.rows()), to_lapack(m.cols()),
                                   a.data(), to_lapack(m.rows()), s.data(), nullptr, 1, nullptr, 1);
  if (info != 0) throw Error("singular_values: LAPACK failure, info=" + std::to_string(info));
  return s;
}

namespace {

struct PivotedQr {
  ComplexMatrix r;  // R in the top k rows, permuted column order
  std::vector<Index> perm;
  Index k = 0;
  std::vector<ComplexVector> reflectors;  // H_j = I - v v^* (2 / |v|^2), v zero above row j
};

// Householder column-pivoted QR halted once the largest remaining column norm
// is <= tol * |R(0,0)|.
PivotedQr pivoted_qr(const ComplexMatrix& m, double tol, bool keep_reflectors) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  const Index max_rank = std::min(rows, cols);

  PivotedQr qr;
  qr.r = m;
  auto& r = qr.r;
  auto& perm = qr.perm;
  perm.resize(static_cast<std::size_t>(cols));
  std::iota(perm.begin(), perm.end(), Index{0});
  RealVector norms2 = r.colwise().squaredNorm().transpose();
  RealVector exact2 = norms2;  // squared norms at the last exact recomputation

  double r00 = 0.0;
  for (Index j = 0; j < max_rank; ++j) {
    Index piv = j;
    norms2.segment(j, cols - j).maxCoeff(&piv);
    piv += j;
    const double pivot_norm = std::sqrt(std::max(norms2(piv), 0.0));
    if (j == 0) r00 = pivot_norm;
    if (pivot_norm <= tol * r00) break;

    if (piv != j) {
      r.col(j).swap(r.col(piv));
      std::swap(norms2(j), norms2(piv));
      std::swap(exact2(j), exact2(piv));
      std::swap(perm[static_cast<std::size_t>(j)], perm[static_cast<std::size_t>(piv)]);
    }

    // Householder reflector zeroing r(j+1:, j).
    auto x = r.col(j).tail(rows - j);
    const double xnorm = x.norm();
    const cplx x0 = x(0);
    const cplx phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : cplx(1.0, 0.0);
    const cplx alpha = -phase * xnorm;
    ComplexVector v = x;
    v(0) -= alpha;
    const double vnorm2 = v.squaredNorm();
    if (vnorm2 > 0.0 && j + 1 < cols) {
      auto trailing = r.block(j, j + 1, rows - j, cols - j - 1);
      const Eigen::RowVectorXcd w = (2.0 / vnorm2) * (v.adjoint() * trailing);
      trailing.noalias() -= v * w;
    }
    if (keep_reflectors) qr.reflectors.push_back(std::move(v));
    x.setZero();
    x(0) = alpha;
    ++qr.k;

    // Downdate the remaining column norms; recompute where cancellation bites.
    for (Index l = j + 1; l < cols; ++l) {
      norms2(l) -= std::norm(r(j, l));
      if (norms2(l) <= 1e-6 * exact2(l)) {
        norms2(l) = j + 1 < rows ? r.col(l).tail(rows - j - 1).squaredNorm() : 0.0;
        exact2(l) = norms2(l);
      }
    }
  }
  return qr;
}

// Q x for the leading k columns of Q: x has k rows, the result has m rows.
ComplexMatrix apply_q(const PivotedQr& qr, Index rows, const ComplexMatrix& x) {
  ComplexMatrix out = ComplexMatrix::Zero(rows, x.cols());
  out.topRows(x.rows()) = x;
  for (Index j = qr.k - 1; j >= 0; --j) {
    const ComplexVector& v = qr.reflectors[static_cast<std::size_t>(j)];
    auto block = out.bottomRows(rows - j);
    const Eigen::RowVectorXcd w = (2.0 / v.squaredNorm()) * (v.adjoint() * block);
    block.noalias() -= v * w;
  }
  return out;
}

// Matrices at least this large with low numerical rank take the QR route.
constexpr Index kRevealingSize = 256;

}  // namespace

IdFactorization column_id(const ComplexMatrix& m, double eps) {
  require_nonempty(m, "column_id");
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("column_id: eps must lie in (0, 1)");
  const double m_norm = m.norm();
  if (m_norm == 0.0) throw PreconditionError("column_id: matrix is identically zero");

  const Index rows = m.rows();
  const Index cols = m.cols();
  const PivotedQr qr = pivoted_qr(m, eps, false);
  const Index k = qr.k;
  const auto& r = qr.r;
  const auto& perm = qr.perm;

  IdFactorization id;
  id.rank = k;
  id.skeleton.assign(perm.begin(), perm.begin() + k);
  id.interp = ComplexMatrix::Zero(cols, k);
  for (Index i = 0; i < k; ++i) id.interp(perm[static_cast<std::size_t>(i)], i) = 1.0;
  if (k < cols) {
    const ComplexMatrix t =
        r.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(r.block(0, k, k, cols - k));
    for (Index l = 0; l < cols - k; ++l) {
      id.interp.row(perm[static_cast<std::size_t>(k + l)]) = t.col(l).adjoint();
    }
  }
  id.achieved_residual =
      (k < rows && k < cols) ? r.bottomRightCorner(rows - k, cols - k).norm() / m_norm : 0.0;
  return id;
}

PinvOperator::PinvOperator(const ComplexMatrix& a, double rel_cutoff)
    : rows_(a.rows()), cols_(a.cols()), rel_cutoff_(rel_cutoff) {
  if (!(rel_cutoff > 0.0 && rel_cutoff < 1.0)) {
    throw PreconditionError("PinvOperator: rel_cutoff must lie in (0, 1)");
  }
  require_nonempty(a, "PinvOperator");
  if (!a.allFinite()) throw PreconditionError("PinvOperator: non-finite entries");
  if (a.norm() == 0.0) throw PreconditionError("PinvOperator: matrix is identically zero");
  Svd svd;
  const Index small = std::min(rows_, cols_);
  bool done = false;
  if (small >= kRevealingSize) {
    // A ~= Q_k R_k P^T with the dropped block far below the cutoff; the SVD
    // of the short R_k then gives the leading singular triplets of A.
    PivotedQr qr = pivoted_qr(a, 0.1 * rel_cutoff, true);
    if (qr.k <= small / 2) {
      ComplexMatrix rk(qr.k, cols_);
      for (Index l = 0; l < cols_; ++l) rk.col(qr.perm[static_cast<std::size_t>(l)]) = qr.r.col(l).head(qr.k);
      Svd inner = thin_svd(rk);
      svd.U = apply_q(qr, rows_, inner.U);
      svd.s = std::move(inner.s);
      svd.V = std::move(inner.V);
      done = true;
    }
  }
  if (!done) svd = thin_svd(a);
  Index r = 0;
  while (r < svd.s.size() && svd.s(r) > rel_cutoff * svd.s(0)) ++r;
  u_ = svd.U.leftCols(r);
  s_ = svd.s.head(r);
  v_ = svd.V.leftCols(r);
  all_s_ = std::move(svd.s);
}

PinvOperator PinvOperator::from_factors(ComplexMatrix u, RealVector s, ComplexMatrix v,
                                        RealVector all_s, double rel_cutoff) {
  PinvOperator p;
  p.rows_ = u.rows();
  p.cols_ = v.rows();
  p.rel_cutoff_ = rel_cutoff;
  p.u_ = std::move(u);
  p.s_ = std::move(s);
  p.v_ = std::move(v);
  p.all_s_ = std::move(all_s);
  return p;
}

ComplexVector PinvOperator::apply(const ComplexVector& b) const {
  if (b.size() != rows_) throw PreconditionError("PinvOperator::apply: size mismatch");
  ComplexVector coef = u_.adjoint() * b;
  coef.array() /= s_.array().cast<cplx>();
  return v_ * coef;
}

ComplexMatrix PinvOperator::apply(const ComplexMatrix& b) const {
  if (b.rows() != rows_) throw PreconditionError("PinvOperator::apply: size mismatch");
  ComplexMatrix coef = u_.adjoint() * b;
  coef = s_.cwiseInverse().cast<cplx>().asDiagonal() * coef;
  return v_ * coef;
}

ComplexMatrix lsq_solve(const ComplexMatrix& b, const ComplexMatrix& d, double rel_cutoff) {
  if (b.rows() != d.rows()) throw PreconditionError("lsq_solve: row counts of B and D differ");
  return PinvOperator(b, rel_cutoff).apply(d);
}

namespace {

// Complex Givens rotation G = [c, s; -conj(s), c] with G [a; b] = [r; 0].
void make_givens(cplx a, cplx b, double& c, cplx& s) {
  const double ab = std::abs(b);
  if (ab == 0.0) {
    c = 1.0;
    s = 0.0;
    return;
  }
  const double aa = std::abs(a);
  if (aa == 0.0) {
    c = 0.0;
    s = std::conj(b) / ab;
    return;
  }
  const double nrm = std::hypot(aa, ab);
  c = aa / nrm;
  s = (a / aa) * std::conj(b) / nrm;
}

}  // namespace

GmresResult gmres(const LinearOperator& apply, const ComplexVector& b, double tol, int max_iter) {
  if (!(tol > 0.0)) throw PreconditionError("gmres: tol must be positive");
  if (max_iter < 1) throw PreconditionError("gmres: max_iter must be >= 1");
  const double beta = b.norm();
  if (beta == 0.0) throw PreconditionError("gmres: right-hand side is zero");
  const Index n = b.size();

  GmresResult res;
  res.residual_history.push_back(1.0);

  std::vector<ComplexVector> basis;
  basis.reserve(static_cast<std::size_t>(max_iter) + 1);
  basis.push_back(b / beta);
  ComplexMatrix h = ComplexMatrix::Zero(max_iter + 1, max_iter);
  std::vector<double> cs(static_cast<std::size_t>(max_iter));
  std::vector<cplx> sn(static_cast<std::size_t>(max_iter));
  ComplexVector g = ComplexVector::Zero(max_iter + 1);
  g(0) = beta;

  auto solution = [&](int m) {
    ComplexVector y = h.topLeftCorner(m, m).triangularView<Eigen::Upper>().solve(g.head(m));
    ComplexVector x = ComplexVector::Zero(n);
    for (int i = 0; i < m; ++i) x += y(i) * basis[static_cast<std::size_t>(i)];
    return x;
  };
  auto true_residual = [&](const ComplexVector& x) {
    ++res.matvecs;
    return (b - apply(x)).norm() / beta;
  };

  int m = 0;
  bool done = false;
  while (m < max_iter && !done) {
    const int j = m;
    ComplexVector w = apply(basis[static_cast<std::size_t>(j)]);
    ++res.matvecs;
    if (w.size() != n) throw PreconditionError("gmres: operator changed the vector length");
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i <= j; ++i) {
        const cplx hij = basis[static_cast<std::size_t>(i)].dot(w);
        h(i, j) += hij;
        w -= hij * basis[static_cast<std::size_t>(i)];
      }
    }
    const double hnext = w.norm();
    h(j + 1, j) = hnext;

    for (int i = 0; i < j; ++i) {
      const cplx t = cs[static_cast<std::size_t>(i)] * h(i, j) + sn[static_cast<std::size_t>(i)] * h(i + 1, j);
      h(i + 1, j) = -std::conj(sn[static_cast<std::size_t>(i)]) * h(i, j) + cs[static_cast<std::size_t>(i)] * h(i + 1, j);
      h(i, j) = t;
    }
    make_givens(h(j, j), h(j + 1, j), cs[static_cast<std::size_t>(j)], sn[static_cast<std::size_t>(j)]);
    const double c = cs[static_cast<std::size_t>(j)];
    const cplx s = sn[static_cast<std::size_t>(j)];
    h(j, j) = c * h(j, j) + s * h(j + 1, j);
    h(j + 1, j) = 0.0;
    g(j + 1) = -std::conj(s) * g(j);
    g(j) = c * g(j);

    m = j + 1;
    res.iterations = m;
    const double estimate = std::min(std::abs(g(m)) / beta, res.residual_history.back());
    res.residual_history.push_back(estimate);

    const bool breakdown = hnext <= 1e-14 * beta * std::numeric_limits<double>::epsilon() || hnext == 0.0;
    if (estimate <= tol || breakdown || m == max_iter) {
      res.x = solution(m);
      res.final_residual = true_residual(res.x);
      if (res.final_residual <= tol) {
        res.converged = true;
        done = true;
      } else if (breakdown || m == max_iter || estimate < 1e-3 * res.final_residual) {
        done = true;  // stagnated: the Krylov estimate no longer tracks the true residual
      }
    }
    if (!done) basis.push_back(w / hnext);
  }
  return res;
}

double cond2(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("cond2: matrix must be square");
  const RealVector s = singular_values(m);
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

}  // namespace helmscat
