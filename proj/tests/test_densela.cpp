#include "doctest.h"

#include <random>

#include "helmscat/densela.hpp"

using namespace helmscat;

namespace {

ComplexMatrix random_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> g;
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = {g(rng), g(rng)};
  }
  return m;
}

ComplexMatrix random_unitary(std::mt19937_64& rng, Index n) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(rng, n, n));
  return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

double id_residual(const ComplexMatrix& m, const IdFactorization& id) {
  ComplexMatrix skel(m.rows(), id.rank);
  for (Index j = 0; j < id.rank; ++j) skel.col(j) = m.col(id.skeleton[j]);
  return (m - skel * id.interp.adjoint()).norm();
}

}  // namespace

TEST_CASE("thin SVD reconstructs") {
  std::mt19937_64 rng(1);
  for (auto [r, c] : {std::pair{7, 4}, {4, 7}, {5, 5}}) {
    const ComplexMatrix m = random_matrix(rng, r, c);
    const Svd s = thin_svd(m);
    CHECK((s.U * s.s.cast<cplx>().asDiagonal() * s.V.adjoint() - m).norm() <= 1e-13 * m.norm());
    for (Index i = 1; i < s.s.size(); ++i) CHECK(s.s(i) <= s.s(i - 1));
    CHECK((singular_values(m) - s.s).norm() <= 1e-13 * s.s(0));
  }
}

TEST_CASE("column ID examples") {
  std::mt19937_64 rng(2);
  SUBCASE("rank one") {
    const ComplexMatrix m = random_matrix(rng, 6, 1) * random_matrix(rng, 1, 5);
    const IdFactorization id = column_id(m, 1e-10);
    CHECK(id.rank == 1);
    CHECK(id_residual(m, id) <= 1e-12 * m.norm());
  }
  SUBCASE("small exact basis") {
    ComplexMatrix m(2, 3);
    m << 1, 2, 3, 2, 4, 5;
    const IdFactorization id = column_id(m, 1e-12);
    CHECK(id.rank == 2);
    CHECK(id_residual(m, id) <= 1e-14 * m.norm());
    // Any pair except {0, 1} spans the columns.
    std::vector<Index> sk = id.skeleton;
    std::sort(sk.begin(), sk.end());
    CHECK(sk != std::vector<Index>{0, 1});
  }
  SUBCASE("full rank") {
    const ComplexMatrix m = random_matrix(rng, 10, 8);
    const IdFactorization id = column_id(m, 1e-13);
    CHECK(id.rank == 8);
    CHECK(id_residual(m, id) <= 1e-12 * m.norm());
  }
  CHECK_THROWS_AS(column_id(ComplexMatrix::Zero(3, 3), 1e-8), PreconditionError);
  CHECK_THROWS_AS(column_id(random_matrix(rng, 3, 3), 0.0), PreconditionError);
  CHECK_THROWS_AS(column_id(random_matrix(rng, 3, 3), 1.0), PreconditionError);
}

TEST_CASE("column ID properties on planted ranks") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Index rows = 12 + trial % 9, cols = 10 + trial % 13;
    const Index planted = 1 + trial % std::min(rows, cols);
    // Geometric singular values inside the planted rank.
    const ComplexMatrix u = random_unitary(rng, rows).leftCols(planted);
    const ComplexMatrix v = random_unitary(rng, cols).leftCols(planted);
    RealVector s(planted);
    for (Index i = 0; i < planted; ++i) s(i) = std::pow(10.0, -0.3 * i);
    const ComplexMatrix m = u * s.cast<cplx>().asDiagonal() * v.adjoint();
    const double eps = 1e-9;
    const IdFactorization id = column_id(m, eps);
    CAPTURE(trial);
    CHECK(id.rank >= 1);
    CHECK(id.rank <= planted);
    CHECK(id_residual(m, id) <= 10 * eps * m.norm());
    CHECK(id.achieved_residual <= 10 * eps);
    for (Index i = 0; i < id.rank; ++i) {
      for (Index j = 0; j < id.rank; ++j) CHECK(id.interp(id.skeleton[i], j) == cplx(i == j ? 1.0 : 0.0));
    }
    ComplexMatrix rows_sel(id.rank, rows);
    const ComplexMatrix mt = m.transpose();
    for (Index i = 0; i < id.rank; ++i) rows_sel.row(i) = mt.row(id.skeleton[i]);
    CHECK((mt - id.interp.conjugate() * rows_sel).norm() <= 10 * eps * m.norm());
  }
}

TEST_CASE("pseudo-inverse examples") {
  std::mt19937_64 rng(4);
  const ComplexVector b = random_matrix(rng, 3, 1);
  CHECK((PinvOperator(ComplexMatrix::Identity(3, 3), 1e-13).apply(b) - b).norm() <= 1e-15);

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 1e-16;
  const ComplexVector x = PinvOperator(d, 1e-13).apply(ComplexVector(ComplexVector::Ones(2)));
  CHECK(std::abs(x(0) - 1.0) <= 1e-15);
  CHECK(std::abs(x(1)) == 0.0);

  ComplexMatrix col(2, 1);
  col << 1, 1;
  ComplexVector rhs(2);
  rhs << 1, 3;
  CHECK(std::abs(PinvOperator(col, 1e-13).apply(rhs)(0) - 2.0) <= 1e-14);

  CHECK_THROWS_AS(PinvOperator(ComplexMatrix::Zero(3, 2), 1e-13), PreconditionError);
  CHECK_THROWS_AS(PinvOperator(col, 0.0), PreconditionError);
  CHECK_THROWS_AS(PinvOperator(col, 1e-13).apply(ComplexVector(ComplexVector::Ones(3))), PreconditionError);
}

TEST_CASE("pseudo-inverse is a left inverse for well-conditioned A") {
  std::mt19937_64 rng(5);
  const Index n = 12;
  const ComplexMatrix a = random_unitary(rng, 30).leftCols(n) * (ComplexMatrix::Identity(n, n) * 3.0 +
                                                                 0.5 * random_matrix(rng, n, n));
  const PinvOperator p(a, 1e-13);
  CHECK((p.apply(a) - ComplexMatrix::Identity(n, n)).norm() <= 1e-9 * std::sqrt(double(n)));
}

TEST_CASE("large low-rank pseudo-inverse matches the direct SVD") {
  // Smooth kernel matrix with rapidly decaying spectrum, above the QR threshold.
  std::mt19937_64 rng(6);
  const Index p = 400, m = 380, n = 40;
  ComplexMatrix b(p, m), d(p, n);
  for (Index i = 0; i < p; ++i) {
    const double zi = 2.0 * kPi * i / p;
    for (Index j = 0; j < m; ++j) {
      const double xj = 2.0 * kPi * j / m;
      b(i, j) = std::exp(cplx(0.0, 3.0) * std::cos(zi - xj)) / (3.0 - std::cos(zi - xj) * 1.5);
    }
    for (Index j = 0; j < n; ++j) d(i, j) = b(i, (j * 7) % m) * cplx(0.3, 1.0);
  }
  const PinvOperator fast(b, 1e-13);
  CHECK(fast.rank() < m / 2);
  const Svd svd = thin_svd(b);
  Index r = 0;
  while (r < svd.s.size() && svd.s(r) > 1e-13 * svd.s(0)) ++r;
  CHECK(std::abs(static_cast<double>(fast.rank() - r)) <= 3);
  const ComplexMatrix c = fast.apply(d);
  CHECK((b * c - d).norm() <= 1e-11 * d.norm());
  for (Index i = 0; i < 5; ++i) CHECK(std::abs(fast.singular_values()(i) - svd.s(i)) <= 1e-12 * svd.s(0));
}

TEST_CASE("least squares") {
  std::mt19937_64 rng(7);
  const ComplexMatrix d = random_matrix(rng, 5, 3);
  CHECK((lsq_solve(ComplexMatrix::Identity(5, 5), d, 1e-13) - d).norm() <= 1e-14);

  const ComplexMatrix q = random_unitary(rng, 9).leftCols(4);
  CHECK((lsq_solve(q, q, 1e-13) - ComplexMatrix::Identity(4, 4)).norm() <= 1e-13);

  const ComplexMatrix b = random_unitary(rng, 8).leftCols(5) *
                          (ComplexMatrix::Identity(5, 5) * 2.0 + 0.3 * random_matrix(rng, 5, 5));
  const ComplexMatrix rhs = random_matrix(rng, 8, 3);
  const ComplexMatrix normal = (b.adjoint() * b).lu().solve(b.adjoint() * rhs);
  CHECK((lsq_solve(b, rhs, 1e-13) - normal).norm() <= 1e-10 * normal.norm());
  CHECK_THROWS_AS(lsq_solve(b, random_matrix(rng, 7, 2), 1e-13), PreconditionError);
}

TEST_CASE("GMRES examples") {
  std::mt19937_64 rng(8);
  const ComplexVector b = random_matrix(rng, 6, 1);
  const GmresResult id = gmres([](const ComplexVector& x) { return x; }, b, 1e-12, 50);
  CHECK(id.converged);
  CHECK(id.iterations == 1);
  CHECK((id.x - b).norm() <= 1e-14 * b.norm());

  const GmresResult dg = gmres(
      [](const ComplexVector& x) {
        ComplexVector y = x;
        y(1) *= 2.0;
        return y;
      },
      ComplexVector::Ones(2), 1e-12, 50);
  CHECK(dg.iterations <= 2);
  CHECK(std::abs(dg.x(0) - 1.0) <= 1e-12);
  CHECK(std::abs(dg.x(1) - 0.5) <= 1e-12);

  const ComplexMatrix a = ComplexMatrix::Identity(20, 20) + 0.1 * random_matrix(rng, 20, 20);
  const ComplexVector rhs = random_matrix(rng, 20, 1);
  const GmresResult g = gmres([&](const ComplexVector& x) { return ComplexVector(a * x); }, rhs, 1e-10, 100);
  const ComplexVector direct = a.lu().solve(rhs);
  CHECK(g.converged);
  CHECK((g.x - direct).norm() <= 1e-8 * direct.norm());
  const double true_res = (rhs - a * g.x).norm() / rhs.norm();
  CHECK(std::abs(g.final_residual - true_res) <= 1e-10 * std::max(true_res, 1e-300));
  CHECK(g.residual_history.front() == 1.0);
  for (std::size_t i = 1; i < g.residual_history.size(); ++i) {
    CHECK(g.residual_history[i] <= g.residual_history[i - 1]);
  }
}

TEST_CASE("GMRES terminates within the number of distinct eigenvalues for normal matrices") {
  std::mt19937_64 rng(9);
  const Index n = 40;
  const ComplexMatrix q = random_unitary(rng, n);
  for (int distinct : {2, 3, 5, 7}) {
    ComplexVector ev(n);
    for (Index i = 0; i < n; ++i) ev(i) = std::polar(1.0 + (i % distinct), 0.7 * (i % distinct));
    const ComplexMatrix a = q * ev.asDiagonal() * q.adjoint();
    const ComplexVector b = random_matrix(rng, n, 1);
    const GmresResult g = gmres([&](const ComplexVector& x) { return ComplexVector(a * x); }, b, 1e-12, 100);
    CAPTURE(distinct);
    CHECK(g.converged);
    CHECK(g.iterations <= distinct);
  }
}

TEST_CASE("GMRES flags stagnation instead of throwing") {
  // Cyclic shift: GMRES makes no progress until the last step.
  const Index n = 30;
  const GmresResult g = gmres(
      [n](const ComplexVector& x) {
        ComplexVector y(n);
        for (Index i = 0; i < n; ++i) y((i + 1) % n) = x(i);
        return y;
      },
      ComplexVector::Unit(n, 0), 1e-10, 5);
  CHECK_FALSE(g.converged);
  CHECK(g.iterations == 5);
  CHECK(g.final_residual == doctest::Approx(1.0));
  CHECK_THROWS_AS(gmres([](const ComplexVector& x) { return x; }, ComplexVector::Ones(2), 0.0, 5), PreconditionError);
}

TEST_CASE("condition numbers") {
  std::mt19937_64 rng(10);
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d.diagonal() << 4, 2, 1;
  CHECK(cond2(d) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(cond2(ComplexMatrix::Identity(5, 5)) == doctest::Approx(1.0).epsilon(1e-14));
  const ComplexMatrix q = random_unitary(rng, 10);
  ComplexVector s(10);
  for (Index i = 0; i < 10; ++i) s(i) = 10.0 - i;
  CHECK(cond2(q * s.asDiagonal() * q.adjoint()) == doctest::Approx(10.0).epsilon(1e-10));
  CHECK(std::isinf(cond2(ComplexMatrix::Ones(2, 2))));
}
