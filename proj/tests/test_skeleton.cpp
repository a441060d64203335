#include "doctest.h"

#include <cmath>

#include "helmscat/geometry2d.hpp"
#include "helmscat/skeleton.hpp"

using namespace helmscat;

namespace {

struct Setup {
  Discretization disc;
  ProxySurface proxy;
  ComplexMatrix B;
};

Setup starfish(double kappa, int proxy_points = 0) {
  const Contour2D star(ContourKind::starfish);
  Setup s{star.discretize_smooth(256, 0.1), {}, {}};
  s.proxy = build_proxy(s.disc, kDefaultProxyFactor, proxy_points);
  s.B = build_outgoing(s.proxy, s.disc, Kernel(2, kappa));
  return s;
}

}  // namespace

TEST_CASE("single-entry outgoing matrix in 3D") {
  ProxySurface p;
  p.dim = 3;
  p.points = {{1.0, 0.0, 0.0}};
  p.radius = 1.0;
  Discretization d;
  d.dim = 3;
  d.colloc = {{0.0, 0.0, 0.0}};
  const ComplexMatrix b = build_outgoing(p, d, Kernel(3, 2.0));
  REQUIRE(b.rows() == 1);
  REQUIRE(b.cols() == 1);
  CHECK(std::abs(b(0, 0) - std::exp(2.0 * kI) / (4.0 * kPi)) < 1e-16);
}

TEST_CASE("outgoing matrix shape and transpose symmetry") {
  const Setup s = starfish(1.0);
  CHECK(s.B.rows() == 257);
  CHECK(s.B.cols() == 256);
  const Kernel k(2, 1.0);
  ComplexMatrix e(s.disc.m(), s.proxy.size());
  for (Index i = 0; i < e.rows(); ++i) {
    for (Index j = 0; j < e.cols(); ++j) e(i, j) = k(s.disc.colloc[i], s.proxy.points[j]);
  }
  CHECK((s.B.transpose() - e).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("starfish ranks match the published skeleton sizes") {
  const Skeletonization k1 = skeletonize(starfish(1.0).B, 1e-10);
  CHECK(std::abs(k1.rank - 39) <= 3);
  const Skeletonization k25 = skeletonize(starfish(25.0).B, 1e-8);
  CHECK(std::abs(k25.rank - 85) <= 8);
}

TEST_CASE("skeletonization invariants") {
  for (double eps : {1e-6, 1e-10}) {
    const Setup s = starfish(10.0);
    const Skeletonization sk = skeletonize(s.B, eps);
    REQUIRE(sk.Z.rows() == s.disc.m());
    REQUIRE(sk.Z.cols() == sk.rank);
    CHECK(sk.rank <= std::min<Index>(s.B.rows(), s.B.cols()));
    CHECK((sk.U - sk.Z.conjugate()).norm() == 0.0);
    for (Index j = 0; j < sk.rank; ++j) {
      for (Index i = 0; i < sk.rank; ++i) CHECK(sk.Z(sk.skeleton[i], j) == cplx(i == j ? 1.0 : 0.0));
    }
    ComplexMatrix cols(s.B.rows(), sk.rank);
    for (Index j = 0; j < sk.rank; ++j) cols.col(j) = s.B.col(sk.skeleton[j]);
    CHECK((s.B - cols * sk.Z.adjoint()).norm() <= 10 * eps * s.B.norm());
    const ComplexMatrix bt = s.B.transpose();
    ComplexMatrix rows(sk.rank, bt.cols());
    for (Index i = 0; i < sk.rank; ++i) rows.row(i) = bt.row(sk.skeleton[i]);
    CHECK((bt - sk.U * rows).norm() <= 10 * eps * s.B.norm());
  }
}

TEST_CASE("rank is monotone in the wavenumber") {
  Index prev = 0;
  for (double kappa : {1.0, kPi, 10.0, 25.0}) {
    const Index r = skeletonize(starfish(kappa).B, 1e-10).rank;
    CAPTURE(kappa);
    CHECK(r >= prev);
    prev = r;
  }
}

TEST_CASE("rank saturates in the proxy count") {
  for (double kappa : {1.0, 25.0}) {
    const Index k1 = skeletonize(starfish(kappa).B, 1e-10).rank;
    const Index k2 = skeletonize(starfish(kappa, 514).B, 1e-10).rank;
    CAPTURE(kappa);
    CHECK(std::abs(k1 - k2) <= 2);
  }
}

TEST_CASE("exact rank one") {
  ComplexVector u(20), v(30);
  for (Index i = 0; i < 20; ++i) u(i) = cplx(1.0 + i, 0.5 * i);
  for (Index j = 0; j < 30; ++j) v(j) = cplx(std::cos(j), std::sin(2.0 * j));
  const Skeletonization sk = skeletonize(u * v.transpose(), 1e-12);
  CHECK(sk.rank == 1);
  CHECK(sk.warnings.empty());
}
