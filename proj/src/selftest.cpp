#include "helmscat/selftest.hpp"

#include <chrono>
#include <random>

#include "helmscat/geometry2d.hpp"
#include "helmscat/multibody.hpp"
#include "helmscat/opcache.hpp"
#include "helmscat/specfun.hpp"

namespace helmscat {

namespace {

using Rng = std::mt19937_64;

ComplexMatrix random_matrix(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> g;
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = {g(rng), g(rng)};
  }
  return m;
}

// Eighth-order central difference.
template <class F>
double derivative(F f, double x, double h) {
  static constexpr double c[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  double s = 0.0;
  for (int k = 1; k <= 4; ++k) s += c[k - 1] * (f(x + k * h) - f(x - k * h));
  return s / h;
}

class Collector {
 public:
  explicit Collector(SelftestReport& r) : r_(r) {}
  void add(const std::string& suite, const std::string& name, double value, double bound) {
    r_.checks.push_back({suite, name, std::isfinite(value) && value <= bound, value, bound});
  }

 private:
  SelftestReport& r_;
};

void specfun_suite(Collector& out, Rng& rng) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int dim : {2, 3}) {
    const Kernel k(dim, 3.7);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Vec3 x{u(rng), u(rng), dim == 3 ? u(rng) : 0.0};
      const Vec3 y{u(rng), u(rng), dim == 3 ? u(rng) : 0.0};
      worst = std::max(worst, std::abs(k(x, y) - k(y, x)) / std::abs(k(x, y)));
    }
    out.add("specfun", "kernel symmetry " + std::to_string(dim) + "D", worst, 1e-15);
  }
  // J0 Y0' - J0' Y0 = 2 / (pi x)
  double worst = 0.0;
  for (double x = 0.25; x < 60.0; x *= 1.13) {
    const double h = 1e-2 * std::min(1.0, x / 4.0);
    const double w = bessel_j0(x) * derivative(bessel_y0, x, h) - derivative(bessel_j0, x, h) * bessel_y0(x);
    worst = std::max(worst, std::abs(w * kPi * x / 2.0 - 1.0));
  }
  out.add("specfun", "Wronskian J0/Y0", worst, 1e-9);
}

void densela_suite(Collector& out, Rng& rng) {
  std::uniform_int_distribution<int> rank_dist(3, 30);
  const double eps = 1e-12;
  double worst_res = 0.0, worst_id = 0.0, worst_transpose = 0.0;
  int rank_misses = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index r = rank_dist(rng);
    const Index rows = 40 + trial % 25, cols = 50 + (trial * 7) % 40;
    const ComplexMatrix m = random_matrix(rng, rows, r) * random_matrix(rng, r, cols);
    const IdFactorization id = column_id(m, eps);
    if (id.rank != r) ++rank_misses;
    ComplexMatrix skel(rows, id.rank);
    for (Index j = 0; j < id.rank; ++j) skel.col(j) = m.col(id.skeleton[j]);
    worst_res = std::max(worst_res, (m - skel * id.interp.adjoint()).norm() / m.norm());
    for (Index j = 0; j < id.rank; ++j) {
      for (Index i = 0; i < id.rank; ++i) {
        worst_id = std::max(worst_id, std::abs(id.interp(id.skeleton[i], j) - (i == j ? 1.0 : 0.0)));
      }
    }
    // Row form: M^T ~= conj(Z) M^T(skeleton, :)
    const ComplexMatrix mt = m.transpose();
    ComplexMatrix rows_sel(id.rank, rows);
    for (Index i = 0; i < id.rank; ++i) rows_sel.row(i) = mt.row(id.skeleton[i]);
    worst_transpose = std::max(worst_transpose, (mt - id.interp.conjugate() * rows_sel).norm() / m.norm());
  }
  out.add("densela", "ID reconstruction on 100 planted-rank matrices", worst_res, 10 * eps);
  out.add("densela", "ID identity rows", worst_id, 0.0);
  out.add("densela", "ID transpose form", worst_transpose, 10 * eps);
  out.add("densela", "ID planted rank recovered", rank_misses, 0);

  // Diagonalizable matrix with a few distinct eigenvalues.
  const Index n = 80;
  const std::vector<cplx> eig = {{1.0, 0.0}, {2.0, 1.0}, {-1.5, 0.5}, {0.5, -2.0}, {3.0, 0.0}};
  ComplexMatrix v = ComplexMatrix::Identity(n, n) + 0.05 * random_matrix(rng, n, n);
  ComplexVector diag(n);
  for (Index i = 0; i < n; ++i) diag(i) = eig[i % eig.size()];
  const ComplexMatrix a = v * diag.asDiagonal() * v.inverse();
  const ComplexVector b = random_matrix(rng, n, 1);
  const GmresResult g = gmres([&](const ComplexVector& x) { return ComplexVector(a * x); }, b, 1e-10, 200);
  out.add("densela", "GMRES iterations <= distinct eigenvalues", g.iterations, static_cast<double>(eig.size()));
  const double true_res = (b - a * g.x).norm() / b.norm();
  out.add("densela", "GMRES reported residual matches recomputed", std::abs(true_res - g.final_residual), 1e-12);
  out.add("densela", "GMRES residual below tolerance", g.final_residual, 1e-10);
}

void mfs_suite(Collector& out) {
  const Kernel k(2, 5.0);
  const Contour2D disk(ContourKind::circle);
  const Discretization disc = disk.discretize(SmoothSpec{128, 0.25});
  const LocalSystem sys = build_local_system(disc, k, kDefaultRelCutoff);
  const Vec3 y0{0.3, 0.2, 0.0};
  const Monopoles src{{y0}, {cplx(1.0, 0.5)}};
  const LocalSolve sol = solve_local_dirichlet(sys, evaluate_incoming(src, k, disc.colloc));
  const auto targets = far_field_targets(2, {}, 10.0, 64);
  const ComplexVector u = k.potential(targets, disc.sources, sol.q);
  const ComplexVector exact = evaluate_incoming(src, k, targets);
  out.add("mfs", "disk manufactured error (N=128, d=0.25, kappa=5)",
          (u - exact).cwiseAbs().maxCoeff() / exact.cwiseAbs().maxCoeff(), 1e-10);
}

void scatmat_suite(Collector& out) {
  const double eps = 1e-10;
  const Kernel k(2, 10.0);
  const Contour2D star(ContourKind::starfish);
  const Discretization disc = star.discretize(SmoothSpec{256, 0.1});
  const ProxySurface proxy = build_proxy(disc, kDefaultProxyFactor, 0);
  const OperatorSettings settings{eps, kDefaultRelCutoff, kDefaultProxyFactor, 0};
  const ScatteringFactors f = build_scattering_factors(disc, proxy, k, settings);

  out.add("scatmat", "translation B C = D", f.translation_mismatch, 1e-8);
  out.add("scatmat", "S = Z^* C pinv(A) U", (build_scattering_matrix(f) - f.S).norm() / f.S.norm(), 1e-12);

  // Skeleton sources and MFS sources give the same field on the proxy.
  const PlaneWave pw{Vec3{0.6, 0.8, 0.0}, {1.0, 0.0}};
  const ComplexVector v = evaluate_incoming(pw, k, disc.colloc);
  const ComplexVector q_mfs = f.mfs_strengths(v);
  const ComplexVector q_skel = f.effective_charges(v);
  std::vector<Vec3> skel_pts;
  for (Index i : f.skel.skeleton) skel_pts.push_back(disc.colloc[i]);
  const ComplexVector on_proxy_mfs = k.potential(proxy.points, disc.sources, q_mfs);
  const ComplexVector on_proxy_skel = k.potential(proxy.points, skel_pts, q_skel);
  out.add("scatmat", "skeleton and MFS fields agree on proxy",
          (on_proxy_mfs - on_proxy_skel).norm() / on_proxy_mfs.norm(), 10 * eps);

  // Incoming fields from outside the proxy are interpolated from the skeleton.
  const Monopoles far{{Vec3{9.0, 1.0, 0.0}, Vec3{-2.0, 8.0, 0.0}}, {cplx(1.0, 0.0), cplx(0.0, 2.0)}};
  const ComplexVector w = evaluate_incoming(far, k, disc.colloc);
  ComplexVector w_skel(f.rank());
  for (Index i = 0; i < f.rank(); ++i) w_skel(i) = w(f.skel.skeleton[i]);
  out.add("scatmat", "incoming interpolation U w(skeleton) = w", (f.skel.U * w_skel - w).norm() / w.norm(), 10 * eps);
}

void multibody_suite(Collector& out, std::uint64_t seed) {
  const double eps = 1e-10;
  const Kernel k(2, 2.0);
  std::vector<std::shared_ptr<const Body>> bodies = {
      std::make_shared<Contour2D>(ContourKind::starfish, ContourParams{}, Vec3{-2.0, -2.0, 0.0}),
      std::make_shared<Contour2D>(ContourKind::circle, ContourParams{}, Vec3{2.5, -1.5, 0.0}),
      std::make_shared<Contour2D>(ContourKind::starfish, ContourParams{}, Vec3{0.5, 3.0, 0.0}, 0.7),
  };
  const std::vector<DiscretizationSpec> specs = {SmoothSpec{256, 0.1}, SmoothSpec{128, 0.2}, SmoothSpec{256, 0.1}};
  OperatorCache cache;
  const OperatorSettings settings{eps, kDefaultRelCutoff, kDefaultProxyFactor, 0};
  auto gp = std::make_shared<const GlobalProblem>(k, build_operators(bodies, specs, k, settings, cache));
  const Monopoles mono = manufactured_monopoles(bodies, seed);
  const SolveReport rep = solve_multibody(*gp, mono, 1e-12, 200);
  out.add("multibody", "manufactured solve converged", rep.converged ? 0.0 : 1.0, 0.0);

  // Dense system and operator application agree.
  const ComplexVector x = rep.q_hat;
  out.add("multibody", "dense system matches matvec", (gp->dense_system() * x - gp->apply(x)).norm() / x.norm(),
          1e-13);

  // Skeleton strengths are recovered from the reconstructed MFS strengths.
  const Solution sol(gp, mono, rep.q_hat);
  double worst = 0.0;
  for (std::size_t t = 0; t < gp->count(); ++t) {
    const ComplexVector q_t = rep.q_hat.segment(gp->offset(t), gp->block_size(t));
    const ComplexVector back = gp->scatterer(t).factors->ZC * sol.mfs_strengths(t);
    worst = std::max(worst, (back - q_t).norm() / q_t.norm());
  }
  out.add("multibody", "Z^* C q_mfs = q_hat", worst, 100 * eps);

  const ManufacturedField exact(k, bodies, mono);
  std::vector<std::vector<Vec3>> tests;
  for (const auto& b : bodies) tests.push_back(b->test_points(200));
  const ErrorMetrics err = compute_errors(sol, exact, far_field_targets(2, gp->centroid(), 10.0, 64), tests);
  out.add("multibody", "manufactured far-field error", err.e_far, 1e-8);
  out.add("multibody", "manufactured incoming-field error", err.e_inc, 1e-8);
}

}  // namespace

bool SelftestReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return !checks.empty();
}

SelftestReport run_selftest(std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  SelftestReport report;
  Collector out(report);
  Rng rng(seed);
  specfun_suite(out, rng);
  densela_suite(out, rng);
  mfs_suite(out);
  scatmat_suite(out);
  multibody_suite(out, seed);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace helmscat
