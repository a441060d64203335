#include "doctest.h"

#include <cmath>
#include <random>

#include "helmscat/geometry2d.hpp"
#include "helmscat/multibody.hpp"
#include "helmscat/opcache.hpp"

using namespace helmscat;

namespace {

using Bodies = std::vector<std::shared_ptr<const Body>>;

struct Problem {
  Bodies bodies;
  std::shared_ptr<const GlobalProblem> gp;
};

Problem make_problem(const Bodies& bodies, const std::vector<DiscretizationSpec>& specs, double kappa,
                     double eps = 1e-10) {
  const Kernel k(2, kappa);
  OperatorCache cache;
  const OperatorSettings s{eps, kDefaultRelCutoff, kDefaultProxyFactor, 0};
  return {bodies, std::make_shared<const GlobalProblem>(k, build_operators(bodies, specs, k, s, cache))};
}

Problem disks(const std::vector<Vec3>& centers, double kappa = 5.0, int N = 128) {
  Bodies b;
  std::vector<DiscretizationSpec> specs;
  for (const auto& c : centers) {
    b.push_back(std::make_shared<Contour2D>(ContourKind::circle, ContourParams{}, c));
    specs.push_back(SmoothSpec{N, 0.25});
  }
  return make_problem(b, specs, kappa);
}

Problem starfish4(double kappa, int N, double eps, const Vec3& shift = {}) {
  Bodies b;
  std::vector<DiscretizationSpec> specs;
  for (double y : {-2.0, 2.0}) {
    for (double x : {-2.0, 2.0}) {
      b.push_back(std::make_shared<Contour2D>(ContourKind::starfish, ContourParams{}, shift + Vec3{x, y, 0.0}));
      specs.push_back(SmoothSpec{N, N == 352 ? 0.08 : 0.1});
    }
  }
  return make_problem(b, specs, kappa, eps);
}

ComplexVector random_vector(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> g;
  ComplexVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = {g(rng), g(rng)};
  return v;
}

std::vector<Vec3> ring(const Vec3& c, double r, int count) {
  std::vector<Vec3> pts;
  for (int i = 0; i < count; ++i) {
    const double a = 2.0 * kPi * (i + 0.25) / count;
    pts.push_back(c + Vec3{r * std::cos(a), r * std::sin(a), 0.0});
  }
  return pts;
}

ComplexVector block(const GlobalProblem& gp, const ComplexVector& q, std::size_t t) {
  return q.segment(gp.offset(t), gp.block_size(t));
}

}  // namespace

TEST_CASE("single scatterer: operator is the identity") {
  const Problem p = disks({{0, 0, 0}});
  std::mt19937_64 rng(1);
  const ComplexVector q = random_vector(rng, p.gp->unknowns());
  CHECK(p.gp->apply(q) == q);
  CHECK(p.gp->apply(ComplexVector::Zero(q.size())).norm() == 0.0);
  CHECK(p.gp->condition_number() == doctest::Approx(1.0).epsilon(1e-14));

  const PlaneWave pw{Vec3{1, 0, 0}, {1.0, 0.0}};
  const SolveReport rep = solve_multibody(*p.gp, pw, 1e-12, 50);
  CHECK(rep.converged);
  CHECK(rep.iterations == 1);
  CHECK((rep.q_hat - p.gp->rhs(pw)).norm() <= 1e-14 * rep.q_hat.norm());

  const ComplexVector v = evaluate_incoming(pw, p.gp->kernel(), p.gp->scatterer(0).disc.colloc);
  const ComplexVector q_mfs = reconstruct_full(*p.gp, 0, rep.q_hat, pw, Representation::mfs);
  CHECK((q_mfs - p.gp->scatterer(0).factors->mfs_strengths(v)).norm() == 0.0);
}

TEST_CASE("dense system matches the operator on two disks") {
  const Problem p = disks({{-2.5, 0, 0}, {2.5, 0.5, 0}});
  std::mt19937_64 rng(2);
  const ComplexVector q = random_vector(rng, p.gp->unknowns());
  const ComplexMatrix a = p.gp->dense_system();
  CHECK((a * q - p.gp->apply(q)).cwiseAbs().maxCoeff() <= 1e-13 * q.cwiseAbs().maxCoeff());

  // Independent assembly of G between skeleton points of different scatterers.
  const Kernel& k = p.gp->kernel();
  const auto& pts = p.gp->skeleton_points();
  const Index n = p.gp->unknowns();
  ComplexMatrix g = ComplexMatrix::Zero(n, n);
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (std::size_t t = 0; t < p.gp->count(); ++t) {
    s.block(p.gp->offset(t), p.gp->offset(t), p.gp->block_size(t), p.gp->block_size(t)) =
        p.gp->scatterer(t).factors->S;
    for (std::size_t u = 0; u < p.gp->count(); ++u) {
      if (u == t) continue;
      for (Index i = 0; i < p.gp->block_size(t); ++i) {
        for (Index j = 0; j < p.gp->block_size(u); ++j) {
          g(p.gp->offset(t) + i, p.gp->offset(u) + j) = k(pts[p.gp->offset(t) + i], pts[p.gp->offset(u) + j]);
        }
      }
    }
  }
  const ComplexMatrix oracle = ComplexMatrix::Identity(n, n) + s * g;
  CHECK((oracle - a).cwiseAbs().maxCoeff() <= 1e-13 * oracle.cwiseAbs().maxCoeff());
}

TEST_CASE("unstored interaction path agrees with the stored one") {
  const Problem p = disks({{-2.5, 0, 0}, {2.5, 0.5, 0}, {0.0, 4.0, 0}});
  const GlobalProblem blockwise(p.gp->kernel(),
                                {p.gp->scatterer(0), p.gp->scatterer(1), p.gp->scatterer(2)}, 0);
  CHECK(p.gp->interaction_stored());
  CHECK_FALSE(blockwise.interaction_stored());
  std::mt19937_64 rng(4);
  const ComplexVector q = random_vector(rng, p.gp->unknowns());
  CHECK((p.gp->apply(q) - blockwise.apply(q)).norm() <= 1e-13 * q.norm());
}

TEST_CASE("right-hand side") {
  const Problem p = disks({{0, 0, 0}}, 25.0);
  CHECK(p.gp->rhs(Monopoles{}).norm() == 0.0);
  const ComplexVector v = evaluate_incoming(PlaneWave{Vec3{1, 0, 0}, {1.0, 0.0}}, Kernel(2, 25.0), {Vec3{1, 0, 0}});
  CHECK(std::abs(v(0) - std::exp(25.0 * kI)) < 1e-14);
}

TEST_CASE("manufactured two-disk problem") {
  const Problem p = disks({{-2.5, 0, 0}, {2.5, 0, 0}});
  const Monopoles mono = manufactured_monopoles(p.bodies, 99);
  const SolveReport rep = solve_multibody(*p.gp, mono, 1e-13, 100);
  REQUIRE(rep.converged);
  const Solution sol(p.gp, mono, rep.q_hat);
  const ManufacturedField exact(p.gp->kernel(), p.bodies, mono);

  // Skeleton strengths recovered from the reconstructed physical strengths.
  for (std::size_t t = 0; t < 2; ++t) {
    const ComplexVector q_phys = reconstruct_full(*p.gp, t, rep.q_hat, mono, Representation::physical);
    const ComplexVector back = p.gp->scatterer(t).factors->skel.Z.adjoint() * q_phys;
    const ComplexVector q_t = block(*p.gp, rep.q_hat, t);
    CHECK((back - q_t).norm() / q_t.norm() <= 50 * 1e-10);
  }

  // Near-boundary evaluation uses the MFS sources.
  for (const auto& b : p.bodies) {
    const auto near = ring(b->center(), 1.01, 100);
    const ComplexVector u = sol.scattered(near);
    const ComplexVector ref = exact.scattered(near);
    CHECK((u - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff() <= 1e-7);
  }

  const ErrorMetrics err = compute_errors(sol, exact, far_field_targets(2, p.gp->centroid(), 10.0, 64),
                                          {p.bodies[0]->test_points(200), p.bodies[1]->test_points(200)});
  CHECK(err.e_far <= 1e-7);
  CHECK(err.e_inc <= 1e-7);

  const ErrorMetrics self = compute_errors(sol, sol, far_field_targets(2, p.gp->centroid(), 10.0, 64),
                                           {p.bodies[0]->test_points(200), p.bodies[1]->test_points(200)});
  CHECK(self.e_far == 0.0);
  CHECK(self.e_inc == 0.0);

  CHECK_THROWS_AS(sol.scattered({Vec3{2.4, 0.1, 0.0}}), PreconditionError);
  CHECK_THROWS_AS(reconstruct_full(*p.gp, 2, rep.q_hat, mono, Representation::mfs), PreconditionError);
}

TEST_CASE("single disk manufactured field at radius 10") {
  const Problem p = disks({{0, 0, 0}});
  const Monopoles mono{{Vec3{0.2, 0.1, 0.0}}, {cplx(1.0, -0.5)}};
  const SolveReport rep = solve_multibody(*p.gp, mono, 1e-13, 10);
  const Solution sol(p.gp, mono, rep.q_hat);
  const auto far = ring({}, 10.0, 64);
  const ComplexVector u = sol.scattered(far);
  const ComplexVector ref = evaluate_incoming(mono, p.gp->kernel(), far);
  CHECK((u - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("skeleton and MFS representations agree on each proxy") {
  const double eps = 1e-10;
  const Problem p = starfish4(5.0, 256, eps);
  const PlaneWave pw{Vec3{0.6, 0.8, 0.0}, {1.0, 0.0}};
  const SolveReport rep = solve_multibody(*p.gp, pw, 1e-12, 200);
  const Solution sol(p.gp, pw, rep.q_hat);
  const Kernel& k = p.gp->kernel();
  for (std::size_t t = 0; t < p.gp->count(); ++t) {
    const ScattererOperator& op = p.gp->scatterer(t);
    const ComplexVector skel = k.potential(op.proxy.points, op.skeleton_points, block(*p.gp, rep.q_hat, t));
    const ComplexVector mfs = k.potential(op.proxy.points, op.disc.sources, sol.mfs_strengths(t));
    CHECK((skel - mfs).norm() / mfs.norm() <= 10 * eps);
  }
}

TEST_CASE("solution is linear in the incoming field") {
  const Problem p = starfish4(3.0, 192, 1e-10);
  const Monopoles mono = manufactured_monopoles(p.bodies, 5);
  const cplx alpha(-0.7, 2.3);
  Monopoles scaled = mono;
  for (auto& s : scaled.strengths) s *= alpha;
  const SolveReport a = solve_multibody(*p.gp, mono, 1e-13, 200);
  const SolveReport b = solve_multibody(*p.gp, scaled, 1e-13, 200);
  CHECK((b.q_hat - alpha * a.q_hat).norm() <= 1e-10 * b.q_hat.norm());
}

TEST_CASE("errors are invariant under a rigid translation") {
  const Vec3 shift{3.7, -1.3, 0.0};
  ErrorMetrics e[2];
  for (int i = 0; i < 2; ++i) {
    const Problem p = starfish4(4.0, 192, 1e-10, i ? shift : Vec3{});
    Monopoles mono = manufactured_monopoles(p.bodies, 17);
    const SolveReport rep = solve_multibody(*p.gp, mono, 1e-12, 200);
    const Solution sol(p.gp, mono, rep.q_hat);
    const ManufacturedField exact(p.gp->kernel(), p.bodies, mono);
    std::vector<std::vector<Vec3>> tests;
    for (const auto& b : p.bodies) tests.push_back(b->test_points(200));
    e[i] = compute_errors(sol, exact, far_field_targets(2, p.gp->centroid(), 10.0, 64), tests);
  }
  CHECK(std::abs(e[0].e_far - e[1].e_far) <= 1e-8);
  CHECK(std::abs(e[0].e_inc - e[1].e_inc) <= 1e-8);
}

TEST_CASE("residual history is nonincreasing") {
  const Problem p = starfish4(10.0, 256, 1e-10);
  const SolveReport rep = solve_multibody(*p.gp, PlaneWave{}, 1e-11, 200);
  CHECK(rep.converged);
  REQUIRE(rep.residual_history.size() >= 2);
  for (std::size_t i = 1; i < rep.residual_history.size(); ++i) {
    CHECK(rep.residual_history[i] <= rep.residual_history[i - 1] * (1.0 + 1e-12));
  }
}

TEST_CASE("condition numbers of the starfish problems") {
  const double k_pi = starfish4(kPi, 256, 1e-10).gp->condition_number();
  CHECK(k_pi >= 3.0);
  CHECK(k_pi <= 50.0);
  const double k_1 = starfish4(1.0, 256, 1e-10).gp->condition_number();
  CHECK(k_1 >= 15.0);
  CHECK(k_1 <= 300.0);
}

TEST_CASE("4 starfish at kappa 25 converge within 40 matvecs") {
  const Problem p = starfish4(25.0, 256, 1e-8);
  const SolveReport rep = solve_multibody(*p.gp, PlaneWave{}, 1e-6, 200);
  CHECK(rep.converged);
  CHECK(rep.matvecs <= 40);
}

TEST_CASE("overlapping proxy is a geometry error") {
  const Kernel k(2, 5.0);
  OperatorCache cache;
  const Bodies b = {std::make_shared<Contour2D>(ContourKind::circle, ContourParams{}, Vec3{0, 0, 0}),
                    std::make_shared<Contour2D>(ContourKind::circle, ContourParams{}, Vec3{2.2, 0, 0})};
  const std::vector<DiscretizationSpec> specs = {SmoothSpec{64, 0.25}, SmoothSpec{64, 0.25}};
  const OperatorSettings s{1e-10, kDefaultRelCutoff, kDefaultProxyFactor, 0};
  CHECK_THROWS_AS(GlobalProblem(k, build_operators(b, specs, k, s, cache)), GeometryError);
}

TEST_CASE("operator cache shares translated copies") {
  const Kernel k(2, 5.0);
  OperatorCache cache;
  Bodies b;
  for (double x : {-5.0, 0.0, 5.0}) b.push_back(std::make_shared<Contour2D>(ContourKind::starfish, ContourParams{}, Vec3{x, 0, 0}));
  b.push_back(std::make_shared<Contour2D>(ContourKind::starfish, ContourParams{}, Vec3{0, 5, 0}, 0.3));
  const std::vector<DiscretizationSpec> specs(4, SmoothSpec{128, 0.1});
  const auto ops = build_operators(b, specs, k, OperatorSettings{}, cache);
  CHECK(cache.builds() == 2);
  CHECK(ops[0].factors == ops[1].factors);
  CHECK(ops[0].factors != ops[3].factors);
  CHECK(distance(ops[1].proxy.center, ops[0].proxy.center + Vec3{5, 0, 0}) < 1e-13);
}
