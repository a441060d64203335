#include "helmscat/multibody.hpp"

#include <chrono>
#include <cmath>
#include <random>

namespace helmscat {

ComplexVector evaluate_incoming(const IncomingField& field, const Kernel& kernel, const std::vector<Vec3>& pts) {
  ComplexVector v(static_cast<Index>(pts.size()));
  if (const auto* pw = std::get_if<PlaneWave>(&field)) {
    const Vec3 dir = pw->direction;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double phase = kernel.kappa() * dir.dot(pts[i]);
      v(static_cast<Index>(i)) = pw->amplitude * cplx(std::cos(phase), std::sin(phase));
    }
    return v;
  }
  const auto& mp = std::get<Monopoles>(field);
  if (mp.points.size() != mp.strengths.size()) throw PreconditionError("monopoles: size mismatch");
  ComplexVector q(static_cast<Index>(mp.strengths.size()));
  for (std::size_t j = 0; j < mp.strengths.size(); ++j) q(static_cast<Index>(j)) = mp.strengths[j];
  return kernel.potential(pts, mp.points, q);
}

GlobalProblem::GlobalProblem(Kernel kernel, std::vector<ScattererOperator> scatterers, Index dense_limit)
    : kernel_(kernel), ops_(std::move(scatterers)) {
  if (ops_.empty()) throw PreconditionError("GlobalProblem: no scatterers");
  offsets_.push_back(0);
  for (const auto& op : ops_) {
    if (op.disc.dim != kernel_.dim()) throw PreconditionError("GlobalProblem: dimension mismatch");
    offsets_.push_back(offsets_.back() + op.rank());
    skel_points_.insert(skel_points_.end(), op.skeleton_points.begin(), op.skeleton_points.end());
  }
  for (std::size_t t = 0; t < ops_.size(); ++t) {
    for (std::size_t s = 0; s < ops_.size(); ++s) {
      if (s == t) continue;
      for (const auto& x : ops_[s].disc.colloc) {
        if (ops_[t].proxy.contains(x)) {
          throw GeometryError("proxy surface of scatterer " + std::to_string(t) +
                              " contains collocation points of scatterer " + std::to_string(s));
        }
      }
    }
  }
  if (unknowns() <= dense_limit) {
    stored_ = true;
    g_ = ComplexMatrix::Zero(unknowns(), unknowns());
    for (std::size_t t = 0; t < ops_.size(); ++t) {
      for (std::size_t s = 0; s < ops_.size(); ++s) {
        if (s != t) g_.block(offset(t), offset(s), block_size(t), block_size(s)) = interaction_block(t, s);
      }
    }
  }
}

Vec3 GlobalProblem::centroid() const {
  Vec3 c;
  for (const auto& op : ops_) c += op.body->center();
  return c / static_cast<double>(ops_.size());
}

ComplexMatrix GlobalProblem::interaction_block(std::size_t tau, std::size_t sigma) const {
  return kernel_.matrix(ops_[tau].skeleton_points, ops_[sigma].skeleton_points);
}

ComplexVector GlobalProblem::interact_on(std::size_t tau, const ComplexVector& q) const {
  if (q.size() != unknowns()) throw PreconditionError("interact_on: length mismatch");
  if (stored_) return g_.middleRows(offset(tau), block_size(tau)) * q;
  ComplexVector out = ComplexVector::Zero(block_size(tau));
  for (std::size_t s = 0; s < ops_.size(); ++s) {
    if (s != tau) out.noalias() += interaction_block(tau, s) * q.segment(offset(s), block_size(s));
  }
  return out;
}

ComplexVector GlobalProblem::interact(const ComplexVector& q) const {
  if (q.size() != unknowns()) throw PreconditionError("interact: length mismatch");
  if (stored_) return g_ * q;
  ComplexVector out(unknowns());
  for (std::size_t t = 0; t < ops_.size(); ++t) out.segment(offset(t), block_size(t)) = interact_on(t, q);
  return out;
}

ComplexVector GlobalProblem::apply(const ComplexVector& q) const {
  const ComplexVector g = interact(q);
  ComplexVector out = q;
  for (std::size_t t = 0; t < ops_.size(); ++t) {
    out.segment(offset(t), block_size(t)).noalias() += ops_[t].factors->S * g.segment(offset(t), block_size(t));
  }
  return out;
}

ComplexVector GlobalProblem::rhs(const IncomingField& field) const {
  ComplexVector b(unknowns());
  for (std::size_t t = 0; t < ops_.size(); ++t) {
    const ComplexVector v = evaluate_incoming(field, kernel_, ops_[t].disc.colloc);
    b.segment(offset(t), block_size(t)) = ops_[t].factors->effective_charges(v);
  }
  return b;
}

ComplexMatrix GlobalProblem::dense_system() const {
  ComplexMatrix m = ComplexMatrix::Identity(unknowns(), unknowns());
  for (std::size_t t = 0; t < ops_.size(); ++t) {
    for (std::size_t s = 0; s < ops_.size(); ++s) {
      if (s == t) continue;
      const ComplexMatrix g = stored_ ? ComplexMatrix(g_.block(offset(t), offset(s), block_size(t), block_size(s)))
                                      : interaction_block(t, s);
      m.block(offset(t), offset(s), block_size(t), block_size(s)) = ops_[t].factors->S * g;
    }
  }
  return m;
}

double GlobalProblem::condition_number() const {
  if (unknowns() > 20000) throw PreconditionError("condition_number: system too large for a dense SVD");
  return cond2(dense_system());
}

SolveReport solve_multibody(const GlobalProblem& gp, const IncomingField& field, double tol, int max_iter) {
  using clock = std::chrono::steady_clock;
  SolveReport rep;
  const ComplexVector b = gp.rhs(field);
  if (b.norm() == 0.0) {
    rep.q_hat = ComplexVector::Zero(gp.unknowns());
    rep.residual_history = {0.0};
    rep.converged = true;
    return rep;
  }
  double matvec_time = 0.0;
  const LinearOperator op = [&](const ComplexVector& x) {
    const auto t0 = clock::now();
    ComplexVector y = gp.apply(x);
    matvec_time += std::chrono::duration<double>(clock::now() - t0).count();
    return y;
  };
  const auto t0 = clock::now();
  GmresResult g = gmres(op, b, tol, max_iter);
  rep.t_solve = std::chrono::duration<double>(clock::now() - t0).count();
  rep.q_hat = std::move(g.x);
  rep.iterations = g.iterations;
  rep.matvecs = g.matvecs;
  rep.residual_history = std::move(g.residual_history);
  rep.final_residual = g.final_residual;
  rep.converged = g.converged;
  rep.t_matvec = g.matvecs > 0 ? matvec_time / g.matvecs : 0.0;
  return rep;
}

ComplexVector reconstruct_full(const GlobalProblem& gp, std::size_t tau, const ComplexVector& q_hat,
                               const IncomingField& field, Representation where) {
  if (tau >= gp.count()) throw PreconditionError("reconstruct_full: scatterer index out of range");
  const auto& op = gp.scatterer(tau);
  ComplexVector w = evaluate_incoming(field, gp.kernel(), op.disc.colloc);
  if (gp.count() > 1) w -= op.factors->skel.U * gp.interact_on(tau, q_hat);
  ComplexVector q = op.factors->mfs_strengths(w);
  if (where == Representation::physical) return op.factors->C * q;
  return q;
}

Solution::Solution(std::shared_ptr<const GlobalProblem> gp, IncomingField field, ComplexVector q_hat)
    : gp_(std::move(gp)), field_(std::move(field)), q_hat_(std::move(q_hat)) {
  if (q_hat_.size() != gp_->unknowns()) throw PreconditionError("Solution: q_hat length mismatch");
  for (std::size_t t = 0; t < gp_->count(); ++t) {
    q_mfs_.push_back(reconstruct_full(*gp_, t, q_hat_, field_, Representation::mfs));
  }
}

ComplexVector Solution::physical_strengths(std::size_t t) const { return gp_->scatterer(t).factors->C * q_mfs_.at(t); }

ComplexVector Solution::scattered_by(std::size_t sigma, const std::vector<Vec3>& targets) const {
  const auto& op = gp_->scatterer(sigma);
  const Kernel& k = gp_->kernel();
  const ComplexVector qs = q_hat_.segment(gp_->offset(sigma), gp_->block_size(sigma));
  ComplexVector u(static_cast<Index>(targets.size()));
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const Vec3& x = targets[i];
    cplx acc = 0.0;
    if (op.proxy.contains(x)) {
      const auto& q = q_mfs_[sigma];
      for (std::size_t j = 0; j < op.disc.sources.size(); ++j) acc += k(x, op.disc.sources[j]) * q(static_cast<Index>(j));
    } else {
      for (std::size_t j = 0; j < op.skeleton_points.size(); ++j) acc += k(x, op.skeleton_points[j]) * qs(static_cast<Index>(j));
    }
    u(static_cast<Index>(i)) = acc;
  }
  return u;
}

ComplexVector Solution::scattered(const std::vector<Vec3>& targets) const {
  for (const auto& x : targets) {
    for (std::size_t s = 0; s < gp_->count(); ++s) {
      if (gp_->scatterer(s).body->encloses(x)) {
        throw PreconditionError("scattered: target lies inside scatterer " + std::to_string(s));
      }
    }
  }
  ComplexVector u = ComplexVector::Zero(static_cast<Index>(targets.size()));
  for (std::size_t s = 0; s < gp_->count(); ++s) u += scattered_by(s, targets);
  return u;
}

ComplexVector Solution::local_incoming(std::size_t tau, const std::vector<Vec3>& pts) const {
  if (tau >= gp_->count()) throw PreconditionError("local_incoming: scatterer index out of range");
  ComplexVector w = evaluate_incoming(field_, gp_->kernel(), pts);
  for (std::size_t s = 0; s < gp_->count(); ++s) {
    if (s != tau) w -= scattered_by(s, pts);
  }
  return w;
}

ManufacturedField::ManufacturedField(Kernel kernel, const std::vector<std::shared_ptr<const Body>>& bodies,
                                     Monopoles sources)
    : kernel_(kernel), sources_(std::move(sources)) {
  if (sources_.points.size() != sources_.strengths.size()) throw PreconditionError("monopoles: size mismatch");
  for (std::size_t j = 0; j < sources_.points.size(); ++j) {
    std::size_t owner = bodies.size();
    for (std::size_t t = 0; t < bodies.size(); ++t) {
      if (bodies[t]->encloses(sources_.points[j])) owner = t;
    }
    if (owner == bodies.size()) {
      throw PreconditionError("manufactured reference: monopole " + std::to_string(j) + " is not inside a scatterer");
    }
    owner_.push_back(owner);
  }
}

ComplexVector ManufacturedField::scattered(const std::vector<Vec3>& targets) const {
  return evaluate_incoming(sources_, kernel_, targets);
}

ComplexVector ManufacturedField::local_incoming(std::size_t tau, const std::vector<Vec3>& pts) const {
  Monopoles own;
  for (std::size_t j = 0; j < owner_.size(); ++j) {
    if (owner_[j] == tau) {
      own.points.push_back(sources_.points[j]);
      own.strengths.push_back(sources_.strengths[j]);
    }
  }
  if (own.points.empty()) return ComplexVector::Zero(static_cast<Index>(pts.size()));
  return evaluate_incoming(own, kernel_, pts);
}

Monopoles manufactured_monopoles(const std::vector<std::shared_ptr<const Body>>& bodies, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Monopoles mp;
  for (const auto& body : bodies) {
    const Vec3 base = body->interior_point();
    Vec3 dir{unit(rng) - 0.5, unit(rng) - 0.5, body->dim() == 3 ? unit(rng) - 0.5 : 0.0};
    const double len = dir.norm();
    Vec3 y = len > 0.0 ? base + dir * (0.05 / len) : base;
    if (!body->encloses(y)) y = base;
    if (!body->encloses(y)) throw GeometryError("manufactured_monopoles: no interior point found");
    const double mag = 0.5 + unit(rng);
    const double phase = 2.0 * kPi * unit(rng);
    mp.points.push_back(y);
    mp.strengths.push_back(std::polar(mag, phase));
  }
  return mp;
}

std::vector<Vec3> far_field_targets(int dim, const Vec3& center, double radius, int count) {
  if (count < 1 || !(radius > 0.0)) throw PreconditionError("far_field_targets: invalid count or radius");
  std::vector<Vec3> pts;
  if (dim == 2) {
    for (int i = 0; i < count; ++i) {
      const double a = 2.0 * kPi * i / count;
      pts.push_back(center + Vec3{std::cos(a), std::sin(a), 0.0} * radius);
    }
  } else {
    for (const auto& u : fibonacci_sphere(count)) pts.push_back(center + u * radius);
  }
  return pts;
}

ErrorMetrics compute_errors(const FieldModel& approx, const FieldModel& reference,
                            const std::vector<Vec3>& far_targets,
                            const std::vector<std::vector<Vec3>>& test_points) {
  ErrorMetrics e;
  if (!far_targets.empty()) {
    const ComplexVector u = approx.scattered(far_targets);
    const ComplexVector r = reference.scattered(far_targets);
    const double scale = r.cwiseAbs().maxCoeff();
    e.e_far = scale > 0.0 ? (u - r).cwiseAbs().maxCoeff() / scale : (u - r).cwiseAbs().maxCoeff();
  }
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t t = 0; t < test_points.size(); ++t) {
    const ComplexVector w = approx.local_incoming(t, test_points[t]);
    const ComplexVector r = reference.local_incoming(t, test_points[t]);
    if (r.size() == 0) continue;
    worst = std::max(worst, (w - r).cwiseAbs().maxCoeff());
    scale = std::max(scale, r.cwiseAbs().maxCoeff());
  }
  e.e_inc = scale > 0.0 ? worst / scale : worst;
  return e;
}

}  // namespace helmscat
