#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "helmscat/scatmat.hpp"

namespace helmscat {

/// v(x) = amplitude * exp(i kappa direction . x), direction a unit vector.
struct PlaneWave {
  Vec3 direction{1.0, 0.0, 0.0};
  cplx amplitude{1.0, 0.0};
};

/// v(x) = sum_j strengths[j] phi(x - points[j]).
struct Monopoles {
  std::vector<Vec3> points;
  std::vector<cplx> strengths;
};

/// Global incoming field v; boundary data is u = v on every scatterer.
using IncomingField = std::variant<PlaneWave, Monopoles>;

ComplexVector evaluate_incoming(const IncomingField& field, const Kernel& kernel, const std::vector<Vec3>& pts);

/// Interaction matrices above this many unknowns are applied block by block
/// without being stored.
inline constexpr Index kDenseInteractionLimit = 6000;

/// Compressed multibody system (I + S G) q = S v over skeleton unknowns.
class GlobalProblem {
 public:
  GlobalProblem(Kernel kernel, std::vector<ScattererOperator> scatterers,
                Index dense_limit = kDenseInteractionLimit);

  const Kernel& kernel() const { return kernel_; }
  std::size_t count() const { return ops_.size(); }
  const ScattererOperator& scatterer(std::size_t t) const { return ops_.at(t); }
  Index unknowns() const { return offsets_.back(); }
  Index offset(std::size_t t) const { return offsets_.at(t); }
  Index block_size(std::size_t t) const { return offsets_.at(t + 1) - offsets_.at(t); }
  const std::vector<Vec3>& skeleton_points() const { return skel_points_; }
  /// Mean of the scatterer centers.
  Vec3 centroid() const;
  bool interaction_stored() const { return stored_; }

  /// G q: fields of other scatterers' skeleton sources at each skeleton point.
  ComplexVector interact(const ComplexVector& q) const;
  /// Rows of G q belonging to scatterer tau.
  ComplexVector interact_on(std::size_t tau, const ComplexVector& q) const;
  /// q + S (G q).
  ComplexVector apply(const ComplexVector& q) const;
  /// Concatenated effective charges Z^* C pinv(A) v_tau.
  ComplexVector rhs(const IncomingField& field) const;
  /// Explicit I + S G.
  ComplexMatrix dense_system() const;
  /// 2-norm condition number of I + S G.
  double condition_number() const;

 private:
  ComplexMatrix interaction_block(std::size_t tau, std::size_t sigma) const;

  Kernel kernel_;
  std::vector<ScattererOperator> ops_;
  std::vector<Index> offsets_;
  std::vector<Vec3> skel_points_;
  bool stored_ = false;
  ComplexMatrix g_;
};

struct SolveReport {
  ComplexVector q_hat;
  int iterations = 0;
  int matvecs = 0;
  std::vector<double> residual_history;
  double final_residual = 0.0;
  bool converged = false;
  double t_solve = 0.0;   // seconds in GMRES
  double t_matvec = 0.0;  // seconds per operator application
};

SolveReport solve_multibody(const GlobalProblem& gp, const IncomingField& field, double tol, int max_iter);

enum class Representation { physical, mfs };

/// Full strengths on scatterer tau from the solved skeleton sources:
/// mfs:      pinv(A) (v_tau - U (G q)_tau)
/// physical: C times the above
ComplexVector reconstruct_full(const GlobalProblem& gp, std::size_t tau, const ComplexVector& q_hat,
                               const IncomingField& field, Representation where);

/// Scattered and per-scatterer incoming fields of a solved or exact problem.
class FieldModel {
 public:
  virtual ~FieldModel() = default;
  /// Total scattered field u at points of the exterior domain.
  virtual ComplexVector scattered(const std::vector<Vec3>& targets) const = 0;
  /// w_tau = v - sum over other scatterers of their scattered fields.
  virtual ComplexVector local_incoming(std::size_t tau, const std::vector<Vec3>& pts) const = 0;
};

class Solution : public FieldModel {
 public:
  Solution(std::shared_ptr<const GlobalProblem> gp, IncomingField field, ComplexVector q_hat);

  const GlobalProblem& problem() const { return *gp_; }
  const IncomingField& field() const { return field_; }
  const ComplexVector& q_hat() const { return q_hat_; }
  const ComplexVector& mfs_strengths(std::size_t t) const { return q_mfs_.at(t); }
  ComplexVector physical_strengths(std::size_t t) const;

  /// Field of one scatterer: skeleton sources outside its proxy, MFS
  /// sources inside.
  ComplexVector scattered_by(std::size_t sigma, const std::vector<Vec3>& targets) const;
  ComplexVector scattered(const std::vector<Vec3>& targets) const override;
  ComplexVector local_incoming(std::size_t tau, const std::vector<Vec3>& pts) const override;

 private:
  std::shared_ptr<const GlobalProblem> gp_;
  IncomingField field_;
  ComplexVector q_hat_;
  std::vector<ComplexVector> q_mfs_;
};

/// Exact solution when every monopole of v lies inside some scatterer: the
/// scattered field equals v, and each scatterer radiates its own monopoles.
class ManufacturedField : public FieldModel {
 public:
  ManufacturedField(Kernel kernel, const std::vector<std::shared_ptr<const Body>>& bodies, Monopoles sources);

  const Monopoles& sources() const { return sources_; }
  ComplexVector scattered(const std::vector<Vec3>& targets) const override;
  ComplexVector local_incoming(std::size_t tau, const std::vector<Vec3>& pts) const override;

 private:
  Kernel kernel_;
  Monopoles sources_;
  std::vector<std::size_t> owner_;
};

/// One monopole per body near its interior point, with seeded complex strength.
Monopoles manufactured_monopoles(const std::vector<std::shared_ptr<const Body>>& bodies, std::uint64_t seed);

/// Far-field targets: evenly spaced on a circle (2D) or Fibonacci points on a
/// sphere (3D).
std::vector<Vec3> far_field_targets(int dim, const Vec3& center, double radius, int count);

struct ErrorMetrics {
  double e_far = 0.0;
  double e_inc = 0.0;
};

/// Maximum errors relative to the largest reference magnitude over the
/// respective point sets.
ErrorMetrics compute_errors(const FieldModel& approx, const FieldModel& reference,
                            const std::vector<Vec3>& far_targets,
                            const std::vector<std::vector<Vec3>>& test_points);

}  // namespace helmscat
