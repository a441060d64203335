#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "helmscat/types.hpp"

namespace helmscat {

/// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

/// Equidistant-in-parameter collocation, n = N/2 sources.
struct SmoothSpec {
  int N = 0;
  double d = 0.0;
  bool operator==(const SmoothSpec&) const = default;
};

/// Gauss-Legendre panels with dyadic refinement at geometric singularities.
struct PanelSpec {
  int m = 0;         // base panels, before refinement
  int p = 16;        // collocation nodes per panel
  int n_refine = 0;  // dyadic levels on each side of a singular parameter
  double d = 0.0;
  bool operator==(const PanelSpec&) const = default;
};

/// Tensor grid on a parametrized surface, n = N/4 sources.
struct SurfaceSpec {
  int Nu = 0;
  int Nv = 0;
  double d = 0.0;
  bool operator==(const SurfaceSpec&) const = default;
};

using DiscretizationSpec = std::variant<SmoothSpec, PanelSpec, SurfaceSpec>;

std::string to_string(const DiscretizationSpec& spec);
double mfs_distance(const DiscretizationSpec& spec);

/// Collocation points on the boundary and MFS sources inside a scatterer.
struct Discretization {
  int dim = 2;
  std::vector<Vec3> colloc;
  std::vector<double> colloc_params;   // contour parameter (2D) or empty
  std::vector<double> colloc_weights;  // arclength / area quadrature weights
  std::vector<int> panel_index;        // -1 for equidistant discretizations
  std::vector<Vec3> sources;
  std::vector<Vec3> source_normals;    // inward unit normals at the source parameters
  std::vector<double> d_local;         // per-source offset from the boundary
  std::vector<double> corner_params;   // parameters where the normal is undefined
  std::vector<double> panel_breaks;    // panel endpoints in parameter, panels only

  Index m() const { return static_cast<Index>(colloc.size()); }
  Index n() const { return static_cast<Index>(sources.size()); }
  Discretization translated(const Vec3& shift) const;
};

/// A closed scatterer: a planar contour or a surface in R^3.
class Body {
 public:
  virtual ~Body() = default;

  virtual int dim() const = 0;
  virtual Vec3 center() const = 0;
  /// Strictly inside the region bounded by the body.
  virtual bool encloses(const Vec3& x) const = 0;
  /// A point well inside the body, used for manufactured solutions.
  virtual Vec3 interior_point() const = 0;
  /// Boundary points uniform in parameter and offset by half a step.
  virtual std::vector<Vec3> test_points(int count) const = 0;
  virtual Discretization discretize(const DiscretizationSpec& spec) const = 0;
  /// Identifies shape, size and orientation; position is excluded.
  virtual std::string shape_key() const = 0;
  virtual std::shared_ptr<Body> moved_to(const Vec3& center) const = 0;
};

/// Circle (2D) or sphere (3D) of points enclosing one scatterer.
struct ProxySurface {
  int dim = 2;
  std::vector<Vec3> points;
  Vec3 center;
  double radius = 0.0;

  bool contains(const Vec3& x) const { return distance(x, center) < radius; }
  Index size() const { return static_cast<Index>(points.size()); }
};

/// Arclength- (or area-) weighted centroid of the collocation points.
Vec3 weighted_centroid(const Discretization& disc);

/// Proxy circle: radius = radius_factor * max |x_i - center|, points evenly
/// spaced in angle starting at angle 0.
ProxySurface build_proxy_circle(const Discretization& disc, double radius_factor, int p_count);

/// Proxy sphere with Fibonacci-spiral points (at least 32).
ProxySurface build_proxy_sphere(const Discretization& disc, double radius_factor, int p_count);

/// Dimension-dispatching proxy builder; p_count <= 0 selects m + 1 points.
ProxySurface build_proxy(const Discretization& disc, double radius_factor, int p_count);

/// Quasi-uniform points on the unit sphere.
std::vector<Vec3> fibonacci_sphere(int count);

/// Throws GeometryError if two points of the set are closer than min_dist.
void require_separated(const std::vector<Vec3>& pts, double min_dist, const char* what);

inline constexpr double kDefaultProxyFactor = 2.7;

}  // namespace helmscat
