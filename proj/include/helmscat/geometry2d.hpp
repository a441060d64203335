#pragma once

#include <memory>
#include <string>
#include <vector>

#include "helmscat/geometry.hpp"

namespace helmscat {

enum class ContourKind { circle, ellipse, starfish, teardrop, cshape, rod };

std::string to_string(ContourKind kind);
ContourKind contour_kind_from_string(const std::string& name);

/// Shape parameters; each kind reads only its own fields.
struct ContourParams {
  double radius = 1.0;                // circle
  double semi_a = 1.0, semi_b = 0.5;  // ellipse
  double outer = 1.0, inner = 0.6;    // cshape arcs
  double opening = kPi / 6.0;         // cshape opening half-angle, facing +x
  double length = 1.6, cap = 0.2;     // rod straight segment and cap radius
  bool operator==(const ContourParams&) const = default;
};

struct ContourPoint {
  Vec3 position;
  Vec3 inward_normal;
};

/// Closed, counterclockwise planar curve parametrized on t in [0, 2 pi).
///
/// Piecewise shapes (cshape, rod) split the parameter range into segments
/// in fixed proportions; inside each segment the map is affine in arc
/// angle or arclength.
class Contour2D : public Body {
 public:
  Contour2D(ContourKind kind, ContourParams params = {}, Vec3 center = {}, double rotation = 0.0);

  ContourKind kind() const { return kind_; }
  const ContourParams& params() const { return params_; }
  double rotation() const { return rotation_; }

  Vec3 position(double t) const;
  /// dx/dt in world coordinates.
  Vec3 derivative(double t) const;
  /// Throws GeometryError at a corner parameter.
  ContourPoint eval(double t) const;
  double speed(double t) const { return derivative(t).norm(); }

  /// Parameters with a tangent discontinuity.
  std::vector<double> corner_params() const;
  /// Corners plus joints between segments; panels are refined around these.
  std::vector<double> singular_params() const;
  /// Fraction of the parameter range (and of the base panels) per segment.
  std::vector<double> segment_fractions() const;

  Discretization discretize_smooth(int N, double d) const;
  Discretization discretize_panels(int m_panels, int p_panel, int n_refine, double d) const;

  int dim() const override { return 2; }
  Vec3 center() const override { return center_; }
  bool encloses(const Vec3& x) const override;
  Vec3 interior_point() const override;
  std::vector<Vec3> test_points(int count) const override;
  Discretization discretize(const DiscretizationSpec& spec) const override;
  std::string shape_key() const override;
  std::shared_ptr<Body> moved_to(const Vec3& center) const override;

 private:
  Vec3 local_position(double t) const;
  Vec3 local_derivative(double t) const;
  Vec3 to_world(const Vec3& v) const;
  void check_sources(const Discretization& disc) const;

  ContourKind kind_;
  ContourParams params_;
  Vec3 center_;
  double rotation_;
  std::vector<double> breaks_;       // segment boundaries in t, including 0 and 2 pi
  std::vector<Vec3> polygon_;        // dense boundary polygon for interiority
};

/// Number of base panels per segment by largest-remainder rounding of
/// m * fractions; ties go to the earlier segment.
std::vector<int> allocate_panels(int m, const std::vector<double>& fractions);

/// Even-odd ray-crossing test against a closed polygon.
bool point_in_polygon(const std::vector<Vec3>& polygon, const Vec3& x);

}  // namespace helmscat
