#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "helmscat/geometry.hpp"

namespace helmscat {

enum class SurfaceKind { ellipsoid, torus };

std::string to_string(SurfaceKind kind);
SurfaceKind surface_kind_from_string(const std::string& name);

struct SurfaceParams {
  double a = 1.0, b = 0.7, c = 0.5;   // ellipsoid semi-axes
  double major = 1.0, minor = 0.4;   // torus radii
  bool operator==(const SurfaceParams&) const = default;
};

/// Row-major 3x3 rotation matrix.
using Rotation3 = std::array<double, 9>;

inline constexpr Rotation3 kIdentityRotation = {1, 0, 0, 0, 1, 0, 0, 0, 1};

/// Rotation R = Rz(alpha) Ry(beta) Rz(gamma).
Rotation3 rotation_from_euler(double alpha, double beta, double gamma);

/// Smooth closed surface on a (u, v) parameter rectangle.
///
///   ellipsoid: (a sin v cos u, b sin v sin u, c cos v), u in [0, 2 pi),
///              v in (0, pi) sampled at half-step offsets
///   torus:     ((R + r cos v) cos u, (R + r cos v) sin u, r sin v)
class Surface3D : public Body {
 public:
  Surface3D(SurfaceKind kind, SurfaceParams params = {}, Vec3 center = {},
            Rotation3 rotation = kIdentityRotation);

  SurfaceKind kind() const { return kind_; }
  const SurfaceParams& params() const { return params_; }

  Vec3 position(double u, double v) const;
  Vec3 inward_normal(double u, double v) const;
  /// |x_u x x_v|.
  double area_element(double u, double v) const;
  /// Grid of parameter values; v is offset by half a step for ellipsoids.
  std::vector<std::array<double, 2>> parameter_grid(int nu, int nv, bool offset_u = false) const;

  Discretization discretize_surface(int Nu, int Nv, double d) const;

  int dim() const override { return 3; }
  Vec3 center() const override { return center_; }
  bool encloses(const Vec3& x) const override;
  Vec3 interior_point() const override;
  std::vector<Vec3> test_points(int count) const override;
  Discretization discretize(const DiscretizationSpec& spec) const override;
  std::string shape_key() const override;
  std::shared_ptr<Body> moved_to(const Vec3& center) const override;

 private:
  Vec3 local_position(double u, double v) const;
  Vec3 local_du(double u, double v) const;
  Vec3 local_dv(double u, double v) const;
  Vec3 to_world(const Vec3& v) const;
  Vec3 to_local(const Vec3& v) const;

  SurfaceKind kind_;
  SurfaceParams params_;
  Vec3 center_;
  Rotation3 rotation_;
};

}  // namespace helmscat
