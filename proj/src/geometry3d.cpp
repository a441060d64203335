#include "helmscat/geometry3d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace helmscat {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

}  // namespace

std::string to_string(SurfaceKind kind) { return kind == SurfaceKind::ellipsoid ? "ellipsoid" : "torus"; }

SurfaceKind surface_kind_from_string(const std::string& name) {
  if (name == "ellipsoid") return SurfaceKind::ellipsoid;
  if (name == "torus") return SurfaceKind::torus;
  throw ConfigError("unknown 3D shape kind '" + name + "' (allowed: ellipsoid, torus)");
}

Rotation3 rotation_from_euler(double alpha, double beta, double gamma) {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  const double cg = std::cos(gamma), sg = std::sin(gamma);
  return {ca * cb * cg - sa * sg, -ca * cb * sg - sa * cg, ca * sb,
          sa * cb * cg + ca * sg, -sa * cb * sg + ca * cg, sa * sb,
          -sb * cg,               sb * sg,                 cb};
}

Surface3D::Surface3D(SurfaceKind kind, SurfaceParams params, Vec3 center, Rotation3 rotation)
    : kind_(kind), params_(params), center_(center), rotation_(rotation) {
  if (kind_ == SurfaceKind::ellipsoid) {
    if (!(params_.a > 0.0 && params_.b > 0.0 && params_.c > 0.0)) {
      throw GeometryError("ellipsoid: semi-axes must be positive");
    }
  } else if (!(params_.minor > 0.0 && params_.major > params_.minor)) {
    throw GeometryError("torus: need major radius > minor radius > 0");
  }
  // Orthogonality check on the supplied rotation.
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 3; ++k) dot += rotation_[3 * k + i] * rotation_[3 * k + j];
      if (std::abs(dot - (i == j ? 1.0 : 0.0)) > 1e-10) throw GeometryError("rotation matrix is not orthogonal");
    }
  }
}

Vec3 Surface3D::to_world(const Vec3& v) const {
  const auto& r = rotation_;
  return {r[0] * v.x + r[1] * v.y + r[2] * v.z, r[3] * v.x + r[4] * v.y + r[5] * v.z,
          r[6] * v.x + r[7] * v.y + r[8] * v.z};
}

Vec3 Surface3D::to_local(const Vec3& v) const {
  const auto& r = rotation_;
  return {r[0] * v.x + r[3] * v.y + r[6] * v.z, r[1] * v.x + r[4] * v.y + r[7] * v.z,
          r[2] * v.x + r[5] * v.y + r[8] * v.z};
}

Vec3 Surface3D::local_position(double u, double v) const {
  const auto& p = params_;
  if (kind_ == SurfaceKind::ellipsoid) {
    return {p.a * std::sin(v) * std::cos(u), p.b * std::sin(v) * std::sin(u), p.c * std::cos(v)};
  }
  const double ring = p.major + p.minor * std::cos(v);
  return {ring * std::cos(u), ring * std::sin(u), p.minor * std::sin(v)};
}

Vec3 Surface3D::local_du(double u, double v) const {
  const auto& p = params_;
  if (kind_ == SurfaceKind::ellipsoid) {
    return {-p.a * std::sin(v) * std::sin(u), p.b * std::sin(v) * std::cos(u), 0.0};
  }
  const double ring = p.major + p.minor * std::cos(v);
  return {-ring * std::sin(u), ring * std::cos(u), 0.0};
}

Vec3 Surface3D::local_dv(double u, double v) const {
  const auto& p = params_;
  if (kind_ == SurfaceKind::ellipsoid) {
    return {p.a * std::cos(v) * std::cos(u), p.b * std::cos(v) * std::sin(u), -p.c * std::sin(v)};
  }
  return {-p.minor * std::sin(v) * std::cos(u), -p.minor * std::sin(v) * std::sin(u), p.minor * std::cos(v)};
}

Vec3 Surface3D::position(double u, double v) const { return center_ + to_world(local_position(u, v)); }

Vec3 Surface3D::inward_normal(double u, double v) const {
  const auto& p = params_;
  Vec3 n;
  if (kind_ == SurfaceKind::ellipsoid) {
    const Vec3 x = local_position(u, v);
    n = Vec3{x.x / (p.a * p.a), x.y / (p.b * p.b), x.z / (p.c * p.c)} * -1.0;
  } else {
    n = Vec3{std::cos(v) * std::cos(u), std::cos(v) * std::sin(u), std::sin(v)} * -1.0;
  }
  const double len = n.norm();
  if (!(len > 0.0)) throw GeometryError("degenerate surface normal");
  return to_world(n / len);
}

double Surface3D::area_element(double u, double v) const { return local_du(u, v).cross(local_dv(u, v)).norm(); }

std::vector<std::array<double, 2>> Surface3D::parameter_grid(int nu, int nv, bool offset_u) const {
  std::vector<std::array<double, 2>> grid;
  grid.reserve(static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv));
  const double su = offset_u ? 0.5 : 0.0;
  for (int j = 0; j < nv; ++j) {
    const double v = kind_ == SurfaceKind::ellipsoid ? kPi * (j + 0.5) / nv : kTwoPi * j / nv;
    for (int i = 0; i < nu; ++i) grid.push_back({kTwoPi * (i + su) / nu, v});
  }
  return grid;
}

Discretization Surface3D::discretize_surface(int Nu, int Nv, double d) const {
  if (Nu < 2 || Nv < 2 || Nu % 2 != 0 || Nv % 2 != 0) {
    throw PreconditionError("discretize_surface: Nu and Nv must be even and >= 2");
  }
  if (!(d > 0.0) || !std::isfinite(d)) throw PreconditionError("discretize_surface: d must be positive");
  if (kind_ == SurfaceKind::torus && d >= params_.minor) {
    throw GeometryError("torus: MFS distance must be smaller than the minor radius");
  }
  Discretization disc;
  disc.dim = 3;
  const double dv = kind_ == SurfaceKind::ellipsoid ? kPi / Nv : kTwoPi / Nv;
  const double du = kTwoPi / Nu;
  for (const auto& uv : parameter_grid(Nu, Nv)) {
    disc.colloc.push_back(position(uv[0], uv[1]));
    disc.colloc_weights.push_back(area_element(uv[0], uv[1]) * du * dv);
    disc.panel_index.push_back(-1);
  }
  for (const auto& uv : parameter_grid(Nu / 2, Nv / 2)) {
    const Vec3 n = inward_normal(uv[0], uv[1]);
    disc.sources.push_back(position(uv[0], uv[1]) + n * d);
    disc.source_normals.push_back(n);
    disc.d_local.push_back(d);
  }
  for (std::size_t j = 0; j < disc.sources.size(); ++j) {
    if (!encloses(disc.sources[j])) {
      throw GeometryError("MFS source " + std::to_string(j) + " lies outside the " + to_string(kind_));
    }
  }
  require_separated(disc.sources, 1e-12, "MFS sources");
  require_separated(disc.colloc, 1e-12, "collocation points");
  return disc;
}

bool Surface3D::encloses(const Vec3& x) const {
  const Vec3 l = to_local(x - center_);
  const auto& p = params_;
  if (kind_ == SurfaceKind::ellipsoid) {
    return l.x * l.x / (p.a * p.a) + l.y * l.y / (p.b * p.b) + l.z * l.z / (p.c * p.c) < 1.0;
  }
  const double ring = std::hypot(l.x, l.y) - p.major;
  return ring * ring + l.z * l.z < p.minor * p.minor;
}

Vec3 Surface3D::interior_point() const {
  if (kind_ == SurfaceKind::ellipsoid) return center_;
  return center_ + to_world(Vec3{params_.major, 0.0, 0.0});
}

std::vector<Vec3> Surface3D::test_points(int count) const {
  if (count < 2) throw PreconditionError("test_points: count must be >= 2");
  const int nv = std::max(1, static_cast<int>(std::lround(std::sqrt(count / 2.0))));
  const int nu = std::max(1, count / nv);
  std::vector<Vec3> pts;
  for (int j = 0; j < nv; ++j) {
    const double v = kind_ == SurfaceKind::ellipsoid ? kPi * (j + 0.5) / nv : kTwoPi * (j + 0.5) / nv;
    for (int i = 0; i < nu; ++i) pts.push_back(position(kTwoPi * (i + 0.5) / nu, v));
  }
  return pts;
}

Discretization Surface3D::discretize(const DiscretizationSpec& spec) const {
  if (const auto* s = std::get_if<SurfaceSpec>(&spec)) return discretize_surface(s->Nu, s->Nv, s->d);
  throw PreconditionError("3D surfaces need a surface discretization");
}

std::string Surface3D::shape_key() const {
  char buf[512];
  const auto& p = params_;
  const auto& r = rotation_;
  std::snprintf(buf, sizeof buf,
                "%s[a=%.17g,b=%.17g,c=%.17g,R=%.17g,r=%.17g,rot=%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g]",
                to_string(kind_).c_str(), p.a, p.b, p.c, p.major, p.minor, r[0], r[1], r[2], r[3], r[4], r[5], r[6],
                r[7], r[8]);
  return buf;
}

std::shared_ptr<Body> Surface3D::moved_to(const Vec3& center) const {
  return std::make_shared<Surface3D>(kind_, params_, center, rotation_);
}

}  // namespace helmscat
