#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "helmscat/geometry2d.hpp"
#include "helmscat/geometry3d.hpp"
#include "helmscat/multibody.hpp"

namespace helmscat {

struct ShapeConfig {
  std::string kind;
  ContourParams contour;
  SurfaceParams surface;
  bool operator==(const ShapeConfig&) const = default;
};

struct ScattererConfig {
  ShapeConfig shape;
  Vec3 center;
  std::vector<double> rotation;  // one angle in 2D, three Euler angles in 3D
  DiscretizationSpec discretization;
  bool operator==(const ScattererConfig&) const = default;
};

enum class IncomingKind { plane_wave, monopoles, manufactured };

struct IncomingConfig {
  IncomingKind kind = IncomingKind::plane_wave;
  Vec3 direction{1.0, 0.0, 0.0};
  cplx amplitude{1.0, 0.0};
  std::vector<Vec3> points;
  std::vector<cplx> strengths;
  bool operator==(const IncomingConfig&) const = default;
};

enum class ReferenceKind { none, manufactured, self };

/// Self-reference runs the same geometry at a higher resolution; the
/// discretization overrides are keyed by shape kind.
struct ReferenceConfig {
  ReferenceKind kind = ReferenceKind::none;
  std::map<std::string, DiscretizationSpec> discretization;
  std::optional<double> eps;
  std::optional<double> gmres_tol;
  bool operator==(const ReferenceConfig&) const = default;
};

struct GridSpec {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  int nx = 0, ny = 0;
  bool operator==(const GridSpec&) const = default;
};

struct OutputConfig {
  bool condition_number = false;
  double far_radius = 10.0;
  int far_points = 0;  // 0: 64 in 2D, 128 in 3D
  int inc_points = 200;
  std::optional<GridSpec> grid;
  bool operator==(const OutputConfig&) const = default;
};

struct ExperimentConfig {
  std::string name;
  int dim = 2;
  double kappa = 1.0;
  double eps = 1e-10;
  double gmres_tol = 1e-10;
  int max_iter = 500;
  double rel_cutoff = kDefaultRelCutoff;
  double proxy_factor = kDefaultProxyFactor;
  int proxy_points = 0;
  std::vector<ScattererConfig> scatterers;
  IncomingConfig incoming;
  ReferenceConfig reference;
  OutputConfig outputs;
  std::uint64_t seed = 1;
  bool operator==(const ExperimentConfig&) const = default;
};

/// Strict JSON parsing: unknown keys, missing required keys and invalid
/// values raise ConfigError with every problem listed.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
/// Canonical JSON with every field written out.
std::string serialize_config(const ExperimentConfig& cfg);

/// "xmin,xmax,ymin,ymax,nx,ny".
GridSpec parse_grid_spec(const std::string& text);

std::shared_ptr<Body> make_body(const ScattererConfig& sc, int dim);
std::vector<std::shared_ptr<const Body>> make_bodies(const ExperimentConfig& cfg);
OperatorSettings operator_settings(const ExperimentConfig& cfg);
/// Plane wave or explicit monopoles; manufactured fields use the bodies.
IncomingField make_incoming(const ExperimentConfig& cfg, const std::vector<std::shared_ptr<const Body>>& bodies);

}  // namespace helmscat
