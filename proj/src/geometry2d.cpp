#include "helmscat/geometry2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace helmscat {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr int kPolygonSamples = 4096;
constexpr int kClusterLevels = 60;
constexpr double kMinSeparation = 1e-12;
constexpr double kMinPanelLength = 1e-14;

Vec3 unit(double a) { return {std::cos(a), std::sin(a), 0.0}; }
Vec3 unit_perp(double a) { return {-std::sin(a), std::cos(a), 0.0}; }

double wrap(double t) {
  double w = std::fmod(t, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

}  // namespace

std::string to_string(ContourKind kind) {
  switch (kind) {
    case ContourKind::circle: return "circle";
    case ContourKind::ellipse: return "ellipse";
    case ContourKind::starfish: return "starfish";
    case ContourKind::teardrop: return "teardrop";
    case ContourKind::cshape: return "cshape";
    case ContourKind::rod: return "rod";
  }
  return "unknown";
}

ContourKind contour_kind_from_string(const std::string& name) {
  for (auto k : {ContourKind::circle, ContourKind::ellipse, ContourKind::starfish, ContourKind::teardrop,
                 ContourKind::cshape, ContourKind::rod}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown 2D shape kind '" + name +
                    "' (allowed: circle, ellipse, starfish, teardrop, cshape, rod)");
}

std::vector<int> allocate_panels(int m, const std::vector<double>& fractions) {
  const double total = std::accumulate(fractions.begin(), fractions.end(), 0.0);
  std::vector<int> counts(fractions.size());
  std::vector<double> rem(fractions.size());
  int assigned = 0;
  for (std::size_t s = 0; s < fractions.size(); ++s) {
    const double exact = m * fractions[s] / total;
    counts[s] = static_cast<int>(std::floor(exact + 1e-12));
    rem[s] = exact - counts[s];
    assigned += counts[s];
  }
  std::vector<std::size_t> order(fractions.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rem[a] > rem[b] + 1e-12; });
  for (std::size_t i = 0; assigned < m; ++i, ++assigned) ++counts[order[i % order.size()]];
  return counts;
}

bool point_in_polygon(const std::vector<Vec3>& polygon, const Vec3& x) {
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec3& a = polygon[i];
    const Vec3& b = polygon[j];
    if ((a.y > x.y) != (b.y > x.y)) {
      const double cross_x = a.x + (x.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (x.x < cross_x) inside = !inside;
    }
  }
  return inside;
}

Contour2D::Contour2D(ContourKind kind, ContourParams params, Vec3 center, double rotation)
    : kind_(kind), params_(params), center_(center), rotation_(rotation) {
  center_.z = 0.0;
  const auto& p = params_;
  switch (kind_) {
    case ContourKind::circle:
      if (!(p.radius > 0.0)) throw GeometryError("circle: radius must be positive");
      break;
    case ContourKind::ellipse:
      if (!(p.semi_a > 0.0 && p.semi_b > 0.0)) throw GeometryError("ellipse: semi-axes must be positive");
      break;
    case ContourKind::cshape:
      if (!(p.outer > p.inner && p.inner > 0.0)) throw GeometryError("cshape: need outer > inner > 0");
      if (!(p.opening > 0.0 && p.opening < kPi / 2.0)) {
        throw GeometryError("cshape: opening half-angle must lie in (0, pi/2)");
      }
      if ((p.outer - p.inner) / 2.0 >= (p.outer + p.inner) / 2.0 * std::sin(p.opening)) {
        throw GeometryError("cshape: caps overlap across the opening");
      }
      break;
    case ContourKind::rod:
      if (!(p.length > 0.0 && p.cap > 0.0)) throw GeometryError("rod: length and cap must be positive");
      break;
    default:
      break;
  }
  if (!std::isfinite(rotation_)) throw GeometryError("contour rotation must be finite");

  breaks_ = {0.0};
  double acc = 0.0;
  for (double f : segment_fractions()) {
    acc += f;
    breaks_.push_back(kTwoPi * acc);
  }
  breaks_.back() = kTwoPi;

  std::vector<double> ts;
  ts.reserve(kPolygonSamples + 2 * kClusterLevels * 4);
  for (int i = 0; i < kPolygonSamples; ++i) ts.push_back(kTwoPi * i / kPolygonSamples);
  for (double tc : singular_params()) {
    for (int j = 0; j < kClusterLevels; ++j) {
      const double h = kTwoPi / kPolygonSamples * std::ldexp(1.0, -j);
      ts.push_back(wrap(tc + h));
      ts.push_back(wrap(tc - h));
    }
    ts.push_back(wrap(tc));
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  polygon_.reserve(ts.size());
  for (double t : ts) polygon_.push_back(position(t));
}

std::vector<double> Contour2D::segment_fractions() const {
  switch (kind_) {
    case ContourKind::cshape: return {2.0 / 5.0, 3.0 / 20.0, 3.0 / 10.0, 3.0 / 20.0};
    case ContourKind::rod: return {4.0 / 11.0, 3.0 / 22.0, 4.0 / 11.0, 3.0 / 22.0};
    default: return {1.0};
  }
}

std::vector<double> Contour2D::corner_params() const {
  if (kind_ == ContourKind::teardrop) return {0.0};
  return {};
}

std::vector<double> Contour2D::singular_params() const {
  if (kind_ == ContourKind::teardrop) return {0.0};
  if (kind_ == ContourKind::cshape || kind_ == ContourKind::rod) {
    return std::vector<double>(breaks_.begin(), breaks_.end() - 1);
  }
  return {};
}

Vec3 Contour2D::local_position(double t) const {
  t = wrap(t);
  const auto& p = params_;
  switch (kind_) {
    case ContourKind::circle: return unit(t) * p.radius;
    case ContourKind::ellipse: return {p.semi_a * std::cos(t), p.semi_b * std::sin(t), 0.0};
    case ContourKind::starfish: {
      const double f = 81.0 / 101.0 - 20.0 / 101.0 * std::cos(5.0 * t);
      return unit(t) * f;
    }
    case ContourKind::teardrop:
      return {2.0 / (kPi * kPi) * t * t - 4.0 / kPi * t + 1.0,
              2.0 / (kPi * kPi * kPi) * t * t * t - 6.0 / (kPi * kPi) * t * t + 4.0 / kPi * t, 0.0};
    default: break;
  }
  std::size_t s = static_cast<std::size_t>(std::upper_bound(breaks_.begin(), breaks_.end(), t) - breaks_.begin()) - 1;
  s = std::min<std::size_t>(s, 3);
  const double u = (t - breaks_[s]) / (breaks_[s + 1] - breaks_[s]);
  if (kind_ == ContourKind::cshape) {
    const double a = p.opening;
    const double rc = (p.outer - p.inner) / 2.0;
    const double rm = (p.outer + p.inner) / 2.0;
    switch (s) {
      case 0: return unit(a + u * (kTwoPi - 2.0 * a)) * p.outer;
      case 1: {
        const double phi = u * kPi;
        return unit(-a) * rm + (unit(-a) * std::cos(phi) + unit_perp(-a) * std::sin(phi)) * rc;
      }
      case 2: return unit(kTwoPi - a - u * (kTwoPi - 2.0 * a)) * p.inner;
      default: {
        const double phi = kPi + u * kPi;
        return unit(a) * rm + (unit(a) * std::cos(phi) + unit_perp(a) * std::sin(phi)) * rc;
      }
    }
  }
  const double half = p.length / 2.0;
  switch (s) {
    case 0: return {-half + u * p.length, -p.cap, 0.0};
    case 1: return Vec3{half, 0.0, 0.0} + unit(-kPi / 2.0 + u * kPi) * p.cap;
    case 2: return {half - u * p.length, p.cap, 0.0};
    default: return Vec3{-half, 0.0, 0.0} + unit(kPi / 2.0 + u * kPi) * p.cap;
  }
}

Vec3 Contour2D::local_derivative(double t) const {
  t = wrap(t);
  const auto& p = params_;
  switch (kind_) {
    case ContourKind::circle: return unit_perp(t) * p.radius;
    case ContourKind::ellipse: return {-p.semi_a * std::sin(t), p.semi_b * std::cos(t), 0.0};
    case ContourKind::starfish: {
      const double f = 81.0 / 101.0 - 20.0 / 101.0 * std::cos(5.0 * t);
      const double fp = 100.0 / 101.0 * std::sin(5.0 * t);
      return unit(t) * fp + unit_perp(t) * f;
    }
    case ContourKind::teardrop:
      return {4.0 / (kPi * kPi) * t - 4.0 / kPi,
              6.0 / (kPi * kPi * kPi) * t * t - 12.0 / (kPi * kPi) * t + 4.0 / kPi, 0.0};
    default: break;
  }
  std::size_t s = static_cast<std::size_t>(std::upper_bound(breaks_.begin(), breaks_.end(), t) - breaks_.begin()) - 1;
  s = std::min<std::size_t>(s, 3);
  const double dudt = 1.0 / (breaks_[s + 1] - breaks_[s]);
  const double u = (t - breaks_[s]) * dudt;
  if (kind_ == ContourKind::cshape) {
    const double a = p.opening;
    const double rc = (p.outer - p.inner) / 2.0;
    const double sweep = kTwoPi - 2.0 * a;
    switch (s) {
      case 0: return unit_perp(a + u * sweep) * (p.outer * sweep * dudt);
      case 1: {
        const double phi = u * kPi;
        return (unit(-a) * -std::sin(phi) + unit_perp(-a) * std::cos(phi)) * (rc * kPi * dudt);
      }
      case 2: return unit_perp(kTwoPi - a - u * sweep) * (-p.inner * sweep * dudt);
      default: {
        const double phi = kPi + u * kPi;
        return (unit(a) * -std::sin(phi) + unit_perp(a) * std::cos(phi)) * (rc * kPi * dudt);
      }
    }
  }
  switch (s) {
    case 0: return {p.length * dudt, 0.0, 0.0};
    case 1: return unit_perp(-kPi / 2.0 + u * kPi) * (p.cap * kPi * dudt);
    case 2: return {-p.length * dudt, 0.0, 0.0};
    default: return unit_perp(kPi / 2.0 + u * kPi) * (p.cap * kPi * dudt);
  }
}

Vec3 Contour2D::to_world(const Vec3& v) const {
  const double c = std::cos(rotation_);
  const double s = std::sin(rotation_);
  return {c * v.x - s * v.y, s * v.x + c * v.y, 0.0};
}

Vec3 Contour2D::position(double t) const { return center_ + to_world(local_position(t)); }

Vec3 Contour2D::derivative(double t) const { return to_world(local_derivative(t)); }

ContourPoint Contour2D::eval(double t) const {
  for (double tc : corner_params()) {
    const double gap = std::abs(wrap(t - tc + kPi) - kPi);
    if (gap < 1e-15) throw GeometryError("inward normal requested at a corner of the " + to_string(kind_));
  }
  const Vec3 dx = derivative(t);
  const double speed = dx.norm();
  if (!(speed > 0.0)) throw GeometryError("degenerate tangent on the " + to_string(kind_));
  return {position(t), Vec3{-dx.y, dx.x, 0.0} / speed};
}

bool Contour2D::encloses(const Vec3& x) const { return point_in_polygon(polygon_, x); }

Vec3 Contour2D::interior_point() const {
  if (kind_ == ContourKind::cshape) {
    return center_ + to_world(Vec3{-(params_.outer + params_.inner) / 2.0, 0.0, 0.0});
  }
  return center_;
}

std::vector<Vec3> Contour2D::test_points(int count) const {
  if (count < 1) throw PreconditionError("test_points: count must be positive");
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) pts.push_back(position(kTwoPi * (i + 0.5) / count));
  return pts;
}

void Contour2D::check_sources(const Discretization& disc) const {
  for (std::size_t j = 0; j < disc.sources.size(); ++j) {
    if (!encloses(disc.sources[j])) {
      throw GeometryError("MFS source " + std::to_string(j) + " lies outside the " + to_string(kind_) +
                          " (MFS distance too large)");
    }
  }
  require_separated(disc.sources, kMinSeparation, "MFS sources");
  require_separated(disc.colloc, kMinSeparation, "collocation points");
}

Discretization Contour2D::discretize_smooth(int N, double d) const {
  if (N < 4 || N % 2 != 0) throw PreconditionError("discretize_smooth: N must be even and >= 4");
  if (!(d > 0.0) || !std::isfinite(d)) throw PreconditionError("discretize_smooth: d must be positive");
  Discretization disc;
  disc.dim = 2;
  disc.corner_params = corner_params();
  for (int i = 0; i < N; ++i) {
    const double t = kTwoPi * i / N;
    disc.colloc.push_back(position(t));
    disc.colloc_params.push_back(t);
    disc.colloc_weights.push_back(kTwoPi / N * speed(t));
    disc.panel_index.push_back(-1);
  }
  for (int j = 0; j < N / 2; ++j) {
    const ContourPoint cp = eval(2.0 * kTwoPi * j / N);
    disc.sources.push_back(cp.position + cp.inward_normal * d);
    disc.source_normals.push_back(cp.inward_normal);
    disc.d_local.push_back(d);
  }
  check_sources(disc);
  return disc;
}

Discretization Contour2D::discretize_panels(int m_panels, int p_panel, int n_refine, double d) const {
  if (m_panels < 2) throw PreconditionError("discretize_panels: need at least 2 base panels");
  if (p_panel < 2 || p_panel % 2 != 0) throw PreconditionError("discretize_panels: p_panel must be even");
  if (n_refine < 0) throw PreconditionError("discretize_panels: n_refine must be >= 0");
  if (!(d > 0.0) || !std::isfinite(d)) throw PreconditionError("discretize_panels: d must be positive");

  const auto singular = singular_params();
  auto is_singular = [&](double t) {
    for (double tc : singular) {
      if (std::abs(wrap(t - tc + kPi) - kPi) < 1e-13) return true;
    }
    return false;
  };

  const auto fractions = segment_fractions();
  const auto counts = allocate_panels(m_panels, fractions);
  std::vector<double> breaks;
  for (std::size_t s = 0; s < counts.size(); ++s) {
    if (counts[s] < 1) throw PreconditionError("discretize_panels: a segment received no panels");
    const double a = breaks_[s];
    const double b = breaks_[s + 1];
    for (int k = 0; k < counts[s]; ++k) {
      const double lo = a + (b - a) * k / counts[s];
      const double hi = a + (b - a) * (k + 1) / counts[s];
      const bool left = is_singular(lo);
      const bool right = is_singular(hi);
      if (n_refine > 0 && left && right) {
        throw PreconditionError("discretize_panels: a panel touches singular points at both ends");
      }
      const double len = hi - lo;
      if (n_refine > 0 && len * std::ldexp(1.0, -n_refine) < kMinPanelLength) {
        throw GeometryError("discretize_panels: refined panels collapse below 1e-14");
      }
      breaks.push_back(lo);
      if (n_refine > 0 && left) {
        for (int j = n_refine; j >= 1; --j) breaks.push_back(lo + len * std::ldexp(1.0, -j));
      } else if (n_refine > 0 && right) {
        for (int j = 1; j <= n_refine; ++j) breaks.push_back(hi - len * std::ldexp(1.0, -j));
      }
    }
  }
  breaks.push_back(kTwoPi);
  std::sort(breaks.begin(), breaks.end());

  const GaussLegendre fine = gauss_legendre(p_panel);
  const GaussLegendre coarse = gauss_legendre(p_panel / 2);
  Discretization disc;
  disc.dim = 2;
  disc.corner_params = corner_params();
  disc.panel_breaks = breaks;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double lo = breaks[k];
    const double hi = breaks[k + 1];
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double arclength = 0.0;
    for (int i = 0; i < p_panel; ++i) {
      const double t = mid + half * fine.nodes[static_cast<std::size_t>(i)];
      const double w = half * fine.weights[static_cast<std::size_t>(i)] * speed(t);
      arclength += w;
      disc.colloc.push_back(position(t));
      disc.colloc_params.push_back(t);
      disc.colloc_weights.push_back(w);
      disc.panel_index.push_back(static_cast<int>(k));
    }
    const double d_panel = std::min(d, 0.5 * arclength);
    for (int j = 0; j < p_panel / 2; ++j) {
      const ContourPoint cp = eval(mid + half * coarse.nodes[static_cast<std::size_t>(j)]);
      disc.sources.push_back(cp.position + cp.inward_normal * d_panel);
      disc.source_normals.push_back(cp.inward_normal);
      disc.d_local.push_back(d_panel);
    }
  }
  check_sources(disc);
  return disc;
}

Discretization Contour2D::discretize(const DiscretizationSpec& spec) const {
  if (const auto* s = std::get_if<SmoothSpec>(&spec)) return discretize_smooth(s->N, s->d);
  if (const auto* p = std::get_if<PanelSpec>(&spec)) return discretize_panels(p->m, p->p, p->n_refine, p->d);
  throw PreconditionError("surface discretization requested for a 2D contour");
}

std::string Contour2D::shape_key() const {
  char buf[256];
  const auto& p = params_;
  std::snprintf(buf, sizeof buf, "%s[r=%.17g,a=%.17g,b=%.17g,o=%.17g,i=%.17g,al=%.17g,l=%.17g,c=%.17g,rot=%.17g]",
                to_string(kind_).c_str(), p.radius, p.semi_a, p.semi_b, p.outer, p.inner, p.opening, p.length,
                p.cap, rotation_);
  return buf;
}

std::shared_ptr<Body> Contour2D::moved_to(const Vec3& center) const {
  return std::make_shared<Contour2D>(kind_, params_, center, rotation_);
}

}  // namespace helmscat
