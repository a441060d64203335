#include "helmscat/geometry.hpp"

#include <cstdio>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace helmscat {

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw PreconditionError("gauss_legendre: n must be >= 1");
  GaussLegendre rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

std::string to_string(const DiscretizationSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  if (const auto* s = std::get_if<SmoothSpec>(&spec)) {
    os << "smooth(N=" << s->N << ",d=" << s->d << ")";
  } else if (const auto* p = std::get_if<PanelSpec>(&spec)) {
    os << "panels(m=" << p->m << ",p=" << p->p << ",n_refine=" << p->n_refine << ",d=" << p->d << ")";
  } else {
    const auto& g = std::get<SurfaceSpec>(spec);
    os << "surface(Nu=" << g.Nu << ",Nv=" << g.Nv << ",d=" << g.d << ")";
  }
  return os.str();
}

double mfs_distance(const DiscretizationSpec& spec) {
  return std::visit([](const auto& s) { return s.d; }, spec);
}

Discretization Discretization::translated(const Vec3& shift) const {
  Discretization out = *this;
  for (auto& x : out.colloc) x += shift;
  for (auto& y : out.sources) y += shift;
  return out;
}

Vec3 weighted_centroid(const Discretization& disc) {
  if (disc.colloc.empty()) throw PreconditionError("weighted_centroid: empty discretization");
  Vec3 acc;
  double total = 0.0;
  const bool weighted = disc.colloc_weights.size() == disc.colloc.size();
  for (std::size_t i = 0; i < disc.colloc.size(); ++i) {
    const double w = weighted ? disc.colloc_weights[i] : 1.0;
    acc += disc.colloc[i] * w;
    total += w;
  }
  return acc / total;
}

namespace {

double max_distance(const std::vector<Vec3>& pts, const Vec3& c) {
  double r = 0.0;
  for (const auto& x : pts) r = std::max(r, distance(x, c));
  return r;
}

void check_factor(double radius_factor) {
  if (!(radius_factor > 1.0) || !std::isfinite(radius_factor)) {
    throw PreconditionError("proxy radius_factor must exceed 1");
  }
}

}  // namespace

ProxySurface build_proxy_circle(const Discretization& disc, double radius_factor, int p_count) {
  check_factor(radius_factor);
  if (p_count < 5) throw PreconditionError("build_proxy_circle: p_count must be >= 5");
  ProxySurface proxy;
  proxy.dim = 2;
  proxy.center = weighted_centroid(disc);
  proxy.radius = radius_factor * max_distance(disc.colloc, proxy.center);
  proxy.points.reserve(static_cast<std::size_t>(p_count));
  for (int j = 0; j < p_count; ++j) {
    const double a = 2.0 * kPi * j / p_count;
    proxy.points.push_back(proxy.center + Vec3{std::cos(a), std::sin(a), 0.0} * proxy.radius);
  }
  return proxy;
}

std::vector<Vec3> fibonacci_sphere(int count) {
  if (count < 1) throw PreconditionError("fibonacci_sphere: count must be positive");
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    pts.push_back({r * std::cos(phi), r * std::sin(phi), z});
  }
  return pts;
}

ProxySurface build_proxy_sphere(const Discretization& disc, double radius_factor, int p_count) {
  check_factor(radius_factor);
  if (p_count < 32) throw PreconditionError("build_proxy_sphere: p_count must be >= 32");
  ProxySurface proxy;
  proxy.dim = 3;
  proxy.center = weighted_centroid(disc);
  proxy.radius = radius_factor * max_distance(disc.colloc, proxy.center);
  for (const auto& u : fibonacci_sphere(p_count)) proxy.points.push_back(proxy.center + u * proxy.radius);
  return proxy;
}

ProxySurface build_proxy(const Discretization& disc, double radius_factor, int p_count) {
  const int count = p_count > 0 ? p_count : static_cast<int>(disc.m()) + 1;
  return disc.dim == 2 ? build_proxy_circle(disc, radius_factor, count)
                       : build_proxy_sphere(disc, radius_factor, count);
}

void require_separated(const std::vector<Vec3>& pts, double min_dist, const char* what) {
  // Sort along x so only nearby candidates are compared.
  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pts[a].x < pts[b].x; });
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const Vec3& p = pts[order[a]];
      const Vec3& q = pts[order[b]];
      if (q.x - p.x >= min_dist) break;
      if (distance(p, q) < min_dist) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%g", min_dist);
        throw GeometryError(std::string(what) + ": points closer than " + buf);
      }
    }
  }
}

}  // namespace helmscat
