#include "helmscat/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace helmscat {

using nlohmann::json;

namespace {

const std::vector<std::string> kShapes2D = {"circle", "ellipse", "starfish", "teardrop", "cshape", "rod"};
const std::vector<std::string> kShapes3D = {"ellipsoid", "torus"};

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

// Collects field-level problems so one run reports all of them.
class Parser {
 public:
  std::vector<std::string> errors;

  void fail(const std::string& path, const std::string& msg) { errors.push_back(path + ": " + msg); }

  bool object(const json& j, const std::string& path) {
    if (!j.is_object()) {
      fail(path, "expected an object");
      return false;
    }
    return true;
  }

  void keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, _] : j.items()) {
      if (!ok.count(k)) fail(path + "." + k, "unknown key");
    }
  }

  const json* field(const json& j, const std::string& path, const char* key, bool required) {
    if (j.contains(key)) return &j.at(key);
    if (required) fail(path + "." + key, "missing required key");
    return nullptr;
  }

  double number(const json& j, const std::string& path, const char* key, double fallback, bool required = false) {
    const json* v = field(j, path, key, required);
    if (!v) return fallback;
    if (!v->is_number()) {
      fail(path + "." + key, "expected a number");
      return fallback;
    }
    const double x = v->get<double>();
    if (!std::isfinite(x)) fail(path + "." + key, "must be finite");
    return x;
  }

  int integer(const json& j, const std::string& path, const char* key, int fallback, bool required = false) {
    const json* v = field(j, path, key, required);
    if (!v) return fallback;
    if (!v->is_number_integer()) {
      fail(path + "." + key, "expected an integer");
      return fallback;
    }
    return v->get<int>();
  }

  bool boolean(const json& j, const std::string& path, const char* key, bool fallback) {
    const json* v = field(j, path, key, false);
    if (!v) return fallback;
    if (!v->is_boolean()) {
      fail(path + "." + key, "expected true or false");
      return fallback;
    }
    return v->get<bool>();
  }

  std::string string(const json& j, const std::string& path, const char* key, const std::string& fallback,
                     bool required = false) {
    const json* v = field(j, path, key, required);
    if (!v) return fallback;
    if (!v->is_string()) {
      fail(path + "." + key, "expected a string");
      return fallback;
    }
    return v->get<std::string>();
  }

  std::vector<double> numbers(const json& v, const std::string& path) {
    std::vector<double> out;
    if (!v.is_array()) {
      fail(path, "expected an array of numbers");
      return out;
    }
    for (const auto& x : v) {
      if (!x.is_number() || !std::isfinite(x.get<double>())) {
        fail(path, "expected finite numbers");
        return {};
      }
      out.push_back(x.get<double>());
    }
    return out;
  }

  Vec3 point(const json& v, const std::string& path, int dim) {
    const auto xs = numbers(v, path);
    if (static_cast<int>(xs.size()) != dim) {
      if (!xs.empty()) fail(path, "expected " + std::to_string(dim) + " coordinates");
      return {};
    }
    return {xs[0], xs[1], dim == 3 ? xs[2] : 0.0};
  }

  cplx complex(const json& v, const std::string& path) {
    const auto xs = numbers(v, path);
    if (xs.size() != 2) {
      fail(path, "expected [re, im]");
      return {};
    }
    return {xs[0], xs[1]};
  }

  void positive(double x, const std::string& path) {
    if (!(x > 0.0)) fail(path, "must be positive");
  }

  void unit_interval(double x, const std::string& path) {
    if (!(x > 0.0 && x < 1.0)) fail(path, "must lie in (0, 1)");
  }

  DiscretizationSpec discretization(const json& j, const std::string& path, int dim) {
    if (!object(j, path)) return SmoothSpec{};
    const std::string type = string(j, path, "type", "", true);
    if (type == "smooth") {
      keys(j, path, {"type", "N", "d"});
      SmoothSpec s{integer(j, path, "N", 0, true), number(j, path, "d", 0.0, true)};
      if (dim != 2) fail(path + ".type", "smooth discretizations are 2D only");
      if (s.N < 4 || s.N % 2) fail(path + ".N", "must be even and >= 4");
      positive(s.d, path + ".d");
      return s;
    }
    if (type == "panels") {
      keys(j, path, {"type", "m", "p", "n_refine", "d"});
      PanelSpec p{integer(j, path, "m", 0, true), integer(j, path, "p", 16), integer(j, path, "n_refine", 0),
                  number(j, path, "d", 0.0, true)};
      if (dim != 2) fail(path + ".type", "panel discretizations are 2D only");
      if (p.m < 2) fail(path + ".m", "must be >= 2");
      if (p.p < 2 || p.p % 2) fail(path + ".p", "must be even and >= 2");
      if (p.n_refine < 0 || p.n_refine > 60) fail(path + ".n_refine", "must lie in [0, 60]");
      positive(p.d, path + ".d");
      return p;
    }
    if (type == "surface") {
      keys(j, path, {"type", "Nu", "Nv", "d"});
      SurfaceSpec s{integer(j, path, "Nu", 0, true), integer(j, path, "Nv", 0, true), number(j, path, "d", 0.0, true)};
      if (dim != 3) fail(path + ".type", "surface discretizations are 3D only");
      if (s.Nu < 2 || s.Nu % 2) fail(path + ".Nu", "must be even and >= 2");
      if (s.Nv < 2 || s.Nv % 2) fail(path + ".Nv", "must be even and >= 2");
      positive(s.d, path + ".d");
      return s;
    }
    if (!type.empty()) fail(path + ".type", "unknown discretization type '" + type + "' (allowed: smooth, panels, surface)");
    return SmoothSpec{};
  }

  ShapeConfig shape(const json& j, const std::string& path, int dim) {
    ShapeConfig s;
    if (!object(j, path)) return s;
    s.kind = string(j, path, "kind", "", true);
    const auto& allowed = dim == 2 ? kShapes2D : kShapes3D;
    if (std::find(allowed.begin(), allowed.end(), s.kind) == allowed.end()) {
      if (!s.kind.empty()) {
        fail(path + ".kind", "unknown shape kind '" + s.kind + "' for dim " + std::to_string(dim) +
                                 " (allowed: " + join(allowed) + ")");
      }
      return s;
    }
    auto& c = s.contour;
    auto& g = s.surface;
    if (s.kind == "circle") {
      keys(j, path, {"kind", "radius"});
      c.radius = number(j, path, "radius", c.radius);
      positive(c.radius, path + ".radius");
    } else if (s.kind == "ellipse") {
      keys(j, path, {"kind", "semi_a", "semi_b"});
      c.semi_a = number(j, path, "semi_a", c.semi_a);
      c.semi_b = number(j, path, "semi_b", c.semi_b);
      positive(c.semi_a, path + ".semi_a");
      positive(c.semi_b, path + ".semi_b");
    } else if (s.kind == "cshape") {
      keys(j, path, {"kind", "outer", "inner", "opening"});
      c.outer = number(j, path, "outer", c.outer);
      c.inner = number(j, path, "inner", c.inner);
      c.opening = number(j, path, "opening", c.opening);
      positive(c.inner, path + ".inner");
      if (!(c.outer > c.inner)) fail(path + ".outer", "must exceed inner");
    } else if (s.kind == "rod") {
      keys(j, path, {"kind", "length", "cap"});
      c.length = number(j, path, "length", c.length);
      c.cap = number(j, path, "cap", c.cap);
      positive(c.length, path + ".length");
      positive(c.cap, path + ".cap");
    } else if (s.kind == "ellipsoid") {
      keys(j, path, {"kind", "a", "b", "c"});
      g.a = number(j, path, "a", g.a);
      g.b = number(j, path, "b", g.b);
      g.c = number(j, path, "c", g.c);
      positive(g.a, path + ".a");
      positive(g.b, path + ".b");
      positive(g.c, path + ".c");
    } else if (s.kind == "torus") {
      keys(j, path, {"kind", "major", "minor"});
      g.major = number(j, path, "major", g.major);
      g.minor = number(j, path, "minor", g.minor);
      positive(g.minor, path + ".minor");
      if (!(g.major > g.minor)) fail(path + ".major", "must exceed minor");
    } else {
      keys(j, path, {"kind"});
    }
    return s;
  }

  ScattererConfig scatterer(const json& j, const std::string& path, int dim) {
    ScattererConfig sc;
    if (!object(j, path)) return sc;
    keys(j, path, {"shape", "center", "rotation", "discretization"});
    if (const json* s = field(j, path, "shape", true)) sc.shape = shape(*s, path + ".shape", dim);
    if (const json* c = field(j, path, "center", true)) sc.center = point(*c, path + ".center", dim);
    if (dim == 2) {
      sc.rotation = {number(j, path, "rotation", 0.0)};
    } else if (const json* r = field(j, path, "rotation", false)) {
      sc.rotation = numbers(*r, path + ".rotation");
      if (sc.rotation.size() != 3) fail(path + ".rotation", "expected three Euler angles");
    } else {
      sc.rotation = {0.0, 0.0, 0.0};
    }
    if (const json* d = field(j, path, "discretization", true)) {
      sc.discretization = discretization(*d, path + ".discretization", dim);
    }
    return sc;
  }

  IncomingConfig incoming(const json& j, const std::string& path, int dim) {
    IncomingConfig in;
    if (!object(j, path)) return in;
    const std::string type = string(j, path, "type", "", true);
    if (type == "plane_wave") {
      keys(j, path, {"type", "direction", "amplitude"});
      in.kind = IncomingKind::plane_wave;
      in.direction = dim == 2 ? Vec3{1.0, 0.0, 0.0} : Vec3{1.0, 0.0, 0.0};
      if (const json* d = field(j, path, "direction", false)) in.direction = point(*d, path + ".direction", dim);
      if (const json* a = field(j, path, "amplitude", false)) in.amplitude = complex(*a, path + ".amplitude");
      if (std::abs(in.direction.norm() - 1.0) > 1e-12) fail(path + ".direction", "must be a unit vector");
    } else if (type == "monopoles") {
      keys(j, path, {"type", "points", "strengths"});
      in.kind = IncomingKind::monopoles;
      if (const json* p = field(j, path, "points", true)) {
        if (!p->is_array() || p->empty()) {
          fail(path + ".points", "expected a non-empty array of points");
        } else {
          for (std::size_t i = 0; i < p->size(); ++i) {
            in.points.push_back(point((*p)[i], path + ".points[" + std::to_string(i) + "]", dim));
          }
        }
      }
      if (const json* s = field(j, path, "strengths", true)) {
        if (!s->is_array()) {
          fail(path + ".strengths", "expected an array of [re, im]");
        } else {
          for (std::size_t i = 0; i < s->size(); ++i) {
            in.strengths.push_back(complex((*s)[i], path + ".strengths[" + std::to_string(i) + "]"));
          }
        }
      }
      if (in.points.size() != in.strengths.size()) fail(path, "points and strengths differ in length");
    } else if (type == "manufactured") {
      keys(j, path, {"type"});
      in.kind = IncomingKind::manufactured;
    } else if (!type.empty()) {
      fail(path + ".type", "unknown incoming type '" + type + "' (allowed: plane_wave, monopoles, manufactured)");
    }
    return in;
  }

  ReferenceConfig reference(const json& j, const std::string& path, int dim) {
    ReferenceConfig r;
    if (!object(j, path)) return r;
    const std::string type = string(j, path, "type", "", true);
    if (type == "none") {
      keys(j, path, {"type"});
    } else if (type == "manufactured") {
      keys(j, path, {"type"});
      r.kind = ReferenceKind::manufactured;
    } else if (type == "self") {
      keys(j, path, {"type", "discretization", "eps", "gmres_tol"});
      r.kind = ReferenceKind::self;
      if (const json* d = field(j, path, "discretization", true)) {
        if (object(*d, path + ".discretization")) {
          for (const auto& [kind, spec] : d->items()) {
            r.discretization[kind] = discretization(spec, path + ".discretization." + kind, dim);
          }
        }
      }
      if (j.contains("eps")) {
        r.eps = number(j, path, "eps", 0.0);
        unit_interval(*r.eps, path + ".eps");
      }
      if (j.contains("gmres_tol")) {
        r.gmres_tol = number(j, path, "gmres_tol", 0.0);
        positive(*r.gmres_tol, path + ".gmres_tol");
      }
    } else if (!type.empty()) {
      fail(path + ".type", "unknown reference type '" + type + "' (allowed: none, manufactured, self)");
    }
    return r;
  }

  GridSpec grid(const json& j, const std::string& path) {
    GridSpec g;
    if (!object(j, path)) return g;
    keys(j, path, {"xmin", "xmax", "ymin", "ymax", "nx", "ny"});
    g.xmin = number(j, path, "xmin", 0.0, true);
    g.xmax = number(j, path, "xmax", 0.0, true);
    g.ymin = number(j, path, "ymin", 0.0, true);
    g.ymax = number(j, path, "ymax", 0.0, true);
    g.nx = integer(j, path, "nx", 0, true);
    g.ny = integer(j, path, "ny", 0, true);
    if (g.nx < 1) fail(path + ".nx", "must be >= 1");
    if (g.ny < 1) fail(path + ".ny", "must be >= 1");
    if (!(g.xmax >= g.xmin)) fail(path + ".xmax", "must be >= xmin");
    if (!(g.ymax >= g.ymin)) fail(path + ".ymax", "must be >= ymin");
    return g;
  }

  OutputConfig outputs(const json& j, const std::string& path, int dim) {
    OutputConfig o;
    if (!object(j, path)) return o;
    keys(j, path, {"condition_number", "far_radius", "far_points", "inc_points", "grid"});
    o.condition_number = boolean(j, path, "condition_number", false);
    o.far_radius = number(j, path, "far_radius", o.far_radius);
    o.far_points = integer(j, path, "far_points", 0);
    o.inc_points = integer(j, path, "inc_points", o.inc_points);
    positive(o.far_radius, path + ".far_radius");
    if (o.far_points < 0) fail(path + ".far_points", "must be >= 0");
    if (o.inc_points < 2) fail(path + ".inc_points", "must be >= 2");
    if (const json* g = field(j, path, "grid", false)) {
      o.grid = grid(*g, path + ".grid");
      if (dim != 2) fail(path + ".grid", "field grids are 2D only");
    }
    return o;
  }
};

json spec_json(const DiscretizationSpec& spec) {
  if (const auto* s = std::get_if<SmoothSpec>(&spec)) return {{"type", "smooth"}, {"N", s->N}, {"d", s->d}};
  if (const auto* p = std::get_if<PanelSpec>(&spec)) {
    return {{"type", "panels"}, {"m", p->m}, {"p", p->p}, {"n_refine", p->n_refine}, {"d", p->d}};
  }
  const auto& g = std::get<SurfaceSpec>(spec);
  return {{"type", "surface"}, {"Nu", g.Nu}, {"Nv", g.Nv}, {"d", g.d}};
}

json point_json(const Vec3& p, int dim) {
  if (dim == 2) return json::array({p.x, p.y});
  return json::array({p.x, p.y, p.z});
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json shape_json(const ShapeConfig& s) {
  json j = {{"kind", s.kind}};
  const auto& c = s.contour;
  const auto& g = s.surface;
  if (s.kind == "circle") j["radius"] = c.radius;
  if (s.kind == "ellipse") j["semi_a"] = c.semi_a, j["semi_b"] = c.semi_b;
  if (s.kind == "cshape") j["outer"] = c.outer, j["inner"] = c.inner, j["opening"] = c.opening;
  if (s.kind == "rod") j["length"] = c.length, j["cap"] = c.cap;
  if (s.kind == "ellipsoid") j["a"] = g.a, j["b"] = g.b, j["c"] = g.c;
  if (s.kind == "torus") j["major"] = g.major, j["minor"] = g.minor;
  return j;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  Parser p;
  ExperimentConfig cfg;
  if (!p.object(root, "config")) throw ConfigError("config: expected a JSON object");
  p.keys(root, "config", {"name", "dim", "kappa", "eps", "gmres_tol", "max_iter", "rel_cutoff", "proxy", "scatterers",
                          "incoming", "reference", "outputs", "seed"});
  cfg.name = p.string(root, "config", "name", "", true);
  cfg.dim = p.integer(root, "config", "dim", 2, true);
  if (cfg.dim != 2 && cfg.dim != 3) {
    p.fail("config.dim", "must be 2 or 3");
    cfg.dim = 2;
  }
  cfg.kappa = p.number(root, "config", "kappa", 1.0, true);
  p.positive(cfg.kappa, "config.kappa");
  cfg.eps = p.number(root, "config", "eps", 1e-10, true);
  p.unit_interval(cfg.eps, "config.eps");
  cfg.gmres_tol = p.number(root, "config", "gmres_tol", cfg.eps);
  p.positive(cfg.gmres_tol, "config.gmres_tol");
  cfg.max_iter = p.integer(root, "config", "max_iter", cfg.max_iter);
  if (cfg.max_iter < 1) p.fail("config.max_iter", "must be >= 1");
  cfg.rel_cutoff = p.number(root, "config", "rel_cutoff", cfg.rel_cutoff);
  p.unit_interval(cfg.rel_cutoff, "config.rel_cutoff");
  if (const json* px = p.field(root, "config", "proxy", false); px && p.object(*px, "config.proxy")) {
    p.keys(*px, "config.proxy", {"radius_factor", "points"});
    cfg.proxy_factor = p.number(*px, "config.proxy", "radius_factor", cfg.proxy_factor);
    cfg.proxy_points = p.integer(*px, "config.proxy", "points", 0);
    if (!(cfg.proxy_factor > 1.0)) p.fail("config.proxy.radius_factor", "must exceed 1");
    if (cfg.proxy_points < 0) p.fail("config.proxy.points", "must be >= 0 (0 selects N+1)");
  }
  if (const json* sc = p.field(root, "config", "scatterers", true)) {
    if (!sc->is_array() || sc->empty()) {
      p.fail("config.scatterers", "expected a non-empty array");
    } else {
      for (std::size_t i = 0; i < sc->size(); ++i) {
        cfg.scatterers.push_back(p.scatterer((*sc)[i], "config.scatterers[" + std::to_string(i) + "]", cfg.dim));
      }
    }
  }
  if (const json* in = p.field(root, "config", "incoming", true)) cfg.incoming = p.incoming(*in, "config.incoming", cfg.dim);
  if (const json* r = p.field(root, "config", "reference", false)) cfg.reference = p.reference(*r, "config.reference", cfg.dim);
  if (const json* o = p.field(root, "config", "outputs", false)) cfg.outputs = p.outputs(*o, "config.outputs", cfg.dim);
  if (const json* s = p.field(root, "config", "seed", false)) {
    if (!s->is_number_unsigned()) {
      p.fail("config.seed", "expected a non-negative integer");
    } else {
      cfg.seed = s->get<std::uint64_t>();
    }
  }
  if (cfg.reference.kind == ReferenceKind::manufactured && cfg.incoming.kind == IncomingKind::plane_wave) {
    p.fail("config.reference", "a manufactured reference needs manufactured or monopole incoming data");
  }
  if (cfg.reference.kind == ReferenceKind::self) {
    for (const auto& [kind, _] : cfg.reference.discretization) {
      bool used = false;
      for (const auto& s : cfg.scatterers) used = used || s.shape.kind == kind;
      if (!used) p.fail("config.reference.discretization." + kind, "no scatterer of this kind");
    }
  }
  if (!p.errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : p.errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  json j;
  j["name"] = cfg.name;
  j["dim"] = cfg.dim;
  j["kappa"] = cfg.kappa;
  j["eps"] = cfg.eps;
  j["gmres_tol"] = cfg.gmres_tol;
  j["max_iter"] = cfg.max_iter;
  j["rel_cutoff"] = cfg.rel_cutoff;
  j["proxy"] = {{"radius_factor", cfg.proxy_factor}, {"points", cfg.proxy_points}};
  json sc = json::array();
  for (const auto& s : cfg.scatterers) {
    json e = {{"shape", shape_json(s.shape)}, {"center", point_json(s.center, cfg.dim)},
              {"discretization", spec_json(s.discretization)}};
    if (cfg.dim == 2) {
      e["rotation"] = s.rotation.empty() ? 0.0 : s.rotation[0];
    } else {
      e["rotation"] = s.rotation;
    }
    sc.push_back(e);
  }
  j["scatterers"] = sc;
  const auto& in = cfg.incoming;
  switch (in.kind) {
    case IncomingKind::plane_wave:
      j["incoming"] = {{"type", "plane_wave"}, {"direction", point_json(in.direction, cfg.dim)},
                       {"amplitude", complex_json(in.amplitude)}};
      break;
    case IncomingKind::monopoles: {
      json pts = json::array();
      json str = json::array();
      for (const auto& p : in.points) pts.push_back(point_json(p, cfg.dim));
      for (const auto& s : in.strengths) str.push_back(complex_json(s));
      j["incoming"] = {{"type", "monopoles"}, {"points", pts}, {"strengths", str}};
      break;
    }
    case IncomingKind::manufactured:
      j["incoming"] = {{"type", "manufactured"}};
      break;
  }
  const auto& r = cfg.reference;
  if (r.kind == ReferenceKind::none) {
    j["reference"] = {{"type", "none"}};
  } else if (r.kind == ReferenceKind::manufactured) {
    j["reference"] = {{"type", "manufactured"}};
  } else {
    json d = json::object();
    for (const auto& [kind, spec] : r.discretization) d[kind] = spec_json(spec);
    j["reference"] = {{"type", "self"}, {"discretization", d}};
    if (r.eps) j["reference"]["eps"] = *r.eps;
    if (r.gmres_tol) j["reference"]["gmres_tol"] = *r.gmres_tol;
  }
  const auto& o = cfg.outputs;
  j["outputs"] = {{"condition_number", o.condition_number}, {"far_radius", o.far_radius},
                  {"far_points", o.far_points}, {"inc_points", o.inc_points}};
  if (o.grid) {
    j["outputs"]["grid"] = {{"xmin", o.grid->xmin}, {"xmax", o.grid->xmax}, {"ymin", o.grid->ymin},
                            {"ymax", o.grid->ymax}, {"nx", o.grid->nx},     {"ny", o.grid->ny}};
  }
  j["seed"] = cfg.seed;
  return j.dump(2) + "\n";
}

GridSpec parse_grid_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 6) throw ConfigError("grid spec must be xmin,xmax,ymin,ymax,nx,ny");
  GridSpec g;
  try {
    g.xmin = std::stod(parts[0]);
    g.xmax = std::stod(parts[1]);
    g.ymin = std::stod(parts[2]);
    g.ymax = std::stod(parts[3]);
    g.nx = std::stoi(parts[4]);
    g.ny = std::stoi(parts[5]);
  } catch (const std::exception&) {
    throw ConfigError("grid spec: could not parse '" + text + "'");
  }
  if (g.nx < 1 || g.ny < 1) throw ConfigError("grid spec: nx and ny must be >= 1");
  if (!(g.xmax >= g.xmin) || !(g.ymax >= g.ymin)) throw ConfigError("grid spec: empty bounds");
  return g;
}

std::shared_ptr<Body> make_body(const ScattererConfig& sc, int dim) {
  if (dim == 2) {
    const double rot = sc.rotation.empty() ? 0.0 : sc.rotation[0];
    return std::make_shared<Contour2D>(contour_kind_from_string(sc.shape.kind), sc.shape.contour, sc.center, rot);
  }
  Rotation3 r = kIdentityRotation;
  if (sc.rotation.size() == 3) r = rotation_from_euler(sc.rotation[0], sc.rotation[1], sc.rotation[2]);
  return std::make_shared<Surface3D>(surface_kind_from_string(sc.shape.kind), sc.shape.surface, sc.center, r);
}

std::vector<std::shared_ptr<const Body>> make_bodies(const ExperimentConfig& cfg) {
  std::vector<std::shared_ptr<const Body>> bodies;
  for (const auto& sc : cfg.scatterers) bodies.push_back(make_body(sc, cfg.dim));
  return bodies;
}

OperatorSettings operator_settings(const ExperimentConfig& cfg) {
  OperatorSettings s;
  s.eps = cfg.eps;
  s.rel_cutoff = cfg.rel_cutoff;
  s.proxy_factor = cfg.proxy_factor;
  s.proxy_points = cfg.proxy_points;
  return s;
}

IncomingField make_incoming(const ExperimentConfig& cfg, const std::vector<std::shared_ptr<const Body>>& bodies) {
  const auto& in = cfg.incoming;
  switch (in.kind) {
    case IncomingKind::plane_wave:
      return PlaneWave{in.direction, in.amplitude};
    case IncomingKind::monopoles:
      return Monopoles{in.points, in.strengths};
    case IncomingKind::manufactured:
      break;
  }
  return manufactured_monopoles(bodies, cfg.seed);
}

}  // namespace helmscat
