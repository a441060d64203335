#include "helmscat/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "helmscat/opcache.hpp"

namespace helmscat {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

template <class T>
std::string join_distinct(const std::vector<T>& values, const char* pattern) {
  std::vector<std::string> seen;
  for (const auto& v : values) {
    const std::string s = fmt(pattern, static_cast<double>(v));
    if (std::find(seen.begin(), seen.end(), s) == seen.end()) seen.push_back(s);
  }
  std::string out;
  for (const auto& s : seen) out += (out.empty() ? "" : "/") + s;
  return out;
}

std::string csv_number(double x, const char* pattern) { return std::isnan(x) ? "" : fmt(pattern, x); }

struct Built {
  std::vector<std::shared_ptr<const Body>> bodies;
  std::shared_ptr<const GlobalProblem> gp;
  IncomingField field;
  int builds = 0;
  int hits = 0;
};

Built build_problem(const ExperimentConfig& cfg, const std::string& cache_dir) {
  Built b;
  b.bodies = make_bodies(cfg);
  std::vector<DiscretizationSpec> specs;
  for (const auto& s : cfg.scatterers) specs.push_back(s.discretization);
  const Kernel kernel(cfg.dim, cfg.kappa);
  OperatorCache cache(cache_dir);
  auto ops = build_operators(b.bodies, specs, kernel, operator_settings(cfg), cache);
  b.gp = std::make_shared<const GlobalProblem>(kernel, std::move(ops));
  b.field = make_incoming(cfg, b.bodies);
  b.builds = cache.builds();
  b.hits = cache.memory_hits() + cache.disk_hits();
  return b;
}

}  // namespace

ExperimentConfig reference_config(const ExperimentConfig& cfg) {
  ExperimentConfig ref = cfg;
  const auto& r = cfg.reference;
  for (auto& s : ref.scatterers) {
    if (auto it = r.discretization.find(s.shape.kind); it != r.discretization.end()) s.discretization = it->second;
  }
  if (r.eps) ref.eps = *r.eps;
  ref.gmres_tol = r.gmres_tol ? *r.gmres_tol : std::min(cfg.gmres_tol, ref.eps);
  ref.reference = {};
  ref.outputs.condition_number = false;
  ref.outputs.grid.reset();
  return ref;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options) {
  const auto t_start = clock_type::now();
  ExperimentResult res;
  res.name = cfg.name;
  res.T = static_cast<int>(cfg.scatterers.size());

  auto t0 = clock_type::now();
  Built built = build_problem(cfg, options.cache_dir);
  res.timings.build = seconds_since(t0);
  res.operator_builds = built.builds;
  res.cache_hits = built.hits;
  const GlobalProblem& gp = *built.gp;

  std::vector<Index> ns, ks;
  std::vector<double> ds;
  for (std::size_t t = 0; t < gp.count(); ++t) {
    const auto& op = gp.scatterer(t);
    ns.push_back(op.disc.m());
    ks.push_back(op.rank());
    ds.push_back(mfs_distance(op.spec));
    res.N_tot += op.disc.m();
  }
  res.N = join_distinct(ns, "%.0f");
  res.N_skel = join_distinct(ks, "%.0f");
  res.d = join_distinct(ds, "%.6g");
  res.N_skel_tot = gp.unknowns();

  SolveReport rep = solve_multibody(gp, built.field, cfg.gmres_tol, cfg.max_iter);
  res.matvecs = rep.matvecs;
  res.iterations = rep.iterations;
  res.converged = rep.converged;
  res.final_residual = rep.final_residual;
  res.residual_history = rep.residual_history;
  res.timings.solve = rep.t_solve;
  res.timings.matvec = rep.t_matvec;
  const Solution solution(built.gp, built.field, rep.q_hat);

  if (options.condition_number || cfg.outputs.condition_number) {
    t0 = clock_type::now();
    res.K = gp.condition_number();
    res.timings.condition = seconds_since(t0);
  }

  std::unique_ptr<FieldModel> reference;
  switch (cfg.reference.kind) {
    case ReferenceKind::none:
      break;
    case ReferenceKind::manufactured:
      reference = std::make_unique<ManufacturedField>(gp.kernel(), built.bodies,
                                                      std::get<Monopoles>(built.field));
      break;
    case ReferenceKind::self: {
      t0 = clock_type::now();
      const ExperimentConfig rcfg = reference_config(cfg);
      Built rb = build_problem(rcfg, options.cache_dir);
      SolveReport rrep = solve_multibody(*rb.gp, rb.field, rcfg.gmres_tol, rcfg.max_iter);
      if (!rrep.converged) throw Error("self-reference solve did not converge");
      res.reference_matvecs = rrep.matvecs;
      reference = std::make_unique<Solution>(rb.gp, rb.field, rrep.q_hat);
      res.timings.reference = seconds_since(t0);
      break;
    }
  }

  if (reference) {
    t0 = clock_type::now();
    const int far_count = cfg.outputs.far_points > 0 ? cfg.outputs.far_points : (cfg.dim == 2 ? 64 : 128);
    const auto far = far_field_targets(cfg.dim, gp.centroid(), cfg.outputs.far_radius, far_count);
    std::vector<std::vector<Vec3>> tests;
    for (const auto& body : built.bodies) tests.push_back(body->test_points(cfg.outputs.inc_points));
    const ErrorMetrics err = compute_errors(solution, *reference, far, tests);
    res.e_far = err.e_far;
    res.e_inc = err.e_inc;
    res.timings.errors = seconds_since(t0);
  }

  const std::optional<GridSpec> grid = options.grid ? options.grid : cfg.outputs.grid;
  if (grid) {
    if (cfg.dim != 2) throw ConfigError("field grids are 2D only");
    res.grid_csv = emit_grid(solution, built.field, gp.kernel(), built.bodies, *grid);
  }
  res.timings.total = seconds_since(t_start);
  return res;
}

std::string csv_header() { return "name,T,N,d,N_skel,K,E_far,E_inc,matvecs,N_tot,N_skel_tot\n"; }

std::string csv_row(const ExperimentResult& r) {
  std::ostringstream os;
  os << r.name << ',' << r.T << ',' << r.N << ',' << r.d << ',' << r.N_skel << ',' << csv_number(r.K, "%.4g") << ','
     << csv_number(r.e_far, "%.3e") << ',' << csv_number(r.e_inc, "%.3e") << ',' << r.matvecs << ',' << r.N_tot << ','
     << r.N_skel_tot << '\n';
  return os.str();
}

std::string report_json(const ExperimentResult& r) {
  auto num = [](double x) { return std::isnan(x) ? nlohmann::json(nullptr) : nlohmann::json(x); };
  nlohmann::json j = {
      {"name", r.name},
      {"T", r.T},
      {"N", r.N},
      {"d", r.d},
      {"N_skel", r.N_skel},
      {"K", num(r.K)},
      {"E_far", num(r.e_far)},
      {"E_inc", num(r.e_inc)},
      {"matvecs", r.matvecs},
      {"iterations", r.iterations},
      {"N_tot", r.N_tot},
      {"N_skel_tot", r.N_skel_tot},
      {"converged", r.converged},
      {"final_residual", r.final_residual},
      {"residual_history", r.residual_history},
      {"reference_matvecs", r.reference_matvecs},
      {"operator_builds", r.operator_builds},
      {"cache_hits", r.cache_hits},
      {"timings",
       {{"build", r.timings.build},
        {"solve", r.timings.solve},
        {"matvec", r.timings.matvec},
        {"reference", r.timings.reference},
        {"errors", r.timings.errors},
        {"condition", r.timings.condition},
        {"total", r.timings.total}}},
  };
  return j.dump(2) + "\n";
}

std::string emit_grid(const FieldModel& solution, const IncomingField& field, const Kernel& kernel,
                      const std::vector<std::shared_ptr<const Body>>& bodies, const GridSpec& grid) {
  if (grid.nx < 1 || grid.ny < 1) throw ConfigError("grid: nx and ny must be >= 1");
  std::vector<Vec3> all, outside;
  std::vector<bool> inside;
  for (int iy = 0; iy < grid.ny; ++iy) {
    const double y = grid.ny == 1 ? grid.ymin : grid.ymin + (grid.ymax - grid.ymin) * iy / (grid.ny - 1);
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double x = grid.nx == 1 ? grid.xmin : grid.xmin + (grid.xmax - grid.xmin) * ix / (grid.nx - 1);
      const Vec3 p{x, y, 0.0};
      bool in = false;
      for (const auto& b : bodies) in = in || b->encloses(p);
      all.push_back(p);
      inside.push_back(in);
      if (!in) outside.push_back(p);
    }
  }
  ComplexVector u_tot;
  if (!outside.empty()) u_tot = solution.scattered(outside) - evaluate_incoming(field, kernel, outside);
  std::ostringstream os;
  os << "x,y,re_u_tot,im_u_tot\n";
  Index k = 0;
  char buf[128];
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (inside[i]) {
      std::snprintf(buf, sizeof buf, "%.10g,%.10g,,\n", all[i].x, all[i].y);
    } else {
      const cplx u = u_tot(k++);
      std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.12e,%.12e\n", all[i].x, all[i].y, u.real(), u.imag());
    }
    os << buf;
  }
  return os.str();
}

}  // namespace helmscat
