#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "helmscat/experiment.hpp"
#include "helmscat/selftest.hpp"

namespace fs = std::filesystem;
using namespace helmscat;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kGeometry = 3, kNoConvergence = 4 };

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path.string());
  os << text;
}

template <class F>
int guarded(F body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return kGeometry;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}

int solve(const std::string& config, const std::string& out, bool cond, const std::string& grid,
          const std::string& cache) {
  const ExperimentConfig cfg = load_config(config);
  RunOptions opt;
  opt.condition_number = cond;
  opt.cache_dir = cache;
  if (!grid.empty()) opt.grid = parse_grid_spec(grid);
  const ExperimentResult r = run_experiment(cfg, opt);
  const std::string csv = csv_header() + csv_row(r);
  std::cout << csv;
  if (!out.empty()) {
    write_file(fs::path(out) / (cfg.name + ".csv"), csv);
    write_file(fs::path(out) / (cfg.name + ".report.json"), report_json(r));
    if (!r.grid_csv.empty()) write_file(fs::path(out) / (cfg.name + ".grid.csv"), r.grid_csv);
  } else if (!r.grid_csv.empty()) {
    std::cerr << "note: grid computed but not written; pass --out\n";
  }
  std::cerr << cfg.name << ": " << r.matvecs << " matvecs, residual " << r.final_residual << ", "
            << r.timings.total << " s\n";
  if (!r.converged) {
    std::cerr << "GMRES did not reach tolerance " << cfg.gmres_tol << " in " << cfg.max_iter << " iterations\n";
    return kNoConvergence;
  }
  return kOk;
}

int table(const std::string& dir, const std::string& out, bool cond, const std::string& cache) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ConfigError("no .json configs in " + dir);
  std::string csv = csv_header();
  int status = kOk;
  for (const auto& f : files) {
    const int rc = guarded([&] {
      RunOptions opt;
      opt.condition_number = cond;
      opt.cache_dir = cache;
      const ExperimentResult r = run_experiment(load_config(f.string()), opt);
      csv += csv_row(r);
      std::cerr << f.filename().string() << ": " << r.timings.total << " s\n";
      return r.converged ? kOk : kNoConvergence;
    });
    status = std::max(status, rc);
  }
  std::cout << csv;
  if (!out.empty()) write_file(out, csv);
  return status;
}

int grid(const std::string& config, const std::string& spec, const std::string& out) {
  const ExperimentConfig cfg = load_config(config);
  RunOptions opt;
  opt.grid = parse_grid_spec(spec);
  const ExperimentResult r = run_experiment(cfg, opt);
  if (out.empty()) {
    std::cout << r.grid_csv;
  } else {
    write_file(out, r.grid_csv);
  }
  return r.converged ? kOk : kNoConvergence;
}

int selftest() {
  const SelftestReport rep = run_selftest();
  for (const auto& c : rep.checks) {
    std::printf("%s  %-9s %-52s %.3e <= %.1e\n", c.passed ? "PASS" : "FAIL", c.suite.c_str(), c.name.c_str(),
                c.value, c.bound);
  }
  std::printf("%s (%.1f s)\n", rep.passed() ? "all checks passed" : "FAILED", rep.seconds);
  return rep.passed() ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multibody Helmholtz scattering with skeletonized scattering matrices"};
  app.require_subcommand(1);

  std::string config, out, grid_spec, cache, dir;
  bool cond = false;

  auto* s = app.add_subcommand("solve", "Run one experiment config and print its CSV row");
  s->add_option("config", config, "JSON config")->required()->check(CLI::ExistingFile);
  s->add_option("--out", out, "Directory for CSV, report and grid files");
  s->add_flag("--cond", cond, "Compute the condition number K");
  s->add_option("--grid", grid_spec, "Field grid xmin,xmax,ymin,ymax,nx,ny");
  s->add_option("--cache", cache, "Directory for cached scattering operators");

  auto* t = app.add_subcommand("table", "Run every config in a directory and print one CSV");
  t->add_option("dir", dir, "Config directory")->required()->check(CLI::ExistingDirectory);
  t->add_option("--out", out, "CSV output file");
  t->add_flag("--cond", cond, "Compute the condition number K");
  t->add_option("--cache", cache, "Directory for cached scattering operators");

  auto* g = app.add_subcommand("grid", "Total field on a rectangular grid as CSV");
  g->add_option("config", config, "JSON config")->required()->check(CLI::ExistingFile);
  g->add_option("spec", grid_spec, "xmin,xmax,ymin,ymax,nx,ny")->required();
  g->add_option("--out", out, "CSV output file");

  app.add_subcommand("selftest", "Run the invariant suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfig;
  }

  if (*s) return guarded([&] { return solve(config, out, cond, grid_spec, cache); });
  if (*t) return guarded([&] { return table(dir, out, cond, cache); });
  if (*g) return guarded([&] { return grid(config, grid_spec, out); });
  return guarded(selftest);
}
