#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "helmscat/config.hpp"

namespace helmscat {

struct RunOptions {
  bool condition_number = false;  // in addition to the config flag
  std::string cache_dir;          // empty: in-memory sharing only
  std::optional<GridSpec> grid;   // overrides the config grid
};

struct Timings {
  double build = 0.0;
  double solve = 0.0;
  double matvec = 0.0;
  double reference = 0.0;
  double errors = 0.0;
  double condition = 0.0;
  double total = 0.0;
};

struct ExperimentResult {
  std::string name;
  int T = 0;
  // Distinct per-scatterer values joined by '/'.
  std::string N;
  std::string d;
  std::string N_skel;
  double K = std::numeric_limits<double>::quiet_NaN();
  double e_far = std::numeric_limits<double>::quiet_NaN();
  double e_inc = std::numeric_limits<double>::quiet_NaN();
  int matvecs = 0;
  int iterations = 0;
  Index N_tot = 0;
  Index N_skel_tot = 0;
  bool converged = false;
  double final_residual = 0.0;
  std::vector<double> residual_history;
  int reference_matvecs = 0;
  int operator_builds = 0;
  int cache_hits = 0;
  Timings timings;
  std::string grid_csv;  // empty unless a grid was requested
};

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options = {});

/// Copy of cfg at the self-reference resolution.
ExperimentConfig reference_config(const ExperimentConfig& cfg);

std::string csv_header();
/// Deterministic for a fixed config; timings are not included.
std::string csv_row(const ExperimentResult& r);
/// Full report, including timings and the residual history.
std::string report_json(const ExperimentResult& r);

/// x, y, Re u_tot, Im u_tot on a rectangular grid with u_tot = u - v.
/// Points inside a scatterer get empty value fields.
std::string emit_grid(const FieldModel& solution, const IncomingField& field, const Kernel& kernel,
                      const std::vector<std::shared_ptr<const Body>>& bodies, const GridSpec& grid);

}  // namespace helmscat
