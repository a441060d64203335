#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "json.hpp"

#include "helmscat/experiment.hpp"

using namespace helmscat;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"({
  "name": "one_circle",
  "dim": 2,
  "kappa": 1.0,
  "eps": 1e-10,
  "scatterers": [
    {"shape": {"kind": "circle"}, "center": [0, 0], "discretization": {"type": "smooth", "N": 64, "d": 0.2}}
  ],
  "incoming": {"type": "plane_wave", "direction": [1, 0]}
})";

nlohmann::json minimal() { return nlohmann::json::parse(kMinimal); }

std::string config_error(const nlohmann::json& j) {
  try {
    parse_config(j.dump());
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

fs::path temp_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("helmscat_test_" + tag + "_" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(HELMSCAT_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::vector<std::string>> read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

// Radiating field equal to exp(i kappa x) on the circle |x| = a (separation of variables).
cplx disk_series(double kappa, double a, double x, double y) {
  const double r = std::hypot(x, y);
  const double th = std::atan2(y, x);
  cplx sum = 0.0;
  for (int n = -60; n <= 60; ++n) {
    const unsigned an = static_cast<unsigned>(std::abs(n));
    const cplx h_a(std::cyl_bessel_j(an, kappa * a), std::cyl_neumann(an, kappa * a));
    const cplx h_r(std::cyl_bessel_j(an, kappa * r), std::cyl_neumann(an, kappa * r));
    const double j_a = std::cyl_bessel_j(an, kappa * a);
    // Order -n picks up (-1)^n from H_{-n}, which turns i^n into i^|n|.
    sum += std::pow(kI, static_cast<int>(an)) * j_a / h_a * h_r * std::exp(kI * static_cast<double>(n) * th);
  }
  return sum;
}

}  // namespace

TEST_CASE("minimal config parses with defaults") {
  const ExperimentConfig cfg = parse_config(kMinimal);
  CHECK(cfg.name == "one_circle");
  CHECK(cfg.kappa == 1.0);
  REQUIRE(cfg.scatterers.size() == 1);
  CHECK(cfg.scatterers[0].shape.kind == "circle");
  CHECK(std::get<SmoothSpec>(cfg.scatterers[0].discretization) == SmoothSpec{64, 0.2});
  CHECK(cfg.gmres_tol == cfg.eps);
  CHECK(cfg.reference.kind == ReferenceKind::none);
}

TEST_CASE("validation errors name the offending field") {
  auto j = minimal();
  j["kappa"] = -1.0;
  CHECK(config_error(j).find("kappa") != std::string::npos);

  j = minimal();
  j["scatterers"][0]["shape"]["kind"] = "pentagon";
  const std::string msg = config_error(j);
  CHECK(msg.find("pentagon") != std::string::npos);
  for (const char* kind : {"circle", "ellipse", "starfish", "teardrop", "cshape", "rod"}) {
    CHECK(msg.find(kind) != std::string::npos);
  }

  j = minimal();
  j["colour"] = "red";
  CHECK(config_error(j).find("colour") != std::string::npos);

  j = minimal();
  j.erase("scatterers");
  CHECK(config_error(j).find("scatterers") != std::string::npos);

  j = minimal();
  j["eps"] = 2.0;
  j["scatterers"][0]["discretization"]["N"] = -4;
  const std::string two = config_error(j);
  CHECK(two.find("eps") != std::string::npos);
  CHECK(two.find("N") != std::string::npos);

  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
}

TEST_CASE("grid specs") {
  CHECK(parse_grid_spec("-1,1,-2,2,10,20") == GridSpec{-1, 1, -2, 2, 10, 20});
  CHECK_THROWS_AS(parse_grid_spec("-1,1,-2,2,0,20"), ConfigError);
  CHECK_THROWS_AS(parse_grid_spec("-1,1,-2,2"), ConfigError);
  CHECK_THROWS_AS(parse_grid_spec("1,-1,-2,2,4,4"), ConfigError);
}

TEST_CASE("bundled configs round-trip through serialization") {
  int count = 0;
  for (const auto& e : fs::directory_iterator(HELMSCAT_CONFIG_DIR)) {
    if (e.path().extension() != ".json") continue;
    CAPTURE(e.path().string());
    const ExperimentConfig cfg = load_config(e.path().string());
    const std::string text = serialize_config(cfg);
    CHECK(parse_config(text) == cfg);
    CHECK(serialize_config(parse_config(text)) == text);
    CHECK(cfg.name == e.path().stem().string());
    ++count;
  }
  CHECK(count >= 20);
}

TEST_CASE("manufactured two-disk config") {
  const ExperimentConfig cfg = load_config(std::string(HELMSCAT_CONFIG_DIR) + "/manufactured_2disk.json");
  const ExperimentResult a = run_experiment(cfg);
  CHECK(a.converged);
  CHECK(a.e_far <= 1e-8);
  CHECK(a.e_inc <= 1e-8);
  const ExperimentResult b = run_experiment(cfg);
  CHECK(csv_row(a) == csv_row(b));
}

TEST_CASE("starfish kappa=1 N=256 table row") {
  const ExperimentConfig cfg = load_config(std::string(HELMSCAT_CONFIG_DIR) + "/starfish4_k1_N256.json");
  const ExperimentResult r = run_experiment(cfg);
  const auto rows = read_csv(csv_header() + csv_row(r));
  REQUIRE(rows.size() == 2);
  const std::vector<std::string> cols = {"name", "T", "N", "d", "N_skel", "K", "E_far", "E_inc"};
  for (std::size_t i = 0; i < cols.size(); ++i) CHECK(rows[0][i] == cols[i]);
  CHECK(rows[1][1] == "4");
  CHECK(rows[1][2] == "256");
  CHECK(rows[1][3] == "0.1");
  CHECK(std::abs(std::stoi(rows[1][4]) - 39) <= 3);
  CHECK(std::stod(rows[1][5]) >= 15.0);
  CHECK(std::stod(rows[1][5]) <= 300.0);
  CHECK(std::stod(rows[1][7]) <= 1e-8);
}

TEST_CASE("grid of a single disk matches the series solution") {
  auto j = minimal();
  j["kappa"] = 5.0;
  j["scatterers"][0]["discretization"] = {{"type", "smooth"}, {"N", 128}, {"d", 0.25}};
  j["gmres_tol"] = 1e-12;
  const ExperimentConfig cfg = parse_config(j.dump());
  RunOptions opt;
  opt.grid = GridSpec{-3.05, 3.05, -2.05, 2.05, 21, 15};
  const ExperimentResult r = run_experiment(cfg, opt);
  const auto rows = read_csv(r.grid_csv);
  REQUIRE(rows.size() == 1 + 21 * 15);
  CHECK(rows[0] == std::vector<std::string>{"x", "y", "re_u_tot", "im_u_tot"});
  int inside = 0;
  double worst = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double x = std::stod(rows[i][0]);
    const double y = std::stod(rows[i][1]);
    if (std::hypot(x, y) < 1.0) {
      CHECK(rows[i][2].empty());
      CHECK(rows[i][3].empty());
      ++inside;
      continue;
    }
    const cplx u_tot(std::stod(rows[i][2]), std::stod(rows[i][3]));
    const cplx exact = disk_series(5.0, 1.0, x, y) - std::exp(kI * 5.0 * x);
    worst = std::max(worst, std::abs(u_tot - exact));
  }
  CHECK(inside > 0);
  CHECK(worst <= 1e-8);
}

TEST_CASE("grid fully inside a scatterer is empty") {
  const ExperimentConfig cfg = parse_config(kMinimal);
  RunOptions opt;
  opt.grid = GridSpec{-0.5, 0.5, -0.5, 0.5, 4, 3};
  const auto rows = read_csv(run_experiment(cfg, opt).grid_csv);
  REQUIRE(rows.size() == 13);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][2].empty());
    CHECK(rows[i][3].empty());
  }
}

TEST_CASE("command-line exit codes") {
  const fs::path dir = temp_dir("cli");
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };

  const std::string good = write("one_circle.json", kMinimal);
  CHECK(run_cli("solve " + good + " --out " + (dir / "out").string()) == 0);
  CHECK(fs::exists(dir / "out" / "one_circle.csv"));
  CHECK(fs::exists(dir / "out" / "one_circle.report.json"));

  auto bad = minimal();
  bad["kappa"] = -1.0;
  CHECK(run_cli("solve " + write("bad.json", bad.dump())) == 2);

  auto overlap = minimal();
  overlap["scatterers"].push_back(
      {{"shape", {{"kind", "circle"}}}, {"center", {2.2, 0.0}}, {"discretization", {{"type", "smooth"}, {"N", 64}, {"d", 0.2}}}});
  CHECK(run_cli("solve " + write("overlap.json", overlap.dump())) == 3);

  auto slow = minimal();
  slow["scatterers"].push_back(
      {{"shape", {{"kind", "circle"}}}, {"center", {6.0, 0.0}}, {"discretization", {{"type", "smooth"}, {"N", 64}, {"d", 0.2}}}});
  slow["max_iter"] = 1;
  slow["gmres_tol"] = 1e-14;
  CHECK(run_cli("solve " + write("slow.json", slow.dump())) == 4);

  CHECK(run_cli("solve " + good + " --grid 1,0,0,1,3,3") == 2);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("selftest") == 0);

  fs::remove_all(dir);
}
