#include "vlmult/vlmult.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

int run(const std::string& which, const vlm::RunConfig& rc, const std::string& out_path, bool reproducible) {
  std::vector<vlm::ExperimentReport> reports;
  for (const auto& id : vlm::experiment_ids()) {
    if (which != "all" && which != id) continue;
    std::cerr << "running " << id << " (" << vlm::experiment_schema(id).title << ")\n";
    reports.push_back(vlm::run_experiment(rc.experiment(id)));
    std::cerr << "  " << (reports.back().passed() ? "pass" : "FAIL") << " in " << reports.back().seconds << " s\n";
  }

  const std::filesystem::path csv_path(out_path);
  if (csv_path.has_parent_path()) std::filesystem::create_directories(csv_path.parent_path());
  std::ofstream csv(csv_path);
  if (!csv) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 2;
  }
  vlm::write_csv(csv, reports, reproducible);
  std::filesystem::path json_path = csv_path;
  json_path += ".json";
  std::ofstream js(json_path);
  js << vlm::report_json(reports, rc.seed, reproducible).dump(2) << "\n";

  bool ok = true;
  for (const auto& rep : reports) {
    for (const auto& r : rep.failures()) {
      ok = false;
      std::cout << "FAIL," << r.experiment << ',' << r.param_id << ',' << r.quantity << ',' << vlm::format_number(r.value)
                << ',' << (r.tolerance ? vlm::format_number(*r.tolerance) : "") << "\n";
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable-exponent multiplier experiments"};
  std::string which;
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  int grid_n = 0;
  double grid_l = 0.0;
  bool reproducible = false;

  std::vector<std::string> choices = vlm::experiment_ids();
  choices.push_back("all");
  app.add_option("experiment", which, "e1..e9 or all")->required()->check(CLI::IsMember(choices));
  auto* cfg_opt = app.add_option("--config", config_path, "JSON configuration (defaults are built in)");
  app.add_option("--out", out_path, "CSV output path; the JSON sidecar is written to <out>.json")->required();
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed");
  auto* n_opt = app.add_option("--grid-n", grid_n, "samples per axis")->check(CLI::Range(2, 1 << 16));
  auto* l_opt = app.add_option("--grid-l", grid_l, "grid half-width L")->check(CLI::PositiveNumber);
  app.add_flag("--reproducible", reproducible, "omit the timestamp header and timings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  vlm::Overrides ov;
  if (*seed_opt) ov.seed = seed;
  if (*n_opt) ov.grid_samples = grid_n;
  if (*l_opt) ov.grid_half_width = grid_l;

  try {
    const vlm::RunConfig rc = *cfg_opt ? vlm::load_config_file(config_path, ov) : vlm::load_config(vlm::Json::object(), ov);
    return run(which, rc, out_path, reproducible);
  } catch (const vlm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
}
