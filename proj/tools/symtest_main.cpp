// Copyright 2026 the symtest authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symtest/io_json.hpp"
#include "symtest/symtest.hpp"

namespace {

using symtest::ojson;

struct CommonOptions {
  std::string kernel_name = "euclidean";
  double scale = 1.0;
  std::uint64_t permutations = 999;
  std::uint64_t seed = 0;
  double alpha = 0.05;
  std::string h_name = "power2";
  std::string out_path;  // empty -> stdout
  std::string format = "json";
};

symtest::KernelSpec make_kernel(const CommonOptions& opt) {
  if (opt.kernel_name == "euclidean") return symtest::KernelSpec::euclidean();
  return symtest::KernelSpec::gaussian(opt.scale);
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    symtest::raise(symtest::ErrorCode::FileNotFound, "cannot write '" + out_path + "'");
  }
  out << payload;
}

std::vector<symtest::TestStat> resolve_tests(const std::vector<std::string>& names) {
  std::vector<symtest::TestStat> tests;
  for (const auto& name : names) {
    if (name == "all") {
      tests.assign(std::begin(symtest::kAllTests), std::end(symtest::kAllTests));
      return tests;
    }
    const auto parsed = symtest::parse_test_name(name);
    if (!parsed) {
      symtest::raise(symtest::ErrorCode::InvalidScenario, "unknown test '" + name + "'");
    }
    tests.push_back(*parsed);
  }
  return tests;
}

// Stream-id layout for one `test` invocation, mirroring the per-trial layout
// of the study runner: S sample at id 0, test k's calibration base at
// 1 + k * (B + 1) with k the canonical test index.
int run_test_command(const CommonOptions& opt, const std::string& x_path,
                     const std::string& y_path, const std::vector<std::string>& test_names) {
  const symtest::KernelSpec kernel = make_kernel(opt);
  kernel.validate();
  const symtest::HSpec h = symtest::hspec_from_name(opt.h_name);
  const std::vector<symtest::TestStat> tests = resolve_tests(test_names);
  if (opt.permutations < 1) {
    symtest::raise(symtest::ErrorCode::ZeroReplicates, "need --permutations >= 1");
  }

  const symtest::Dataset x = symtest::ingest_csv(x_path);
  const symtest::Dataset y = symtest::ingest_csv(y_path);
  symtest::validate_pair(x, y);

  bool wants_s = false;
  for (const auto t : tests) wants_s |= t != symtest::TestStat::Energy;

  symtest::SDraws s;
  if (wants_s) {
    s = symtest::build_s_sample(x, y, kernel, symtest::derive_stream(opt.seed, 0));
  }

  std::vector<symtest::TestReport> reports;
  for (const auto t : tests) {
    const std::uint64_t base =
        1 + static_cast<std::uint64_t>(symtest::test_index(t)) * (opt.permutations + 1);
    if (t == symtest::TestStat::Energy) {
      reports.push_back(symtest::label_permutation_test(
          x, y, kernel, opt.permutations, symtest::derive_stream(opt.seed, base), opt.alpha));
    } else {
      reports.push_back(symtest::sign_flip_test(
          s, symtest::SymmetrySelector{t, h}, opt.permutations,
          symtest::derive_stream(opt.seed, base), opt.alpha));
    }
  }

  if (opt.format == "csv") {
    emit(symtest::reports_to_csv(reports), opt.out_path);
    return 0;
  }

  ojson doc;
  doc["schema"] = symtest::kReportSchema;
  doc["version"] = symtest::kVersion;
  doc["command"] = "test";
  doc["inputs"] = {{"x", x_path}, {"y", y_path}};
  doc["n"] = x.rows();
  doc["m"] = y.rows();
  doc["dim"] = x.dim();
  doc["kernel"] = symtest::kernel_to_json(kernel);
  doc["h"] = symtest::hspec_to_json(h);
  doc["seed"] = opt.seed;
  doc["alpha"] = opt.alpha;
  doc["permutations"] = opt.permutations;
  if (wants_s) {
    ojson sj;
    sj["draws"] = s.values.size();
    sj["seed"] = s.seed;
    sj["stream_id"] = s.stream_id;
    doc["s_sample"] = std::move(sj);
  }
  ojson tests_json = ojson::array();
  for (const auto& report : reports) tests_json.push_back(symtest::report_to_json(report));
  doc["tests"] = std::move(tests_json);
  emit(doc.dump(2) + "\n", opt.out_path);
  return 0;
}

int run_study_command(const CommonOptions& opt, const std::string& scenario_path,
                      bool timing) {
  std::ifstream in(scenario_path, std::ios::binary);
  if (!in) {
    symtest::raise(symtest::ErrorCode::FileNotFound, "cannot open '" + scenario_path + "'");
  }
  ojson parsed;
  try {
    parsed = ojson::parse(in);
  } catch (const nlohmann::json::exception& e) {
    symtest::raise(symtest::ErrorCode::ParseError, e.what());
  }
  const std::vector<symtest::Scenario> scenarios = symtest::scenarios_from_json(parsed);
  const symtest::StudyReport report =
      symtest::run_study(std::span<const symtest::Scenario>(scenarios));

  if (opt.format == "csv") {
    emit(symtest::study_to_csv(report, timing), opt.out_path);
    return 0;
  }
  ojson doc;
  doc["schema"] = symtest::kReportSchema;
  doc["version"] = symtest::kVersion;
  doc["command"] = "study";
  ojson scenario_list = ojson::array();
  for (const auto& sc : scenarios) scenario_list.push_back(symtest::scenario_to_json(sc));
  doc["scenarios"] = std::move(scenario_list);
  doc["rows"] = symtest::study_to_json(report, timing);
  emit(doc.dump(2) + "\n", opt.out_path);
  return 0;
}

int run_oracle_command(const CommonOptions& opt, const std::string& dists_arg,
                       double tol, double grid_max, double grid_step) {
  const symtest::KernelSpec kernel = make_kernel(opt);
  kernel.validate();

  std::string text;
  if (std::filesystem::exists(dists_arg)) {
    std::ifstream in(dists_arg, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  } else {
    text = dists_arg;  // literal JSON on the command line
  }
  ojson parsed;
  try {
    parsed = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    symtest::raise(symtest::ErrorCode::ParseError, e.what());
  }
  const symtest::DiscreteDist px = symtest::dist_from_json(parsed.at("x"));
  const symtest::DiscreteDist py = symtest::dist_from_json(parsed.at("y"));

  const symtest::Pmf1D pmf = symtest::exact_s_pmf(px, py, kernel);
  std::vector<double> grid;
  for (double t = -grid_max; t <= grid_max + 1e-9; t += grid_step) grid.push_back(t);
  const double residual = symtest::cf_identity_check(px, py, kernel, grid);

  ojson doc;
  doc["schema"] = symtest::kReportSchema;
  doc["version"] = symtest::kVersion;
  doc["command"] = "oracle";
  doc["kernel"] = symtest::kernel_to_json(kernel);
  doc["tol"] = tol;
  doc["cf_grid"] = {{"max", grid_max}, {"step", grid_step}};
  doc["pmf"] = symtest::pmf_to_json(pmf);
  doc["symmetric"] = symtest::symmetry_verdict(pmf, tol);
  doc["cf_residual"] = residual;
  emit(doc.dump(2) + "\n", opt.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multivariate two-sample testing via one-dimensional symmetry"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(symtest::kVersion));

  CommonOptions opt;
  const auto add_common = [&opt](CLI::App* cmd, bool with_kernel) {
    if (with_kernel) {
      cmd->add_option("--kernel", opt.kernel_name, "Distance kernel")
          ->check(CLI::IsMember({"euclidean", "gauss"}))
          ->capture_default_str();
      cmd->add_option("--scale", opt.scale, "Gaussian kernel scale")
          ->capture_default_str();
    }
    cmd->add_option("--out", opt.out_path, "Output path (default: stdout)");
    cmd->add_option("--format", opt.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  };

  // test
  std::string x_path, y_path;
  std::vector<std::string> test_names{"all"};
  CLI::App* test_cmd = app.add_subcommand("test", "Run two-sample tests on two CSV files");
  test_cmd->set_help_flag("--help", "Print help");  // frees -h / --h for the convex h choice
  test_cmd->add_option("x", x_path, "CSV with sample X")->required();
  test_cmd->add_option("y", y_path, "CSV with sample Y")->required();
  test_cmd->add_option("--test", test_names,
                       "Tests to run: sign-cf wilcoxon hfunc ks-fg energy all")
      ->capture_default_str();
  test_cmd->add_option("--permutations", opt.permutations, "Replicates B")
      ->capture_default_str();
  test_cmd->add_option("--seed", opt.seed, "RNG seed")->capture_default_str();
  test_cmd->add_option("--alpha", opt.alpha, "Level")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  test_cmd->add_option("--h", opt.h_name, "Convex h for hfunc")
      ->check(CLI::IsMember({"power2", "expm"}))
      ->capture_default_str();
  add_common(test_cmd, true);

  // study
  std::string scenario_path;
  bool timing = false;
  CLI::App* study_cmd = app.add_subcommand("study", "Run a Monte Carlo size/power study");
  study_cmd->add_option("scenarios", scenario_path, "Scenario JSON file")->required();
  study_cmd->add_flag("--timing", timing, "Include wall times in the report");
  add_common(study_cmd, false);

  // oracle
  std::string dists_arg;
  double tol = 1e-12, grid_max = 3.0, grid_step = 0.25;
  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "Exact law of S for finite discrete distributions");
  oracle_cmd->add_option("dists", dists_arg, "JSON file or literal with {\"x\":…, \"y\":…}")
      ->required();
  oracle_cmd->add_option("--tol", tol, "Symmetry tolerance")->capture_default_str();
  oracle_cmd->add_option("--grid-max", grid_max, "CF grid half-width")->capture_default_str();
  oracle_cmd->add_option("--grid-step", grid_step, "CF grid step")->capture_default_str();
  add_common(oracle_cmd, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (test_cmd->parsed()) return run_test_command(opt, x_path, y_path, test_names);
    if (study_cmd->parsed()) return run_study_command(opt, scenario_path, timing);
    if (oracle_cmd->parsed()) return run_oracle_command(opt, dists_arg, tol, grid_max, grid_step);
  } catch (const symtest::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
