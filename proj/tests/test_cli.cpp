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

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Runs the CLI with stderr folded into stdout.
RunResult run_cli(const std::string& args) {
  const std::string command = std::string(SYMTEST_CLI_PATH) + " " + args + " 2>&1";
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  while (std::size_t got = fread(buffer, 1, sizeof(buffer), pipe)) {
    result.output.append(buffer, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("symtest-cli-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name, const std::string& contents) const {
    const fs::path p = path / name;
    std::ofstream out(p, std::ios::binary);
    out << contents;
    return p.string();
  }
};

const char* kXCsv = "0.1,0.2\n1.3,-0.4\n0.8,0.9\n-1.1,0.3\n0.5,0.5\n-0.2,1.4\n";
const char* kYCsv = "1.1,0.1\n-0.3,0.7\n0.9,-0.8\n0.4,1.2\n-0.6,0.2\n1.5,0.6\n";

}  // namespace

TEST_CASE("test subcommand emits a complete json report", "[cli]") {
  TempDir dir;
  const auto x = dir.file("x.csv", kXCsv);
  const auto y = dir.file("y.csv", kYCsv);

  const auto result =
      run_cli("test " + x + " " + y + " --seed 1 --permutations 99 --alpha 0.05");
  REQUIRE(result.exit_code == 0);

  const auto doc = nlohmann::json::parse(result.output);
  CHECK(doc.at("schema") == 1);
  CHECK(doc.at("command") == "test");
  CHECK(doc.at("seed") == 1);
  CHECK(doc.at("permutations") == 99);
  CHECK(doc.at("kernel").at("kind") == "euclidean");
  CHECK(doc.at("n") == 6);
  CHECK(doc.at("s_sample").at("draws") == 3);
  REQUIRE(doc.at("tests").size() == 5);
  for (const auto& test : doc.at("tests")) {
    const double p = test.at("p_value").get<double>();
    CHECK(p >= 1.0 / 100.0);
    CHECK(p <= 1.0);
    CHECK(test.at("reject").get<bool>() == (p <= 0.05));
    CHECK(test.at("replicates") == 99);
  }
}

TEST_CASE("identical invocations produce identical bytes", "[cli]") {
  TempDir dir;
  const auto x = dir.file("x.csv", kXCsv);
  const auto y = dir.file("y.csv", kYCsv);
  const std::string args = "test " + x + " " + y + " --seed 7 --permutations 49";
  const auto first = run_cli(args);
  const auto second = run_cli(args);
  REQUIRE(first.exit_code == 0);
  CHECK(first.output == second.output);
}

TEST_CASE("identical files give zero energy and p = 1", "[cli]") {
  TempDir dir;
  const auto x = dir.file("x.csv", kXCsv);
  const auto y = dir.file("y.csv", kYCsv);
  (void)y;
  const auto result = run_cli("test " + x + " " + x + " --seed 3 --permutations 99");
  REQUIRE(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.output);
  for (const auto& test : doc.at("tests")) {
    if (test.at("name") == "energy") {
      CHECK(test.at("statistic").get<double>() == 0.0);
      CHECK(test.at("p_value").get<double>() == 1.0);
    }
  }
}

TEST_CASE("dimension mismatch fails with a nonzero exit", "[cli]") {
  TempDir dir;
  const auto x = dir.file("x.csv", "1,2\n3,4\n5,6\n7,8\n");
  const auto bad = dir.file("bad.csv", "1,2,3\n4,5,6\n7,8,9\n0,1,2\n");
  const auto result = run_cli("test " + x + " " + bad);
  CHECK(result.exit_code != 0);
  CHECK(result.output.find("DimensionMismatch") != std::string::npos);
}

TEST_CASE("missing input fails cleanly", "[cli]") {
  TempDir dir;
  const auto x = dir.file("x.csv", kXCsv);
  const auto result = run_cli("test " + x + " " + (dir.path / "absent.csv").string());
  CHECK(result.exit_code != 0);
  CHECK(result.output.find("FileNotFound") != std::string::npos);
}

TEST_CASE("csv format emits one row per test", "[cli]") {
  TempDir dir;
  const auto x = dir.file("x.csv", kXCsv);
  const auto y = dir.file("y.csv", kYCsv);
  const auto result =
      run_cli("test " + x + " " + y + " --format csv --permutations 19 --test energy");
  REQUIRE(result.exit_code == 0);
  CHECK(result.output.rfind("test,statistic,p_value,replicates,seed,alpha,reject\n", 0) == 0);
  CHECK(result.output.find("energy,") != std::string::npos);
}

TEST_CASE("oracle subcommand reproduces the worked discrete case", "[cli]") {
  TempDir dir;
  const auto dists = dir.file("dists.json",
                              R"({"x": {"support": [[0], [1]], "probs": [0.5, 0.5]},
                                  "y": {"support": [[0]], "probs": [1.0]}})");
  const auto result = run_cli("oracle " + dists);
  REQUIRE(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.output);
  CHECK(doc.at("symmetric") == false);
  CHECK(doc.at("cf_residual").get<double>() <= 1e-12);
  REQUIRE(doc.at("pmf").size() == 3);
  CHECK(doc.at("pmf")[0].at("value") == -1.0);
  CHECK(doc.at("pmf")[0].at("prob") == 0.125);
  CHECK(doc.at("pmf")[1].at("prob") == 0.625);
  CHECK(doc.at("pmf")[2].at("prob") == 0.25);
}

TEST_CASE("oracle rejects probabilities that do not sum to one", "[cli]") {
  TempDir dir;
  const auto dists = dir.file("dists.json",
                              R"({"x": {"support": [[0], [1]], "probs": [0.5, 0.4]},
                                  "y": {"support": [[0]], "probs": [1.0]}})");
  const auto result = run_cli("oracle " + dists);
  CHECK(result.exit_code != 0);
  CHECK(result.output.find("InvalidDistribution") != std::string::npos);
}

TEST_CASE("study subcommand runs a scenario file", "[cli]") {
  TempDir dir;
  const auto scenario = dir.file("scenario.json", R"({
    "name": "cli-smoke",
    "generator_x": {"kind": "gaussian", "mean": [0, 0], "scale": 1.0},
    "generator_y": {"kind": "gaussian", "mean": [1.5, 0], "scale": 1.0},
    "n": 20, "m": 20, "dim": 2,
    "kernel": {"kind": "euclidean"},
    "tests": ["energy", "wilcoxon"],
    "B": 49, "trials": 10, "alpha": 0.05, "seed": 5
  })");
  const auto result = run_cli("study " + scenario);
  REQUIRE(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.output);
  REQUIRE(doc.at("rows").size() == 2);
  for (const auto& row : doc.at("rows")) {
    CHECK(row.at("trials") == 10);
    CHECK(row.contains("rejection_rate"));
    CHECK_FALSE(row.contains("wall_time_sec"));  // only with --timing
  }

  const auto csv = run_cli("study " + scenario + " --format csv");
  REQUIRE(csv.exit_code == 0);
  CHECK(csv.output.rfind("scenario,test,", 0) == 0);
}
