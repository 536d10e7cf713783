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

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "symtest/csv.hpp"
#include "symtest/errors.hpp"
#include "symtest/kernels.hpp"
#include "symtest/oracle.hpp"
#include "symtest/permutation.hpp"
#include "symtest/simlab.hpp"
#include "symtest/statistics.hpp"
#include "symtest/version.hpp"

namespace symtest {

// Reports keep insertion order so serialized output is stable byte for byte.
using ojson = nlohmann::ordered_json;

inline ojson kernel_to_json(const KernelSpec& spec) {
  ojson j;
  j["kind"] = spec.name();
  if (spec.kind == KernelKind::GaussianSnd) j["scale"] = spec.scale;
  return j;
}

inline KernelSpec kernel_from_json(const ojson& j) {
  KernelSpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "euclidean") {
    spec.kind = KernelKind::EuclideanNorm;
  } else if (kind == "gauss") {
    spec.kind = KernelKind::GaussianSnd;
    spec.scale = j.value("scale", 1.0);
  } else {
    raise(ErrorCode::ParseError, "unknown kernel kind '" + kind + "'");
  }
  spec.validate();
  return spec;
}

inline ojson hspec_to_json(const HSpec& h) {
  ojson j;
  j["kind"] = h.name();
  if (h.kind == HSpec::Kind::Power) j["p"] = h.p;
  return j;
}

inline ojson report_to_json(const TestReport& report) {
  ojson j;
  j["name"] = report.test_name;
  j["statistic"] = report.statistic;
  j["p_value"] = report.p_value;
  j["replicates"] = report.replicates;
  j["seed"] = report.seed;
  j["alpha"] = report.alpha;
  j["reject"] = report.reject;
  return j;
}

inline std::string reports_to_csv(const std::vector<TestReport>& reports) {
  std::string out = "test,statistic,p_value,replicates,seed,alpha,reject\n";
  for (const auto& r : reports) {
    out += r.test_name;
    out += ',' + format_double(r.statistic);
    out += ',' + format_double(r.p_value);
    out += ',' + std::to_string(r.replicates);
    out += ',' + std::to_string(r.seed);
    out += ',' + format_double(r.alpha);
    out += ',';
    out += r.reject ? "true" : "false";
    out += '\n';
  }
  return out;
}

inline ojson pmf_to_json(const Pmf1D& pmf) {
  ojson atoms = ojson::array();
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    ojson atom;
    atom["value"] = pmf.values[k];
    atom["prob"] = pmf.probs[k];
    atoms.push_back(std::move(atom));
  }
  return atoms;
}

inline DiscreteDist dist_from_json(const ojson& j) {
  DiscreteDist dist;
  if (!j.is_object() || !j.contains("support") || !j.contains("probs")) {
    raise(ErrorCode::InvalidDistribution,
          "expected an object with 'support' and 'probs'");
  }
  for (const auto& point : j.at("support")) {
    std::vector<double> coords;
    if (point.is_number()) {
      coords.push_back(point.get<double>());
    } else if (point.is_array()) {
      for (const auto& c : point) coords.push_back(c.get<double>());
    } else {
      raise(ErrorCode::InvalidDistribution, "support points must be numbers or arrays");
    }
    dist.support.push_back(std::move(coords));
  }
  for (const auto& p : j.at("probs")) dist.probs.push_back(p.get<double>());
  dist.validate();
  return dist;
}

inline GeneratorSpec generator_from_json(const ojson& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "gaussian") {
    std::vector<double> mean;
    for (const auto& c : j.at("mean")) mean.push_back(c.get<double>());
    return GeneratorSpec::gaussian(std::move(mean), j.at("scale").get<double>());
  }
  if (kind == "uniform-cube") {
    return GeneratorSpec::uniform_cube(j.at("lo").get<double>(), j.at("hi").get<double>());
  }
  if (kind == "gaussian-mixture") {
    return GeneratorSpec::gaussian_mixture(j.at("shift").get<double>());
  }
  raise(ErrorCode::InvalidScenario, "unknown generator kind '" + kind + "'");
}

inline HSpec hspec_from_name(const std::string& name) {
  if (name == "power2") return HSpec::power(2.0);
  if (name == "expm") return HSpec::expm();
  raise(ErrorCode::InvalidH, "unknown h '" + name + "', expected power2 or expm");
}

inline Scenario scenario_from_json(const ojson& j) {
  Scenario sc;
  sc.name = j.at("name").get<std::string>();
  sc.generator_x = generator_from_json(j.at("generator_x"));
  sc.generator_y = generator_from_json(j.at("generator_y"));
  sc.n = j.at("n").get<std::size_t>();
  sc.m = j.at("m").get<std::size_t>();
  sc.dim = j.at("dim").get<std::size_t>();
  sc.kernel = kernel_from_json(j.at("kernel"));
  for (const auto& name : j.at("tests")) {
    const auto parsed = parse_test_name(name.get<std::string>());
    if (!parsed) {
      raise(ErrorCode::InvalidScenario,
            "unknown test '" + name.get<std::string>() + "'");
    }
    sc.tests.push_back(*parsed);
  }
  sc.h = j.contains("h") ? hspec_from_name(j.at("h").get<std::string>()) : HSpec::power(2.0);
  sc.permutations = j.at("B").get<std::uint64_t>();
  sc.trials = j.at("trials").get<std::uint64_t>();
  sc.alpha = j.at("alpha").get<double>();
  sc.seed = j.at("seed").get<std::uint64_t>();
  sc.validate();
  return sc;
}

inline std::vector<Scenario> scenarios_from_json(const ojson& j) {
  std::vector<Scenario> out;
  if (j.is_array()) {
    for (const auto& item : j) out.push_back(scenario_from_json(item));
  } else if (j.is_object() && j.contains("scenarios")) {
    for (const auto& item : j.at("scenarios")) out.push_back(scenario_from_json(item));
  } else {
    out.push_back(scenario_from_json(j));
  }
  if (out.empty()) raise(ErrorCode::InvalidScenario, "no scenarios given");
  return out;
}

inline ojson generator_to_json(const GeneratorSpec& gen) {
  ojson j;
  j["kind"] = gen.name();
  switch (gen.kind) {
    case GeneratorSpec::Kind::Gaussian:
      j["mean"] = gen.mean;
      j["scale"] = gen.scale;
      break;
    case GeneratorSpec::Kind::UniformCube:
      j["lo"] = gen.lo;
      j["hi"] = gen.hi;
      break;
    case GeneratorSpec::Kind::GaussianMixture:
      j["shift"] = gen.shift;
      break;
  }
  return j;
}

// Full scenario parameterization; a study report embedding these replays
// exactly.
inline ojson scenario_to_json(const Scenario& sc) {
  ojson j;
  j["name"] = sc.name;
  j["generator_x"] = generator_to_json(sc.generator_x);
  j["generator_y"] = generator_to_json(sc.generator_y);
  j["n"] = sc.n;
  j["m"] = sc.m;
  j["dim"] = sc.dim;
  j["kernel"] = kernel_to_json(sc.kernel);
  ojson tests = ojson::array();
  for (const TestStat t : sc.tests) tests.push_back(test_name(t));
  j["tests"] = std::move(tests);
  j["h"] = sc.h.kind == HSpec::Kind::Power ? "power2" : "expm";
  j["B"] = sc.permutations;
  j["trials"] = sc.trials;
  j["alpha"] = sc.alpha;
  j["seed"] = sc.seed;
  return j;
}

// Wall times vary run to run, so they are emitted only on request; default
// reports are byte-identical replays of the same seed.
inline ojson study_to_json(const StudyReport& report, bool include_timing) {
  ojson rows = ojson::array();
  for (const auto& row : report.rows) {
    ojson r;
    r["scenario"] = row.scenario;
    r["test"] = row.test;
    r["trials"] = row.trials;
    r["rejections"] = row.rejections;
    r["rejection_rate"] = row.rejection_rate;
    r["mc_stderr"] = row.mc_stderr;
    r["mean_statistic"] = row.mean_statistic;
    if (include_timing) r["wall_time_sec"] = row.wall_time_sec;
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::string study_to_csv(const StudyReport& report, bool include_timing) {
  std::string out = "scenario,test,trials,rejections,rejection_rate,mc_stderr,mean_statistic";
  if (include_timing) out += ",wall_time_sec";
  out += '\n';
  for (const auto& row : report.rows) {
    out += row.scenario;
    out += ',' + row.test;
    out += ',' + std::to_string(row.trials);
    out += ',' + std::to_string(row.rejections);
    out += ',' + format_double(row.rejection_rate);
    out += ',' + format_double(row.mc_stderr);
    out += ',' + format_double(row.mean_statistic);
    if (include_timing) out += ',' + format_double(row.wall_time_sec);
    out += '\n';
  }
  return out;
}

}  // namespace symtest
