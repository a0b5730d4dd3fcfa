// Copyright 2026 The mg-golf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 success, 2 configuration or usage
// error, 3 algorithm error (in every seed, for batch commands).

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mggolf/complexity.h"
#include "mggolf/envs.h"
#include "mggolf/errors.h"
#include "mggolf/harness.h"
#include "mggolf/io.h"
#include "mggolf/matrix_game.h"

namespace {

using mggolf::Json;
namespace fs = std::filesystem;

constexpr int kExitConfig = 2;
constexpr int kExitAlgorithm = 3;

int ExitFor(const mggolf::MgError& e) {
  std::cerr << "error: " << e.what() << "\n";
  return e.code() == mggolf::ErrorCode::kConfig ||
                 e.code() == mggolf::ErrorCode::kIo
             ? kExitConfig
             : kExitAlgorithm;
}

void Print(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string DirOf(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  return parent.empty() ? "." : parent.string();
}

// Inline JSON text, or a path to a JSON file.
Json InlineOrFile(const std::string& text) {
  if (!text.empty() && (text[0] == '{' || text[0] == '[')) {
    try {
      return Json::parse(text);
    } catch (const Json::exception& e) {
      mggolf::Fail(mggolf::ErrorCode::kConfig, std::string("bad JSON: ") + e.what());
    }
  }
  return mggolf::ReadJsonFile(text);
}

int Finish(const mggolf::ExperimentResult& r) {
  std::fprintf(stderr, "wall-clock %.2f s\n", r.wall_seconds);
  for (const auto& s : r.seeds) {
    if (s.ok) return 0;
  }
  for (const auto& s : r.seeds) {
    std::cerr << "seed " << s.seed << ": " << s.error << "\n";
  }
  return kExitAlgorithm;
}

int RunBatch(const std::string& config_path, const std::string& out,
             const std::string& out_dir, const std::string& report,
             bool olive) {
  const Json j = mggolf::ReadJsonFile(config_path);
  const mggolf::ExperimentConfig c = mggolf::ParseConfig(j, DirOf(config_path));
  if (olive != (c.algorithm == mggolf::Algorithm::kOlive)) {
    mggolf::Fail(mggolf::ErrorCode::kConfig,
                 olive ? "algorithm: run-olive expects \"olive\""
                       : "algorithm: run-golf expects a golf variant");
  }
  if (out.empty() == out_dir.empty()) {
    mggolf::Fail(mggolf::ErrorCode::kConfig, "give exactly one of --out, --out-dir");
  }
  if (!out.empty() && c.seeds.size() != 1) {
    mggolf::Fail(mggolf::ErrorCode::kConfig, "--out needs a single seed; use --out-dir");
  }
  const mggolf::ExperimentResult r = mggolf::RunExperiment(c);
  if (!out_dir.empty()) {
    mggolf::WriteExperiment(r, out_dir);
  } else if (r.seeds[0].ok) {
    mggolf::WriteTextFile(out, olive ? mggolf::PhaseLogCsv(r.seeds[0].olive.phases)
                                     : mggolf::RunLogCsv(r.seeds[0].golf));
  }
  if (!report.empty()) mggolf::WriteJsonFile(report, r.report);
  return Finish(r);
}

Json CertificateJson(const mggolf::DeCertificate& c) {
  Json j;
  j["sequence"] = c.sequence;
  j["eps_prime"] = c.eps_prime;
  j["witnesses"] = c.witnesses;
  return j;
}

Json CounterexampleJson(const mggolf::CounterexampleReport& r) {
  Json j;
  j["solvable"] = r.solvable;
  j["grid_res"] = r.grid_res;
  j["grid_points"] = r.grid_points;
  if (r.solvable) {
    j["upper_matrix"] = r.upper_matrix;
    j["lower_matrix"] = r.lower_matrix;
    j["mu"] = r.mu;
    j["nu"] = r.nu;
    j["max_slack"] = r.max_slack;
    j["min_slack"] = r.min_slack;
    return j;
  }
  Json grid;
  grid["nu_margin"] = r.nu_margin;
  grid["nu_worst"] = r.nu_worst;
  grid["mu_margin"] = r.mu_margin;
  grid["mu_worst"] = r.mu_worst;
  grid["lipschitz_nu"] = r.lipschitz_nu;
  grid["lipschitz_mu"] = r.lipschitz_mu;
  grid["cell_radius"] = r.cell_radius;
  grid["certified"] = r.margin_certified;
  j["grid"] = std::move(grid);
  Json det;
  det["checked"] = r.deterministic_checked;
  det["solving"] = r.deterministic_solving;
  j["deterministic_pairs"] = std::move(det);
  Json dom;
  dom["undominated_upper"] = r.undominated_upper;
  dom["undominated_lower"] = r.undominated_lower;
  j["dominance"] = std::move(dom);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-play GOLF and OLIVE for two-player zero-sum Markov games"};
  app.require_subcommand(1);

  std::string config, out, out_dir, report;
  auto* run_golf = app.add_subcommand("run-golf", "Run GOLF from a JSON config");
  run_golf->add_option("--config", config, "Experiment config")->required();
  run_golf->add_option("--out", out, "Run log CSV (single seed)");
  run_golf->add_option("--out-dir", out_dir, "Directory for per-seed logs and report");
  run_golf->add_option("--report", report, "Aggregate report JSON");

  auto* run_olive = app.add_subcommand("run-olive", "Run OLIVE from a JSON config");
  run_olive->add_option("--config", config, "Experiment config")->required();
  run_olive->add_option("--out", out, "Phase log CSV (single seed)");
  run_olive->add_option("--out-dir", out_dir, "Directory for per-seed logs and report");
  run_olive->add_option("--report", report, "Aggregate report JSON");

  std::string matrix;
  auto* solve = app.add_subcommand("solve-matrix", "Solve a zero-sum matrix game");
  solve->add_option("--matrix", matrix, "Row-major JSON matrix")->required();

  std::string mg_path, class_path, kind = "q", mode = "exact";
  double eps = 0.1;
  int max_family = 8;
  auto* dim = app.add_subcommand("dim", "Bellman-Eluder dimension of a class");
  dim->add_option("--mg", mg_path, "Game JSON")->required();
  dim->add_option("--class", class_path, "Function class JSON")->required();
  dim->add_option("--eps", eps, "Scale");
  dim->add_option("--kind", kind, "q | online | v")
      ->check(CLI::IsMember({"q", "online", "v"}));
  dim->add_option("--mode", mode, "exact | greedy")
      ->check(CLI::IsMember({"exact", "greedy"}));
  dim->add_option("--max-family", max_family, "Exact-search family cap");

  std::string custom;
  double grid = 1e-3;
  auto* verify = app.add_subcommand("verify-counterexample",
                                    "Check the perturbed rock-paper-scissors set");
  verify->add_option("--custom", custom, "JSON array of matrices");
  verify->add_option("--grid", grid, "Simplex grid resolution");

  std::string spec;
  auto* gen_mg = app.add_subcommand("gen-mg", "Write a generated game as JSON");
  gen_mg->add_option("--spec", spec, "Generator spec (inline JSON or file)")->required();
  gen_mg->add_option("--out", out, "Output path")->required();

  auto* gen_class = app.add_subcommand("gen-class", "Write a function class as JSON");
  gen_class->add_option("--mg", mg_path, "Game spec or game JSON (inline or file)")
      ->required();
  gen_class->add_option("--spec", spec, "Class spec (inline JSON or file)")->required();
  gen_class->add_option("--out", out, "Output path")->required();

  std::string knob;
  std::vector<std::string> values;
  auto* sweep = app.add_subcommand("sweep", "Repeat an experiment over knob values");
  sweep->add_option("--config", config, "Experiment config")->required();
  sweep->add_option("--knob", knob, "Dotted config path")->required();
  sweep->add_option("--values", values, "Values (parsed as JSON when possible)")
      ->delimiter(',');
  sweep->add_option("--out-dir", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run_golf) return RunBatch(config, out, out_dir, report, false);
    if (*run_olive) return RunBatch(config, out, out_dir, report, true);

    if (*solve) {
      const mggolf::Payoff m = mggolf::PayoffFromJson(mggolf::ReadJsonFile(matrix));
      const mggolf::MixedPair p = mggolf::SolveZeroSum(m);
      Json j;
      j["value"] = p.value;
      j["mu"] = p.mu;
      j["nu"] = p.nu;
      j["duality_gap"] = mggolf::DualityGap(m, p.mu, p.nu);
      Print(j);
      return 0;
    }

    if (*dim) {
      const mggolf::TabularMG mg = mggolf::MgFromJson(mggolf::ReadJsonFile(mg_path));
      const mggolf::FunctionClass cls =
          mggolf::ClassFromJson(mggolf::ReadJsonFile(class_path));
      mggolf::DimensionCaps caps;
      caps.max_family = max_family;
      caps.max_length = max_family;
      const mggolf::BeKind k = kind == "q"        ? mggolf::BeKind::kQ
                               : kind == "online" ? mggolf::BeKind::kOnline
                                                  : mggolf::BeKind::kV;
      const mggolf::BeResult r = mggolf::BeDimension(
          mg, cls, eps,
          k, mode == "exact" ? mggolf::SearchMode::kExact : mggolf::SearchMode::kGreedy,
          caps);
      Json j;
      j["dimension"] = r.dimension;
      j["step"] = r.step;
      j["per_step"] = r.per_step;
      Json cert = CertificateJson(r.certificate);
      cert["family"] = r.certificate_from_delta ? "delta" : "occupancy";
      j["certificate"] = std::move(cert);
      Print(j);
      return 0;
    }

    if (*verify) {
      std::vector<mggolf::Payoff> set;
      if (custom.empty()) {
        set = mggolf::MakePerturbedSet();
      } else {
        const Json j = mggolf::ReadJsonFile(custom);
        if (!j.is_array() || j.empty()) {
          mggolf::Fail(mggolf::ErrorCode::kConfig, "custom: expected a list of matrices");
        }
        for (const Json& m : j) set.push_back(mggolf::PayoffFromJson(m));
      }
      Print(CounterexampleJson(mggolf::VerifyCounterexample(set, grid)));
      return 0;
    }

    if (*gen_mg) {
      const mggolf::GameInstance g = mggolf::BuildGame(InlineOrFile(spec), ".");
      mggolf::WriteJsonFile(out, mggolf::MgToJson(g.mg));
      return 0;
    }

    if (*gen_class) {
      // Either a generator spec or a serialized game.
      const Json game = InlineOrFile(mg_path);
      const mggolf::GameInstance g =
          game.is_object() && !game.contains("generator") && !game.contains("path")
              ? mggolf::GameInstance{mggolf::MgFromJson(game), std::nullopt}
              : mggolf::BuildGame(game, ".");
      const mggolf::FunctionClass cls = mggolf::BuildClass(InlineOrFile(spec), g, ".");
      mggolf::WriteJsonFile(out, mggolf::ClassToJson(cls));
      return 0;
    }

    if (*sweep) {
      std::vector<Json> parsed;
      for (const std::string& v : values) {
        try {
          parsed.push_back(Json::parse(v));
        } catch (const Json::exception&) {
          parsed.push_back(Json(v));
        }
      }
      const auto table = mggolf::Sweep(mggolf::ReadJsonFile(config), knob, parsed,
                                       DirOf(config));
      Json summary = Json::array();
      bool any_ok = table.empty();
      for (size_t i = 0; i < table.size(); ++i) {
        const std::string sub =
            (fs::path(out_dir) / ("value_" + std::to_string(i))).string();
        mggolf::WriteExperiment(table[i].result, sub);
        Json row;
        row["knob"] = knob;
        row["value"] = table[i].value;
        row["dir"] = "value_" + std::to_string(i);
        row["report"] = table[i].result.report;
        summary.push_back(std::move(row));
        for (const auto& s : table[i].result.seeds) any_ok = any_ok || s.ok;
      }
      fs::create_directories(out_dir);
      mggolf::WriteJsonFile((fs::path(out_dir) / "sweep.json").string(), summary);
      return any_ok ? 0 : kExitAlgorithm;
    }
  } catch (const mggolf::MgError& e) {
    return ExitFor(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAlgorithm;
  }
  return 0;
}
