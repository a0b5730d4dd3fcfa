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

#ifndef MGGOLF_HARNESS_H_
#define MGGOLF_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mggolf/function_class.h"
#include "mggolf/golf.h"
#include "mggolf/io.h"
#include "mggolf/markov_game.h"
#include "mggolf/olive.h"

namespace mggolf {

inline constexpr char kRunLogHeader[] = "# mg-golf runlog v1";
inline constexpr char kPhaseLogHeader[] = "# mg-golf phaselog v1";

// A game together with the linear spec when the generator provides one.
struct GameInstance {
  TabularMG mg;
  std::optional<LinearClassSpec> linear;
};

// Accepts a file path (relative to base_dir) or an object with
// "generator": saddle | random | rps | linear | block.
GameInstance BuildGame(const Json& spec, const std::string& base_dir = ".");

// "tabular" | "pure_saddle" | "linear_cover" | {"path": ...}.
FunctionClass BuildClass(const Json& spec, const GameInstance& game,
                         const std::string& base_dir = ".");

// "closure" (default) | "same" | any class spec.
FunctionClass BuildAuxClass(const Json& spec, const GameInstance& game,
                            const FunctionClass& f_class,
                            const std::string& base_dir = ".");

enum class Algorithm { kGolf, kGolfAdversarial, kOlive };

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::kGolf;
  Json mg;
  Json f_class;
  Json g_class;
  std::string base_dir = ".";
  int K = 100;
  double c_beta = 1.0;
  double c_delta = 1.0;
  double delta_eps = 0.1;
  double delta_conf = 0.05;
  SamplingOption option = SamplingOption::kOne;
  // Dimension plugged into the gate threshold; Option II multiplies it by
  // |A||B|.
  double be_dim = 1.0;
  bool gate = true;
  std::vector<std::uint64_t> seeds;
  // Adversary for golf-adversarial: "uniform" or "random_pure".
  std::string adversary = "uniform";
  OliveParams olive_outer;
  OliveParams olive_inner;
};

// Validates and fills defaults; errors carry the dotted field path.
ExperimentConfig ParseConfig(const Json& j, const std::string& base_dir = ".");

struct ClassAudit {
  int f_size = 0;
  int g_size = 0;
  double eps_real = 0.0;
  double eps_comp = 0.0;
  int q_star_index = 0;
};

struct SeedOutcome {
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  RunLog golf;
  OliveRun olive;
  // Exact max-player gap V*_1 - V^{mu_out, dagger}_1 for OLIVE.
  double olive_gap = 0.0;
};

struct Quartiles {
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
};

// Linear interpolation between order statistics.
Quartiles ComputeQuartiles(std::vector<double> values);

struct ExperimentResult {
  ExperimentConfig config;
  ClassAudit audit;
  double beta = 0.0;
  double delta_gate = 0.0;
  double v_star = 0.0;
  std::vector<SeedOutcome> seeds;
  Json report;
  double wall_seconds = 0.0;
};

// Worker count: MG_GOLF_THREADS if set and positive, else the hardware
// concurrency, capped by the number of jobs.
int WorkerCount(int jobs);

ExperimentResult RunExperiment(const ExperimentConfig& config);

std::string RunLogCsv(const RunLog& log);
std::string PhaseLogCsv(const std::vector<PhaseRecord>& phases);

// Writes seed_<seed>.csv for each successful seed and report.json into
// out_dir (created if missing).
void WriteExperiment(const ExperimentResult& result, const std::string& out_dir);

// Replaces the value at a dotted path ("olive.zeta_act", "K").
Json SetKnob(Json config, const std::string& path, const Json& value);

struct SweepEntry {
  Json value;
  ExperimentResult result;
};

std::vector<SweepEntry> Sweep(const Json& config, const std::string& knob,
                              const std::vector<Json>& values,
                              const std::string& base_dir = ".");

}  // namespace mggolf

#endif  // MGGOLF_HARNESS_H_
