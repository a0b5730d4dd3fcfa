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

#ifndef MGGOLF_OLIVE_H_
#define MGGOLF_OLIVE_H_

#include <cstdint>
#include <vector>

#include "mggolf/function_class.h"
#include "mggolf/markov_game.h"

namespace mggolf {

enum class Estimator { kSampled, kExact };

// Sign convention of the best-response routine's activation test.
enum class InnerTest {
  // Terminate when sum_h E >= -H zeta_act; activate at the lowest h with
  // E < -zeta_act. This mirrors the max-player test for the minimizing side.
  kMirrored,
  // Terminate when sum_h E <= H zeta_act, with the same test as the outer
  // loop. With a pessimistic choice of g this passes at the first phase.
  kAsWritten,
};

struct OliveParams {
  double zeta_act = 0.1;
  double zeta_elim = 0.05;
  int n_act = 100;
  int n_elim = 100;
  int K = 50;
  Estimator estimator = Estimator::kExact;
  std::uint64_t seed = 0;
  // Use the mixed saddle value V_f in the Nash target instead of the pure
  // max_a min_b.
  bool mixed_target = false;
  InnerTest inner_test = InnerTest::kMirrored;
};

struct PhaseRecord {
  int phase = 0;  // 1-based
  int f_index = 0;
  double act_sum = 0.0;
  int activated_h = -1;  // 0-based step, -1 when terminated
  int eliminated = 0;
  int survivors = 0;
  bool terminated = false;
  // Class indices dropped in this phase.
  std::vector<int> removed;
};

// Per-state target row at step h: max_a min_b f_h(s, a, b), or the mixed
// saddle value. Zero at h = H.
std::vector<double> NashTargetRow(const ValueFunction& f, int h, bool mixed);
// min_b mu_h(s)^T g_h(s, ., b); zero at h = H.
std::vector<double> BestResponseTargetRow(const ValueFunction& g,
                                          const MarkovPolicy& mu, int h);

// Average of f_h(s,a,b) - r - target(s') over a step-h dataset.
double AvgBellmanErrorNash(const StepDataset& data, const ValueFunction& f,
                           bool mixed = false);
double AvgBellmanErrorBr(const StepDataset& data, const ValueFunction& g,
                         const MarkovPolicy& mu);
// Exact expectations under the roll-in (mu_roll, nu_roll).
double AvgBellmanErrorNashExact(const TabularMG& mg, const ValueFunction& f,
                                const MarkovPolicy& mu_roll,
                                const MarkovPolicy& nu_roll, int h,
                                bool mixed = false);
double AvgBellmanErrorBrExact(const TabularMG& mg, const ValueFunction& g,
                              const MarkovPolicy& mu,
                              const MarkovPolicy& nu_roll, int h);

struct BestResponseRun {
  MarkovPolicy nu;
  int g_index = 0;
  std::vector<PhaseRecord> phases;
};

// Throws kExhausted if K phases pass without termination and
// kEmptySurvivorSet if every candidate is eliminated.
BestResponseRun OliveBestResponse(const TabularMG& mg,
                                  const FunctionClass& g_class,
                                  const MarkovPolicy& mu,
                                  const OliveParams& params);

struct OliveRun {
  MarkovPolicy mu_out;
  int output_index = 0;
  std::vector<PhaseRecord> phases;
  // Per outer phase, the inner routine's log.
  std::vector<std::vector<PhaseRecord>> inner_phases;
  // Roll-in min-player policies, one per outer phase.
  std::vector<MarkovPolicy> nu_rollin;
};

OliveRun RunOliveMg(const TabularMG& mg, const FunctionClass& f_class,
                    const FunctionClass& g_class, const OliveParams& outer,
                    const OliveParams& inner);

}  // namespace mggolf

#endif  // MGGOLF_OLIVE_H_
