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

#ifndef MGGOLF_ENVS_H_
#define MGGOLF_ENVS_H_

#include <cstdint>
#include <vector>

#include "mggolf/function_class.h"
#include "mggolf/markov_game.h"
#include "mggolf/matrix_game.h"

namespace mggolf {

// stored = scale * original + offset.
struct ScaleMap {
  double scale = 1.0;
  double offset = 0.0;

  double ToStored(double v) const { return scale * v + offset; }
  double ToOriginal(double v) const { return (v - offset) / scale; }
};

Payoff RpsPayoff();

struct RpsGame {
  TabularMG mg;
  ScaleMap map;
};

// One state, H = 1, reward (M + 1) / 2 for the rock-paper-scissors payoff.
RpsGame MakeRps();

// {M*, M1, ..., M6}: the rock-paper-scissors payoff and its six single-entry
// perturbations to +/-1.1.
std::vector<Payoff> MakePerturbedSet();

struct CounterexampleReport {
  bool solvable = false;
  double grid_res = 0.0;
  int grid_points = 0;

  // Solving tuple when solvable.
  int upper_matrix = -1;
  int lower_matrix = -1;
  std::vector<double> mu;
  std::vector<double> nu;
  double max_slack = 0.0;  // mu^T Mup nu - max_{M, mu'} mu'^T M nu
  double min_slack = 0.0;  // min_{M, nu'} mu^T M nu' - mu^T Mlow nu

  // Refutation: grid margins with Lipschitz extrapolation.
  double nu_margin = 0.0;
  std::vector<double> nu_worst;
  double mu_margin = 0.0;
  std::vector<double> mu_worst;
  double lipschitz_nu = 0.0;
  double lipschitz_mu = 0.0;
  double cell_radius = 0.0;
  bool margin_certified = false;
  // Deterministic pairs: |A| |B| action pairs times all (upper, lower)
  // matrix pairs.
  int deterministic_checked = 0;
  int deterministic_solving = 0;
  // Matrices not entrywise dominated for the max (upper) and min (lower)
  // roles.
  std::vector<int> undominated_upper;
  std::vector<int> undominated_lower;
};

// Decides whether some (Mup, Mlow, mu, nu) with Mup, Mlow from the set makes
// mu a best response to nu against every matrix in the set and nu a best
// response to mu likewise. Throws kInconclusive if neither a solution nor a
// refutation certificate is found at this resolution.
CounterexampleReport VerifyCounterexample(const std::vector<Payoff>& set,
                                          double grid_res);

// Re-evaluates a claimed solving tuple; returns (max_slack, min_slack).
std::pair<double, double> SubproblemSlacks(const std::vector<Payoff>& set,
                                           int upper, int lower,
                                           const std::vector<double>& mu,
                                           const std::vector<double>& nu);

// Dirichlet(1) transition rows over a random support of
// max(1, S - round(sparsity * S)) successors; rewards uniform in [0, 1/H].
TabularMG MakeRandomTabular(int S, int A, int B, int H, double sparsity,
                            std::uint64_t seed);

// Each (h, s) carries a strict pure saddle (a*, b*) in the rewards, and the
// action-dependent part of the transitions has weight mix, small enough that
// continuation values cannot move the saddle.
// With deterministic set, the shared part of each row is a point mass and
// mix = 0 gives an action-independent deterministic chain.
TabularMG MakeSaddleBenchmark(int S, int A, int B, int H, double mix,
                              std::uint64_t seed, bool deterministic = false);

// True when every f_h(s, ., .) has a strict pure saddle point.
bool HasStrictPureSaddles(const ValueFunction& f);

// {Q*} followed by random functions with a strict pure saddle at a random
// cell of every (h, s), then Q^{mu_f, dagger} for each added f. Intended for
// games whose transitions do not depend on actions, where those best
// responses keep strict pure saddles.
FunctionClass PureSaddleClass(const TabularMG& mg, int num_random,
                              std::uint64_t seed);

struct LinearGame {
  TabularMG mg;
  LinearClassSpec spec;
  // psi[h][i * S + s'] and reward weights theta_r[h][i].
  std::vector<std::vector<double>> psi;
  std::vector<std::vector<double>> theta_r;
};

// Latent-mixture construction: phi_h(s,a,b) is a distribution over d latent
// indices, P_h = sum_i phi_i psi_h(i, .), r_h = phi^T theta_r_h. The class
// radius is sqrt(d) so backups of clamped members stay representable.
LinearGame MakeLinearMg(int d, int S, int A, int B, int H, std::uint64_t seed);

struct BlockSpec {
  int m = 1;
  // decoder[o] is the latent state of observation o.
  std::vector<int> decoder;
  // emission[o] is P(o | decoder[o]); empty means uniform within blocks.
  std::vector<double> emission;
};

// Observed game whose rows and columns collapse under the decoder.
TabularMG MakeBlockFromLatent(const TabularMG& latent, const BlockSpec& spec);
TabularMG MakeBlockMg(const BlockSpec& spec, int A, int B, int H,
                      std::uint64_t seed);

struct TabularClassOptions {
  int grid_levels = 30;
  int num_random = 20;
  int closure_iterations = 3;
  std::uint64_t seed = 0;
};

// Rounds every entry of q to the grid {k / g} inside [0, (H - h) / H].
ValueFunction RoundToGrid(const ValueFunction& q, int grid_levels);

// Index 0 is the rounded Q*, then num_random uniform grid functions, then
// rounded best-response values Q^{mu_f, dagger} added by the closure passes.
FunctionClass TabularFunctionClass(const TabularMG& mg,
                                   const TabularClassOptions& options);

// Auxiliary class whose step-h slices are the distinct exact backups
// T_h f and T^{mu_f}_h f' for f, f' in F (shorter steps padded by
// repetition), so completeness holds with zero error.
FunctionClass BellmanClosureClass(const TabularMG& mg,
                                  const FunctionClass& f_class);

}  // namespace mggolf

#endif  // MGGOLF_ENVS_H_
