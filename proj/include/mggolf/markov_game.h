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

#ifndef MGGOLF_MARKOV_GAME_H_
#define MGGOLF_MARKOV_GAME_H_

#include <span>
#include <vector>

#include "mggolf/matrix_game.h"
#include "mggolf/rng.h"

namespace mggolf {

// Marks s_{H+1} in sampled tuples; values there are identically zero.
inline constexpr int kTerminal = -1;

// Finite-horizon two-player zero-sum Markov game with explicit tables.
// Steps are 0-based internally (h = 0..H-1). Rewards are stored already
// normalized so that every trajectory's total reward is at most 1.
class TabularMG {
 public:
  TabularMG() = default;
  // transition[h] is laid out as ((s*A + a)*B + b)*S + s_next and
  // reward[h] as (s*A + a)*B + b.
  TabularMG(int horizon, int num_states, int num_max_actions,
            int num_min_actions, int initial_state,
            std::vector<std::vector<double>> transition,
            std::vector<std::vector<double>> reward);

  int H() const { return horizon_; }
  int S() const { return num_states_; }
  int A() const { return num_a_; }
  int B() const { return num_b_; }
  int initial_state() const { return initial_state_; }
  int NumTriples() const { return num_states_ * num_a_ * num_b_; }
  int Index(int s, int a, int b) const { return (s * num_a_ + a) * num_b_ + b; }

  double Reward(int h, int s, int a, int b) const {
    return reward_[h][Index(s, a, b)];
  }
  std::span<const double> Next(int h, int s, int a, int b) const {
    return {transition_[h].data() + Index(s, a, b) * num_states_,
            static_cast<size_t>(num_states_)};
  }
  const std::vector<std::vector<double>>& transition() const {
    return transition_;
  }
  const std::vector<std::vector<double>>& reward() const { return reward_; }

 private:
  int horizon_ = 0;
  int num_states_ = 0;
  int num_a_ = 0;
  int num_b_ = 0;
  int initial_state_ = 0;
  std::vector<std::vector<double>> transition_;
  std::vector<std::vector<double>> reward_;
};

// Per-step, per-state distribution over one player's actions.
class MarkovPolicy {
 public:
  MarkovPolicy() = default;
  // Starts as one-hot(0) everywhere.
  MarkovPolicy(Side side, int horizon, int num_states, int num_actions);
  static MarkovPolicy Uniform(Side side, int horizon, int num_states,
                              int num_actions);

  Side side() const { return side_; }
  int H() const { return horizon_; }
  int S() const { return num_states_; }
  int num_actions() const { return num_actions_; }

  std::span<const double> Probs(int h, int s) const {
    return {table_.data() + (h * num_states_ + s) * num_actions_,
            static_cast<size_t>(num_actions_)};
  }
  std::span<double> MutableProbs(int h, int s) {
    return {table_.data() + (h * num_states_ + s) * num_actions_,
            static_cast<size_t>(num_actions_)};
  }
  void SetDeterministic(int h, int s, int action);
  const std::vector<double>& table() const { return table_; }

  bool operator==(const MarkovPolicy& other) const = default;

 private:
  Side side_ = Side::kMax;
  int horizon_ = 0;
  int num_states_ = 0;
  int num_actions_ = 0;
  std::vector<double> table_;
};

// v[h][s] for h = 0..H (v[H] is the terminal zero row); q[h][sab] for
// h = 0..H-1 when computed.
struct ValueTables {
  std::vector<std::vector<double>> v;
  std::vector<std::vector<double>> q;

  double Initial(int s) const { return v[0][s]; }
};

struct Sample {
  int s = 0;
  int a = 0;
  int b = 0;
  double r = 0.0;
  int next = kTerminal;
};

using Trajectory = std::vector<Sample>;

struct StepDataset {
  int h = 0;
  std::vector<Sample> tuples;
};

struct BestResponseResult {
  MarkovPolicy response;
  ValueTables values;
};

struct NashSolution {
  ValueTables values;
  MarkovPolicy mu;
  MarkovPolicy nu;
};

void CheckPolicy(const TabularMG& mg, const MarkovPolicy& policy, Side side);

// Exact backward evaluation of a product policy.
ValueTables EvaluatePair(const TabularMG& mg, const MarkovPolicy& mu,
                         const MarkovPolicy& nu);

// V^{mu,dagger}: deterministic min-player best response, lowest column on
// ties.
BestResponseResult BestResponseToMax(const TabularMG& mg,
                                     const MarkovPolicy& mu);

// V^{dagger,nu}: deterministic max-player best response.
BestResponseResult BestResponseToMin(const TabularMG& mg,
                                     const MarkovPolicy& nu);

NashSolution NashSolve(const TabularMG& mg, const SolverOptions& options = {});

// Exact step-h distributions over S x A x B (layout of TabularMG::Index)
// under the product policy, for h = 0..H-1.
std::vector<std::vector<double>> Occupancy(const TabularMG& mg,
                                           const MarkovPolicy& mu,
                                           const MarkovPolicy& nu);

Trajectory SampleEpisode(const TabularMG& mg, const MarkovPolicy& mu,
                         const MarkovPolicy& nu, Rng& rng);

// Roll in with (mu, nu) for steps before h, then play uniformly random
// actions at step h. Only the step-h tuple is returned.
Sample SampleOptionTwo(const TabularMG& mg, const MarkovPolicy& mu,
                       const MarkovPolicy& nu, int h, Rng& rng);

}  // namespace mggolf

#endif  // MGGOLF_MARKOV_GAME_H_
