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

#ifndef MGGOLF_GOLF_H_
#define MGGOLF_GOLF_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mggolf/function_class.h"
#include "mggolf/markov_game.h"

namespace mggolf {

enum class SamplingOption { kOne, kTwo };

struct GolfConfig {
  int K = 1;
  double beta = 0.0;
  double delta_gate = 0.0;
  SamplingOption option = SamplingOption::kOne;
  std::uint64_t seed = 0;
  bool gate_enabled = true;
  // Class index whose membership in C^k is recorded each episode (-1: none).
  int track_index = -1;
  SolverOptions solver;
};

struct EpisodeRecord {
  int k = 0;  // 1-based
  int f_index = 0;
  double v_upper = 0.0;
  double v_lower = 0.0;
  double regret_inc = 0.0;
  double regret_cum = 0.0;
  int conf_size = 0;
  bool gated = false;
  // 1/0 when a track index is configured, -1 otherwise.
  int tracked_in_conf = -1;
};

struct RunLog {
  std::vector<EpisodeRecord> episodes;
  double v_star = 0.0;
  // Index into F of the certified output, or -1 when the gate never fired.
  int output_index = -1;
  double output_suboptimality = 0.0;
};

// c * (log(K H |F| |G| / delta) + K eps_comp^2 + K eps_real^2).
double BetaFromFormula(double c_beta, int K, int H, int f_size, int g_size,
                       double delta_conf, double eps_comp, double eps_real);
// c' * (H sqrt(d beta / K) + eps); the V-type variant multiplies d by |A||B|.
double DeltaFromFormula(double c_delta, int H, double dim, double beta, int K,
                        double eps);

// sum over D_h of (xi_h(s,a,b) - r - V_{zeta,h+1}(s'))^2.
double SquaredLoss(const StepDataset& data, std::span<const double> xi_h,
                   const ValueFunction& zeta,
                   const SolverOptions& options = {});
// Same with the V^mu target.
double MuSquaredLoss(const StepDataset& data, std::span<const double> xi_h,
                     const ValueFunction& zeta, const MarkovPolicy& mu);

// Straight loss-based confidence sets (no caching). datasets[h] is D_h.
std::vector<int> BuildConfidenceSet(const FunctionClass& f_class,
                                    const FunctionClass& g_class,
                                    const std::vector<StepDataset>& datasets,
                                    double beta);
std::vector<int> BuildMuConfidenceSet(const FunctionClass& f_class,
                                      const FunctionClass& g_class,
                                      const std::vector<StepDataset>& datasets,
                                      double beta, const MarkovPolicy& mu);

struct ExploiterResult {
  MarkovPolicy nu;
  double v_lower = 0.0;
  int f_tilde = 0;
  std::vector<int> confidence_set;
};

ExploiterResult ComputeExploiter(const FunctionClass& f_class,
                                 const FunctionClass& g_class, double beta,
                                 const std::vector<StepDataset>& datasets,
                                 const MarkovPolicy& mu, int initial_state);

// Per-step sufficient statistics of a dataset, grouped by (s,a,b,s').
// Counts are integers; reward sums accumulate in insertion order, so stats
// updated tuple by tuple equal stats rebuilt from the same sequence.
class StepStats {
 public:
  StepStats() = default;
  StepStats(int num_triples, int num_states);
  static StepStats FromDataset(const StepDataset& data, const Signature& sig);

  void Add(int sab, int next, double r);
  int num_triples() const { return num_triples_; }
  // Visited (s,a,b) indices in first-visit order.
  const std::vector<int>& visited() const { return visited_; }
  std::int64_t count(int sab) const { return count_[sab]; }
  double reward_sum(int sab) const { return reward_sum_[sab]; }
  // Column num_states is the terminal successor.
  std::int64_t next_count(int sab, int next) const {
    return next_count_[sab * (num_states_ + 1) + next];
  }
  double next_reward_sum(int sab, int next) const {
    return next_reward_sum_[sab * (num_states_ + 1) + next];
  }
  double next_reward_sq(int sab, int next) const {
    return next_reward_sq_[sab * (num_states_ + 1) + next];
  }
  int num_states() const { return num_states_; }

  bool operator==(const StepStats&) const = default;

 private:
  int num_triples_ = 0;
  int num_states_ = 0;
  std::vector<int> visited_;
  std::vector<std::int64_t> count_;
  std::vector<double> reward_sum_;
  std::vector<std::int64_t> next_count_;
  std::vector<double> next_reward_sum_;
  std::vector<double> next_reward_sq_;
};

// Full squared loss from statistics; agrees with SquaredLoss up to rounding.
double StatsLoss(const StepStats& stats, std::span<const double> xi_h,
                 std::span<const double> v_next);

// Run-private loss engine: per-function Nash data, deduplicated G slices and
// the running statistics. Membership tests use the exact excess-loss
// expansion, in which the target's squared term cancels.
class LossEngine {
 public:
  LossEngine(const FunctionClass& f_class, const FunctionClass& g_class,
             const SolverOptions& options = {});

  void Add(int h, const Sample& x);
  const StepStats& stats(int h) const { return stats_[h]; }

  const InducedNash& induced(int i) const { return induced_[i]; }
  double NashValue(int i, int s) const { return induced_[i].values.v[0][s]; }

  // Indices of F in the confidence set (Nash targets), ascending.
  std::vector<int> ConfidenceSet(double beta) const;
  // Indices of F in the mu confidence set; mu_values[i] holds V^mu_{f_i}.
  std::vector<int> MuConfidenceSet(
      double beta, const std::vector<ValueTables>& mu_values) const;
  std::vector<ValueTables> MuValues(const MarkovPolicy& mu) const;

 private:
  bool Passes(int h, std::span<const double> xi_h,
              std::span<const double> v_next, double beta,
              const std::vector<double>& g_square) const;
  std::vector<double> SquareTerms(int h) const;

  const FunctionClass& f_class_;
  Signature sig_;
  std::vector<InducedNash> induced_;
  // unique_g_[h] holds distinct step-h tables of G.
  std::vector<std::vector<std::vector<double>>> unique_g_;
  std::vector<StepStats> stats_;
};

using Adversary = std::function<MarkovPolicy(int k, const MarkovPolicy& mu)>;

RunLog RunGolf(const TabularMG& mg, const FunctionClass& f_class,
               const FunctionClass& g_class, const GolfConfig& config);

// The min-player policy comes from the callback instead of the exploiter;
// increments are V*_1 - V^{mu^k, nu^k}_1 and the gate is not evaluated.
RunLog RunGolfAdversarial(const TabularMG& mg, const FunctionClass& f_class,
                          const FunctionClass& g_class,
                          const GolfConfig& config, const Adversary& adversary);

}  // namespace mggolf

#endif  // MGGOLF_GOLF_H_
