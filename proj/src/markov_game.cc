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

#include "mggolf/markov_game.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mggolf/errors.h"

namespace mggolf {
namespace {

constexpr double kSimplexTol = 1e-12;
// Slack on the "total reward <= 1" check for accumulated rounding.
constexpr double kReturnSlack = 1e-12;

std::string At(int h, int s) {
  return "(h=" + std::to_string(h) + ", s=" + std::to_string(s) + ")";
}

// sum_{s'} P(s'|s,a,b) v[s'].
double Expect(std::span<const double> next, const std::vector<double>& v) {
  double acc = 0.0;
  for (size_t i = 0; i < next.size(); ++i) acc += next[i] * v[i];
  return acc;
}

void ComputeQ(const TabularMG& mg, int h, const std::vector<double>& v_next,
              std::vector<double>& q) {
  q.assign(mg.NumTriples(), 0.0);
  for (int s = 0; s < mg.S(); ++s) {
    for (int a = 0; a < mg.A(); ++a) {
      for (int b = 0; b < mg.B(); ++b) {
        q[mg.Index(s, a, b)] =
            mg.Reward(h, s, a, b) + Expect(mg.Next(h, s, a, b), v_next);
      }
    }
  }
}

ValueTables EmptyTables(const TabularMG& mg) {
  ValueTables t;
  t.v.assign(mg.H() + 1, std::vector<double>(mg.S(), 0.0));
  t.q.assign(mg.H(), {});
  return t;
}

Payoff StatePayoff(const TabularMG& mg, const std::vector<double>& q, int s) {
  const int n = mg.A() * mg.B();
  return Payoff(mg.A(), mg.B(),
                std::vector<double>(q.begin() + s * n, q.begin() + (s + 1) * n));
}

}  // namespace

TabularMG::TabularMG(int horizon, int num_states, int num_max_actions,
                     int num_min_actions, int initial_state,
                     std::vector<std::vector<double>> transition,
                     std::vector<std::vector<double>> reward)
    : horizon_(horizon),
      num_states_(num_states),
      num_a_(num_max_actions),
      num_b_(num_min_actions),
      initial_state_(initial_state),
      transition_(std::move(transition)),
      reward_(std::move(reward)) {
  if (horizon_ < 1 || num_states_ < 1 || num_a_ < 1 || num_b_ < 1) {
    Fail(ErrorCode::kDimensionMismatch, "H, S, A, B must be positive");
  }
  if (initial_state_ < 0 || initial_state_ >= num_states_) {
    Fail(ErrorCode::kDimensionMismatch, "initial state out of range");
  }
  if (static_cast<int>(transition_.size()) != horizon_ ||
      static_cast<int>(reward_.size()) != horizon_) {
    Fail(ErrorCode::kDimensionMismatch, "need one table per step");
  }
  const int n = NumTriples();
  for (int h = 0; h < horizon_; ++h) {
    if (static_cast<int>(transition_[h].size()) != n * num_states_ ||
        static_cast<int>(reward_[h].size()) != n) {
      Fail(ErrorCode::kDimensionMismatch,
           "table size mismatch at step " + std::to_string(h));
    }
    for (int i = 0; i < n; ++i) {
      const double r = reward_[h][i];
      if (!std::isfinite(r)) Fail(ErrorCode::kNonFinite, "reward");
      if (r < 0.0 || r > 1.0) {
        Fail(ErrorCode::kInvalidArgument, "reward outside [0, 1]");
      }
      double total = 0.0;
      for (int s2 = 0; s2 < num_states_; ++s2) {
        const double p = transition_[h][i * num_states_ + s2];
        if (!std::isfinite(p)) Fail(ErrorCode::kNonFinite, "transition");
        if (p < 0.0) Fail(ErrorCode::kInvalidArgument, "negative transition");
        total += p;
      }
      if (std::abs(total - 1.0) > kSimplexTol) {
        Fail(ErrorCode::kInvalidArgument,
             "transition row does not sum to 1 at step " + std::to_string(h));
      }
    }
  }
  // Largest achievable return over all trajectories.
  std::vector<double> best(num_states_, 0.0);
  for (int h = horizon_ - 1; h >= 0; --h) {
    std::vector<double> cur(num_states_, 0.0);
    for (int s = 0; s < num_states_; ++s) {
      for (int a = 0; a < num_a_; ++a) {
        for (int b = 0; b < num_b_; ++b) {
          const int i = Index(s, a, b);
          double cont = 0.0;
          for (int s2 = 0; s2 < num_states_; ++s2) {
            if (transition_[h][i * num_states_ + s2] > 0.0) {
              cont = std::max(cont, best[s2]);
            }
          }
          cur[s] = std::max(cur[s], reward_[h][i] + cont);
        }
      }
    }
    best = std::move(cur);
  }
  if (*std::max_element(best.begin(), best.end()) > 1.0 + kReturnSlack) {
    Fail(ErrorCode::kInvalidArgument, "some trajectory returns more than 1");
  }
}

MarkovPolicy::MarkovPolicy(Side side, int horizon, int num_states,
                           int num_actions)
    : side_(side),
      horizon_(horizon),
      num_states_(num_states),
      num_actions_(num_actions),
      table_(static_cast<size_t>(horizon) * num_states * num_actions, 0.0) {
  for (int h = 0; h < horizon_; ++h) {
    for (int s = 0; s < num_states_; ++s) MutableProbs(h, s)[0] = 1.0;
  }
}

MarkovPolicy MarkovPolicy::Uniform(Side side, int horizon, int num_states,
                                   int num_actions) {
  MarkovPolicy p(side, horizon, num_states, num_actions);
  std::fill(p.table_.begin(), p.table_.end(), 1.0 / num_actions);
  return p;
}

void MarkovPolicy::SetDeterministic(int h, int s, int action) {
  std::span<double> row = MutableProbs(h, s);
  std::fill(row.begin(), row.end(), 0.0);
  row[action] = 1.0;
}

void CheckPolicy(const TabularMG& mg, const MarkovPolicy& policy, Side side) {
  const int n = side == Side::kMax ? mg.A() : mg.B();
  if (policy.H() != mg.H() || policy.S() != mg.S() ||
      policy.num_actions() != n) {
    Fail(ErrorCode::kDimensionMismatch, "policy shape does not match game");
  }
  for (int h = 0; h < mg.H(); ++h) {
    for (int s = 0; s < mg.S(); ++s) {
      double total = 0.0;
      for (double p : policy.Probs(h, s)) {
        if (!(p >= 0.0)) {
          Fail(ErrorCode::kInvalidArgument, "negative probability " + At(h, s));
        }
        total += p;
      }
      if (std::abs(total - 1.0) > kSimplexTol) {
        Fail(ErrorCode::kInvalidArgument, "policy row off simplex " + At(h, s));
      }
    }
  }
}

ValueTables EvaluatePair(const TabularMG& mg, const MarkovPolicy& mu,
                         const MarkovPolicy& nu) {
  CheckPolicy(mg, mu, Side::kMax);
  CheckPolicy(mg, nu, Side::kMin);
  ValueTables t = EmptyTables(mg);
  for (int h = mg.H() - 1; h >= 0; --h) {
    ComputeQ(mg, h, t.v[h + 1], t.q[h]);
    for (int s = 0; s < mg.S(); ++s) {
      double acc = 0.0;
      const auto pa = mu.Probs(h, s);
      const auto pb = nu.Probs(h, s);
      for (int a = 0; a < mg.A(); ++a) {
        if (pa[a] == 0.0) continue;
        double row = 0.0;
        for (int b = 0; b < mg.B(); ++b) row += pb[b] * t.q[h][mg.Index(s, a, b)];
        acc += pa[a] * row;
      }
      t.v[h][s] = acc;
    }
  }
  return t;
}

BestResponseResult BestResponseToMax(const TabularMG& mg,
                                     const MarkovPolicy& mu) {
  CheckPolicy(mg, mu, Side::kMax);
  BestResponseResult out{MarkovPolicy(Side::kMin, mg.H(), mg.S(), mg.B()),
                         EmptyTables(mg)};
  ValueTables& t = out.values;
  for (int h = mg.H() - 1; h >= 0; --h) {
    ComputeQ(mg, h, t.v[h + 1], t.q[h]);
    for (int s = 0; s < mg.S(); ++s) {
      const auto [b, value] =
          BestResponse(StatePayoff(mg, t.q[h], s), mu.Probs(h, s), Side::kMin);
      out.response.SetDeterministic(h, s, b);
      t.v[h][s] = value;
    }
  }
  return out;
}

BestResponseResult BestResponseToMin(const TabularMG& mg,
                                     const MarkovPolicy& nu) {
  CheckPolicy(mg, nu, Side::kMin);
  BestResponseResult out{MarkovPolicy(Side::kMax, mg.H(), mg.S(), mg.A()),
                         EmptyTables(mg)};
  ValueTables& t = out.values;
  for (int h = mg.H() - 1; h >= 0; --h) {
    ComputeQ(mg, h, t.v[h + 1], t.q[h]);
    for (int s = 0; s < mg.S(); ++s) {
      const auto [a, value] =
          BestResponse(StatePayoff(mg, t.q[h], s), nu.Probs(h, s), Side::kMax);
      out.response.SetDeterministic(h, s, a);
      t.v[h][s] = value;
    }
  }
  return out;
}

NashSolution NashSolve(const TabularMG& mg, const SolverOptions& options) {
  NashSolution out{EmptyTables(mg),
                   MarkovPolicy(Side::kMax, mg.H(), mg.S(), mg.A()),
                   MarkovPolicy(Side::kMin, mg.H(), mg.S(), mg.B())};
  ValueTables& t = out.values;
  for (int h = mg.H() - 1; h >= 0; --h) {
    ComputeQ(mg, h, t.v[h + 1], t.q[h]);
    for (int s = 0; s < mg.S(); ++s) {
      const MixedPair pair = SolveZeroSum(StatePayoff(mg, t.q[h], s), options);
      std::copy(pair.mu.begin(), pair.mu.end(), out.mu.MutableProbs(h, s).begin());
      std::copy(pair.nu.begin(), pair.nu.end(), out.nu.MutableProbs(h, s).begin());
      t.v[h][s] = pair.value;
    }
  }
  return out;
}

std::vector<std::vector<double>> Occupancy(const TabularMG& mg,
                                           const MarkovPolicy& mu,
                                           const MarkovPolicy& nu) {
  CheckPolicy(mg, mu, Side::kMax);
  CheckPolicy(mg, nu, Side::kMin);
  std::vector<std::vector<double>> out(mg.H(),
                                       std::vector<double>(mg.NumTriples(), 0.0));
  std::vector<double> state(mg.S(), 0.0);
  state[mg.initial_state()] = 1.0;
  for (int h = 0; h < mg.H(); ++h) {
    std::vector<double> next(mg.S(), 0.0);
    for (int s = 0; s < mg.S(); ++s) {
      if (state[s] == 0.0) continue;
      const auto pa = mu.Probs(h, s);
      const auto pb = nu.Probs(h, s);
      for (int a = 0; a < mg.A(); ++a) {
        for (int b = 0; b < mg.B(); ++b) {
          const double w = state[s] * pa[a] * pb[b];
          out[h][mg.Index(s, a, b)] = w;
          if (w == 0.0) continue;
          const auto p = mg.Next(h, s, a, b);
          for (int s2 = 0; s2 < mg.S(); ++s2) next[s2] += w * p[s2];
        }
      }
    }
    state = std::move(next);
  }
  return out;
}

Trajectory SampleEpisode(const TabularMG& mg, const MarkovPolicy& mu,
                         const MarkovPolicy& nu, Rng& rng) {
  CheckPolicy(mg, mu, Side::kMax);
  CheckPolicy(mg, nu, Side::kMin);
  Trajectory traj;
  traj.reserve(mg.H());
  int s = mg.initial_state();
  for (int h = 0; h < mg.H(); ++h) {
    Sample x;
    x.s = s;
    x.a = rng.Categorical(mu.Probs(h, s));
    x.b = rng.Categorical(nu.Probs(h, s));
    x.r = mg.Reward(h, s, x.a, x.b);
    x.next = h + 1 < mg.H() ? rng.Categorical(mg.Next(h, s, x.a, x.b))
                            : kTerminal;
    traj.push_back(x);
    s = x.next;
  }
  return traj;
}

Sample SampleOptionTwo(const TabularMG& mg, const MarkovPolicy& mu,
                       const MarkovPolicy& nu, int h, Rng& rng) {
  if (h < 0 || h >= mg.H()) {
    Fail(ErrorCode::kBadStep, "step " + std::to_string(h) + " out of range");
  }
  CheckPolicy(mg, mu, Side::kMax);
  CheckPolicy(mg, nu, Side::kMin);
  int s = mg.initial_state();
  for (int t = 0; t < h; ++t) {
    const int a = rng.Categorical(mu.Probs(t, s));
    const int b = rng.Categorical(nu.Probs(t, s));
    s = rng.Categorical(mg.Next(t, s, a, b));
  }
  Sample x;
  x.s = s;
  x.a = rng.UniformInt(mg.A());
  x.b = rng.UniformInt(mg.B());
  x.r = mg.Reward(h, s, x.a, x.b);
  x.next = h + 1 < mg.H() ? rng.Categorical(mg.Next(h, s, x.a, x.b)) : kTerminal;
  return x;
}

}  // namespace mggolf
