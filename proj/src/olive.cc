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

#include "mggolf/olive.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "mggolf/errors.h"
#include "mggolf/rng.h"

namespace mggolf {
namespace {

constexpr double kTieTol = 1e-12;

double MeanResidual(const StepDataset& data, const ValueFunction& f,
                    const std::vector<double>& target) {
  if (data.tuples.empty()) {
    Fail(ErrorCode::kEmptyDataset, "no tuples at step " + std::to_string(data.h));
  }
  double total = 0.0;
  for (const Sample& x : data.tuples) {
    const double next = x.next == kTerminal ? 0.0 : target[x.next];
    total += f(data.h, x.s, x.a, x.b) - x.r - next;
  }
  return total / static_cast<double>(data.tuples.size());
}

double ExactResidual(const TabularMG& mg, const ValueFunction& f,
                     const std::vector<double>& occupancy, int h,
                     const std::vector<double>& target) {
  double total = 0.0;
  for (int s = 0; s < mg.S(); ++s) {
    for (int a = 0; a < mg.A(); ++a) {
      for (int b = 0; b < mg.B(); ++b) {
        const double w = occupancy[mg.Index(s, a, b)];
        if (w == 0.0) continue;
        double next = 0.0;
        if (h + 1 < mg.H()) {
          const auto p = mg.Next(h, s, a, b);
          for (int s2 = 0; s2 < mg.S(); ++s2) next += p[s2] * target[s2];
        }
        total += w * (f(h, s, a, b) - mg.Reward(h, s, a, b) - next);
      }
    }
  }
  return total;
}

std::vector<StepDataset> Collect(const TabularMG& mg, const MarkovPolicy& mu,
                                 const MarkovPolicy& nu, int episodes,
                                 Rng& rng) {
  std::vector<StepDataset> data(mg.H());
  for (int h = 0; h < mg.H(); ++h) data[h].h = h;
  for (int e = 0; e < episodes; ++e) {
    const Trajectory traj = SampleEpisode(mg, mu, nu, rng);
    for (int h = 0; h < mg.H(); ++h) data[h].tuples.push_back(traj[h]);
  }
  return data;
}

// Shared activation/elimination loop. target(i, h) is candidate i's
// per-state target row at step h + 1.
struct EliminationLoop {
  const TabularMG& mg;
  const FunctionClass& cls;
  const OliveParams& params;
  bool minimizing;
  StreamTag act_tag;
  StreamTag elim_tag;
  std::function<int(const std::vector<int>&)> choose;
  std::function<std::pair<MarkovPolicy, MarkovPolicy>(int index, int phase)>
      rollin;
  std::function<const std::vector<double>&(int index, int h)> target;

  struct Result {
    int index = 0;
    MarkovPolicy mu;
    MarkovPolicy nu;
    std::vector<PhaseRecord> phases;
  };

  std::vector<double> Residuals(int i,
                                const std::vector<std::vector<double>>* occ,
                                const std::vector<StepDataset>* data) const {
    std::vector<double> out(mg.H());
    for (int h = 0; h < mg.H(); ++h) out[h] = Residual(i, h, occ, data);
    return out;
  }

  double Residual(int i, int h, const std::vector<std::vector<double>>* occ,
                  const std::vector<StepDataset>* data) const {
    if (occ != nullptr) {
      return ExactResidual(mg, cls[i], (*occ)[h], h, target(i, h));
    }
    return MeanResidual((*data)[h], cls[i], target(i, h));
  }

  Result Run() const {
    const int H = mg.H();
    const bool exact = params.estimator == Estimator::kExact;
    const bool mirrored =
        minimizing && params.inner_test == InnerTest::kMirrored;
    std::vector<int> survivors(cls.size());
    for (int i = 0; i < cls.size(); ++i) survivors[i] = i;
    Result result;
    for (int k = 1; k <= params.K; ++k) {
      PhaseRecord rec;
      rec.phase = k;
      rec.f_index = choose(survivors);
      auto [mu, nu] = rollin(rec.f_index, k);

      std::vector<std::vector<double>> occ;
      std::vector<StepDataset> data;
      if (exact) {
        occ = Occupancy(mg, mu, nu);
      } else {
        Rng rng(params.seed, k, act_tag);
        data = Collect(mg, mu, nu, params.n_act, rng);
      }
      const std::vector<double> e = Residuals(
          rec.f_index, exact ? &occ : nullptr, exact ? nullptr : &data);
      for (double x : e) rec.act_sum += x;
      const bool done = mirrored ? rec.act_sum >= -H * params.zeta_act
                                 : rec.act_sum <= H * params.zeta_act;
      if (done) {
        rec.terminated = true;
        rec.survivors = static_cast<int>(survivors.size());
        result.phases.push_back(rec);
        result.index = rec.f_index;
        result.mu = std::move(mu);
        result.nu = std::move(nu);
        return result;
      }
      for (int h = 0; h < H; ++h) {
        if (mirrored ? e[h] < -params.zeta_act : e[h] > params.zeta_act) {
          rec.activated_h = h;
          break;
        }
      }
      if (!exact) {
        Rng rng(params.seed, k, elim_tag);
        data = Collect(mg, mu, nu, params.n_elim, rng);
      }
      std::vector<int> kept;
      for (int i : survivors) {
        const double x = Residual(i, rec.activated_h, exact ? &occ : nullptr,
                                  exact ? nullptr : &data);
        if (std::abs(x) <= params.zeta_elim) {
          kept.push_back(i);
        } else {
          rec.removed.push_back(i);
        }
      }
      rec.eliminated = static_cast<int>(survivors.size() - kept.size());
      rec.survivors = static_cast<int>(kept.size());
      result.phases.push_back(rec);
      survivors = std::move(kept);
      if (survivors.empty()) {
        Fail(ErrorCode::kEmptySurvivorSet,
             "all candidates eliminated at phase " + std::to_string(k));
      }
    }
    Fail(ErrorCode::kExhausted,
         "no termination within " + std::to_string(params.K) + " phases");
  }
};

void CheckParams(const OliveParams& p) {
  if (!(p.zeta_act > 0.0) || !(p.zeta_elim > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "thresholds must be positive");
  }
  if (p.K < 1) Fail(ErrorCode::kInvalidArgument, "phase budget must be >= 1");
  if (p.estimator == Estimator::kSampled && (p.n_act < 1 || p.n_elim < 1)) {
    Fail(ErrorCode::kInvalidArgument, "sample counts must be >= 1");
  }
}

// Cache of per-(candidate, step) target rows.
class TargetCache {
 public:
  TargetCache(int n, int horizon,
              std::function<std::vector<double>(int, int)> compute)
      : rows_(n, std::vector<std::vector<double>>(horizon)),
        ready_(n, std::vector<bool>(horizon, false)),
        compute_(std::move(compute)) {}

  const std::vector<double>& Get(int i, int h) {
    if (!ready_[i][h]) {
      rows_[i][h] = compute_(i, h + 1);
      ready_[i][h] = true;
    }
    return rows_[i][h];
  }

 private:
  std::vector<std::vector<std::vector<double>>> rows_;
  std::vector<std::vector<bool>> ready_;
  std::function<std::vector<double>(int, int)> compute_;
};

}  // namespace

std::vector<double> NashTargetRow(const ValueFunction& f, int h, bool mixed) {
  const Signature& sig = f.signature();
  std::vector<double> row(sig.S, 0.0);
  if (h >= sig.H) return row;
  for (int s = 0; s < sig.S; ++s) {
    if (mixed) {
      row[s] = SolveZeroSum(f.StatePayoff(h, s)).value;
      continue;
    }
    double best = 0.0;
    for (int a = 0; a < sig.A; ++a) {
      double worst = f(h, s, a, 0);
      for (int b = 1; b < sig.B; ++b) worst = std::min(worst, f(h, s, a, b));
      if (a == 0 || worst > best) best = worst;
    }
    row[s] = best;
  }
  return row;
}

std::vector<double> BestResponseTargetRow(const ValueFunction& g,
                                          const MarkovPolicy& mu, int h) {
  const Signature& sig = g.signature();
  if (h >= sig.H) return std::vector<double>(sig.S, 0.0);
  return InducedMinValue(g, mu).v[h];
}

double AvgBellmanErrorNash(const StepDataset& data, const ValueFunction& f,
                           bool mixed) {
  return MeanResidual(data, f, NashTargetRow(f, data.h + 1, mixed));
}

double AvgBellmanErrorBr(const StepDataset& data, const ValueFunction& g,
                         const MarkovPolicy& mu) {
  return MeanResidual(data, g, BestResponseTargetRow(g, mu, data.h + 1));
}

double AvgBellmanErrorNashExact(const TabularMG& mg, const ValueFunction& f,
                                const MarkovPolicy& mu_roll,
                                const MarkovPolicy& nu_roll, int h,
                                bool mixed) {
  if (h < 0 || h >= mg.H()) Fail(ErrorCode::kBadStep, "residual step");
  const auto occ = Occupancy(mg, mu_roll, nu_roll);
  return ExactResidual(mg, f, occ[h], h, NashTargetRow(f, h + 1, mixed));
}

double AvgBellmanErrorBrExact(const TabularMG& mg, const ValueFunction& g,
                              const MarkovPolicy& mu,
                              const MarkovPolicy& nu_roll, int h) {
  if (h < 0 || h >= mg.H()) Fail(ErrorCode::kBadStep, "residual step");
  const auto occ = Occupancy(mg, mu, nu_roll);
  return ExactResidual(mg, g, occ[h], h, BestResponseTargetRow(g, mu, h + 1));
}

BestResponseRun OliveBestResponse(const TabularMG& mg,
                                  const FunctionClass& g_class,
                                  const MarkovPolicy& mu,
                                  const OliveParams& params) {
  CheckParams(params);
  if (!(g_class.signature() == SignatureOf(mg))) {
    Fail(ErrorCode::kDimensionMismatch, "class signature vs game");
  }
  CheckPolicy(mg, mu, Side::kMax);
  const int s1 = mg.initial_state();
  TargetCache cache(g_class.size(), mg.H(), [&](int i, int h) {
    return BestResponseTargetRow(g_class[i], mu, h);
  });
  std::vector<double> start(g_class.size());
  for (int i = 0; i < g_class.size(); ++i) {
    start[i] = BestResponseTargetRow(g_class[i], mu, 0)[s1];
  }
  EliminationLoop loop{
      mg,
      g_class,
      params,
      /*minimizing=*/true,
      StreamTag::kInnerActivate,
      StreamTag::kInnerEliminate,
      [&](const std::vector<int>& alive) {
        int best = alive[0];
        for (int i : alive) {
          if (start[i] < start[best] - kTieTol) best = i;
        }
        return best;
      },
      [&](int i, int) {
        return std::make_pair(mu, GreedyMinPolicy(mu, g_class[i]));
      },
      [&](int i, int h) -> const std::vector<double>& { return cache.Get(i, h); },
  };
  EliminationLoop::Result r = loop.Run();
  return BestResponseRun{std::move(r.nu), r.index, std::move(r.phases)};
}

OliveRun RunOliveMg(const TabularMG& mg, const FunctionClass& f_class,
                    const FunctionClass& g_class, const OliveParams& outer,
                    const OliveParams& inner) {
  CheckParams(outer);
  CheckParams(inner);
  if (!(f_class.signature() == SignatureOf(mg))) {
    Fail(ErrorCode::kDimensionMismatch, "class signature vs game");
  }
  const int s1 = mg.initial_state();
  std::vector<InducedNash> induced;
  for (int i = 0; i < f_class.size(); ++i) {
    induced.push_back(ComputeInducedNash(f_class[i]));
  }
  TargetCache cache(f_class.size(), mg.H(), [&](int i, int h) {
    return NashTargetRow(f_class[i], h, outer.mixed_target);
  });
  OliveRun run;
  EliminationLoop loop{
      mg,
      f_class,
      outer,
      /*minimizing=*/false,
      StreamTag::kOliveActivate,
      StreamTag::kOliveEliminate,
      [&](const std::vector<int>& alive) {
        int best = alive[0];
        for (int i : alive) {
          if (induced[i].values.v[0][s1] > induced[best].values.v[0][s1] + kTieTol) {
            best = i;
          }
        }
        return best;
      },
      [&](int i, int phase) {
        OliveParams in = inner;
        in.seed = DeriveStreamSeed(outer.seed, phase, StreamTag::kInnerActivate);
        BestResponseRun br = OliveBestResponse(mg, g_class, induced[i].mu, in);
        run.inner_phases.push_back(br.phases);
        run.nu_rollin.push_back(br.nu);
        return std::make_pair(induced[i].mu, std::move(br.nu));
      },
      [&](int i, int h) -> const std::vector<double>& { return cache.Get(i, h); },
  };
  EliminationLoop::Result r = loop.Run();
  run.output_index = r.index;
  run.mu_out = std::move(r.mu);
  run.phases = std::move(r.phases);
  return run;
}

}  // namespace mggolf
