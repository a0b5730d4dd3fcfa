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

#include "mggolf/golf.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mggolf/errors.h"

namespace mggolf {
namespace {

// Value ties within this margin keep the lower class index.
constexpr double kTieTol = 1e-12;

std::vector<double> NashRow(const ValueFunction& f, int h,
                            const SolverOptions& options) {
  const Signature& sig = f.signature();
  std::vector<double> row(sig.S, 0.0);
  if (h >= sig.H) return row;
  for (int s = 0; s < sig.S; ++s) {
    row[s] = SolveZeroSum(f.StatePayoff(h, s), options).value;
  }
  return row;
}

std::vector<double> MinRow(const ValueFunction& f, const MarkovPolicy& mu,
                           int h) {
  const Signature& sig = f.signature();
  if (h >= sig.H) return std::vector<double>(sig.S, 0.0);
  return InducedMinValue(f, mu).v[h];
}

double LossWithRow(const StepDataset& data, std::span<const double> xi_h,
                   const std::vector<double>& v_next, const Signature& sig) {
  if (static_cast<int>(xi_h.size()) != sig.NumTriples()) {
    Fail(ErrorCode::kDimensionMismatch, "xi_h size");
  }
  double total = 0.0;
  for (const Sample& x : data.tuples) {
    if (x.s < 0 || x.s >= sig.S || x.a < 0 || x.a >= sig.A || x.b < 0 ||
        x.b >= sig.B || x.next < kTerminal || x.next >= sig.S) {
      Fail(ErrorCode::kDimensionMismatch, "tuple index out of range");
    }
    const double target = x.r + (x.next == kTerminal ? 0.0 : v_next[x.next]);
    const double e = xi_h[(x.s * sig.A + x.a) * sig.B + x.b] - target;
    total += e * e;
  }
  return total;
}

void CheckDatasets(const std::vector<StepDataset>& datasets,
                   const Signature& sig) {
  if (static_cast<int>(datasets.size()) != sig.H) {
    Fail(ErrorCode::kDimensionMismatch, "need one dataset per step");
  }
  for (int h = 0; h < sig.H; ++h) {
    if (datasets[h].h != h) {
      Fail(ErrorCode::kDimensionMismatch, "dataset step labels out of order");
    }
  }
}

// rows[i][h] is the step-(h+1) target row for member i.
std::vector<int> LossBasedSet(
    const FunctionClass& f_class, const FunctionClass& g_class,
    const std::vector<StepDataset>& datasets, double beta,
    const std::vector<std::vector<std::vector<double>>>& rows) {
  const Signature& sig = f_class.signature();
  std::vector<int> out;
  for (int i = 0; i < f_class.size(); ++i) {
    bool ok = true;
    for (int h = 0; h < sig.H && ok; ++h) {
      const double own =
          LossWithRow(datasets[h], f_class[i].Step(h), rows[i][h], sig);
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < g_class.size(); ++j) {
        best = std::min(
            best, LossWithRow(datasets[h], g_class[j].Step(h), rows[i][h], sig));
      }
      ok = own <= best + beta;
    }
    if (ok) out.push_back(i);
  }
  return out;
}

}  // namespace

double BetaFromFormula(double c_beta, int K, int H, int f_size, int g_size,
                       double delta_conf, double eps_comp, double eps_real) {
  if (!(delta_conf > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "confidence level must be positive");
  }
  const double log_term =
      std::log(static_cast<double>(K) * H * f_size * g_size / delta_conf);
  return c_beta * (log_term + K * eps_comp * eps_comp + K * eps_real * eps_real);
}

double DeltaFromFormula(double c_delta, int H, double dim, double beta, int K,
                        double eps) {
  return c_delta * (H * std::sqrt(dim * beta / K) + eps);
}

double SquaredLoss(const StepDataset& data, std::span<const double> xi_h,
                   const ValueFunction& zeta, const SolverOptions& options) {
  return LossWithRow(data, xi_h, NashRow(zeta, data.h + 1, options),
                     zeta.signature());
}

double MuSquaredLoss(const StepDataset& data, std::span<const double> xi_h,
                     const ValueFunction& zeta, const MarkovPolicy& mu) {
  return LossWithRow(data, xi_h, MinRow(zeta, mu, data.h + 1),
                     zeta.signature());
}

std::vector<int> BuildConfidenceSet(const FunctionClass& f_class,
                                    const FunctionClass& g_class,
                                    const std::vector<StepDataset>& datasets,
                                    double beta) {
  const Signature& sig = f_class.signature();
  if (!(g_class.signature() == sig)) {
    Fail(ErrorCode::kDimensionMismatch, "F and G signatures differ");
  }
  CheckDatasets(datasets, sig);
  std::vector<std::vector<std::vector<double>>> rows(f_class.size());
  for (int i = 0; i < f_class.size(); ++i) {
    for (int h = 0; h < sig.H; ++h) {
      rows[i].push_back(NashRow(f_class[i], h + 1, {}));
    }
  }
  return LossBasedSet(f_class, g_class, datasets, beta, rows);
}

std::vector<int> BuildMuConfidenceSet(const FunctionClass& f_class,
                                      const FunctionClass& g_class,
                                      const std::vector<StepDataset>& datasets,
                                      double beta, const MarkovPolicy& mu) {
  const Signature& sig = f_class.signature();
  if (!(g_class.signature() == sig)) {
    Fail(ErrorCode::kDimensionMismatch, "F and G signatures differ");
  }
  CheckDatasets(datasets, sig);
  std::vector<std::vector<std::vector<double>>> rows(f_class.size());
  for (int i = 0; i < f_class.size(); ++i) {
    for (int h = 0; h < sig.H; ++h) {
      rows[i].push_back(MinRow(f_class[i], mu, h + 1));
    }
  }
  return LossBasedSet(f_class, g_class, datasets, beta, rows);
}

ExploiterResult ComputeExploiter(const FunctionClass& f_class,
                                 const FunctionClass& g_class, double beta,
                                 const std::vector<StepDataset>& datasets,
                                 const MarkovPolicy& mu, int s1) {
  ExploiterResult out;
  out.confidence_set =
      BuildMuConfidenceSet(f_class, g_class, datasets, beta, mu);
  if (out.confidence_set.empty()) {
    Fail(ErrorCode::kEmptyConfidenceSet, "exploiter confidence set is empty");
  }
  bool first = true;
  for (int i : out.confidence_set) {
    const double v = InducedMinValue(f_class[i], mu).v[0][s1];
    if (first || v < out.v_lower - kTieTol) {
      out.v_lower = v;
      out.f_tilde = i;
      first = false;
    }
  }
  out.nu = GreedyMinPolicy(mu, f_class[out.f_tilde]);
  return out;
}

StepStats::StepStats(int num_triples, int num_states)
    : num_triples_(num_triples),
      num_states_(num_states),
      count_(num_triples, 0),
      reward_sum_(num_triples, 0.0),
      next_count_(static_cast<size_t>(num_triples) * (num_states + 1), 0),
      next_reward_sum_(static_cast<size_t>(num_triples) * (num_states + 1), 0.0),
      next_reward_sq_(static_cast<size_t>(num_triples) * (num_states + 1), 0.0) {}

StepStats StepStats::FromDataset(const StepDataset& data, const Signature& sig) {
  StepStats stats(sig.NumTriples(), sig.S);
  for (const Sample& x : data.tuples) {
    stats.Add((x.s * sig.A + x.a) * sig.B + x.b, x.next, x.r);
  }
  return stats;
}

void StepStats::Add(int sab, int next, double r) {
  if (sab < 0 || sab >= num_triples_ || next < kTerminal ||
      next >= num_states_) {
    Fail(ErrorCode::kDimensionMismatch, "tuple index out of range");
  }
  if (count_[sab] == 0) visited_.push_back(sab);
  ++count_[sab];
  reward_sum_[sab] += r;
  const int col = next == kTerminal ? num_states_ : next;
  const size_t k = static_cast<size_t>(sab) * (num_states_ + 1) + col;
  ++next_count_[k];
  next_reward_sum_[k] += r;
  next_reward_sq_[k] += r * r;
}

double StatsLoss(const StepStats& stats, std::span<const double> xi_h,
                 std::span<const double> v_next) {
  double total = 0.0;
  for (int sab : stats.visited()) {
    const double xi = xi_h[sab];
    for (int col = 0; col <= stats.num_states(); ++col) {
      const std::int64_t n = stats.next_count(sab, col);
      if (n == 0) continue;
      const double v = col == stats.num_states() ? 0.0 : v_next[col];
      const double sr = stats.next_reward_sum(sab, col);
      const double sr2 = stats.next_reward_sq(sab, col);
      // sum over the group of (xi - r - v)^2.
      total += n * (xi - v) * (xi - v) - 2.0 * (xi - v) * sr + sr2;
    }
  }
  return total;
}

LossEngine::LossEngine(const FunctionClass& f_class,
                       const FunctionClass& g_class,
                       const SolverOptions& options)
    : f_class_(f_class), sig_(f_class.signature()) {
  if (!(g_class.signature() == sig_)) {
    Fail(ErrorCode::kDimensionMismatch, "F and G signatures differ");
  }
  induced_.reserve(f_class.size());
  for (int i = 0; i < f_class.size(); ++i) {
    induced_.push_back(ComputeInducedNash(f_class[i], options));
  }
  unique_g_.resize(sig_.H);
  for (int h = 0; h < sig_.H; ++h) {
    std::vector<std::vector<double>> slices;
    for (int j = 0; j < g_class.size(); ++j) {
      const auto step = g_class[j].Step(h);
      slices.emplace_back(step.begin(), step.end());
    }
    std::sort(slices.begin(), slices.end());
    slices.erase(std::unique(slices.begin(), slices.end()), slices.end());
    unique_g_[h] = std::move(slices);
  }
  for (int h = 0; h < sig_.H; ++h) stats_.emplace_back(sig_.NumTriples(), sig_.S);
}

void LossEngine::Add(int h, const Sample& x) {
  stats_[h].Add((x.s * sig_.A + x.a) * sig_.B + x.b, x.next, x.r);
}

std::vector<double> LossEngine::SquareTerms(int h) const {
  const StepStats& st = stats_[h];
  std::vector<double> out;
  out.reserve(unique_g_[h].size());
  for (const auto& g : unique_g_[h]) {
    double acc = 0.0;
    for (int sab : st.visited()) acc += st.count(sab) * g[sab] * g[sab];
    out.push_back(acc);
  }
  return out;
}

bool LossEngine::Passes(int h, std::span<const double> xi_h,
                        std::span<const double> v_next, double beta,
                        const std::vector<double>& g_square) const {
  const StepStats& st = stats_[h];
  const std::vector<int>& visited = st.visited();
  if (visited.empty()) return 0.0 <= beta;
  std::vector<double> y(visited.size());
  double own = 0.0;
  for (size_t t = 0; t < visited.size(); ++t) {
    const int sab = visited[t];
    double acc = st.reward_sum(sab);
    for (int s2 = 0; s2 < sig_.S; ++s2) {
      const std::int64_t n = st.next_count(sab, s2);
      if (n != 0) acc += n * v_next[s2];
    }
    y[t] = acc;
    own += st.count(sab) * xi_h[sab] * xi_h[sab] - 2.0 * xi_h[sab] * acc;
  }
  double best = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < unique_g_[h].size(); ++j) {
    const std::vector<double>& g = unique_g_[h][j];
    double cross = 0.0;
    for (size_t t = 0; t < visited.size(); ++t) cross += g[visited[t]] * y[t];
    best = std::min(best, g_square[j] - 2.0 * cross);
  }
  return own - best <= beta;
}

std::vector<int> LossEngine::ConfidenceSet(double beta) const {
  std::vector<std::vector<double>> squares;
  for (int h = 0; h < sig_.H; ++h) squares.push_back(SquareTerms(h));
  const std::vector<double> zero(sig_.S, 0.0);
  std::vector<int> out;
  for (int i = 0; i < f_class_.size(); ++i) {
    bool ok = true;
    for (int h = 0; h < sig_.H && ok; ++h) {
      const std::vector<double>& v_next =
          h + 1 < sig_.H ? induced_[i].values.v[h + 1] : zero;
      ok = Passes(h, f_class_[i].Step(h), v_next, beta, squares[h]);
    }
    if (ok) out.push_back(i);
  }
  return out;
}

std::vector<ValueTables> LossEngine::MuValues(const MarkovPolicy& mu) const {
  std::vector<ValueTables> out;
  out.reserve(f_class_.size());
  for (int i = 0; i < f_class_.size(); ++i) {
    out.push_back(InducedMinValue(f_class_[i], mu));
  }
  return out;
}

std::vector<int> LossEngine::MuConfidenceSet(
    double beta, const std::vector<ValueTables>& mu_values) const {
  std::vector<std::vector<double>> squares;
  for (int h = 0; h < sig_.H; ++h) squares.push_back(SquareTerms(h));
  std::vector<int> out;
  for (int i = 0; i < f_class_.size(); ++i) {
    bool ok = true;
    for (int h = 0; h < sig_.H && ok; ++h) {
      ok = Passes(h, f_class_[i].Step(h), mu_values[i].v[h + 1], beta,
                  squares[h]);
    }
    if (ok) out.push_back(i);
  }
  return out;
}

namespace {

RunLog RunImpl(const TabularMG& mg, const FunctionClass& f_class,
               const FunctionClass& g_class, const GolfConfig& config,
               const Adversary* adversary) {
  const Signature sig = SignatureOf(mg);
  if (!(f_class.signature() == sig) || !(g_class.signature() == sig)) {
    Fail(ErrorCode::kDimensionMismatch, "class signature vs game");
  }
  if (config.K < 1) Fail(ErrorCode::kInvalidArgument, "K must be >= 1");
  if (!(config.beta >= 0.0)) Fail(ErrorCode::kInvalidArgument, "beta < 0");
  const int s1 = mg.initial_state();

  RunLog log;
  log.v_star = NashSolve(mg, config.solver).values.v[0][s1];
  LossEngine engine(f_class, g_class, config.solver);
  const int n = f_class.size();
  std::vector<double> regret_memo(n, std::numeric_limits<double>::quiet_NaN());
  std::vector<std::vector<ValueTables>> mu_value_memo(n);
  double regret_cum = 0.0;

  for (int k = 1; k <= config.K; ++k) {
    const std::vector<int> conf = engine.ConfidenceSet(config.beta);
    if (conf.empty()) {
      Fail(ErrorCode::kEmptyConfidenceSet,
           "confidence set empty at episode " + std::to_string(k));
    }
    EpisodeRecord rec;
    rec.k = k;
    rec.conf_size = static_cast<int>(conf.size());
    if (config.track_index >= 0) {
      rec.tracked_in_conf =
          std::binary_search(conf.begin(), conf.end(), config.track_index) ? 1
                                                                           : 0;
    }
    int fk = conf[0];
    double best = engine.NashValue(fk, s1);
    for (int i : conf) {
      const double v = engine.NashValue(i, s1);
      if (v > best + kTieTol) {
        best = v;
        fk = i;
      }
    }
    rec.f_index = fk;
    rec.v_upper = best;
    const MarkovPolicy& mu = engine.induced(fk).mu;

    MarkovPolicy nu;
    if (adversary == nullptr) {
      if (mu_value_memo[fk].empty()) mu_value_memo[fk] = engine.MuValues(mu);
      const std::vector<ValueTables>& mu_values = mu_value_memo[fk];
      const std::vector<int> conf_mu =
          engine.MuConfidenceSet(config.beta, mu_values);
      if (conf_mu.empty()) {
        Fail(ErrorCode::kEmptyConfidenceSet,
             "exploiter confidence set empty at episode " + std::to_string(k));
      }
      int f_tilde = conf_mu[0];
      double lower = mu_values[f_tilde].v[0][s1];
      for (int i : conf_mu) {
        const double v = mu_values[i].v[0][s1];
        if (v < lower - kTieTol) {
          lower = v;
          f_tilde = i;
        }
      }
      rec.v_lower = lower;
      nu = GreedyMinPolicy(mu, f_class[f_tilde]);
      if (std::isnan(regret_memo[fk])) {
        regret_memo[fk] =
            log.v_star - BestResponseToMax(mg, mu).values.v[0][s1];
      }
      rec.regret_inc = regret_memo[fk];
    } else {
      nu = (*adversary)(k, mu);
      CheckPolicy(mg, nu, Side::kMin);
      rec.v_lower = std::numeric_limits<double>::quiet_NaN();
      rec.regret_inc = log.v_star - EvaluatePair(mg, mu, nu).v[0][s1];
    }
    regret_cum += rec.regret_inc;
    rec.regret_cum = regret_cum;

    if (adversary == nullptr && config.gate_enabled &&
        rec.v_upper - rec.v_lower < config.delta_gate) {
      rec.gated = true;
      log.episodes.push_back(rec);
      log.output_index = fk;
      log.output_suboptimality = rec.regret_inc;
      break;
    }
    log.episodes.push_back(rec);

    if (config.option == SamplingOption::kOne) {
      Rng rng(config.seed, k, StreamTag::kOptionOne);
      const Trajectory traj = SampleEpisode(mg, mu, nu, rng);
      for (int h = 0; h < mg.H(); ++h) engine.Add(h, traj[h]);
    } else {
      Rng rng(config.seed, k, StreamTag::kOptionTwo);
      for (int h = 0; h < mg.H(); ++h) {
        engine.Add(h, SampleOptionTwo(mg, mu, nu, h, rng));
      }
    }
  }
  return log;
}

}  // namespace

RunLog RunGolf(const TabularMG& mg, const FunctionClass& f_class,
               const FunctionClass& g_class, const GolfConfig& config) {
  return RunImpl(mg, f_class, g_class, config, nullptr);
}

RunLog RunGolfAdversarial(const TabularMG& mg, const FunctionClass& f_class,
                          const FunctionClass& g_class,
                          const GolfConfig& config, const Adversary& adversary) {
  return RunImpl(mg, f_class, g_class, config, &adversary);
}

}  // namespace mggolf
