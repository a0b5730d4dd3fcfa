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

#include "mggolf/function_class.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mggolf/errors.h"

namespace mggolf {
namespace {

void CheckMuMatches(const MarkovPolicy& mu, const Signature& sig) {
  if (mu.H() != sig.H || mu.S() != sig.S || mu.num_actions() != sig.A) {
    Fail(ErrorCode::kDimensionMismatch, "max-player policy vs function");
  }
}

void CheckSignature(const TabularMG& mg, const Signature& sig) {
  if (!(SignatureOf(mg) == sig)) {
    Fail(ErrorCode::kDimensionMismatch, "function signature vs game");
  }
}

// min_b mu^T f_h(s, ., b) for every s.
std::vector<double> MinRow(const ValueFunction& f, const MarkovPolicy& mu,
                           int h) {
  const Signature& sig = f.signature();
  std::vector<double> out(sig.S, 0.0);
  for (int s = 0; s < sig.S; ++s) {
    const auto p = mu.Probs(h, s);
    double best = 0.0;
    for (int b = 0; b < sig.B; ++b) {
      double acc = 0.0;
      for (int a = 0; a < sig.A; ++a) acc += p[a] * f(h, s, a, b);
      if (b == 0 || acc < best) best = acc;
    }
    out[s] = best;
  }
  return out;
}

double StepDistance(std::span<const double> x, std::span<const double> y) {
  double d = 0.0;
  for (size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

}  // namespace

Signature SignatureOf(const TabularMG& mg) {
  return Signature{mg.H(), mg.S(), mg.A(), mg.B()};
}

ValueFunction::ValueFunction(const Signature& sig)
    : sig_(sig), data_(static_cast<size_t>(sig.H) * sig.NumTriples(), 0.0) {}

ValueFunction::ValueFunction(const Signature& sig, std::vector<double> data)
    : sig_(sig), data_(std::move(data)) {
  if (static_cast<int>(data_.size()) != sig.H * sig.NumTriples()) {
    Fail(ErrorCode::kDimensionMismatch, "value function size");
  }
  for (double x : data_) {
    if (!std::isfinite(x)) Fail(ErrorCode::kNonFinite, "value function entry");
  }
}

ValueFunction ValueFunction::FromSteps(
    const Signature& sig, const std::vector<std::vector<double>>& steps) {
  if (static_cast<int>(steps.size()) != sig.H) {
    Fail(ErrorCode::kDimensionMismatch, "value function step count");
  }
  std::vector<double> data;
  data.reserve(sig.H * sig.NumTriples());
  for (const auto& step : steps) {
    if (static_cast<int>(step.size()) != sig.NumTriples()) {
      Fail(ErrorCode::kDimensionMismatch, "value function step size");
    }
    data.insert(data.end(), step.begin(), step.end());
  }
  return ValueFunction(sig, std::move(data));
}

Payoff ValueFunction::StatePayoff(int h, int s) const {
  const int n = sig_.A * sig_.B;
  const double* base = data_.data() + h * sig_.NumTriples() + s * n;
  return Payoff(sig_.A, sig_.B, std::vector<double>(base, base + n));
}

FunctionClass::FunctionClass(const Signature& sig,
                             std::vector<ValueFunction> members)
    : sig_(sig), members_(std::move(members)) {
  if (members_.empty()) Fail(ErrorCode::kEmptyClass, "function class is empty");
  for (const ValueFunction& f : members_) {
    if (!(f.signature() == sig_)) {
      Fail(ErrorCode::kDimensionMismatch, "class member signature");
    }
    for (double x : f.data()) {
      if (x < 0.0 || x > 1.0) {
        Fail(ErrorCode::kInvalidArgument, "class member outside [0, 1]");
      }
    }
  }
}

InducedNash ComputeInducedNash(const ValueFunction& f,
                               const SolverOptions& options) {
  const Signature& sig = f.signature();
  InducedNash out{MarkovPolicy(Side::kMax, sig.H, sig.S, sig.A),
                  MarkovPolicy(Side::kMin, sig.H, sig.S, sig.B),
                  ValueTables{}};
  out.values.v.assign(sig.H + 1, std::vector<double>(sig.S, 0.0));
  for (int h = 0; h < sig.H; ++h) {
    for (int s = 0; s < sig.S; ++s) {
      const MixedPair pair = SolveZeroSum(f.StatePayoff(h, s), options);
      std::copy(pair.mu.begin(), pair.mu.end(),
                out.mu.MutableProbs(h, s).begin());
      std::copy(pair.nu.begin(), pair.nu.end(),
                out.nu.MutableProbs(h, s).begin());
      out.values.v[h][s] = pair.value;
    }
  }
  return out;
}

MarkovPolicy InducedNashPolicy(const ValueFunction& f,
                               const SolverOptions& options) {
  return ComputeInducedNash(f, options).mu;
}

ValueTables InducedNashValue(const ValueFunction& f,
                             const SolverOptions& options) {
  return ComputeInducedNash(f, options).values;
}

ValueTables InducedMinValue(const ValueFunction& f, const MarkovPolicy& mu) {
  const Signature& sig = f.signature();
  CheckMuMatches(mu, sig);
  ValueTables t;
  t.v.assign(sig.H + 1, std::vector<double>(sig.S, 0.0));
  for (int h = 0; h < sig.H; ++h) t.v[h] = MinRow(f, mu, h);
  return t;
}

MarkovPolicy GreedyMinPolicy(const MarkovPolicy& mu, const ValueFunction& g) {
  const Signature& sig = g.signature();
  CheckMuMatches(mu, sig);
  MarkovPolicy nu(Side::kMin, sig.H, sig.S, sig.B);
  for (int h = 0; h < sig.H; ++h) {
    for (int s = 0; s < sig.S; ++s) {
      const auto p = mu.Probs(h, s);
      int best = 0;
      double best_value = 0.0;
      for (int b = 0; b < sig.B; ++b) {
        double acc = 0.0;
        for (int a = 0; a < sig.A; ++a) acc += p[a] * g(h, s, a, b);
        if (b == 0 || acc < best_value) {
          best = b;
          best_value = acc;
        }
      }
      nu.SetDeterministic(h, s, best);
    }
  }
  return nu;
}

std::vector<double> BackupWith(const TabularMG& mg, int h,
                               std::span<const double> v_next) {
  std::vector<double> out(mg.NumTriples(), 0.0);
  for (int s = 0; s < mg.S(); ++s) {
    for (int a = 0; a < mg.A(); ++a) {
      for (int b = 0; b < mg.B(); ++b) {
        double acc = mg.Reward(h, s, a, b);
        if (h + 1 < mg.H()) {
          const auto p = mg.Next(h, s, a, b);
          for (int s2 = 0; s2 < mg.S(); ++s2) acc += p[s2] * v_next[s2];
        }
        out[mg.Index(s, a, b)] = acc;
      }
    }
  }
  return out;
}

std::vector<double> NashBellman(const TabularMG& mg, const ValueFunction& f,
                                int h, const SolverOptions& options) {
  CheckSignature(mg, f.signature());
  if (h < 0 || h >= mg.H()) Fail(ErrorCode::kBadStep, "Bellman step");
  std::vector<double> v_next(mg.S(), 0.0);
  if (h + 1 < mg.H()) {
    for (int s = 0; s < mg.S(); ++s) {
      v_next[s] = SolveZeroSum(f.StatePayoff(h + 1, s), options).value;
    }
  }
  return BackupWith(mg, h, v_next);
}

std::vector<double> MuBellman(const TabularMG& mg, const ValueFunction& f,
                              const MarkovPolicy& mu, int h) {
  CheckSignature(mg, f.signature());
  CheckMuMatches(mu, f.signature());
  if (h < 0 || h >= mg.H()) Fail(ErrorCode::kBadStep, "Bellman step");
  std::vector<double> v_next(mg.S(), 0.0);
  if (h + 1 < mg.H()) v_next = MinRow(f, mu, h + 1);
  return BackupWith(mg, h, v_next);
}

double SupDistance(const ValueFunction& f, const ValueFunction& g) {
  if (!(f.signature() == g.signature())) {
    Fail(ErrorCode::kDimensionMismatch, "distance between signatures");
  }
  return StepDistance(f.data(), g.data());
}

Projection Project(const FunctionClass& cls, const ValueFunction& g) {
  Projection best{0, SupDistance(cls[0], g)};
  for (int i = 1; i < cls.size(); ++i) {
    const double d = SupDistance(cls[i], g);
    if (d < best.distance) best = {i, d};
  }
  return best;
}

Projection ProjectStep(const FunctionClass& cls, int h,
                       std::span<const double> table) {
  if (static_cast<int>(table.size()) != cls.signature().NumTriples()) {
    Fail(ErrorCode::kDimensionMismatch, "step table size");
  }
  Projection best{0, StepDistance(cls[0].Step(h), table)};
  for (int i = 1; i < cls.size(); ++i) {
    const double d = StepDistance(cls[i].Step(h), table);
    if (d < best.distance) best = {i, d};
  }
  return best;
}

ValueFunction LinearFunction(const LinearClassSpec& spec,
                             std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != spec.d) {
    Fail(ErrorCode::kDimensionMismatch, "theta dimension");
  }
  const Signature& sig = spec.sig;
  ValueFunction f(sig);
  for (int h = 0; h < sig.H; ++h) {
    const double hi =
        spec.step_clamp ? static_cast<double>(sig.H - h) / sig.H : 1.0;
    std::span<double> step = f.MutableStep(h);
    for (int i = 0; i < sig.NumTriples(); ++i) {
      double acc = 0.0;
      for (int j = 0; j < spec.d; ++j) {
        acc += spec.features[h][i * spec.d + j] * theta[j];
      }
      step[i] = std::clamp(acc, 0.0, hi);
    }
  }
  return f;
}

namespace {

std::vector<double> AxisLattice(double radius, double step) {
  const auto n = static_cast<std::int64_t>(std::floor(radius / step + 1e-12));
  std::vector<double> axis;
  for (std::int64_t i = -n; i <= n; ++i) axis.push_back(i * step);
  if (radius - n * step > 1e-12 * std::max(1.0, radius)) {
    axis.insert(axis.begin(), -radius);
    axis.push_back(radius);
  }
  return axis;
}

}  // namespace

std::vector<double> CoverRound(const LinearClassSpec& spec, double eps,
                               std::span<const double> theta) {
  const double step = eps / std::sqrt(static_cast<double>(spec.d));
  std::vector<double> out(theta.size());
  for (size_t i = 0; i < theta.size(); ++i) {
    const double mag = std::min(std::abs(theta[i]), spec.radius);
    double r = std::floor(mag / step) * step;
    // Points on the closing +/-R level are kept exactly.
    if (mag == spec.radius) r = spec.radius;
    out[i] = theta[i] < 0 ? -r : r;
  }
  return out;
}

LinearCover EpsilonCover(const LinearClassSpec& spec, double eps,
                         std::int64_t max_members) {
  if (!(eps > 0.0)) Fail(ErrorCode::kInvalidArgument, "eps must be positive");
  if (spec.d < 1) Fail(ErrorCode::kInvalidArgument, "feature dimension");
  const Signature& sig = spec.sig;
  for (int h = 0; h < sig.H; ++h) {
    if (static_cast<int>(spec.features[h].size()) != sig.NumTriples() * spec.d) {
      Fail(ErrorCode::kDimensionMismatch, "feature table size");
    }
    for (int i = 0; i < sig.NumTriples(); ++i) {
      double norm = 0.0;
      for (int j = 0; j < spec.d; ++j) {
        const double x = spec.features[h][i * spec.d + j];
        norm += x * x;
      }
      if (norm > 1.0 + 1e-12) {
        Fail(ErrorCode::kInvalidArgument, "feature norm above 1");
      }
    }
  }
  LinearCover out;
  out.grid_step = eps / std::sqrt(static_cast<double>(spec.d));
  const std::vector<double> axis = AxisLattice(spec.radius, out.grid_step);
  const double r2 = spec.radius * spec.radius * (1.0 + 1e-12);
  std::vector<double> theta(spec.d, 0.0);
  std::vector<ValueFunction> members;
  // Depth-first enumeration with pruning on the partial squared norm.
  auto recurse = [&](auto&& self, int j, double norm2) -> void {
    if (j == spec.d) {
      if (static_cast<std::int64_t>(out.thetas.size()) >= max_members) {
        Fail(ErrorCode::kTooLarge, "cover exceeds member cap");
      }
      out.thetas.push_back(theta);
      members.push_back(LinearFunction(spec, theta));
      return;
    }
    for (double x : axis) {
      const double n2 = norm2 + x * x;
      if (n2 > r2) continue;
      theta[j] = x;
      self(self, j + 1, n2);
    }
  };
  recurse(recurse, 0, 0.0);
  out.cls = FunctionClass(sig, std::move(members));
  return out;
}

RealizabilityAudit AuditRealizability(const TabularMG& mg,
                                      const FunctionClass& cls) {
  CheckSignature(mg, cls.signature());
  const Signature sig = cls.signature();
  const NashSolution nash = NashSolve(mg);
  RealizabilityAudit audit;
  audit.q_star = Project(cls, ValueFunction::FromSteps(sig, nash.values.q));
  audit.eps_real = audit.q_star.distance;
  for (int i = 0; i < cls.size(); ++i) {
    const MarkovPolicy mu = InducedNashPolicy(cls[i]);
    const BestResponseResult br = BestResponseToMax(mg, mu);
    const Projection p =
        Project(cls, ValueFunction::FromSteps(sig, br.values.q));
    audit.best_response_distance =
        std::max(audit.best_response_distance, p.distance);
  }
  audit.eps_real = std::max(audit.eps_real, audit.best_response_distance);
  return audit;
}

double AuditCompleteness(const TabularMG& mg, const FunctionClass& f_class,
                         const FunctionClass& g_class) {
  CheckSignature(mg, f_class.signature());
  CheckSignature(mg, g_class.signature());
  const int n = f_class.size();
  std::vector<InducedNash> induced;
  induced.reserve(n);
  for (int i = 0; i < n; ++i) induced.push_back(ComputeInducedNash(f_class[i]));
  double worst = 0.0;
  for (int h = 0; h < mg.H(); ++h) {
    for (int i = 0; i < n; ++i) {
      const auto target = BackupWith(mg, h, induced[i].values.v[h + 1]);
      worst = std::max(worst, ProjectStep(g_class, h, target).distance);
    }
    if (h + 1 == mg.H()) continue;  // T^mu_H f' = r_H = T_H f.
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const auto v_next = MinRow(f_class[j], induced[i].mu, h + 1);
        const auto target = BackupWith(mg, h, v_next);
        worst = std::max(worst, ProjectStep(g_class, h, target).distance);
      }
    }
  }
  return worst;
}

}  // namespace mggolf
