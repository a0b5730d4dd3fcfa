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

#ifndef MGGOLF_FUNCTION_CLASS_H_
#define MGGOLF_FUNCTION_CLASS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mggolf/markov_game.h"
#include "mggolf/matrix_game.h"

namespace mggolf {

struct Signature {
  int H = 0;
  int S = 0;
  int A = 0;
  int B = 0;

  int NumTriples() const { return S * A * B; }
  bool operator==(const Signature&) const = default;
};

Signature SignatureOf(const TabularMG& mg);

// Per-step tables f_h(s, a, b) for h = 0..H-1 with f_H identically zero.
// Table layout matches TabularMG::Index.
class ValueFunction {
 public:
  ValueFunction() = default;
  explicit ValueFunction(const Signature& sig);
  ValueFunction(const Signature& sig, std::vector<double> data);
  static ValueFunction FromSteps(const Signature& sig,
                                 const std::vector<std::vector<double>>& steps);

  const Signature& signature() const { return sig_; }
  double operator()(int h, int s, int a, int b) const {
    return data_[h * sig_.NumTriples() + (s * sig_.A + a) * sig_.B + b];
  }
  std::span<const double> Step(int h) const {
    return {data_.data() + h * sig_.NumTriples(),
            static_cast<size_t>(sig_.NumTriples())};
  }
  std::span<double> MutableStep(int h) {
    return {data_.data() + h * sig_.NumTriples(),
            static_cast<size_t>(sig_.NumTriples())};
  }
  const std::vector<double>& data() const { return data_; }
  Payoff StatePayoff(int h, int s) const;

  bool operator==(const ValueFunction& other) const = default;

 private:
  Signature sig_;
  std::vector<double> data_;
};

// Ordered finite class; index order is the tie-break order everywhere.
class FunctionClass {
 public:
  FunctionClass() = default;
  FunctionClass(const Signature& sig, std::vector<ValueFunction> members);

  const Signature& signature() const { return sig_; }
  int size() const { return static_cast<int>(members_.size()); }
  const ValueFunction& operator[](int i) const { return members_[i]; }
  const std::vector<ValueFunction>& members() const { return members_; }

 private:
  Signature sig_;
  std::vector<ValueFunction> members_;
};

struct InducedNash {
  MarkovPolicy mu;
  MarkovPolicy nu;
  // v[h][s] = max-min value of f_h(s, ., .); q left empty.
  ValueTables values;
};

InducedNash ComputeInducedNash(const ValueFunction& f,
                               const SolverOptions& options = {});
MarkovPolicy InducedNashPolicy(const ValueFunction& f,
                               const SolverOptions& options = {});
ValueTables InducedNashValue(const ValueFunction& f,
                             const SolverOptions& options = {});

// V^mu_{f,h}(s) = min_b mu_h(s)^T f_h(s, ., b).
ValueTables InducedMinValue(const ValueFunction& f, const MarkovPolicy& mu);

// Column argmin of mu_h(s)^T g_h(s, ., b), lowest index on ties.
MarkovPolicy GreedyMinPolicy(const MarkovPolicy& mu, const ValueFunction& g);

// (T_h f)(s,a,b) = r_h + E V_{f,h+1}(s').
std::vector<double> NashBellman(const TabularMG& mg, const ValueFunction& f,
                                int h, const SolverOptions& options = {});
// (T^mu_h f)(s,a,b) = r_h + E V^mu_{f,h+1}(s').
std::vector<double> MuBellman(const TabularMG& mg, const ValueFunction& f,
                              const MarkovPolicy& mu, int h);
// Same backups from a precomputed next-step value row (v_next[s']).
std::vector<double> BackupWith(const TabularMG& mg, int h,
                               std::span<const double> v_next);

double SupDistance(const ValueFunction& f, const ValueFunction& g);

struct Projection {
  int index = 0;
  double distance = 0.0;
};

// L-infinity projection over all (h, s, a, b), lowest index on ties.
Projection Project(const FunctionClass& cls, const ValueFunction& g);
// Projection of a single step table onto {f_h : f in cls}.
Projection ProjectStep(const FunctionClass& cls, int h,
                       std::span<const double> table);

// Features phi_h(s,a,b) in R^d with ||phi||_2 <= 1; members are
// clamp(phi^T theta) for theta in the ball of the given radius.
struct LinearClassSpec {
  Signature sig;
  int d = 0;
  double radius = 1.0;
  // features[h][sab * d + i].
  std::vector<std::vector<double>> features;
  // Clamp step h to [0, (H - h) / H] instead of [0, 1].
  bool step_clamp = true;
};

ValueFunction LinearFunction(const LinearClassSpec& spec,
                             std::span<const double> theta);

struct LinearCover {
  FunctionClass cls;
  std::vector<std::vector<double>> thetas;
  double grid_step = 0.0;
};

// Axis-aligned lattice with step eps / sqrt(d), symmetric around 0 and
// closed at +/-R, with points outside the radius-R ball dropped. One theta is
// shared by all steps. Throws kTooLarge above max_members.
LinearCover EpsilonCover(const LinearClassSpec& spec, double eps,
                         std::int64_t max_members = 1000000);

// Nearest lattice point under the cover's rounding rule (toward zero).
std::vector<double> CoverRound(const LinearClassSpec& spec, double eps,
                               std::span<const double> theta);

struct RealizabilityAudit {
  double eps_real = 0.0;
  Projection q_star;
  // Largest projection distance of Q^{mu_f, dagger} over f.
  double best_response_distance = 0.0;
};

RealizabilityAudit AuditRealizability(const TabularMG& mg,
                                      const FunctionClass& cls);

// max over f, f' in F and h of the step projection distance of T_h f and
// T^{mu_f}_h f' onto G_h.
double AuditCompleteness(const TabularMG& mg, const FunctionClass& f_class,
                         const FunctionClass& g_class);

}  // namespace mggolf

#endif  // MGGOLF_FUNCTION_CLASS_H_
