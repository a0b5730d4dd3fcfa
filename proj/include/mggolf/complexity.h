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

#ifndef MGGOLF_COMPLEXITY_H_
#define MGGOLF_COMPLEXITY_H_

#include <cstdint>
#include <vector>

#include "mggolf/function_class.h"
#include "mggolf/markov_game.h"

namespace mggolf {

// Probability vector over S x A x B (Q-type, TabularMG::Index layout) or
// over S (V-type).
struct Dist {
  std::vector<double> weights;

  double Expect(const std::vector<double>& table) const;
  bool operator==(const Dist&) const = default;
};

Dist PointMass(int size, int index);

struct ResidualFunction {
  int h = 0;
  std::vector<double> table;
  // Indices (f, g) or (f, g, w) of the generating functions; a single
  // index for online residuals.
  std::vector<int> source;
};

using ResidualClass = std::vector<ResidualFunction>;

struct Independence {
  bool independent = false;
  int witness = -1;  // index into the residual class
};

// Exhaustive scan; returns the lowest-index witness g with
// sqrt(sum_i E_{prior_i}[g]^2) <= eps and |E_nu[g]| > eps.
Independence IsEpsIndependent(const ResidualClass& residuals, const Dist& nu,
                              const std::vector<Dist>& prior, double eps);

enum class SearchMode { kExact, kGreedy };

struct DimensionCaps {
  int max_family = 8;
  int max_length = 8;
  // V-type residual classes grow as |F|^3.
  int max_v_class = 6;
  // Occupancy families grow as |F|^2.
  int max_pairs = 4096;
};

struct DeCertificate {
  // Indices into the family, in order.
  std::vector<int> sequence;
  // Shared threshold eps' >= eps for the whole sequence.
  double eps_prime = 0.0;
  // witnesses[i] indexes the residual class.
  std::vector<int> witnesses;
};

struct DeResult {
  int dimension = 0;
  DeCertificate certificate;
};

// Longest sequence from the family in which every element is
// eps'-independent of its predecessors for one common eps' >= eps.
// Exact mode is a depth-first search over sequences without repetition
// (a repeated element is never independent of an earlier copy), tracking
// the feasible eps' set as a union of half-open intervals. Greedy mode
// appends the first feasible family member until none remains.
DeResult DeDimension(const ResidualClass& residuals,
                     const std::vector<Dist>& family, double eps,
                     SearchMode mode, const DimensionCaps& caps = {});

// Re-verifies a certificate with IsEpsIndependent-style checks.
bool CheckCertificate(const ResidualClass& residuals,
                      const std::vector<Dist>& family, double eps,
                      const DeCertificate& certificate);

enum class BeKind { kQ, kOnline, kV };

struct DistFamilies {
  // Point masses per step.
  std::vector<std::vector<Dist>> delta;
  // Exact step-h laws of (mu_f, nu_{f,g}) over all ordered pairs, deduped.
  std::vector<std::vector<Dist>> occupancy;
};

// state_marginal=true projects both families onto S.
DistFamilies BuildDistFamilies(const TabularMG& mg, const FunctionClass& f_class,
                               bool state_marginal = false,
                               const DimensionCaps& caps = {});

// Residual classes per step. Q: f_h - T^{mu_g}_h f_{h+1} over (f, g).
// Online: f_h - T_h f_{h+1}. V: the (mu_g x nu_{g,w}) average of the
// Q-type residual at each state, over (f, g, w). Not deduped.
std::vector<ResidualClass> BuildResiduals(const TabularMG& mg,
                                          const FunctionClass& f_class,
                                          BeKind kind,
                                          const DimensionCaps& caps = {});

struct BeResult {
  int dimension = 0;
  int step = 0;  // step attaining the maximum
  // Per-step values of the minimum over families.
  std::vector<int> per_step;
  // Certificate at the maximizing step.
  bool certificate_from_delta = true;
  DeCertificate certificate;
};

BeResult BeDimension(const TabularMG& mg, const FunctionClass& f_class,
                     double eps, BeKind kind, SearchMode mode,
                     const DimensionCaps& caps = {});

struct EffectiveDimensionOptions {
  SearchMode mode = SearchMode::kExact;
  // Upper bound on the number of candidate multisets per exact evaluation.
  std::int64_t max_multisets = 2000000;
  int max_n = 100000;
};

struct EffectiveDimensionResult {
  int dimension = 0;
  bool exact = true;
  // sup (1/n) log det(I + eps^-2 sum z z^T) at the returned n.
  double objective = 0.0;
};

// Minimal n with sup over length-n sequences from Z of
// (1/n) log det(I + eps^-2 sum z_i z_i^T) <= exp(-1).
EffectiveDimensionResult EffectiveDimension(
    const std::vector<std::vector<double>>& z, double eps,
    const EffectiveDimensionOptions& options = {});

// log det(I + eps^-2 sum_i counts_i z_i z_i^T).
double LogDetObjective(const std::vector<std::vector<double>>& z,
                       const std::vector<int>& counts, double eps);

}  // namespace mggolf

#endif  // MGGOLF_COMPLEXITY_H_
