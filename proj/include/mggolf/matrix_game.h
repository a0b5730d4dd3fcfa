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

#ifndef MGGOLF_MATRIX_GAME_H_
#define MGGOLF_MATRIX_GAME_H_

#include <span>
#include <utility>
#include <vector>

namespace mggolf {

enum class Side { kMax, kMin };

// Dense payoff matrix of a one-shot zero-sum game. Row player maximizes.
class Payoff {
 public:
  Payoff() = default;
  Payoff(int rows, int cols, std::vector<double> entries);
  static Payoff FromRows(const std::vector<std::vector<double>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double operator()(int a, int b) const { return entries_[a * cols_ + b]; }
  double& operator()(int a, int b) { return entries_[a * cols_ + b]; }
  const std::vector<double>& entries() const { return entries_; }

  // (M nu)_a and (mu^T M)_b.
  std::vector<double> RowValues(std::span<const double> nu) const;
  std::vector<double> ColValues(std::span<const double> mu) const;
  double Bilinear(std::span<const double> mu, std::span<const double> nu) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> entries_;
};

struct MixedPair {
  std::vector<double> mu;
  std::vector<double> nu;
  double value = 0.0;
};

struct SolverOptions {
  double tol = 1e-9;
  int max_pivots = 10000;
};

// Saddle point of the matrix game by the simplex method with Bland's rule.
// Throws MgError(kNonFinite) on non-finite entries and
// MgError(kToleranceNotMet) if the pivot cap is hit or the recovered pair
// has duality gap above tol. For all-tie matrices the output is the
// lexicographic vertex (one-hot(0), one-hot(0)).
MixedPair SolveZeroSum(const Payoff& m, const SolverOptions& options = {});

// Pure best response to a fixed opponent mixed strategy, lowest index on ties.
std::pair<int, double> BestResponse(const Payoff& m,
                                    std::span<const double> opponent,
                                    Side side);

// max_a (M nu)_a - min_b (mu^T M)_b.
double DualityGap(const Payoff& m, std::span<const double> mu,
                  std::span<const double> nu);

}  // namespace mggolf

#endif  // MGGOLF_MATRIX_GAME_H_
