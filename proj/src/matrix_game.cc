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

#include "mggolf/matrix_game.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mggolf/errors.h"

namespace mggolf {
namespace {

constexpr double kPivotEps = 1e-12;

void CheckLength(std::span<const double> v, int n, const char* what) {
  if (static_cast<int>(v.size()) != n) {
    Fail(ErrorCode::kDimensionMismatch,
         std::string(what) + " has length " + std::to_string(v.size()) +
             ", expected " + std::to_string(n));
  }
}

// Clip round-off negatives and renormalize onto the simplex.
std::vector<double> Normalize(std::vector<double> v) {
  double total = 0.0;
  for (double& x : v) {
    if (x < 0.0) x = 0.0;
    total += x;
  }
  if (total <= 0.0) {
    std::fill(v.begin(), v.end(), 0.0);
    v[0] = 1.0;
    return v;
  }
  for (double& x : v) x /= total;
  return v;
}

}  // namespace

Payoff::Payoff(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ < 1 || cols_ < 1) {
    Fail(ErrorCode::kDimensionMismatch, "payoff must be at least 1x1");
  }
  if (static_cast<int>(entries_.size()) != rows_ * cols_) {
    Fail(ErrorCode::kDimensionMismatch, "payoff entry count mismatch");
  }
}

Payoff Payoff::FromRows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows[0].empty()) {
    Fail(ErrorCode::kDimensionMismatch, "payoff must be at least 1x1");
  }
  const int n = static_cast<int>(rows[0].size());
  std::vector<double> entries;
  entries.reserve(rows.size() * n);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) {
      Fail(ErrorCode::kDimensionMismatch, "ragged payoff rows");
    }
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return Payoff(static_cast<int>(rows.size()), n, std::move(entries));
}

std::vector<double> Payoff::RowValues(std::span<const double> nu) const {
  CheckLength(nu, cols_, "nu");
  std::vector<double> out(rows_, 0.0);
  for (int a = 0; a < rows_; ++a) {
    double acc = 0.0;
    for (int b = 0; b < cols_; ++b) acc += (*this)(a, b) * nu[b];
    out[a] = acc;
  }
  return out;
}

std::vector<double> Payoff::ColValues(std::span<const double> mu) const {
  CheckLength(mu, rows_, "mu");
  std::vector<double> out(cols_, 0.0);
  for (int b = 0; b < cols_; ++b) {
    double acc = 0.0;
    for (int a = 0; a < rows_; ++a) acc += mu[a] * (*this)(a, b);
    out[b] = acc;
  }
  return out;
}

double Payoff::Bilinear(std::span<const double> mu,
                        std::span<const double> nu) const {
  CheckLength(mu, rows_, "mu");
  CheckLength(nu, cols_, "nu");
  double acc = 0.0;
  for (int a = 0; a < rows_; ++a) {
    if (mu[a] == 0.0) continue;
    double row = 0.0;
    for (int b = 0; b < cols_; ++b) row += (*this)(a, b) * nu[b];
    acc += mu[a] * row;
  }
  return acc;
}

MixedPair SolveZeroSum(const Payoff& m, const SolverOptions& options) {
  const int rows = m.rows();
  const int cols = m.cols();
  double lo = std::numeric_limits<double>::infinity();
  for (double x : m.entries()) {
    if (!std::isfinite(x)) Fail(ErrorCode::kNonFinite, "payoff entry");
    lo = std::min(lo, x);
  }

  // Column player's LP on the shifted matrix M' = M - min(M) + 1 > 0:
  //   maximize sum(y)  s.t.  M' y <= 1, y >= 0.
  // Then nu = y / sum(y); the row player's strategy is read off the
  // reduced costs of the slack columns.
  const int width = cols + rows;
  std::vector<double> tab(rows * (width + 1), 0.0);
  auto at = [&](int i, int j) -> double& { return tab[i * (width + 1) + j]; };
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) at(i, j) = m(i, j) - lo + 1.0;
    at(i, cols + i) = 1.0;
    at(i, width) = 1.0;
  }
  std::vector<double> reduced(width + 1, 0.0);
  for (int j = 0; j < cols; ++j) reduced[j] = 1.0;
  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i) basis[i] = cols + i;

  int pivots = 0;
  while (true) {
    int enter = -1;
    for (int j = 0; j < width; ++j) {
      if (reduced[j] > kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < rows; ++i) {
      const double coef = at(i, enter);
      if (coef <= kPivotEps) continue;
      const double ratio = at(i, width) / coef;
      if (leave < 0 || ratio < best_ratio - kPivotEps) {
        leave = i;
        best_ratio = ratio;
      } else if (ratio <= best_ratio + kPivotEps && basis[i] < basis[leave]) {
        leave = i;
      }
    }
    // The feasible region is bounded because M' > 0.
    if (leave < 0) Fail(ErrorCode::kToleranceNotMet, "unbounded pivot");
    if (++pivots > options.max_pivots) {
      Fail(ErrorCode::kToleranceNotMet, "simplex pivot cap reached");
    }
    const double p = at(leave, enter);
    for (int j = 0; j <= width; ++j) at(leave, j) /= p;
    for (int i = 0; i < rows; ++i) {
      if (i == leave) continue;
      const double factor = at(i, enter);
      if (factor == 0.0) continue;
      for (int j = 0; j <= width; ++j) at(i, j) -= factor * at(leave, j);
    }
    const double factor = reduced[enter];
    for (int j = 0; j <= width; ++j) reduced[j] -= factor * at(leave, j);
    basis[leave] = enter;
  }

  std::vector<double> y(cols, 0.0);
  for (int i = 0; i < rows; ++i) {
    if (basis[i] < cols) y[basis[i]] = at(i, width);
  }
  std::vector<double> x(rows, 0.0);
  for (int i = 0; i < rows; ++i) x[i] = -reduced[cols + i];

  MixedPair out;
  out.mu = Normalize(std::move(x));
  out.nu = Normalize(std::move(y));
  out.value = m.Bilinear(out.mu, out.nu);
  const double gap = DualityGap(m, out.mu, out.nu);
  if (!(gap <= options.tol)) {
    Fail(ErrorCode::kToleranceNotMet,
         "duality gap " + std::to_string(gap) + " above tolerance");
  }
  return out;
}

std::pair<int, double> BestResponse(const Payoff& m,
                                    std::span<const double> opponent,
                                    Side side) {
  if (side == Side::kMax) {
    const std::vector<double> v = m.RowValues(opponent);
    int best = 0;
    for (int a = 1; a < m.rows(); ++a) {
      if (v[a] > v[best]) best = a;
    }
    return {best, v[best]};
  }
  const std::vector<double> v = m.ColValues(opponent);
  int best = 0;
  for (int b = 1; b < m.cols(); ++b) {
    if (v[b] < v[best]) best = b;
  }
  return {best, v[best]};
}

double DualityGap(const Payoff& m, std::span<const double> mu,
                  std::span<const double> nu) {
  const std::vector<double> rv = m.RowValues(nu);
  const std::vector<double> cv = m.ColValues(mu);
  return *std::max_element(rv.begin(), rv.end()) -
         *std::min_element(cv.begin(), cv.end());
}

}  // namespace mggolf
