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

#include "mggolf/envs.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "mggolf/errors.h"
#include "mggolf/rng.h"

namespace mggolf {
namespace {

// Flat Dirichlet(1) over n coordinates via normalized exponentials.
std::vector<double> Dirichlet(int n, Rng& rng) {
  std::vector<double> w(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    w[i] = -std::log(1.0 - rng.Uniform());
    total += w[i];
  }
  for (double& x : w) x /= total;
  return w;
}

double StepCap(int h, int horizon) {
  return static_cast<double>(horizon - h) / horizon;
}

constexpr double kCheckTol = 1e-9;

// Compositions of n into d nonnegative parts, visited in lexicographic order.
template <typename Fn>
void ForEachComposition(int n, int d, Fn&& fn) {
  std::vector<int> parts(d, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == d - 1) {
      parts[i] = left;
      fn(parts);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      parts[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, n);
}

// Second-largest of v (equal to the largest on ties).
double SecondLargest(const std::vector<double>& v) {
  double first = -INFINITY;
  double second = -INFINITY;
  for (double x : v) {
    if (x > first) {
      second = first;
      first = x;
    } else if (x > second) {
      second = x;
    }
  }
  return second;
}

bool Dominates(const Payoff& x, const Payoff& y) {
  bool strict = false;
  for (size_t i = 0; i < x.entries().size(); ++i) {
    if (x.entries()[i] < y.entries()[i]) return false;
    if (x.entries()[i] > y.entries()[i]) strict = true;
  }
  return strict;
}

}  // namespace

Payoff RpsPayoff() {
  return Payoff::FromRows({{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}});
}

RpsGame MakeRps() {
  const Payoff m = RpsPayoff();
  RpsGame out;
  out.map = ScaleMap{0.5, 0.5};
  std::vector<double> reward(9);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) reward[a * 3 + b] = out.map.ToStored(m(a, b));
  }
  out.mg = TabularMG(1, 1, 3, 3, 0, {std::vector<double>(9, 1.0)}, {reward});
  return out;
}

std::vector<Payoff> MakePerturbedSet() {
  const Payoff base = RpsPayoff();
  std::vector<Payoff> out{base};
  const int cells[6][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};
  const double values[6] = {1.1, -1.1, -1.1, 1.1, 1.1, -1.1};
  for (int i = 0; i < 6; ++i) {
    Payoff m = base;
    m(cells[i][0], cells[i][1]) = values[i];
    out.push_back(m);
  }
  return out;
}

std::pair<double, double> SubproblemSlacks(const std::vector<Payoff>& set,
                                           int upper, int lower,
                                           const std::vector<double>& mu,
                                           const std::vector<double>& nu) {
  double best_max = -INFINITY;
  double best_min = INFINITY;
  for (const Payoff& m : set) {
    const std::vector<double> rows = m.RowValues(nu);
    const std::vector<double> cols = m.ColValues(mu);
    best_max = std::max(best_max, *std::max_element(rows.begin(), rows.end()));
    best_min = std::min(best_min, *std::min_element(cols.begin(), cols.end()));
  }
  return {set[upper].Bilinear(mu, nu) - best_max,
          best_min - set[lower].Bilinear(mu, nu)};
}

CounterexampleReport VerifyCounterexample(const std::vector<Payoff>& set,
                                          double grid_res) {
  if (set.empty()) Fail(ErrorCode::kInvalidArgument, "empty matrix set");
  if (!(grid_res > 0.0 && grid_res <= 1e-2)) {
    Fail(ErrorCode::kInvalidArgument, "grid resolution must be in (0, 1e-2]");
  }
  const int rows = set[0].rows();
  const int cols = set[0].cols();
  for (const Payoff& m : set) {
    if (m.rows() != rows || m.cols() != cols) {
      Fail(ErrorCode::kDimensionMismatch, "matrices differ in shape");
    }
  }
  const int n = static_cast<int>(set.size());
  CounterexampleReport report;
  report.grid_res = grid_res;

  for (int i = 0; i < n; ++i) {
    bool up = true;
    bool low = true;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (Dominates(set[j], set[i])) up = false;
      if (Dominates(set[i], set[j])) low = false;
    }
    if (up) report.undominated_upper.push_back(i);
    if (low) report.undominated_lower.push_back(i);
  }

  auto accept = [&](int up, int low, std::vector<double> mu,
                    std::vector<double> nu) {
    const auto [smax, smin] = SubproblemSlacks(set, up, low, mu, nu);
    if (smax < -kCheckTol || smin < -kCheckTol) return false;
    report.solvable = true;
    report.upper_matrix = up;
    report.lower_matrix = low;
    report.mu = std::move(mu);
    report.nu = std::move(nu);
    report.max_slack = smax;
    report.min_slack = smin;
    return true;
  };

  // Deterministic pairs under every (upper, lower) matrix pair.
  for (int a = 0; a < rows; ++a) {
    for (int b = 0; b < cols; ++b) {
      std::vector<double> mu(rows, 0.0);
      std::vector<double> nu(cols, 0.0);
      mu[a] = 1.0;
      nu[b] = 1.0;
      for (int up = 0; up < n; ++up) {
        for (int low = 0; low < n; ++low) {
          ++report.deterministic_checked;
          const auto [smax, smin] = SubproblemSlacks(set, up, low, mu, nu);
          if (smax >= -kCheckTol && smin >= -kCheckTol) {
            ++report.deterministic_solving;
          }
        }
      }
    }
  }
  if (report.deterministic_solving > 0) {
    for (int a = 0; a < rows && !report.solvable; ++a) {
      for (int b = 0; b < cols && !report.solvable; ++b) {
        std::vector<double> mu(rows, 0.0);
        std::vector<double> nu(cols, 0.0);
        mu[a] = 1.0;
        nu[b] = 1.0;
        for (int up = 0; up < n && !report.solvable; ++up) {
          for (int low = 0; low < n && !report.solvable; ++low) {
            accept(up, low, mu, nu);
          }
        }
      }
    }
    return report;
  }

  // Mixed candidates: saddle pairs of the individual matrices.
  for (int i = 0; i < n; ++i) {
    const MixedPair pair = SolveZeroSum(set[i]);
    int up = 0;
    int low = 0;
    for (int j = 1; j < n; ++j) {
      if (set[j].Bilinear(pair.mu, pair.nu) > set[up].Bilinear(pair.mu, pair.nu)) {
        up = j;
      }
      if (set[j].Bilinear(pair.mu, pair.nu) < set[low].Bilinear(pair.mu, pair.nu)) {
        low = j;
      }
    }
    if (accept(up, low, pair.mu, pair.nu)) return report;
  }

  // Refutation: any solution needs mu to maximize mu'^T Mup nu where Mup nu
  // attains the set-wide maximum m(nu). A positive gap between m(nu) and the
  // second-largest entry of every M nu forces mu to be deterministic, and
  // symmetrically for nu. Deterministic pairs were excluded above.
  const int grid = static_cast<int>(std::lround(1.0 / grid_res));
  for (const Payoff& m : set) {
    for (int a = 0; a < rows; ++a) {
      double hi = -INFINITY;
      double lo = INFINITY;
      for (int b = 0; b < cols; ++b) {
        hi = std::max(hi, m(a, b));
        lo = std::min(lo, m(a, b));
      }
      report.lipschitz_nu = std::max(report.lipschitz_nu, (hi - lo) / 2.0);
    }
    for (int b = 0; b < cols; ++b) {
      double hi = -INFINITY;
      double lo = INFINITY;
      for (int a = 0; a < rows; ++a) {
        hi = std::max(hi, m(a, b));
        lo = std::min(lo, m(a, b));
      }
      report.lipschitz_mu = std::max(report.lipschitz_mu, (hi - lo) / 2.0);
    }
  }

  report.nu_margin = INFINITY;
  int points = 0;
  ForEachComposition(grid, cols, [&](const std::vector<int>& parts) {
    ++points;
    std::vector<double> nu(cols);
    for (int b = 0; b < cols; ++b) nu[b] = static_cast<double>(parts[b]) / grid;
    std::vector<std::vector<double>> values;
    double top = -INFINITY;
    for (const Payoff& m : set) {
      values.push_back(m.RowValues(nu));
      top = std::max(top, *std::max_element(values.back().begin(),
                                            values.back().end()));
    }
    double margin = INFINITY;
    for (const auto& v : values) margin = std::min(margin, top - SecondLargest(v));
    if (margin < report.nu_margin) {
      report.nu_margin = margin;
      report.nu_worst = nu;
    }
  });
  report.mu_margin = INFINITY;
  ForEachComposition(grid, rows, [&](const std::vector<int>& parts) {
    ++points;
    std::vector<double> mu(rows);
    for (int a = 0; a < rows; ++a) mu[a] = static_cast<double>(parts[a]) / grid;
    std::vector<std::vector<double>> values;
    double bottom = INFINITY;
    for (const Payoff& m : set) {
      std::vector<double> c = m.ColValues(mu);
      for (double& x : c) x = -x;
      values.push_back(c);
      bottom = std::min(bottom, -*std::max_element(c.begin(), c.end()));
    }
    double margin = INFINITY;
    for (const auto& v : values) {
      margin = std::min(margin, -SecondLargest(v) - bottom);
    }
    if (margin < report.mu_margin) {
      report.mu_margin = margin;
      report.mu_worst = mu;
    }
  });
  report.grid_points = points;
  // Floor rounding of all but one coordinate moves a point by at most
  // 2 (d - 1) / N in l1.
  const int d = std::max(rows, cols);
  report.cell_radius = 2.0 * (d - 1) / grid;
  report.margin_certified =
      report.nu_margin > 2.0 * report.lipschitz_nu * report.cell_radius &&
      report.mu_margin > 2.0 * report.lipschitz_mu * report.cell_radius;
  if (!report.margin_certified) {
    Fail(ErrorCode::kInconclusive,
         "margin certificate fails at grid " + std::to_string(grid_res));
  }
  report.solvable = false;
  return report;
}

TabularMG MakeRandomTabular(int S, int A, int B, int H, double sparsity,
                            std::uint64_t seed) {
  if (S < 1 || A < 1 || B < 1 || H < 1) {
    Fail(ErrorCode::kInvalidArgument, "sizes must be positive");
  }
  if (!(sparsity >= 0.0 && sparsity < 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "sparsity must be in [0, 1)");
  }
  Rng rng(seed, 0, StreamTag::kGenerator);
  const int support =
      std::max(1, S - static_cast<int>(std::lround(sparsity * S)));
  const int n = S * A * B;
  std::vector<std::vector<double>> transition(H, std::vector<double>(n * S, 0.0));
  std::vector<std::vector<double>> reward(H, std::vector<double>(n, 0.0));
  for (int h = 0; h < H; ++h) {
    for (int i = 0; i < n; ++i) {
      std::vector<int> order(S);
      std::iota(order.begin(), order.end(), 0);
      for (int j = S - 1; j > 0; --j) std::swap(order[j], order[rng.UniformInt(j + 1)]);
      const std::vector<double> w = Dirichlet(support, rng);
      for (int j = 0; j < support; ++j) transition[h][i * S + order[j]] = w[j];
      reward[h][i] = rng.Uniform() / H;
    }
  }
  return TabularMG(H, S, A, B, 0, std::move(transition), std::move(reward));
}

TabularMG MakeSaddleBenchmark(int S, int A, int B, int H, double mix,
                              std::uint64_t seed, bool deterministic) {
  if (S < 1 || A < 1 || B < 1 || H < 1) {
    Fail(ErrorCode::kInvalidArgument, "sizes must be positive");
  }
  if (!(mix >= 0.0 && mix <= 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "mix must be in [0, 1]");
  }
  Rng rng(seed, 0, StreamTag::kGenerator);
  auto row = [&]() {
    if (!deterministic) return Dirichlet(S, rng);
    std::vector<double> w(S, 0.0);
    w[rng.UniformInt(S)] = 1.0;
    return w;
  };
  const int n = S * A * B;
  std::vector<std::vector<double>> transition(H, std::vector<double>(n * S, 0.0));
  std::vector<std::vector<double>> reward(H, std::vector<double>(n, 0.0));
  for (int h = 0; h < H; ++h) {
    for (int s = 0; s < S; ++s) {
      const std::vector<double> base = row();
      const int a_star = rng.UniformInt(A);
      const int b_star = rng.UniformInt(B);
      for (int a = 0; a < A; ++a) {
        for (int b = 0; b < B; ++b) {
          const int i = (s * A + a) * B + b;
          const std::vector<double> own = row();
          for (int s2 = 0; s2 < S; ++s2) {
            transition[h][i * S + s2] = (1.0 - mix) * base[s2] + mix * own[s2];
          }
          double r;
          if (a == a_star && b == b_star) {
            r = 0.5 / H;
          } else if (a == a_star) {
            r = 1.0 / H;
          } else if (b == b_star) {
            r = 0.0;
          } else {
            r = rng.Uniform() / H;
          }
          reward[h][i] = r;
        }
      }
    }
  }
  return TabularMG(H, S, A, B, 0, std::move(transition), std::move(reward));
}

bool HasStrictPureSaddles(const ValueFunction& f) {
  const Signature& sig = f.signature();
  for (int h = 0; h < sig.H; ++h) {
    for (int s = 0; s < sig.S; ++s) {
      bool found = false;
      for (int a = 0; a < sig.A && !found; ++a) {
        for (int b = 0; b < sig.B && !found; ++b) {
          bool ok = true;
          for (int b2 = 0; b2 < sig.B && ok; ++b2) {
            if (b2 != b && !(f(h, s, a, b2) > f(h, s, a, b))) ok = false;
          }
          for (int a2 = 0; a2 < sig.A && ok; ++a2) {
            if (a2 != a && !(f(h, s, a2, b) < f(h, s, a, b))) ok = false;
          }
          found = ok;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

FunctionClass PureSaddleClass(const TabularMG& mg, int num_random,
                              std::uint64_t seed) {
  const Signature sig = SignatureOf(mg);
  Rng rng(seed, 1, StreamTag::kClassBuild);
  std::vector<ValueFunction> members;
  members.push_back(ValueFunction::FromSteps(sig, NashSolve(mg).values.q));
  for (int k = 0; k < num_random; ++k) {
    ValueFunction f(sig);
    for (int h = 0; h < sig.H; ++h) {
      const double cap = StepCap(h, sig.H);
      const double gap = cap / 10.0;
      std::span<double> step = f.MutableStep(h);
      for (int s = 0; s < sig.S; ++s) {
        const int a0 = rng.UniformInt(sig.A);
        const int b0 = rng.UniformInt(sig.B);
        const double mid = gap + rng.Uniform() * (cap - 2.0 * gap);
        for (int a = 0; a < sig.A; ++a) {
          for (int b = 0; b < sig.B; ++b) {
            double v;
            if (a == a0 && b == b0) {
              v = mid;
            } else if (a == a0) {
              v = mid + gap * (0.5 + 0.5 * rng.Uniform()) *
                            std::min(1.0, (cap - mid) / gap);
            } else if (b == b0) {
              v = mid - gap * (0.5 + 0.5 * rng.Uniform()) *
                            std::min(1.0, mid / gap);
            } else {
              v = rng.Uniform() * cap;
            }
            step[(s * sig.A + a) * sig.B + b] = v;
          }
        }
      }
    }
    members.push_back(std::move(f));
  }
  const int planted = static_cast<int>(members.size());
  for (int i = 1; i < planted; ++i) {
    const BestResponseResult br =
        BestResponseToMax(mg, InducedNashPolicy(members[i]));
    ValueFunction g = ValueFunction::FromSteps(sig, br.values.q);
    if (std::find(members.begin(), members.end(), g) == members.end()) {
      members.push_back(std::move(g));
    }
  }
  return FunctionClass(sig, std::move(members));
}

LinearGame MakeLinearMg(int d, int S, int A, int B, int H, std::uint64_t seed) {
  if (d < 1 || S < 1 || A < 1 || B < 1 || H < 1) {
    Fail(ErrorCode::kInvalidArgument, "sizes must be positive");
  }
  Rng rng(seed, 0, StreamTag::kGenerator);
  const int n = S * A * B;
  LinearGame out;
  out.spec.sig = Signature{H, S, A, B};
  out.spec.d = d;
  out.spec.radius = std::sqrt(static_cast<double>(d));
  out.spec.features.assign(H, std::vector<double>(n * d, 0.0));
  out.psi.assign(H, std::vector<double>(d * S, 0.0));
  out.theta_r.assign(H, std::vector<double>(d, 0.0));
  std::vector<std::vector<double>> transition(H, std::vector<double>(n * S, 0.0));
  std::vector<std::vector<double>> reward(H, std::vector<double>(n, 0.0));
  for (int h = 0; h < H; ++h) {
    for (int i = 0; i < d; ++i) {
      const std::vector<double> w = Dirichlet(S, rng);
      std::copy(w.begin(), w.end(), out.psi[h].begin() + i * S);
      out.theta_r[h][i] = rng.Uniform() / H;
    }
    for (int x = 0; x < n; ++x) {
      const std::vector<double> phi = Dirichlet(d, rng);
      std::copy(phi.begin(), phi.end(), out.spec.features[h].begin() + x * d);
      double r = 0.0;
      for (int i = 0; i < d; ++i) {
        r += phi[i] * out.theta_r[h][i];
        for (int s2 = 0; s2 < S; ++s2) {
          transition[h][x * S + s2] += phi[i] * out.psi[h][i * S + s2];
        }
      }
      // Renormalize away the rounding of the mixture sum.
      double total = 0.0;
      for (int s2 = 0; s2 < S; ++s2) total += transition[h][x * S + s2];
      for (int s2 = 0; s2 < S; ++s2) transition[h][x * S + s2] /= total;
      reward[h][x] = r;
    }
  }
  out.mg = TabularMG(H, S, A, B, 0, std::move(transition), std::move(reward));
  return out;
}

TabularMG MakeBlockFromLatent(const TabularMG& latent, const BlockSpec& spec) {
  const int m = latent.S();
  if (spec.m != m) Fail(ErrorCode::kDimensionMismatch, "latent state count");
  const int S = static_cast<int>(spec.decoder.size());
  if (S < 1) Fail(ErrorCode::kInvalidArgument, "empty decoder");
  std::vector<int> block_size(m, 0);
  for (int q : spec.decoder) {
    if (q < 0 || q >= m) Fail(ErrorCode::kInvalidArgument, "decoder range");
    ++block_size[q];
  }
  for (int z = 0; z < m; ++z) {
    if (block_size[z] == 0) {
      Fail(ErrorCode::kInvalidArgument, "latent state without observation");
    }
  }
  std::vector<double> emission(S);
  if (spec.emission.empty()) {
    for (int o = 0; o < S; ++o) emission[o] = 1.0 / block_size[spec.decoder[o]];
  } else {
    if (static_cast<int>(spec.emission.size()) != S) {
      Fail(ErrorCode::kDimensionMismatch, "emission size");
    }
    std::vector<double> total(m, 0.0);
    for (int o = 0; o < S; ++o) {
      if (spec.emission[o] < 0.0) {
        Fail(ErrorCode::kInvalidArgument, "negative emission");
      }
      total[spec.decoder[o]] += spec.emission[o];
    }
    for (int z = 0; z < m; ++z) {
      if (std::abs(total[z] - 1.0) > 1e-12) {
        Fail(ErrorCode::kInvalidArgument, "emission does not sum to 1");
      }
    }
    emission = spec.emission;
  }
  const int A = latent.A();
  const int B = latent.B();
  const int H = latent.H();
  const int n = S * A * B;
  std::vector<std::vector<double>> transition(H, std::vector<double>(n * S, 0.0));
  std::vector<std::vector<double>> reward(H, std::vector<double>(n, 0.0));
  for (int h = 0; h < H; ++h) {
    for (int o = 0; o < S; ++o) {
      const int z = spec.decoder[o];
      for (int a = 0; a < A; ++a) {
        for (int b = 0; b < B; ++b) {
          const int i = (o * A + a) * B + b;
          reward[h][i] = latent.Reward(h, z, a, b);
          const auto p = latent.Next(h, z, a, b);
          for (int o2 = 0; o2 < S; ++o2) {
            transition[h][i * S + o2] = p[spec.decoder[o2]] * emission[o2];
          }
        }
      }
    }
  }
  int initial = 0;
  while (spec.decoder[initial] != latent.initial_state()) ++initial;
  return TabularMG(H, S, A, B, initial, std::move(transition), std::move(reward));
}

TabularMG MakeBlockMg(const BlockSpec& spec, int A, int B, int H,
                      std::uint64_t seed) {
  return MakeBlockFromLatent(MakeRandomTabular(spec.m, A, B, H, 0.0, seed),
                             spec);
}

ValueFunction RoundToGrid(const ValueFunction& q, int grid_levels) {
  if (grid_levels < 1) Fail(ErrorCode::kInvalidArgument, "grid levels");
  const Signature& sig = q.signature();
  ValueFunction out(sig);
  for (int h = 0; h < sig.H; ++h) {
    const double top =
        std::floor(StepCap(h, sig.H) * grid_levels + 1e-9);
    std::span<const double> in = q.Step(h);
    std::span<double> step = out.MutableStep(h);
    for (int i = 0; i < sig.NumTriples(); ++i) {
      const double k = std::clamp(std::round(in[i] * grid_levels), 0.0, top);
      step[i] = k / grid_levels;
    }
  }
  return out;
}

FunctionClass TabularFunctionClass(const TabularMG& mg,
                                   const TabularClassOptions& options) {
  const Signature sig = SignatureOf(mg);
  const int g = options.grid_levels;
  if (g < 1) Fail(ErrorCode::kInvalidArgument, "grid levels");
  Rng rng(options.seed, 0, StreamTag::kClassBuild);
  std::vector<ValueFunction> members;
  std::set<std::vector<double>> seen;
  auto add = [&](ValueFunction f) {
    if (seen.insert(f.data()).second) members.push_back(std::move(f));
  };
  add(RoundToGrid(ValueFunction::FromSteps(sig, NashSolve(mg).values.q), g));
  for (int k = 0; k < options.num_random; ++k) {
    ValueFunction f(sig);
    for (int h = 0; h < sig.H; ++h) {
      const int top = static_cast<int>(std::floor(StepCap(h, sig.H) * g + 1e-9));
      for (double& x : f.MutableStep(h)) {
        x = static_cast<double>(rng.UniformInt(top + 1)) / g;
      }
    }
    add(std::move(f));
  }
  size_t done = 0;
  for (int pass = 0; pass < options.closure_iterations; ++pass) {
    const size_t end = members.size();
    for (size_t i = done; i < end; ++i) {
      const BestResponseResult br =
          BestResponseToMax(mg, InducedNashPolicy(members[i]));
      add(RoundToGrid(ValueFunction::FromSteps(sig, br.values.q), g));
    }
    done = end;
    if (members.size() == end) break;
  }
  return FunctionClass(sig, std::move(members));
}

FunctionClass BellmanClosureClass(const TabularMG& mg,
                                  const FunctionClass& f_class) {
  const Signature sig = SignatureOf(mg);
  if (!(f_class.signature() == sig)) {
    Fail(ErrorCode::kDimensionMismatch, "class signature vs game");
  }
  const int n = f_class.size();
  std::vector<InducedNash> induced;
  for (int i = 0; i < n; ++i) induced.push_back(ComputeInducedNash(f_class[i]));
  std::vector<std::vector<std::vector<double>>> slices(sig.H);
  for (int h = 0; h < sig.H; ++h) {
    std::set<std::vector<double>> seen;
    auto add = [&](std::vector<double> t) {
      if (seen.insert(t).second) slices[h].push_back(std::move(t));
    };
    for (int i = 0; i < n; ++i) add(BackupWith(mg, h, induced[i].values.v[h + 1]));
    if (h + 1 < sig.H) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          add(BackupWith(mg, h,
                         InducedMinValue(f_class[j], induced[i].mu).v[h + 1]));
        }
      }
    }
  }
  size_t count = 0;
  for (const auto& s : slices) count = std::max(count, s.size());
  std::vector<ValueFunction> members;
  for (size_t j = 0; j < count; ++j) {
    ValueFunction f(sig);
    for (int h = 0; h < sig.H; ++h) {
      const auto& t = slices[h][std::min(j, slices[h].size() - 1)];
      std::span<double> step = f.MutableStep(h);
      for (size_t i = 0; i < t.size(); ++i) step[i] = std::clamp(t[i], 0.0, 1.0);
    }
    members.push_back(std::move(f));
  }
  return FunctionClass(sig, std::move(members));
}

}  // namespace mggolf
