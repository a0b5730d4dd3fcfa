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

// Shared fixtures and brute-force oracles for the unit and acceptance tests.
// The oracles deliberately avoid the library's backward recursions.

#ifndef MGGOLF_TESTS_TEST_UTIL_H_
#define MGGOLF_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "mggolf/complexity.h"
#include "mggolf/function_class.h"
#include "mggolf/markov_game.h"
#include "mggolf/matrix_game.h"
#include "mggolf/rng.h"

namespace mggolf::testing {

inline Payoff RandomPayoff(Rng& rng, int rows, int cols, double lo = -1.0,
                           double hi = 1.0) {
  std::vector<double> e(rows * cols);
  for (double& x : e) x = lo + (hi - lo) * rng.Uniform();
  return Payoff(rows, cols, std::move(e));
}

inline std::vector<double> RandomSimplex(Rng& rng, int n) {
  std::vector<double> p(n);
  double total = 0.0;
  for (double& x : p) {
    x = -std::log(1.0 - rng.Uniform());
    total += x;
  }
  for (double& x : p) x /= total;
  return p;
}

inline MarkovPolicy RandomPolicy(Rng& rng, Side side, int H, int S, int n) {
  MarkovPolicy pi(side, H, S, n);
  for (int h = 0; h < H; ++h) {
    for (int s = 0; s < S; ++s) {
      const auto p = RandomSimplex(rng, n);
      std::copy(p.begin(), p.end(), pi.MutableProbs(h, s).begin());
    }
  }
  return pi;
}

inline ValueFunction RandomFunction(Rng& rng, const Signature& sig) {
  std::vector<double> data(sig.H * sig.NumTriples());
  for (double& x : data) x = rng.Uniform();
  return ValueFunction(sig, std::move(data));
}

// Expected return by summing over every trajectory explicitly.
inline double EnumerateValue(const TabularMG& mg, const MarkovPolicy& mu,
                             const MarkovPolicy& nu, int h0, int s0) {
  std::function<double(int, int)> go = [&](int h, int s) -> double {
    if (h == mg.H()) return 0.0;
    double total = 0.0;
    for (int a = 0; a < mg.A(); ++a) {
      const double pa = mu.Probs(h, s)[a];
      if (pa == 0.0) continue;
      for (int b = 0; b < mg.B(); ++b) {
        const double pb = nu.Probs(h, s)[b];
        if (pb == 0.0) continue;
        double cont = mg.Reward(h, s, a, b);
        if (h + 1 < mg.H()) {
          const auto p = mg.Next(h, s, a, b);
          for (int s2 = 0; s2 < mg.S(); ++s2) {
            if (p[s2] != 0.0) cont += p[s2] * go(h + 1, s2);
          }
        }
        total += pa * pb * cont;
      }
    }
    return total;
  };
  return go(h0, s0);
}

// Calls fn on every deterministic Markov policy for one player.
inline void ForEachDeterministic(Side side, int H, int S, int n,
                                 const std::function<void(const MarkovPolicy&)>& fn) {
  MarkovPolicy pi(side, H, S, n);
  const int cells = H * S;
  std::vector<int> choice(cells, 0);
  while (true) {
    for (int c = 0; c < cells; ++c) pi.SetDeterministic(c / S, c % S, choice[c]);
    fn(pi);
    int c = 0;
    while (c < cells && ++choice[c] == n) choice[c++] = 0;
    if (c == cells) return;
  }
}

// min over deterministic nu of the enumerated value (V^{mu, dagger}).
inline double BruteBestResponseToMax(const TabularMG& mg, const MarkovPolicy& mu) {
  double best = std::numeric_limits<double>::infinity();
  ForEachDeterministic(Side::kMin, mg.H(), mg.S(), mg.B(),
                       [&](const MarkovPolicy& nu) {
                         best = std::min(best, EnumerateValue(mg, mu, nu, 0,
                                                              mg.initial_state()));
                       });
  return best;
}

inline double BruteBestResponseToMin(const TabularMG& mg, const MarkovPolicy& nu) {
  double best = -std::numeric_limits<double>::infinity();
  ForEachDeterministic(Side::kMax, mg.H(), mg.S(), mg.A(),
                       [&](const MarkovPolicy& mu) {
                         best = std::max(best, EnumerateValue(mg, mu, nu, 0,
                                                              mg.initial_state()));
                       });
  return best;
}

// Longest valid ordered sequence, repetition allowed, deciding each
// candidate with a scan over the finite set of critical thresholds
// {eps} U {sqrt(prefix sums)}. A valid sequence has valid prefixes, so
// invalid prefixes are not extended. Lengths stop at |family| + 1.
inline int BruteDeDimension(const ResidualClass& residuals,
                            const std::vector<Dist>& family, double eps) {
  const int n = static_cast<int>(family.size());
  const int m = static_cast<int>(residuals.size());
  std::vector<std::vector<double>> e(n, std::vector<double>(m));
  for (int r = 0; r < n; ++r) {
    for (int g = 0; g < m; ++g) e[r][g] = family[r].Expect(residuals[g].table);
  }
  auto valid = [&](const std::vector<int>& seq) {
    std::vector<double> thresholds{eps};
    std::vector<std::vector<double>> prefix(seq.size(), std::vector<double>(m, 0.0));
    for (size_t i = 0; i < seq.size(); ++i) {
      for (int g = 0; g < m; ++g) {
        double sq = 0.0;
        for (size_t j = 0; j < i; ++j) sq += e[seq[j]][g] * e[seq[j]][g];
        prefix[i][g] = std::sqrt(sq);
        if (prefix[i][g] >= eps) thresholds.push_back(prefix[i][g]);
      }
    }
    for (double t : thresholds) {
      bool all = true;
      for (size_t i = 0; i < seq.size() && all; ++i) {
        bool found = false;
        for (int g = 0; g < m && !found; ++g) {
          found = prefix[i][g] <= t && std::abs(e[seq[i]][g]) > t;
        }
        all = found;
      }
      if (all) return true;
    }
    return false;
  };
  int best = 0;
  std::vector<int> seq;
  std::function<void()> go = [&]() {
    if (!valid(seq)) return;
    best = std::max(best, static_cast<int>(seq.size()));
    if (static_cast<int>(seq.size()) > n) return;
    for (int r = 0; r < n; ++r) {
      seq.push_back(r);
      go();
      seq.pop_back();
    }
  };
  go();
  return best;
}

}  // namespace mggolf::testing

#endif  // MGGOLF_TESTS_TEST_UTIL_H_
