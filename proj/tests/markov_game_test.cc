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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "mggolf/envs.h"
#include "mggolf/errors.h"
#include "mggolf/markov_game.h"
#include "mggolf/rng.h"
#include "test_util.h"

namespace mggolf {
namespace {

TabularMG TwoStepGame() {
  // H = 2, S = 2, A = B = 2; step 0 from state 0 moves to state 1 only on (1, 1).
  std::vector<std::vector<double>> p(2, std::vector<double>(2 * 4 * 2, 0.0));
  std::vector<std::vector<double>> r(2, std::vector<double>(2 * 4, 0.0));
  for (int sab = 0; sab < 8; ++sab) {
    p[0][sab * 2 + (sab == 3 ? 1 : 0)] = 1.0;
    p[1][sab * 2] = 1.0;
  }
  r[0] = {0.1, 0.2, 0.3, 0.0, 0.0, 0.0, 0.0, 0.0};
  r[1] = {0.5, 0.1, 0.2, 0.4, 0.9, 0.8, 0.7, 0.6};
  return TabularMG(2, 2, 2, 2, 0, p, r);
}

TEST_CASE("construction validates its inputs") {
  CHECK_NOTHROW(TabularMG(1, 2, 1, 1, 0, {{1.0, 0.0, 0.0, 1.0}}, {{0.5, 0.5}}));
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const MgError& e) {
      return e.code();
    }
    return ErrorCode::kIo;
  };
  CHECK(code([] { TabularMG(1, 2, 1, 1, 0, {{0.9, 0.0, 0.0, 1.0}}, {{0.5, 0.5}}); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code([] { TabularMG(1, 2, 1, 1, 0, {{1.0, 0.0, 0.0, 1.0}}, {{1.5, 0.5}}); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code([] { TabularMG(1, 2, 1, 1, 5, {{1.0, 0.0, 0.0, 1.0}}, {{0.5, 0.5}}); }) ==
        ErrorCode::kDimensionMismatch);
  CHECK(code([] { TabularMG(1, 2, 1, 1, 0, {{1.0, 0.0}}, {{0.5, 0.5}}); }) ==
        ErrorCode::kDimensionMismatch);
  // Two steps of reward 0.6 break the unit return bound.
  CHECK(code([] {
          TabularMG(2, 1, 1, 1, 0, {{1.0}, {1.0}}, {{0.6}, {0.6}});
        }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("evaluation matches trajectory enumeration") {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const TabularMG mg = MakeRandomTabular(2 + rng.UniformInt(2), 2, 2,
                                           1 + rng.UniformInt(3), 0.3, 100 + t);
    const MarkovPolicy mu = testing::RandomPolicy(rng, Side::kMax, mg.H(), mg.S(), mg.A());
    const MarkovPolicy nu = testing::RandomPolicy(rng, Side::kMin, mg.H(), mg.S(), mg.B());
    const ValueTables v = EvaluatePair(mg, mu, nu);
    for (int h = 0; h < mg.H(); ++h) {
      for (int s = 0; s < mg.S(); ++s) {
        CHECK(std::abs(v.v[h][s] - testing::EnumerateValue(mg, mu, nu, h, s)) <= 1e-12);
      }
    }
    for (int s = 0; s < mg.S(); ++s) CHECK(v.v[mg.H()][s] == 0.0);
  }
}

TEST_CASE("evaluation satisfies the Bellman equations") {
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const TabularMG mg = MakeRandomTabular(3, 2, 3, 3, 0.0, 200 + t);
    const MarkovPolicy mu = testing::RandomPolicy(rng, Side::kMax, 3, 3, 2);
    const MarkovPolicy nu = testing::RandomPolicy(rng, Side::kMin, 3, 3, 3);
    const ValueTables v = EvaluatePair(mg, mu, nu);
    for (int h = 0; h < mg.H(); ++h) {
      for (int s = 0; s < mg.S(); ++s) {
        double avg = 0.0;
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 3; ++b) {
            double q = mg.Reward(h, s, a, b);
            const auto p = mg.Next(h, s, a, b);
            for (int s2 = 0; s2 < 3; ++s2) q += p[s2] * v.v[h + 1][s2];
            CHECK(std::abs(q - v.q[h][mg.Index(s, a, b)]) <= 1e-12);
            avg += mu.Probs(h, s)[a] * nu.Probs(h, s)[b] * q;
          }
        }
        CHECK(std::abs(avg - v.v[h][s]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("best responses match exhaustive search over deterministic policies") {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const TabularMG mg = MakeRandomTabular(2, 2, 2, 3, 0.0, 300 + t);
    const MarkovPolicy mu = testing::RandomPolicy(rng, Side::kMax, 3, 2, 2);
    const MarkovPolicy nu = testing::RandomPolicy(rng, Side::kMin, 3, 2, 2);
    const int s1 = mg.initial_state();
    const BestResponseResult br = BestResponseToMax(mg, mu);
    CHECK(std::abs(br.values.v[0][s1] - testing::BruteBestResponseToMax(mg, mu)) <= 1e-12);
    CHECK(std::abs(EvaluatePair(mg, mu, br.response).v[0][s1] - br.values.v[0][s1]) <=
          1e-12);
    const BestResponseResult bm = BestResponseToMin(mg, nu);
    CHECK(std::abs(bm.values.v[0][s1] - testing::BruteBestResponseToMin(mg, nu)) <= 1e-12);
  }
}

TEST_CASE("Nash values sandwich best-response values") {
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    const TabularMG mg = MakeRandomTabular(3, 2, 2, 3, 0.2, 400 + t);
    const NashSolution ns = NashSolve(mg);
    const int s1 = mg.initial_state();
    const double v = ns.values.v[0][s1];
    CHECK(std::abs(BestResponseToMax(mg, ns.mu).values.v[0][s1] - v) <= 1e-9);
    CHECK(std::abs(BestResponseToMin(mg, ns.nu).values.v[0][s1] - v) <= 1e-9);
    for (int i = 0; i < 10; ++i) {
      const MarkovPolicy mu = testing::RandomPolicy(rng, Side::kMax, 3, 3, 2);
      const MarkovPolicy nu = testing::RandomPolicy(rng, Side::kMin, 3, 3, 2);
      CHECK(BestResponseToMax(mg, mu).values.v[0][s1] <= v + 1e-12);
      CHECK(BestResponseToMin(mg, nu).values.v[0][s1] >= v - 1e-12);
    }
  }
}

TEST_CASE("hand-built game") {
  const TabularMG mg = TwoStepGame();
  const NashSolution ns = NashSolve(mg);
  // Step 1: state 0 payoff [[.5,.1],[.2,.4]] has value 0.3; state 1 is
  // [[.9,.8],[.7,.6]] with pure saddle 0.8.
  CHECK(std::abs(ns.values.v[1][0] - 0.3) <= 1e-12);
  CHECK(std::abs(ns.values.v[1][1] - 0.8) <= 1e-12);
  // Step 0 payoff [[.4,.5],[.6,.8]] has a pure saddle at (1, 0).
  CHECK(std::abs(ns.values.v[0][0] - 0.6) <= 1e-12);
  CHECK(ns.mu.Probs(0, 0)[1] == doctest::Approx(1.0));
  CHECK(ns.nu.Probs(0, 0)[0] == doctest::Approx(1.0));
}

TEST_CASE("occupancy is a distribution and tracks state values") {
  Rng rng(8);
  const TabularMG mg = MakeRandomTabular(3, 2, 2, 3, 0.0, 9);
  const MarkovPolicy mu = testing::RandomPolicy(rng, Side::kMax, 3, 3, 2);
  const MarkovPolicy nu = testing::RandomPolicy(rng, Side::kMin, 3, 3, 2);
  const auto occ = Occupancy(mg, mu, nu);
  double expected = 0.0;
  for (int h = 0; h < 3; ++h) {
    double total = 0.0;
    for (int s = 0; s < 3; ++s) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const double w = occ[h][mg.Index(s, a, b)];
          total += w;
          expected += w * mg.Reward(h, s, a, b);
        }
      }
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
  CHECK(std::abs(expected - EvaluatePair(mg, mu, nu).v[0][mg.initial_state()]) <= 1e-12);
}

TEST_CASE("sampled episodes follow the model") {
  const TabularMG mg = MakeRandomTabular(2, 2, 2, 2, 0.0, 17);
  MarkovPolicy mu = MarkovPolicy::Uniform(Side::kMax, 2, 2, 2);
  MarkovPolicy nu = MarkovPolicy::Uniform(Side::kMin, 2, 2, 2);
  const auto occ = Occupancy(mg, mu, nu);
  const int n = 90000;
  std::vector<std::vector<double>> counts(2, std::vector<double>(8, 0.0));
  Rng rng(1, 0, StreamTag::kOptionOne);
  double total_return = 0.0;
  for (int i = 0; i < n; ++i) {
    const Trajectory traj = SampleEpisode(mg, mu, nu, rng);
    REQUIRE(traj.size() == 2u);
    CHECK(traj[1].next == kTerminal);
    CHECK(traj[0].next == traj[1].s);
    for (int h = 0; h < 2; ++h) {
      counts[h][mg.Index(traj[h].s, traj[h].a, traj[h].b)] += 1.0;
      total_return += traj[h].r;
    }
  }
  for (int h = 0; h < 2; ++h) {
    for (int x = 0; x < 8; ++x) {
      const double p = occ[h][x];
      const double sd = std::sqrt(p * (1 - p) / n);
      CHECK(std::abs(counts[h][x] / n - p) <= 4.0 * sd + 1e-12);
    }
  }
  CHECK(std::abs(total_return / n - EvaluatePair(mg, mu, nu).v[0][mg.initial_state()]) <=
        0.01);
}

TEST_CASE("option two plays uniformly at the target step") {
  const TabularMG mg = MakeRandomTabular(2, 3, 2, 3, 0.0, 21);
  const MarkovPolicy mu(Side::kMax, 3, 2, 3);  // always action 0
  const MarkovPolicy nu(Side::kMin, 3, 2, 2);
  Rng rng(2, 0, StreamTag::kOptionTwo);
  std::vector<int> a_counts(3, 0);
  const int n = 30000;
  for (int i = 0; i < n; ++i) {
    const Sample x = SampleOptionTwo(mg, mu, nu, 1, rng);
    ++a_counts[x.a];
  }
  for (int a = 0; a < 3; ++a) {
    CHECK(std::abs(a_counts[a] / double(n) - 1.0 / 3) <= 4.0 * std::sqrt(2.0 / 9 / n));
  }
  try {
    SampleOptionTwo(mg, mu, nu, 3, rng);
    FAIL("expected an error");
  } catch (const MgError& e) {
    CHECK(e.code() == ErrorCode::kBadStep);
  }
}

TEST_CASE("sampling is reproducible per stream") {
  const TabularMG mg = MakeRandomTabular(3, 2, 2, 3, 0.0, 5);
  const MarkovPolicy mu = MarkovPolicy::Uniform(Side::kMax, 3, 3, 2);
  const MarkovPolicy nu = MarkovPolicy::Uniform(Side::kMin, 3, 3, 2);
  Rng a(9, 4, StreamTag::kOptionOne);
  Rng b(9, 4, StreamTag::kOptionOne);
  Rng c(9, 5, StreamTag::kOptionOne);
  bool differs = false;
  for (int i = 0; i < 20; ++i) {
    const Trajectory x = SampleEpisode(mg, mu, nu, a);
    const Trajectory y = SampleEpisode(mg, mu, nu, b);
    const Trajectory z = SampleEpisode(mg, mu, nu, c);
    for (int h = 0; h < 3; ++h) {
      CHECK(x[h].s == y[h].s);
      CHECK(x[h].a == y[h].a);
      CHECK(x[h].b == y[h].b);
      CHECK(x[h].r == y[h].r);
      differs = differs || x[h].a != z[h].a || x[h].b != z[h].b;
    }
  }
  CHECK(differs);
}

TEST_CASE("policy validation") {
  const TabularMG mg = MakeRandomTabular(2, 2, 3, 2, 0.0, 1);
  MarkovPolicy bad(Side::kMax, 2, 2, 2);
  bad.MutableProbs(0, 0)[0] = 0.7;
  CHECK_THROWS_AS(CheckPolicy(mg, bad, Side::kMax), MgError);
  CHECK_THROWS_AS(CheckPolicy(mg, MarkovPolicy(Side::kMin, 2, 2, 2), Side::kMin), MgError);
  CHECK_NOTHROW(CheckPolicy(mg, MarkovPolicy(Side::kMin, 2, 2, 3), Side::kMin));
}

}  // namespace
}  // namespace mggolf
