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
#include <limits>

#include "mggolf/envs.h"
#include "mggolf/errors.h"
#include "mggolf/matrix_game.h"
#include "mggolf/rng.h"
#include "test_util.h"

namespace mggolf {
namespace {

constexpr double kTol = 1e-9;

TEST_CASE("perturbed rps matrix has the frozen saddle") {
  // Reference values from an independent LP solve.
  const Payoff m1 = MakePerturbedSet()[1];
  const MixedPair p = SolveZeroSum(m1);
  CHECK(std::abs(p.value - 1.0 / 93.0) <= kTol);
  const double mu[] = {30.0 / 93, 31.0 / 93, 32.0 / 93};
  const double nu[] = {31.0 / 93, 30.0 / 93, 32.0 / 93};
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(p.mu[i] - mu[i]) <= kTol);
    CHECK(std::abs(p.nu[i] - nu[i]) <= kTol);
  }
}

TEST_CASE("rock paper scissors is uniform with value zero") {
  const MixedPair p = SolveZeroSum(RpsPayoff());
  CHECK(std::abs(p.value) <= kTol);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(p.mu[i] - 1.0 / 3) <= kTol);
    CHECK(std::abs(p.nu[i] - 1.0 / 3) <= kTol);
  }
}

TEST_CASE("random matrices have tiny duality gaps") {
  Rng rng(2024);
  for (int t = 0; t < 1000; ++t) {
    const int rows = 1 + rng.UniformInt(6);
    const int cols = 1 + rng.UniformInt(6);
    const Payoff m = testing::RandomPayoff(rng, rows, cols);
    const MixedPair p = SolveZeroSum(m);
    CHECK(DualityGap(m, p.mu, p.nu) <= 1e-8);
    double total = 0.0;
    for (double x : p.mu) {
      CHECK(x >= 0.0);
      total += x;
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
}

TEST_CASE("antisymmetric games have value zero") {
  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + rng.UniformInt(6);
    std::vector<double> e(n * n, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        e[i * n + j] = 2.0 * rng.Uniform() - 1.0;
        e[j * n + i] = -e[i * n + j];
      }
    }
    CHECK(std::abs(SolveZeroSum(Payoff(n, n, e)).value) <= 1e-9);
  }
}

TEST_CASE("value is equivariant under positive scaling and shifts") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const Payoff m = testing::RandomPayoff(rng, 1 + rng.UniformInt(5),
                                           1 + rng.UniformInt(5));
    const double alpha = 0.1 + 3.0 * rng.Uniform();
    const double shift = 4.0 * rng.Uniform() - 2.0;
    std::vector<double> e = m.entries();
    for (double& x : e) x = alpha * x + shift;
    const double v = SolveZeroSum(m).value;
    const double w = SolveZeroSum(Payoff(m.rows(), m.cols(), e)).value;
    CHECK(std::abs(w - (alpha * v + shift)) <= 1e-8);
  }
}

TEST_CASE("one by one game") {
  const MixedPair p = SolveZeroSum(Payoff(1, 1, {0.25}));
  CHECK(p.value == 0.25);
  CHECK(p.mu[0] == 1.0);
  CHECK(p.nu[0] == 1.0);
}

TEST_CASE("constant matrix picks the first actions") {
  const MixedPair p = SolveZeroSum(Payoff(3, 2, std::vector<double>(6, 0.5)));
  CHECK(p.mu == std::vector<double>{1.0, 0.0, 0.0});
  CHECK(p.nu == std::vector<double>{1.0, 0.0});
  CHECK(p.value == 0.5);
}

TEST_CASE("best response against uniform") {
  const Payoff m1 = MakePerturbedSet()[1];
  const std::vector<double> u(3, 1.0 / 3);
  const auto [a, v] = BestResponse(m1, u, Side::kMax);
  CHECK(a == 0);
  CHECK(std::abs(v - 0.1 / 3) <= 1e-15);
  // Ties go to the lowest index.
  const auto [b, w] = BestResponse(RpsPayoff(), u, Side::kMin);
  CHECK(b == 0);
  CHECK(std::abs(w) <= 1e-15);
}

TEST_CASE("best response matches a scan of pure actions") {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const Payoff m = testing::RandomPayoff(rng, 4, 3);
    const auto nu = testing::RandomSimplex(rng, 3);
    double best = -1e9;
    for (int a = 0; a < 4; ++a) {
      double v = 0.0;
      for (int b = 0; b < 3; ++b) v += m(a, b) * nu[b];
      best = std::max(best, v);
    }
    CHECK(BestResponse(m, nu, Side::kMax).second == doctest::Approx(best).epsilon(1e-14));
  }
}

TEST_CASE("solver errors") {
  CHECK_THROWS_AS(Payoff(2, 2, {1.0, 2.0, 3.0}), MgError);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    SolveZeroSum(Payoff(2, 2, {0.0, nan, 1.0, 0.0}));
    FAIL("expected an error");
  } catch (const MgError& e) {
    CHECK(e.code() == ErrorCode::kNonFinite);
  }
  try {
    BestResponse(RpsPayoff(), std::vector<double>{0.5, 0.5}, Side::kMax);
    FAIL("expected an error");
  } catch (const MgError& e) {
    CHECK(e.code() == ErrorCode::kDimensionMismatch);
  }
}

}  // namespace
}  // namespace mggolf
