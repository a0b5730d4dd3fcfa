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

// End-to-end acceptance checks. Each criterion prints one PASS or FAIL line
// with its measured quantities and runtime; the exit status is nonzero if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mggolf/complexity.h"
#include "mggolf/envs.h"
#include "mggolf/errors.h"
#include "mggolf/function_class.h"
#include "mggolf/harness.h"
#include "mggolf/io.h"
#include "mggolf/markov_game.h"
#include "mggolf/matrix_game.h"
#include "mggolf/olive.h"
#include "mggolf/rng.h"
#include "test_util.h"

namespace mggolf {
namespace {

namespace fs = std::filesystem;

// Outcome of one criterion: ok plus a short human-readable summary.
struct Verdict {
  bool ok = true;
  std::string detail;

  void Require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + std::string("violated: ") + what;
    }
  }
  void Note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string Fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, x);
  return buf;
}

ExperimentConfig LoadConfig(const std::string& name) {
  const std::string dir = MGGOLF_CONFIG_DIR;
  return ParseConfig(ReadJsonFile(dir + "/" + name), dir);
}

double Median(std::vector<double> v) {
  return ComputeQuartiles(std::move(v)).q50;
}

ValueFunction QStar(const TabularMG& mg) {
  return ValueFunction::FromSteps(SignatureOf(mg), NashSolve(mg).values.q);
}

double PolicyAverage(const ValueFunction& f, const MarkovPolicy& mu,
                     const MarkovPolicy& nu, int h, int s) {
  const Signature& sig = f.signature();
  if (h == sig.H) return 0.0;
  double acc = 0.0;
  for (int a = 0; a < sig.A; ++a) {
    for (int b = 0; b < sig.B; ++b) {
      acc += mu.Probs(h, s)[a] * nu.Probs(h, s)[b] * f(h, s, a, b);
    }
  }
  return acc;
}

Verdict MatrixSolver() {
  Verdict v;
  Rng rng(20260101);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const Payoff m = testing::RandomPayoff(rng, 1 + rng.UniformInt(6), 1 + rng.UniformInt(6));
    const MixedPair p = SolveZeroSum(m);
    worst = std::max(worst, DualityGap(m, p.mu, p.nu));
  }
  v.Require(worst <= 1e-8, "duality gap <= 1e-8");
  v.Note("max gap " + Fmt("%.2e", worst));
  const MixedPair rps = SolveZeroSum(RpsPayoff());
  double dev = 0.0;
  for (int i = 0; i < 3; ++i) {
    dev = std::max({dev, std::abs(rps.mu[i] - 1.0 / 3.0), std::abs(rps.nu[i] - 1.0 / 3.0)});
  }
  v.Require(std::abs(rps.value) <= 1e-9, "RPS value 0");
  v.Require(dev <= 1e-9, "RPS policies uniform");
  v.Note("RPS value " + Fmt("%.1e", rps.value) + ", max policy deviation " + Fmt("%.1e", dev));
  return v;
}

Verdict OracleIdentities() {
  Verdict v;
  Rng rng(20260102);
  double bellman = 0.0;
  for (int t = 0; t < 50; ++t) {
    const TabularMG mg = MakeRandomTabular(3, 2, 3, 3, 0.2, 5000 + t);
    const MarkovPolicy mu = testing::RandomPolicy(rng, Side::kMax, 3, 3, 2);
    const MarkovPolicy nu = testing::RandomPolicy(rng, Side::kMin, 3, 3, 3);
    const ValueTables val = EvaluatePair(mg, mu, nu);
    for (int h = 0; h < mg.H(); ++h) {
      for (int s = 0; s < mg.S(); ++s) {
        double avg = 0.0;
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 3; ++b) {
            double q = mg.Reward(h, s, a, b);
            const auto p = mg.Next(h, s, a, b);
            for (int s2 = 0; s2 < 3; ++s2) q += p[s2] * val.v[h + 1][s2];
            bellman = std::max(bellman, std::abs(q - val.q[h][mg.Index(s, a, b)]));
            avg += mu.Probs(h, s)[a] * nu.Probs(h, s)[b] * q;
          }
        }
        bellman = std::max(bellman, std::abs(avg - val.v[h][s]));
      }
    }
  }
  v.Require(bellman <= 1e-12, "Bellman residual <= 1e-12");

  double identity = 0.0;
  for (int t = 0; t < 100; ++t) {
    const TabularMG mg = MakeRandomTabular(1 + rng.UniformInt(3), 1 + rng.UniformInt(3),
                                           1 + rng.UniformInt(3), 1 + rng.UniformInt(4),
                                           0.25, 6000 + t);
    const ValueFunction f = testing::RandomFunction(rng, SignatureOf(mg));
    const MarkovPolicy mu = testing::RandomPolicy(rng, Side::kMax, mg.H(), mg.S(), mg.A());
    const MarkovPolicy nu = testing::RandomPolicy(rng, Side::kMin, mg.H(), mg.S(), mg.B());
    const auto occ = Occupancy(mg, mu, nu);
    double rhs = 0.0;
    for (int h = 0; h < mg.H(); ++h) {
      for (int s = 0; s < mg.S(); ++s) {
        for (int a = 0; a < mg.A(); ++a) {
          for (int b = 0; b < mg.B(); ++b) {
            double next = 0.0;
            if (h + 1 < mg.H()) {
              const auto p = mg.Next(h, s, a, b);
              for (int s2 = 0; s2 < mg.S(); ++s2) {
                next += p[s2] * PolicyAverage(f, mu, nu, h + 1, s2);
              }
            }
            rhs += occ[h][mg.Index(s, a, b)] * (f(h, s, a, b) - mg.Reward(h, s, a, b) - next);
          }
        }
      }
    }
    const int s1 = mg.initial_state();
    const double lhs =
        PolicyAverage(f, mu, nu, 0, s1) - EvaluatePair(mg, mu, nu).v[0][s1];
    identity = std::max(identity, std::abs(lhs - rhs));
  }
  v.Require(identity <= 1e-10, "value-difference identity within 1e-10");

  int sandwich_bad = 0;
  for (int t = 0; t < 100; ++t) {
    const TabularMG mg = MakeRandomTabular(3, 2, 2, 3, 0.2, 7000 + t / 10);
    const int s1 = mg.initial_state();
    const double star = NashSolve(mg).values.v[0][s1];
    const MarkovPolicy mu = testing::RandomPolicy(rng, Side::kMax, 3, 3, 2);
    const MarkovPolicy nu = testing::RandomPolicy(rng, Side::kMin, 3, 3, 2);
    sandwich_bad += BestResponseToMax(mg, mu).values.v[0][s1] > star + 1e-12;
    sandwich_bad += BestResponseToMin(mg, nu).values.v[0][s1] < star - 1e-12;
  }
  v.Require(sandwich_bad == 0, "saddle sandwich");
  v.Note("Bellman " + Fmt("%.1e", bellman) + ", identity " + Fmt("%.1e", identity) +
         ", sandwich violations " + std::to_string(sandwich_bad) + "/200");
  return v;
}

// Among fired runs, the share with suboptimality <= bound. Runs that never
// fire count as failures of the gate.
void CheckFiredRuns(const ExperimentResult& r, double bound, Verdict& v) {
  int fired = 0;
  int within = 0;
  int failed = 0;
  double worst = 0.0;
  for (const SeedOutcome& o : r.seeds) {
    if (!o.ok) {
      ++failed;
      continue;
    }
    if (o.golf.output_index < 0) continue;
    ++fired;
    worst = std::max(worst, o.golf.output_suboptimality);
    within += o.golf.output_suboptimality <= bound;
  }
  v.Require(failed == 0, "every seed completes");
  v.Require(fired > 0, "gate fires in at least one run");
  v.Require(within >= 0.9 * fired, ">= 90% of fired runs within Delta + eps_real");
  v.Note("fired " + std::to_string(fired) + "/" + std::to_string(r.seeds.size()) +
         ", within bound " + std::to_string(within) + ", worst suboptimality " +
         Fmt("%.4f", worst) + " vs bound " + Fmt("%.4f", bound));
}

Verdict GolfCorrectness(ExperimentResult& out) {
  Verdict v;
  const ExperimentConfig c = LoadConfig("benchmark.json");
  out = RunExperiment(c);
  v.Require(c.seeds.size() == 20, "20 seeds");
  v.Require(out.audit.eps_real <= 0.05, "audited eps_real <= 0.05");
  long pairs = 0;
  long covered = 0;
  for (const SeedOutcome& o : out.seeds) {
    if (!o.ok) continue;
    for (int k = 0; k < 200; ++k) {
      ++pairs;
      if (k < static_cast<int>(o.golf.episodes.size())) {
        covered += o.golf.episodes[k].tracked_in_conf == 1;
      }
    }
  }
  const double share = pairs > 0 ? static_cast<double>(covered) / pairs : 0.0;
  v.Require(share >= 0.95, "projection in confidence set for >= 95% of (seed, k <= 200)");
  v.Note("|F| " + std::to_string(out.audit.f_size) + ", eps_real " +
         Fmt("%.4f", out.audit.eps_real) + ", beta " + Fmt("%.3f", out.beta) +
         ", Delta " + Fmt("%.4f", out.delta_gate) + ", coverage " + Fmt("%.4f", share));
  CheckFiredRuns(out, out.delta_gate + out.audit.eps_real, v);
  return v;
}

Verdict RegretTrend() {
  Verdict v;
  const ExperimentConfig c = LoadConfig("benchmark_regret.json");
  v.Require(c.K >= 2000 && !c.gate && c.seeds.size() == 10, "K 2000, ungated, 10 seeds");
  const ExperimentResult r = RunExperiment(c);
  auto median_at = [&](int k) {
    std::vector<double> values;
    for (const SeedOutcome& o : r.seeds) {
      if (o.ok && static_cast<int>(o.golf.episodes.size()) >= k) {
        values.push_back(o.golf.episodes[k - 1].regret_cum);
      }
    }
    v.Require(values.size() == r.seeds.size(), "every seed reaches k=" + std::to_string(k));
    return Median(values);
  };
  const double r200 = median_at(200);
  const double r500 = median_at(500);
  const double r2000 = median_at(2000);
  v.Require(r2000 <= 2.6 * r500, "Reg(2000) <= 2.6 Reg(500)");
  v.Require(r2000 / 2000.0 <= 0.5 * r200 / 200.0, "average regret halves from 200 to 2000");
  v.Note("median Reg(200) " + Fmt("%.2f", r200) + ", Reg(500) " + Fmt("%.2f", r500) +
         ", Reg(2000) " + Fmt("%.2f", r2000) + ", ratio " + Fmt("%.3f", r2000 / r500));
  return v;
}

Verdict OptionTwo() {
  Verdict v;
  const ExperimentConfig c = LoadConfig("block.json");
  v.Require(c.option == SamplingOption::kTwo && c.K <= 2000, "Option II, K <= 2000");
  const ExperimentResult r = RunExperiment(c);
  int never = 0;
  for (const SeedOutcome& o : r.seeds) never += o.ok && o.golf.output_index < 0;
  v.Require(never == 0, "gate fires within K in every run");
  v.Note("S " + std::to_string(BuildGame(c.mg, c.base_dir).mg.S()) + ", Delta " +
         Fmt("%.4f", r.delta_gate));
  CheckFiredRuns(r, r.delta_gate + r.audit.eps_real, v);
  return v;
}

Verdict OliveExact() {
  Verdict v;
  const ExperimentConfig c = LoadConfig("olive.json");
  v.Require(c.olive_outer.estimator == Estimator::kExact, "exact estimator");
  const double zeta = c.olive_outer.zeta_act;
  std::string phases_note;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const TabularMG mg = MakeSaddleBenchmark(2, 2, 2, 3, 0.0, seed, true);
    const FunctionClass f = PureSaddleClass(mg, 20, 100 + seed);
    v.Require(f.size() <= 50, "|F| <= 50");
    const int d_star = BeDimension(mg, f, zeta / 2.0, BeKind::kOnline, SearchMode::kExact).dimension;
    const OliveRun run = RunOliveMg(mg, f, f, c.olive_outer, c.olive_inner);
    const int phases = static_cast<int>(run.phases.size());
    v.Require(phases <= d_star * mg.H() + 1, "phases <= d* H + 1");

    std::vector<bool> zero_residual(f.size());
    for (int i = 0; i < f.size(); ++i) {
      double worst = 0.0;
      for (int h = 0; h < mg.H(); ++h) {
        const auto image = NashBellman(mg, f[i], h);
        for (int x = 0; x < mg.NumTriples(); ++x) {
          worst = std::max(worst, std::abs(image[x] - f[i].Step(h)[x]));
        }
      }
      zero_residual[i] = worst <= 1e-12;
    }
    int zero_removed = 0;
    for (const PhaseRecord& p : run.phases) {
      for (int i : p.removed) zero_removed += zero_residual[i];
    }
    v.Require(zero_removed == 0, "zero-residual functions never eliminated");

    const int s1 = mg.initial_state();
    const double gap = NashSolve(mg).values.v[0][s1] -
                       BestResponseToMax(mg, run.mu_out).values.v[0][s1];
    const double eps_real = AuditRealizability(mg, f).eps_real;
    v.Require(gap <= mg.H() * zeta + eps_real, "gap <= H zeta_act + eps_real");
    phases_note += (phases_note.empty() ? "" : ", ") + std::to_string(phases) + "/" +
                   std::to_string(d_star * mg.H() + 1) + " gap " + Fmt("%.3f", gap);
  }
  v.Note("phases/bound per fixture: " + phases_note);
  return v;
}

Verdict Dimensions() {
  Verdict v;
  Rng rng(20260107);
  int agree = 0;
  int total = 0;
  for (int t = 0; t < 150; ++t) {
    const int size = 2 + rng.UniformInt(3);
    ResidualClass g;
    for (int i = 0, n = 2 + rng.UniformInt(5); i < n; ++i) {
      ResidualFunction r;
      for (int x = 0; x < size; ++x) r.table.push_back(2.0 * rng.Uniform() - 1.0);
      g.push_back(std::move(r));
    }
    std::vector<Dist> family;
    for (int i = 0, n = 2 + rng.UniformInt(3); i < n; ++i) {
      family.push_back(t % 2 ? PointMass(size, rng.UniformInt(size))
                             : Dist{testing::RandomSimplex(rng, size)});
    }
    const double eps = 0.02 + 0.4 * rng.Uniform();
    const DeResult exact = DeDimension(g, family, eps, SearchMode::kExact);
    ++total;
    agree += exact.dimension == testing::BruteDeDimension(g, family, eps) &&
             CheckCertificate(g, family, eps, exact.certificate);
  }
  // Residual classes and roll-in families built from games.
  int bound_ok = 0;
  int bound_total = 0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const TabularMG mg = MakeSaddleBenchmark(2, 2, 2, 2, 0.0, seed, true);
    const FunctionClass f = PureSaddleClass(mg, 4, 200 + seed);
    for (BeKind kind : {BeKind::kOnline, BeKind::kQ}) {
      const auto residuals = BuildResiduals(mg, f, kind);
      const DistFamilies fam = BuildDistFamilies(mg, f, false);
      for (double eps : {0.05, 0.2}) {
        for (int h = 0; h < mg.H(); ++h) {
          for (const auto* family : {&fam.delta[h], &fam.occupancy[h]}) {
            ++total;
            agree += DeDimension(residuals[h], *family, eps, SearchMode::kExact).dimension ==
                     testing::BruteDeDimension(residuals[h], *family, eps);
          }
        }
        const int be = BeDimension(mg, f, eps, kind, SearchMode::kExact).dimension;
        ++bound_total;
        bound_ok += be <= mg.NumTriples() * std::ceil(std::log2(1.0 + 1.0 / eps));
      }
    }
  }
  v.Require(agree == total, "exact search agrees with the brute-force oracle");
  v.Require(bound_ok == bound_total, "tabular bound shape");

  int greedy_ok = 0;
  for (int t = 0; t < 50; ++t) {
    ResidualClass g;
    for (int i = 0; i < 8; ++i) {
      ResidualFunction r;
      for (int x = 0; x < 5; ++x) r.table.push_back(2.0 * rng.Uniform() - 1.0);
      g.push_back(std::move(r));
    }
    std::vector<Dist> family;
    for (int i = 0; i < 6; ++i) family.push_back(Dist{testing::RandomSimplex(rng, 5)});
    const double eps = 0.05 + 0.2 * rng.Uniform();
    greedy_ok += DeDimension(g, family, eps, SearchMode::kGreedy).dimension <=
                 DeDimension(g, family, eps, SearchMode::kExact).dimension;
  }
  v.Require(greedy_ok == 50, "greedy <= exact on 50 pairs");

  int scale_ok = 0;
  for (int t = 0; t < 20; ++t) {
    std::vector<std::vector<double>> z(2 + rng.UniformInt(3), std::vector<double>(2));
    for (auto& row : z) {
      for (double& x : row) x = 2.0 * rng.Uniform() - 1.0;
    }
    const double eps = 0.3 + rng.Uniform();
    const double alpha = 0.5 + 2.0 * rng.Uniform();
    auto scaled = z;
    for (auto& row : scaled) {
      for (double& x : row) x *= alpha;
    }
    scale_ok += EffectiveDimension(z, eps).dimension ==
                EffectiveDimension(scaled, alpha * eps).dimension;
  }
  v.Require(scale_ok == 20, "effective dimension scale invariance");
  v.Require(EffectiveDimension({{0.0, 0.0, 0.0}}, 0.1).dimension == 1, "zero vector gives 1");
  v.Note("oracle agreement " + std::to_string(agree) + "/" + std::to_string(total) +
         ", bound " + std::to_string(bound_ok) + "/" + std::to_string(bound_total) +
         ", greedy " + std::to_string(greedy_ok) + "/50, scale " +
         std::to_string(scale_ok) + "/20");
  return v;
}

Verdict Counterexample() {
  Verdict v;
  const CounterexampleReport r = VerifyCounterexample(MakePerturbedSet(), 1e-3);
  v.Require(!r.solvable, "perturbed set unsolvable");
  v.Require(r.margin_certified, "margin certificate");
  v.Require(r.nu_margin > 2.0 * r.lipschitz_nu * r.cell_radius &&
                r.mu_margin > 2.0 * r.lipschitz_mu * r.cell_radius,
            "margins exceed the Lipschitz slack");
  v.Require(r.deterministic_solving == 0 && r.deterministic_checked > 0,
            "no deterministic solving pair");
  const std::vector<Payoff> single{RpsPayoff()};
  const CounterexampleReport s = VerifyCounterexample(single, 1e-3);
  v.Require(s.solvable, "singleton solvable");
  if (s.solvable) {
    const auto [smax, smin] = SubproblemSlacks(single, s.upper_matrix, s.lower_matrix, s.mu, s.nu);
    v.Require(smax >= -1e-9 && smin >= -1e-9, "singleton certificate verifies");
  }
  v.Note("margins " + Fmt("%.4f", r.nu_margin) + "/" + Fmt("%.4f", r.mu_margin) +
         " vs slack " + Fmt("%.4f", 2.0 * r.lipschitz_nu * r.cell_radius));
  return v;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Every file written for the first result must match the rerun's byte for
// byte.
bool SameOutputs(const ExperimentResult& a, const ExperimentResult& b,
                 const std::string& tag, int& files) {
  const fs::path root = fs::temp_directory_path() / "mggolf_acceptance";
  const fs::path da = root / (tag + "_a");
  const fs::path db = root / (tag + "_b");
  fs::remove_all(da);
  fs::remove_all(db);
  WriteExperiment(a, da.string());
  WriteExperiment(b, db.string());
  bool same = true;
  for (const auto& e : fs::directory_iterator(da)) {
    ++files;
    const fs::path other = db / e.path().filename();
    same = same && fs::exists(other) && Slurp(e.path()) == Slurp(other);
  }
  int count_b = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(db)) ++count_b;
  int count_a = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(da)) ++count_a;
  return same && count_a == count_b;
}

Verdict Determinism(const ExperimentResult& benchmark) {
  Verdict v;
  int files = 0;
  // Rerun with a different worker count.
  setenv("MG_GOLF_THREADS", "2", 1);
  v.Require(SameOutputs(benchmark, RunExperiment(LoadConfig("benchmark.json")),
                        "benchmark", files),
            "benchmark rerun identical");
  for (const char* name : {"olive.json", "olive_sampled.json", "adversarial.json"}) {
    const ExperimentConfig c = LoadConfig(name);
    setenv("MG_GOLF_THREADS", "1", 1);
    const ExperimentResult a = RunExperiment(c);
    setenv("MG_GOLF_THREADS", "3", 1);
    const ExperimentResult b = RunExperiment(c);
    v.Require(SameOutputs(a, b, name, files), std::string(name) + " rerun identical");
  }
  unsetenv("MG_GOLF_THREADS");
  v.Note(std::to_string(files) + " files compared");
  return v;
}

}  // namespace
}  // namespace mggolf

int main() {
  using namespace mggolf;
  using Clock = std::chrono::steady_clock;
  int failures = 0;
  ExperimentResult benchmark;
  const struct {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Verdict()> run;
  } criteria[] = {
      {1, "matrix-game solver", 5, MatrixSolver},
      {2, "oracle identities", 30, OracleIdentities},
      {3, "GOLF correctness", 600, [&] { return GolfCorrectness(benchmark); }},
      {4, "regret trend", 900, RegretTrend},
      {5, "Option II on a block game", 900, OptionTwo},
      {6, "OLIVE exact mode", 120, OliveExact},
      {7, "dimension calculators", 300, Dimensions},
      {8, "counterexample", 120, Counterexample},
      // No runtime bound; the limit only guards against runaway runs.
      {9, "determinism", 1e9, [&] { return Determinism(benchmark); }},
  };
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.ok = false;
      v.Note(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    v.Require(secs < c.limit_seconds, "runtime limit");
    failures += !v.ok;
    std::printf("%s criterion %d (%s) [%.2f s]: %s\n", v.ok ? "PASS" : "FAIL", c.id,
                c.name, secs, v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
