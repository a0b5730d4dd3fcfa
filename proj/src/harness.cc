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

#include "mggolf/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "mggolf/envs.h"
#include "mggolf/errors.h"
#include "mggolf/rng.h"

namespace mggolf {
namespace {

namespace fs = std::filesystem;

std::string Join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

[[noreturn]] void ConfigError(const std::string& path, const std::string& msg) {
  Fail(ErrorCode::kConfig, (path.empty() ? std::string("config") : path) +
                               ": " + msg);
}

// Typed access to one JSON object with error messages keyed by field path.
class Fields {
 public:
  Fields(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) ConfigError(path_, "expected an object");
  }

  const Json* Find(const char* key) const {
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const Json& Require(const char* key) const {
    const Json* v = Find(key);
    if (v == nullptr) ConfigError(Join(path_, key), "required field missing");
    return *v;
  }

  int Int(const char* key, std::optional<int> def = std::nullopt) const {
    const Json* v = Find(key);
    if (v == nullptr) {
      if (!def) ConfigError(Join(path_, key), "required field missing");
      return *def;
    }
    if (!v->is_number_integer()) ConfigError(Join(path_, key), "expected an integer");
    return v->get<int>();
  }

  std::uint64_t Seed(const char* key, std::optional<std::uint64_t> def =
                                          std::nullopt) const {
    const Json* v = Find(key);
    if (v == nullptr) {
      if (!def) ConfigError(Join(path_, key), "required field missing");
      return *def;
    }
    if (!v->is_number_integer() || (v->is_number_integer() && !v->is_number_unsigned() &&
                                    v->get<std::int64_t>() < 0)) {
      ConfigError(Join(path_, key), "expected a non-negative integer");
    }
    return v->get<std::uint64_t>();
  }

  double Real(const char* key, std::optional<double> def = std::nullopt) const {
    const Json* v = Find(key);
    if (v == nullptr) {
      if (!def) ConfigError(Join(path_, key), "required field missing");
      return *def;
    }
    if (!v->is_number()) ConfigError(Join(path_, key), "expected a number");
    const double x = v->get<double>();
    if (!std::isfinite(x)) ConfigError(Join(path_, key), "expected a finite number");
    return x;
  }

  bool Bool(const char* key, bool def) const {
    const Json* v = Find(key);
    if (v == nullptr) return def;
    if (!v->is_boolean()) ConfigError(Join(path_, key), "expected true or false");
    return v->get<bool>();
  }

  std::string Str(const char* key,
                  std::optional<std::string> def = std::nullopt) const {
    const Json* v = Find(key);
    if (v == nullptr) {
      if (!def) ConfigError(Join(path_, key), "required field missing");
      return *def;
    }
    if (!v->is_string()) ConfigError(Join(path_, key), "expected a string");
    return v->get<std::string>();
  }

  void AllowOnly(std::initializer_list<const char*> keys) const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      bool known = false;
      for (const char* k : keys) known = known || it.key() == k;
      if (!known) ConfigError(Join(path_, it.key()), "unknown field");
    }
  }

  const std::string& path() const { return path_; }

 private:
  const Json& j_;
  std::string path_;
};

std::string Resolve(const std::string& base_dir, const std::string& path) {
  fs::path p(path);
  if (p.is_absolute()) return p.string();
  return (fs::path(base_dir) / p).string();
}

std::string ExistingFile(const std::string& base_dir, const std::string& path,
                         const std::string& field) {
  const std::string full = Resolve(base_dir, path);
  if (!fs::is_regular_file(full)) ConfigError(field, "file not found: " + full);
  return full;
}

// Converts library argument errors raised while building fixtures into
// config errors at the given path.
template <typename Fn>
auto AsConfig(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const MgError& e) {
    if (e.code() == ErrorCode::kConfig) throw;
    ConfigError(path, e.what());
  }
}

GameInstance BuildGameAt(const Json& spec, const std::string& base_dir,
                         const std::string& path) {
  if (spec.is_string()) {
    const std::string file = ExistingFile(base_dir, spec.get<std::string>(), path);
    return {MgFromJson(ReadJsonFile(file)), std::nullopt};
  }
  Fields f(spec, path);
  if (f.Find("path") != nullptr) {
    f.AllowOnly({"path"});
    const std::string file = ExistingFile(base_dir, f.Str("path"), Join(path, "path"));
    return {MgFromJson(ReadJsonFile(file)), std::nullopt};
  }
  const std::string gen = f.Str("generator");
  return AsConfig(path, [&]() -> GameInstance {
    if (gen == "saddle") {
      f.AllowOnly({"generator", "S", "A", "B", "H", "mix", "seed", "deterministic"});
      return {MakeSaddleBenchmark(f.Int("S"), f.Int("A"), f.Int("B"), f.Int("H"),
                                  f.Real("mix", 0.1), f.Seed("seed"),
                                  f.Bool("deterministic", false)),
              std::nullopt};
    }
    if (gen == "random") {
      f.AllowOnly({"generator", "S", "A", "B", "H", "sparsity", "seed"});
      return {MakeRandomTabular(f.Int("S"), f.Int("A"), f.Int("B"), f.Int("H"),
                                f.Real("sparsity", 0.0), f.Seed("seed")),
              std::nullopt};
    }
    if (gen == "rps") {
      f.AllowOnly({"generator"});
      return {MakeRps().mg, std::nullopt};
    }
    if (gen == "linear") {
      f.AllowOnly({"generator", "d", "S", "A", "B", "H", "seed"});
      LinearGame lg = MakeLinearMg(f.Int("d"), f.Int("S"), f.Int("A"), f.Int("B"),
                                   f.Int("H"), f.Seed("seed"));
      return {std::move(lg.mg), std::move(lg.spec)};
    }
    if (gen == "block") {
      f.AllowOnly({"generator", "m", "decoder", "emission", "latent", "A", "B",
                   "H", "seed"});
      BlockSpec bs;
      bs.m = f.Int("m");
      const Json& dec = f.Require("decoder");
      if (!dec.is_array()) ConfigError(Join(path, "decoder"), "expected an array");
      for (const Json& x : dec) {
        if (!x.is_number_integer()) {
          ConfigError(Join(path, "decoder"), "expected integers");
        }
        bs.decoder.push_back(x.get<int>());
      }
      if (const Json* em = f.Find("emission")) {
        if (!em->is_array()) ConfigError(Join(path, "emission"), "expected an array");
        for (const Json& x : *em) {
          if (!x.is_number()) ConfigError(Join(path, "emission"), "expected numbers");
          bs.emission.push_back(x.get<double>());
        }
      }
      if (const Json* latent = f.Find("latent")) {
        const GameInstance inner =
            BuildGameAt(*latent, base_dir, Join(path, "latent"));
        return {MakeBlockFromLatent(inner.mg, bs), std::nullopt};
      }
      return {MakeBlockMg(bs, f.Int("A"), f.Int("B"), f.Int("H"), f.Seed("seed")),
              std::nullopt};
    }
    ConfigError(Join(path, "generator"), "unknown generator '" + gen + "'");
  });
}

FunctionClass BuildClassAt(const Json& spec, const GameInstance& game,
                           const std::string& base_dir, const std::string& path) {
  if (spec.is_string()) {
    const std::string file = ExistingFile(base_dir, spec.get<std::string>(), path);
    return ClassFromJson(ReadJsonFile(file));
  }
  Fields f(spec, path);
  if (f.Find("path") != nullptr) {
    f.AllowOnly({"path"});
    const std::string file = ExistingFile(base_dir, f.Str("path"), Join(path, "path"));
    FunctionClass cls = ClassFromJson(ReadJsonFile(file));
    if (!(cls.signature() == SignatureOf(game.mg))) {
      ConfigError(path, "class signature does not match the game");
    }
    return cls;
  }
  const std::string type = f.Str("type");
  return AsConfig(path, [&]() -> FunctionClass {
    if (type == "tabular") {
      f.AllowOnly({"type", "grid_levels", "num_random", "closure_iterations", "seed"});
      TabularClassOptions o;
      o.grid_levels = f.Int("grid_levels", o.grid_levels);
      o.num_random = f.Int("num_random", o.num_random);
      o.closure_iterations = f.Int("closure_iterations", o.closure_iterations);
      o.seed = f.Seed("seed", 0);
      return TabularFunctionClass(game.mg, o);
    }
    if (type == "pure_saddle") {
      f.AllowOnly({"type", "num_random", "seed"});
      return PureSaddleClass(game.mg, f.Int("num_random"), f.Seed("seed", 0));
    }
    if (type == "linear_cover") {
      f.AllowOnly({"type", "eps", "max_members"});
      if (!game.linear) {
        ConfigError(path, "linear_cover needs the linear generator");
      }
      return EpsilonCover(*game.linear, f.Real("eps"),
                          f.Int("max_members", 1000000))
          .cls;
    }
    ConfigError(Join(path, "type"), "unknown class type '" + type + "'");
  });
}

SamplingOption ParseOption(const Json& v, const std::string& path) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "I" || s == "1") return SamplingOption::kOne;
    if (s == "II" || s == "2") return SamplingOption::kTwo;
  } else if (v.is_number_integer()) {
    if (v.get<int>() == 1) return SamplingOption::kOne;
    if (v.get<int>() == 2) return SamplingOption::kTwo;
  }
  ConfigError(path, "expected \"I\" or \"II\"");
}

OliveParams ParseOlive(const Json& j, const std::string& path,
                       const OliveParams& base) {
  Fields f(j, path);
  f.AllowOnly({"zeta_act", "zeta_elim", "n_act", "n_elim", "K", "estimator",
               "mixed_target", "inner_test", "inner"});
  OliveParams p = base;
  p.zeta_act = f.Real("zeta_act", p.zeta_act);
  p.zeta_elim = f.Real("zeta_elim", p.zeta_elim);
  p.n_act = f.Int("n_act", p.n_act);
  p.n_elim = f.Int("n_elim", p.n_elim);
  p.K = f.Int("K", p.K);
  p.mixed_target = f.Bool("mixed_target", p.mixed_target);
  const std::string est =
      f.Str("estimator", p.estimator == Estimator::kExact ? "exact" : "sampled");
  if (est == "exact") {
    p.estimator = Estimator::kExact;
  } else if (est == "sampled") {
    p.estimator = Estimator::kSampled;
  } else {
    ConfigError(Join(path, "estimator"), "expected exact or sampled");
  }
  const std::string test = f.Str(
      "inner_test", p.inner_test == InnerTest::kMirrored ? "mirrored" : "as_written");
  if (test == "mirrored") {
    p.inner_test = InnerTest::kMirrored;
  } else if (test == "as_written") {
    p.inner_test = InnerTest::kAsWritten;
  } else {
    ConfigError(Join(path, "inner_test"), "expected mirrored or as_written");
  }
  if (!(p.zeta_act > 0.0) || !(p.zeta_elim > 0.0)) {
    ConfigError(path, "thresholds must be positive");
  }
  if (p.K < 1 || p.n_act < 1 || p.n_elim < 1) {
    ConfigError(path, "K, n_act and n_elim must be >= 1");
  }
  return p;
}

MarkovPolicy AdversaryPolicy(const std::string& kind, const TabularMG& mg,
                             std::uint64_t seed, int k) {
  if (kind == "uniform") {
    return MarkovPolicy::Uniform(Side::kMin, mg.H(), mg.S(), mg.B());
  }
  // random_pure: a fresh deterministic policy per episode.
  MarkovPolicy nu(Side::kMin, mg.H(), mg.S(), mg.B());
  Rng rng(seed, static_cast<std::uint64_t>(k), StreamTag::kAdversary);
  for (int h = 0; h < mg.H(); ++h) {
    for (int s = 0; s < mg.S(); ++s) nu.SetDeterministic(h, s, rng.UniformInt(mg.B()));
  }
  return nu;
}

Json QuartilesJson(const Quartiles& q) {
  Json j;
  j["q25"] = q.q25;
  j["q50"] = q.q50;
  j["q75"] = q.q75;
  return j;
}

const char* AlgorithmName(Algorithm a) {
  switch (a) {
    case Algorithm::kGolf:
      return "golf";
    case Algorithm::kGolfAdversarial:
      return "golf-adversarial";
    case Algorithm::kOlive:
      return "olive";
  }
  return "";
}

Json PhasesJson(const std::vector<PhaseRecord>& phases) {
  Json out = Json::array();
  for (const PhaseRecord& p : phases) {
    Json j;
    j["phase"] = p.phase;
    j["f_index"] = p.f_index;
    j["act_sum"] = p.act_sum;
    j["activated_h"] = p.activated_h;
    j["eliminated"] = p.eliminated;
    j["survivors"] = p.survivors;
    j["terminated"] = p.terminated;
    out.push_back(std::move(j));
  }
  return out;
}

Json BuildReport(const ExperimentResult& r) {
  const ExperimentConfig& c = r.config;
  Json j;
  j["schema"] = "report-v1";
  j["algorithm"] = AlgorithmName(c.algorithm);
  Json seeds = Json::array();
  for (std::uint64_t s : c.seeds) seeds.push_back(s);
  j["seeds"] = std::move(seeds);
  Json audit;
  audit["f_size"] = r.audit.f_size;
  audit["g_size"] = r.audit.g_size;
  audit["eps_real"] = r.audit.eps_real;
  audit["eps_comp"] = r.audit.eps_comp;
  audit["q_star_index"] = r.audit.q_star_index;
  j["audit"] = std::move(audit);
  j["v_star"] = r.v_star;
  int failed = 0;
  for (const SeedOutcome& o : r.seeds) failed += o.ok ? 0 : 1;
  j["failed_seeds"] = failed;

  if (c.algorithm == Algorithm::kOlive) {
    Json per_seed = Json::array();
    std::vector<double> gaps;
    std::vector<double> phases;
    for (const SeedOutcome& o : r.seeds) {
      Json s;
      s["seed"] = o.seed;
      s["status"] = o.ok ? "ok" : "error";
      if (!o.ok) {
        s["error"] = o.error;
      } else {
        s["phases"] = static_cast<int>(o.olive.phases.size());
        int inner = 0;
        for (const auto& ip : o.olive.inner_phases) inner += static_cast<int>(ip.size());
        s["inner_phases"] = inner;
        s["output_index"] = o.olive.output_index;
        s["gap"] = o.olive_gap;
        s["phase_log"] = PhasesJson(o.olive.phases);
        gaps.push_back(o.olive_gap);
        phases.push_back(static_cast<double>(o.olive.phases.size()));
      }
      per_seed.push_back(std::move(s));
    }
    if (!gaps.empty()) {
      j["gap"] = QuartilesJson(ComputeQuartiles(gaps));
      j["phases"] = QuartilesJson(ComputeQuartiles(phases));
    }
    j["per_seed"] = std::move(per_seed);
    return j;
  }

  j["beta"] = r.beta;
  j["delta_gate"] = c.algorithm == Algorithm::kGolf && c.gate
                        ? Json(r.delta_gate)
                        : Json(nullptr);
  size_t longest = 0;
  for (const SeedOutcome& o : r.seeds) {
    if (o.ok) longest = std::max(longest, o.golf.episodes.size());
  }
  Json per_episode = Json::array();
  for (size_t k = 0; k < longest; ++k) {
    std::vector<double> values;
    for (const SeedOutcome& o : r.seeds) {
      if (o.ok && k < o.golf.episodes.size()) {
        values.push_back(o.golf.episodes[k].regret_cum);
      }
    }
    Json e = QuartilesJson(ComputeQuartiles(values));
    e["k"] = static_cast<int>(k + 1);
    e["n"] = static_cast<int>(values.size());
    per_episode.push_back(std::move(e));
  }
  Json per_seed = Json::array();
  int fired = 0;
  std::vector<double> final_regret;
  std::vector<double> subopt;
  for (const SeedOutcome& o : r.seeds) {
    Json s;
    s["seed"] = o.seed;
    s["status"] = o.ok ? "ok" : "error";
    if (!o.ok) {
      s["error"] = o.error;
      per_seed.push_back(std::move(s));
      continue;
    }
    const RunLog& log = o.golf;
    s["episodes"] = static_cast<int>(log.episodes.size());
    const double reg = log.episodes.empty() ? 0.0 : log.episodes.back().regret_cum;
    s["final_regret"] = reg;
    final_regret.push_back(reg);
    const bool gated = !log.episodes.empty() && log.episodes.back().gated;
    s["gate_fired"] = gated;
    if (gated) {
      ++fired;
      s["output_index"] = log.output_index;
      s["output_suboptimality"] = log.output_suboptimality;
      subopt.push_back(log.output_suboptimality);
    }
    int tracked = 0;
    for (const EpisodeRecord& e : log.episodes) tracked += e.tracked_in_conf == 1;
    s["q_star_in_conf"] = tracked;
    per_seed.push_back(std::move(s));
  }
  Json gate;
  gate["fired"] = fired;
  gate["output_suboptimality"] =
      subopt.empty() ? Json(nullptr) : QuartilesJson(ComputeQuartiles(subopt));
  j["gate"] = std::move(gate);
  j["final_regret"] = final_regret.empty()
                          ? Json(nullptr)
                          : QuartilesJson(ComputeQuartiles(final_regret));
  j["per_seed"] = std::move(per_seed);
  j["per_episode"] = std::move(per_episode);
  return j;
}

}  // namespace

GameInstance BuildGame(const Json& spec, const std::string& base_dir) {
  return BuildGameAt(spec, base_dir, "mg");
}

FunctionClass BuildClass(const Json& spec, const GameInstance& game,
                         const std::string& base_dir) {
  return BuildClassAt(spec, game, base_dir, "class");
}

FunctionClass BuildAuxClass(const Json& spec, const GameInstance& game,
                            const FunctionClass& f_class,
                            const std::string& base_dir) {
  if (spec.is_null() || (spec.is_string() && spec.get<std::string>() == "closure")) {
    return BellmanClosureClass(game.mg, f_class);
  }
  if (spec.is_string() && spec.get<std::string>() == "same") return f_class;
  return BuildClassAt(spec, game, base_dir, "g_class");
}

ExperimentConfig ParseConfig(const Json& j, const std::string& base_dir) {
  Fields f(j, "");
  f.AllowOnly({"description", "algorithm", "mg", "class", "g_class", "K",
               "c_beta", "c_delta", "delta_eps", "delta_conf", "option",
               "be_dim", "gate", "seeds", "seed", "adversary", "olive"});
  ExperimentConfig c;
  c.base_dir = base_dir;
  const std::string alg = f.Str("algorithm");
  if (alg == "golf") {
    c.algorithm = Algorithm::kGolf;
  } else if (alg == "golf-adversarial") {
    c.algorithm = Algorithm::kGolfAdversarial;
  } else if (alg == "olive") {
    c.algorithm = Algorithm::kOlive;
  } else {
    ConfigError("algorithm", "expected golf, golf-adversarial or olive");
  }
  c.mg = f.Require("mg");
  c.f_class = f.Require("class");
  if (const Json* g = f.Find("g_class")) {
    c.g_class = *g;
  } else {
    c.g_class = c.algorithm == Algorithm::kOlive ? Json("same") : Json("closure");
  }
  // Fail early on missing files.
  if (c.mg.is_string()) ExistingFile(base_dir, c.mg.get<std::string>(), "mg");
  if (c.f_class.is_string()) {
    ExistingFile(base_dir, c.f_class.get<std::string>(), "class");
  }
  c.K = f.Int("K", c.K);
  if (c.K < 1) ConfigError("K", "must be >= 1");
  c.c_beta = f.Real("c_beta", c.c_beta);
  c.c_delta = f.Real("c_delta", c.c_delta);
  c.delta_eps = f.Real("delta_eps", c.delta_eps);
  c.delta_conf = f.Real("delta_conf", c.delta_conf);
  if (!(c.delta_conf > 0.0 && c.delta_conf < 1.0)) {
    ConfigError("delta_conf", "must lie in (0, 1)");
  }
  if (c.c_beta < 0.0 || c.c_delta < 0.0 || c.delta_eps < 0.0) {
    ConfigError("", "c_beta, c_delta and delta_eps must be non-negative");
  }
  if (const Json* opt = f.Find("option")) c.option = ParseOption(*opt, "option");
  c.be_dim = f.Real("be_dim", c.be_dim);
  if (!(c.be_dim > 0.0)) ConfigError("be_dim", "must be positive");
  c.gate = f.Bool("gate", c.gate);
  if (const Json* s = f.Find("seeds")) {
    if (!s->is_array() || s->empty()) ConfigError("seeds", "expected a nonempty array");
    std::set<std::uint64_t> seen;
    for (size_t i = 0; i < s->size(); ++i) {
      const Json& x = (*s)[i];
      const std::string at = "seeds[" + std::to_string(i) + "]";
      if (!x.is_number_integer() ||
          (!x.is_number_unsigned() && x.get<std::int64_t>() < 0)) {
        ConfigError(at, "expected a non-negative integer");
      }
      if (!seen.insert(x.get<std::uint64_t>()).second) {
        ConfigError(at, "duplicate seed");
      }
      c.seeds.push_back(x.get<std::uint64_t>());
    }
  } else {
    c.seeds.push_back(f.Seed("seed", 0));
  }
  c.adversary = f.Str("adversary", c.adversary);
  if (c.adversary != "uniform" && c.adversary != "random_pure") {
    ConfigError("adversary", "expected uniform or random_pure");
  }
  if (const Json* o = f.Find("olive")) {
    c.olive_outer = ParseOlive(*o, "olive", OliveParams{});
    c.olive_inner = c.olive_outer;
    if (const Json* in = o->is_object() && o->contains("inner") ? &o->at("inner")
                                                                 : nullptr) {
      c.olive_inner = ParseOlive(*in, "olive.inner", c.olive_outer);
    }
  }
  return c;
}

Quartiles ComputeQuartiles(std::vector<double> values) {
  Quartiles q;
  if (values.empty()) return q;
  std::sort(values.begin(), values.end());
  auto at = [&](double p) {
    const double pos = p * static_cast<double>(values.size() - 1);
    const size_t lo = static_cast<size_t>(std::floor(pos));
    const size_t hi = std::min(lo + 1, values.size() - 1);
    const double w = pos - static_cast<double>(lo);
    return values[lo] + w * (values[hi] - values[lo]);
  };
  q.q25 = at(0.25);
  q.q50 = at(0.5);
  q.q75 = at(0.75);
  return q;
}

int WorkerCount(int jobs) {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MG_GOLF_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) n = v;
  }
  return std::max(1, std::min(n, jobs));
}

ExperimentResult RunExperiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult r;
  r.config = config;
  const GameInstance game = BuildGame(config.mg, config.base_dir);
  const FunctionClass f_class = BuildClass(config.f_class, game, config.base_dir);
  const FunctionClass g_class =
      BuildAuxClass(config.g_class, game, f_class, config.base_dir);
  const TabularMG& mg = game.mg;

  const RealizabilityAudit real = AuditRealizability(mg, f_class);
  r.audit.f_size = f_class.size();
  r.audit.g_size = g_class.size();
  r.audit.eps_real = real.eps_real;
  r.audit.q_star_index = real.q_star.index;
  r.audit.eps_comp = AuditCompleteness(mg, f_class, g_class);
  const NashSolution nash = NashSolve(mg);
  r.v_star = nash.values.v[0][mg.initial_state()];

  if (config.algorithm != Algorithm::kOlive) {
    r.beta = BetaFromFormula(config.c_beta, config.K, mg.H(), f_class.size(),
                             g_class.size(), config.delta_conf, r.audit.eps_comp,
                             r.audit.eps_real);
    double dim = config.be_dim;
    if (config.option == SamplingOption::kTwo) dim *= mg.A() * mg.B();
    r.delta_gate = DeltaFromFormula(config.c_delta, mg.H(), dim, r.beta,
                                    config.K, config.delta_eps);
  }

  const int jobs = static_cast<int>(config.seeds.size());
  r.seeds.resize(jobs);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next++; i < jobs; i = next++) {
      SeedOutcome& out = r.seeds[i];
      out.seed = config.seeds[i];
      try {
        if (config.algorithm == Algorithm::kOlive) {
          OliveParams outer = config.olive_outer;
          OliveParams inner = config.olive_inner;
          outer.seed = out.seed;
          inner.seed = out.seed;
          out.olive = RunOliveMg(mg, f_class, g_class, outer, inner);
          const BestResponseResult br = BestResponseToMax(mg, out.olive.mu_out);
          out.olive_gap = r.v_star - br.values.v[0][mg.initial_state()];
        } else {
          GolfConfig gc;
          gc.K = config.K;
          gc.beta = r.beta;
          gc.delta_gate = r.delta_gate;
          gc.option = config.option;
          gc.seed = out.seed;
          gc.gate_enabled = config.gate;
          gc.track_index = r.audit.q_star_index;
          if (config.algorithm == Algorithm::kGolf) {
            out.golf = RunGolf(mg, f_class, g_class, gc);
          } else {
            const std::string kind = config.adversary;
            const std::uint64_t seed = out.seed;
            out.golf = RunGolfAdversarial(
                mg, f_class, g_class, gc,
                [&mg, kind, seed](int k, const MarkovPolicy&) {
                  return AdversaryPolicy(kind, mg, seed, k);
                });
          }
        }
        out.ok = true;
      } catch (const MgError& e) {
        out.ok = false;
        out.error = std::string(ErrorCodeName(e.code())) + ": " + e.what();
      }
    }
  };
  const int threads = WorkerCount(jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  r.report = BuildReport(r);
  r.wall_seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return r;
}

std::string RunLogCsv(const RunLog& log) {
  std::ostringstream out;
  out << kRunLogHeader << "\n"
      << "k,f_index,V_upper,V_lower,regret_inc,regret_cum,conf_size,gated\n";
  for (const EpisodeRecord& e : log.episodes) {
    out << e.k << ',' << e.f_index << ',' << FormatDouble(e.v_upper) << ','
        << FormatDouble(e.v_lower) << ',' << FormatDouble(e.regret_inc) << ','
        << FormatDouble(e.regret_cum) << ',' << e.conf_size << ','
        << (e.gated ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string PhaseLogCsv(const std::vector<PhaseRecord>& phases) {
  std::ostringstream out;
  out << kPhaseLogHeader << "\n"
      << "phase,f_index,act_sum,activated_h,eliminated,survivors,terminated\n";
  for (const PhaseRecord& p : phases) {
    out << p.phase << ',' << p.f_index << ',' << FormatDouble(p.act_sum) << ','
        << p.activated_h << ',' << p.eliminated << ',' << p.survivors << ','
        << (p.terminated ? 1 : 0) << '\n';
  }
  return out.str();
}

void WriteExperiment(const ExperimentResult& result, const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) Fail(ErrorCode::kIo, "cannot create " + out_dir + ": " + ec.message());
  for (const SeedOutcome& o : result.seeds) {
    if (!o.ok) continue;
    const std::string file =
        (fs::path(out_dir) / ("seed_" + std::to_string(o.seed) + ".csv")).string();
    WriteTextFile(file, result.config.algorithm == Algorithm::kOlive
                            ? PhaseLogCsv(o.olive.phases)
                            : RunLogCsv(o.golf));
  }
  WriteJsonFile((fs::path(out_dir) / "report.json").string(), result.report);
}

Json SetKnob(Json config, const std::string& path, const Json& value) {
  if (path.empty()) ConfigError("", "empty knob path");
  Json* node = &config;
  size_t pos = 0;
  while (true) {
    const size_t dot = path.find('.', pos);
    const std::string key = path.substr(pos, dot - pos);
    if (key.empty()) ConfigError(path, "malformed knob path");
    if (!node->is_object()) ConfigError(path, "knob path crosses a non-object");
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return config;
    }
    node = &(*node)[key];
    if (node->is_null()) *node = Json::object();
    pos = dot + 1;
  }
}

std::vector<SweepEntry> Sweep(const Json& config, const std::string& knob,
                              const std::vector<Json>& values,
                              const std::string& base_dir) {
  std::vector<SweepEntry> out;
  for (const Json& v : values) {
    const ExperimentConfig c = ParseConfig(SetKnob(config, knob, v), base_dir);
    out.push_back({v, RunExperiment(c)});
  }
  return out;
}

}  // namespace mggolf
