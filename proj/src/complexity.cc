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

#include "mggolf/complexity.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "mggolf/errors.h"

namespace mggolf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sorted, disjoint union of half-open intervals [lo, hi).
using Intervals = std::vector<std::pair<double, double>>;

Intervals Merge(Intervals parts) {
  std::sort(parts.begin(), parts.end());
  Intervals out;
  for (const auto& p : parts) {
    if (!(p.first < p.second)) continue;
    if (!out.empty() && p.first <= out.back().second) {
      out.back().second = std::max(out.back().second, p.second);
    } else {
      out.push_back(p);
    }
  }
  return out;
}

Intervals Intersect(const Intervals& x, const Intervals& y) {
  Intervals out;
  size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const double lo = std::max(x[i].first, y[j].first);
    const double hi = std::min(x[i].second, y[j].second);
    if (lo < hi) out.emplace_back(lo, hi);
    if (x[i].second < y[j].second) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

// Means[r][g] = E_{family[r]}[residual g] over the deduped sets.
struct Problem {
  std::vector<int> family_index;    // deduped -> original
  std::vector<int> residual_index;  // deduped -> original
  std::vector<std::vector<double>> means;
};

Problem Prepare(const ResidualClass& residuals, const std::vector<Dist>& family) {
  Problem p;
  std::vector<const std::vector<double>*> tables;
  for (int g = 0; g < static_cast<int>(residuals.size()); ++g) {
    const auto& t = residuals[g].table;
    bool seen = false;
    for (const auto* u : tables) {
      if (*u == t) {
        seen = true;
        break;
      }
    }
    if (seen) continue;
    bool zero = std::all_of(t.begin(), t.end(), [](double v) { return v == 0.0; });
    // The zero function is never a witness.
    if (zero) continue;
    tables.push_back(&t);
    p.residual_index.push_back(g);
  }
  for (int r = 0; r < static_cast<int>(family.size()); ++r) {
    bool seen = false;
    for (int q : p.family_index) {
      if (family[q] == family[r]) {
        seen = true;
        break;
      }
    }
    if (seen) continue;
    p.family_index.push_back(r);
    std::vector<double> row;
    row.reserve(tables.size());
    for (const auto* t : tables) row.push_back(family[r].Expect(*t));
    p.means.push_back(std::move(row));
  }
  return p;
}

// Feasible eps' set after appending family member r with prior sums sq.
Intervals Extend(const Problem& p, const Intervals& feasible,
                 const std::vector<double>& sq, int r) {
  Intervals parts;
  const auto& m = p.means[r];
  for (size_t g = 0; g < m.size(); ++g) {
    const double lo = std::sqrt(sq[g]);
    const double hi = std::abs(m[g]);
    if (lo < hi) parts.emplace_back(lo, hi);
  }
  if (parts.empty()) return {};
  return Intersect(feasible, Merge(std::move(parts)));
}

class ExactSearch {
 public:
  ExactSearch(const Problem& p, const DimensionCaps& caps)
      : p_(p), caps_(caps), used_(p.means.size(), false) {}

  std::vector<int> Run(double eps) {
    std::vector<double> sq(p_.residual_index.size(), 0.0);
    Dfs(Intervals{{eps, kInf}}, sq);
    return best_;
  }

 private:
  void Dfs(const Intervals& feasible, const std::vector<double>& sq) {
    if (seq_.size() > best_.size()) best_ = seq_;
    const size_t n = p_.means.size();
    if (best_.size() == n) return;
    if (seq_.size() + (n - seq_.size()) <= best_.size()) return;
    for (size_t r = 0; r < n; ++r) {
      if (used_[r]) continue;
      Intervals next = Extend(p_, feasible, sq, static_cast<int>(r));
      if (next.empty()) continue;
      if (static_cast<int>(seq_.size()) >= caps_.max_length) {
        Fail(ErrorCode::kTooLarge, "independent sequence exceeds length cap " +
                                       std::to_string(caps_.max_length));
      }
      std::vector<double> sq2 = sq;
      for (size_t g = 0; g < sq2.size(); ++g) {
        sq2[g] += p_.means[r][g] * p_.means[r][g];
      }
      used_[r] = true;
      seq_.push_back(static_cast<int>(r));
      Dfs(next, sq2);
      seq_.pop_back();
      used_[r] = false;
      if (best_.size() == n) return;
    }
  }

  const Problem& p_;
  const DimensionCaps& caps_;
  std::vector<bool> used_;
  std::vector<int> seq_;
  std::vector<int> best_;
};

std::vector<int> GreedySearch(const Problem& p, double eps) {
  const size_t n = p.means.size();
  std::vector<double> sq(p.residual_index.size(), 0.0);
  std::vector<bool> used(n, false);
  Intervals feasible{{eps, kInf}};
  std::vector<int> seq;
  bool grew = true;
  while (grew) {
    grew = false;
    for (size_t r = 0; r < n; ++r) {
      if (used[r]) continue;
      Intervals next = Extend(p, feasible, sq, static_cast<int>(r));
      if (next.empty()) continue;
      feasible = std::move(next);
      for (size_t g = 0; g < sq.size(); ++g) {
        sq[g] += p.means[r][g] * p.means[r][g];
      }
      used[r] = true;
      seq.push_back(static_cast<int>(r));
      grew = true;
      break;
    }
  }
  return seq;
}

// Smallest shared eps' for the sequence, plus per-element witnesses.
DeCertificate Certify(const Problem& p, const std::vector<int>& seq,
                      double eps) {
  DeCertificate cert;
  std::vector<double> sq(p.residual_index.size(), 0.0);
  Intervals feasible{{eps, kInf}};
  for (int r : seq) {
    feasible = Extend(p, feasible, sq, r);
    for (size_t g = 0; g < sq.size(); ++g) sq[g] += p.means[r][g] * p.means[r][g];
  }
  cert.eps_prime = seq.empty() ? eps : feasible.front().first;
  std::fill(sq.begin(), sq.end(), 0.0);
  for (int r : seq) {
    int witness = -1;
    for (size_t g = 0; g < sq.size(); ++g) {
      if (std::sqrt(sq[g]) <= cert.eps_prime &&
          std::abs(p.means[r][g]) > cert.eps_prime) {
        witness = static_cast<int>(g);
        break;
      }
    }
    cert.sequence.push_back(p.family_index[r]);
    cert.witnesses.push_back(p.residual_index[witness]);
    for (size_t g = 0; g < sq.size(); ++g) sq[g] += p.means[r][g] * p.means[r][g];
  }
  return cert;
}

void CheckDist(const Dist& d, size_t size) {
  if (d.weights.size() != size) {
    Fail(ErrorCode::kDimensionMismatch, "distribution support size");
  }
}

Dist Marginal(const TabularMG& mg, const std::vector<double>& joint) {
  Dist d;
  d.weights.assign(mg.S(), 0.0);
  const int ab = mg.A() * mg.B();
  for (int s = 0; s < mg.S(); ++s) {
    for (int j = 0; j < ab; ++j) d.weights[s] += joint[s * ab + j];
  }
  return d;
}

void PushUnique(std::vector<Dist>& out, Dist d) {
  for (const Dist& e : out) {
    if (e == d) return;
  }
  out.push_back(std::move(d));
}

}  // namespace

double Dist::Expect(const std::vector<double>& table) const {
  if (table.size() != weights.size()) {
    Fail(ErrorCode::kDimensionMismatch, "residual table vs distribution");
  }
  double acc = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] != 0.0) acc += weights[i] * table[i];
  }
  return acc;
}

Dist PointMass(int size, int index) {
  Dist d;
  d.weights.assign(size, 0.0);
  d.weights.at(index) = 1.0;
  return d;
}

Independence IsEpsIndependent(const ResidualClass& residuals, const Dist& nu,
                              const std::vector<Dist>& prior, double eps) {
  for (int g = 0; g < static_cast<int>(residuals.size()); ++g) {
    const auto& t = residuals[g].table;
    double sq = 0.0;
    for (const Dist& d : prior) {
      const double e = d.Expect(t);
      sq += e * e;
    }
    if (std::sqrt(sq) <= eps && std::abs(nu.Expect(t)) > eps) {
      return {true, g};
    }
  }
  return {false, -1};
}

DeResult DeDimension(const ResidualClass& residuals,
                     const std::vector<Dist>& family, double eps,
                     SearchMode mode, const DimensionCaps& caps) {
  if (!(eps >= 0.0)) Fail(ErrorCode::kInvalidArgument, "eps must be >= 0");
  if (!family.empty()) {
    for (const Dist& d : family) CheckDist(d, family[0].weights.size());
  }
  const Problem p = Prepare(residuals, family);
  if (mode == SearchMode::kExact &&
      static_cast<int>(p.means.size()) > caps.max_family) {
    Fail(ErrorCode::kTooLarge,
         "family of " + std::to_string(p.means.size()) +
             " distinct members exceeds cap " + std::to_string(caps.max_family));
  }
  std::vector<int> seq;
  if (mode == SearchMode::kExact) {
    ExactSearch search(p, caps);
    seq = search.Run(eps);
  } else {
    seq = GreedySearch(p, eps);
  }
  DeResult out;
  out.dimension = static_cast<int>(seq.size());
  out.certificate = Certify(p, seq, eps);
  return out;
}

bool CheckCertificate(const ResidualClass& residuals,
                      const std::vector<Dist>& family, double eps,
                      const DeCertificate& certificate) {
  if (certificate.eps_prime < eps) return false;
  if (certificate.sequence.size() != certificate.witnesses.size()) return false;
  std::vector<Dist> prior;
  for (size_t i = 0; i < certificate.sequence.size(); ++i) {
    const int r = certificate.sequence[i];
    const int g = certificate.witnesses[i];
    if (r < 0 || r >= static_cast<int>(family.size())) return false;
    if (g < 0 || g >= static_cast<int>(residuals.size())) return false;
    ResidualClass single{residuals[g]};
    if (!IsEpsIndependent(single, family[r], prior, certificate.eps_prime)
             .independent) {
      return false;
    }
    prior.push_back(family[r]);
  }
  return true;
}

DistFamilies BuildDistFamilies(const TabularMG& mg, const FunctionClass& f_class,
                               bool state_marginal, const DimensionCaps& caps) {
  if (!(f_class.signature() == SignatureOf(mg))) {
    Fail(ErrorCode::kDimensionMismatch, "class signature vs game");
  }
  const int n = f_class.size();
  if (static_cast<std::int64_t>(n) * n > caps.max_pairs) {
    Fail(ErrorCode::kTooLarge, "|F|^2 = " + std::to_string(n * n) +
                                   " exceeds pair cap " +
                                   std::to_string(caps.max_pairs));
  }
  const int H = mg.H();
  const int sab = mg.NumTriples();
  DistFamilies out;
  out.delta.resize(H);
  out.occupancy.resize(H);
  const int support = state_marginal ? mg.S() : sab;
  for (int h = 0; h < H; ++h) {
    for (int x = 0; x < support; ++x) out.delta[h].push_back(PointMass(support, x));
  }
  std::vector<MarkovPolicy> mu;
  for (int f = 0; f < n; ++f) mu.push_back(InducedNashPolicy(f_class[f]));
  for (int f = 0; f < n; ++f) {
    for (int g = 0; g < n; ++g) {
      const MarkovPolicy nu = GreedyMinPolicy(mu[f], f_class[g]);
      const auto occ = Occupancy(mg, mu[f], nu);
      for (int h = 0; h < H; ++h) {
        PushUnique(out.occupancy[h],
                   state_marginal ? Marginal(mg, occ[h]) : Dist{occ[h]});
      }
    }
  }
  return out;
}

std::vector<ResidualClass> BuildResiduals(const TabularMG& mg,
                                          const FunctionClass& f_class,
                                          BeKind kind,
                                          const DimensionCaps& caps) {
  if (!(f_class.signature() == SignatureOf(mg))) {
    Fail(ErrorCode::kDimensionMismatch, "class signature vs game");
  }
  const int n = f_class.size();
  const int H = mg.H();
  const int sab = mg.NumTriples();
  std::vector<ResidualClass> out(H);
  auto difference = [&](int f, const std::vector<double>& image, int h) {
    const auto step = f_class[f].Step(h);
    std::vector<double> d(sab);
    for (int x = 0; x < sab; ++x) d[x] = step[x] - image[x];
    return d;
  };
  if (kind == BeKind::kOnline) {
    for (int h = 0; h < H; ++h) {
      for (int f = 0; f < n; ++f) {
        out[h].push_back({h, difference(f, NashBellman(mg, f_class[f], h), h), {f}});
      }
    }
    return out;
  }
  if (kind == BeKind::kV && n > caps.max_v_class) {
    Fail(ErrorCode::kTooLarge, "V-type class of " + std::to_string(n) +
                                   " functions exceeds cap " +
                                   std::to_string(caps.max_v_class));
  }
  std::vector<MarkovPolicy> mu;
  for (int f = 0; f < n; ++f) mu.push_back(InducedNashPolicy(f_class[f]));
  for (int h = 0; h < H; ++h) {
    for (int f = 0; f < n; ++f) {
      for (int g = 0; g < n; ++g) {
        std::vector<double> q =
            difference(f, MuBellman(mg, f_class[f], mu[g], h), h);
        if (kind == BeKind::kQ) {
          out[h].push_back({h, std::move(q), {f, g}});
          continue;
        }
        for (int w = 0; w < n; ++w) {
          const MarkovPolicy nu = GreedyMinPolicy(mu[g], f_class[w]);
          std::vector<double> v(mg.S(), 0.0);
          for (int s = 0; s < mg.S(); ++s) {
            const auto pa = mu[g].Probs(h, s);
            const auto pb = nu.Probs(h, s);
            for (int a = 0; a < mg.A(); ++a) {
              for (int b = 0; b < mg.B(); ++b) {
                v[s] += pa[a] * pb[b] * q[mg.Index(s, a, b)];
              }
            }
          }
          out[h].push_back({h, std::move(v), {f, g, w}});
        }
      }
    }
  }
  return out;
}

BeResult BeDimension(const TabularMG& mg, const FunctionClass& f_class,
                     double eps, BeKind kind, SearchMode mode,
                     const DimensionCaps& caps) {
  const std::vector<ResidualClass> residuals =
      BuildResiduals(mg, f_class, kind, caps);
  DistFamilies families;
  if (kind == BeKind::kOnline) {
    families.delta.resize(mg.H());
    for (int h = 0; h < mg.H(); ++h) {
      for (int x = 0; x < mg.NumTriples(); ++x) {
        families.delta[h].push_back(PointMass(mg.NumTriples(), x));
      }
    }
  } else {
    families = BuildDistFamilies(mg, f_class, kind == BeKind::kV, caps);
  }
  BeResult out;
  for (int h = 0; h < mg.H(); ++h) {
    DeResult best = DeDimension(residuals[h], families.delta[h], eps, mode, caps);
    bool from_delta = true;
    if (kind != BeKind::kOnline) {
      DeResult alt =
          DeDimension(residuals[h], families.occupancy[h], eps, mode, caps);
      if (alt.dimension < best.dimension) {
        best = std::move(alt);
        from_delta = false;
      }
    }
    out.per_step.push_back(best.dimension);
    if (h == 0 || best.dimension > out.dimension) {
      out.dimension = best.dimension;
      out.step = h;
      out.certificate_from_delta = from_delta;
      out.certificate = std::move(best.certificate);
    }
  }
  return out;
}

double LogDetObjective(const std::vector<std::vector<double>>& z,
                       const std::vector<int>& counts, double eps) {
  const int d = static_cast<int>(z[0].size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d, d);
  const double scale = 1.0 / (eps * eps);
  for (size_t i = 0; i < z.size(); ++i) {
    if (counts[i] == 0) continue;
    const Eigen::Map<const Eigen::VectorXd> v(z[i].data(), d);
    m.noalias() += (scale * counts[i]) * v * v.transpose();
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    Fail(ErrorCode::kNonFinite, "log-det factorization failed");
  }
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

namespace {

std::int64_t Multisets(int m, int n, std::int64_t limit) {
  // C(m + n - 1, n), saturating at limit + 1.
  double c = 1.0;
  for (int i = 1; i <= std::min(n, m - 1); ++i) {
    c = c * (n + i) / i;
    if (c > static_cast<double>(limit)) return limit + 1;
  }
  return static_cast<std::int64_t>(std::llround(c));
}

void MaxOverMultisets(const std::vector<std::vector<double>>& z, double eps,
                      int pos, int left, std::vector<int>& counts,
                      double& best) {
  const int m = static_cast<int>(z.size());
  if (pos == m - 1) {
    counts[pos] = left;
    best = std::max(best, LogDetObjective(z, counts, eps));
    counts[pos] = 0;
    return;
  }
  for (int c = left; c >= 0; --c) {
    counts[pos] = c;
    MaxOverMultisets(z, eps, pos + 1, left - c, counts, best);
  }
  counts[pos] = 0;
}

}  // namespace

EffectiveDimensionResult EffectiveDimension(
    const std::vector<std::vector<double>>& z, double eps,
    const EffectiveDimensionOptions& options) {
  if (z.empty() || z[0].empty()) {
    Fail(ErrorCode::kInvalidArgument, "Z must be a nonempty set of vectors");
  }
  if (!(eps > 0.0)) Fail(ErrorCode::kInvalidArgument, "eps must be positive");
  for (const auto& v : z) {
    if (v.size() != z[0].size()) Fail(ErrorCode::kDimensionMismatch, "ragged Z");
    for (double x : v) {
      if (!std::isfinite(x)) Fail(ErrorCode::kNonFinite, "Z entry");
    }
  }
  const double threshold = std::exp(-1.0);
  const int m = static_cast<int>(z.size());
  // The greedy sequence lower-bounds the supremum, so any n it rules out
  // is ruled out exactly as well.
  std::vector<int> greedy(m, 0);
  for (int n = 1; n <= options.max_n; ++n) {
    int pick = 0;
    double value = -kInf;
    for (int i = 0; i < m; ++i) {
      ++greedy[i];
      const double v = LogDetObjective(z, greedy, eps);
      --greedy[i];
      if (v > value) {
        value = v;
        pick = i;
      }
    }
    ++greedy[pick];
    if (value / n > threshold) continue;
    if (options.mode == SearchMode::kGreedy) {
      return {n, false, value / n};
    }
    if (Multisets(m, n, options.max_multisets) > options.max_multisets) {
      Fail(ErrorCode::kTooLarge, "multiset enumeration exceeds cap at n = " +
                                     std::to_string(n));
    }
    std::vector<int> counts(m, 0);
    double best = -kInf;
    MaxOverMultisets(z, eps, 0, n, counts, best);
    if (best / n <= threshold) return {n, true, best / n};
  }
  Fail(ErrorCode::kTooLarge,
       "no n up to " + std::to_string(options.max_n) + " meets the bound");
}

}  // namespace mggolf
