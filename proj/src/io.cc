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

#include "mggolf/io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mggolf/errors.h"

namespace mggolf {
namespace {

const Json& Field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    Fail(ErrorCode::kConfig, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

int IntField(const Json& j, const char* key) {
  const Json& v = Field(j, key);
  if (!v.is_number_integer()) {
    Fail(ErrorCode::kConfig, std::string("field '") + key + "' must be an integer");
  }
  return v.get<int>();
}

double Number(const Json& v, const std::string& where) {
  if (!v.is_number()) Fail(ErrorCode::kConfig, where + " must be a number");
  return v.get<double>();
}

const Json& Array(const Json& v, size_t n, const std::string& where) {
  if (!v.is_array() || v.size() != n) {
    Fail(ErrorCode::kConfig,
         where + " must be an array of length " + std::to_string(n));
  }
  return v;
}

// Reads a nested array with the given extents into a flat row-major vector.
void Flatten(const Json& v, const std::vector<int>& dims, size_t depth,
             const std::string& where, std::vector<double>& out) {
  const Json& arr = Array(v, dims[depth], where);
  for (size_t i = 0; i < arr.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    if (depth + 1 == dims.size()) {
      out.push_back(Number(arr[i], at));
    } else {
      Flatten(arr[i], dims, depth + 1, at, out);
    }
  }
}

}  // namespace

std::string FormatDouble(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Json MgToJson(const TabularMG& mg) {
  Json j;
  j["H"] = mg.H();
  j["S"] = mg.S();
  j["A"] = mg.A();
  j["B"] = mg.B();
  j["initial_state"] = mg.initial_state();
  Json transition = Json::array();
  Json reward = Json::array();
  for (int h = 0; h < mg.H(); ++h) {
    Json th = Json::array();
    Json rh = Json::array();
    for (int s = 0; s < mg.S(); ++s) {
      Json ts = Json::array();
      Json rs = Json::array();
      for (int a = 0; a < mg.A(); ++a) {
        Json ta = Json::array();
        Json ra = Json::array();
        for (int b = 0; b < mg.B(); ++b) {
          const auto row = mg.Next(h, s, a, b);
          ta.push_back(Json(std::vector<double>(row.begin(), row.end())));
          ra.push_back(mg.Reward(h, s, a, b));
        }
        ts.push_back(std::move(ta));
        rs.push_back(std::move(ra));
      }
      th.push_back(std::move(ts));
      rh.push_back(std::move(rs));
    }
    transition.push_back(std::move(th));
    reward.push_back(std::move(rh));
  }
  j["transition"] = std::move(transition);
  j["reward"] = std::move(reward);
  return j;
}

TabularMG MgFromJson(const Json& j) {
  const int H = IntField(j, "H");
  const int S = IntField(j, "S");
  const int A = IntField(j, "A");
  const int B = IntField(j, "B");
  if (H < 1 || S < 1 || A < 1 || B < 1) {
    Fail(ErrorCode::kConfig, "H, S, A, B must be positive");
  }
  const int s1 = IntField(j, "initial_state");
  std::vector<std::vector<double>> transition(H);
  std::vector<std::vector<double>> reward(H);
  const Json& tj = Array(Field(j, "transition"), H, "transition");
  const Json& rj = Array(Field(j, "reward"), H, "reward");
  for (int h = 0; h < H; ++h) {
    const std::string suffix = "[" + std::to_string(h) + "]";
    Flatten(tj[h], {S, A, B, S}, 0, "transition" + suffix, transition[h]);
    Flatten(rj[h], {S, A, B}, 0, "reward" + suffix, reward[h]);
  }
  try {
    return TabularMG(H, S, A, B, s1, std::move(transition), std::move(reward));
  } catch (const MgError& e) {
    Fail(ErrorCode::kConfig, std::string("invalid game: ") + e.what());
  }
}

Json ClassToJson(const FunctionClass& cls) {
  const Signature& sig = cls.signature();
  Json j;
  j["schema"] = "fc-v1";
  j["H"] = sig.H;
  j["S"] = sig.S;
  j["A"] = sig.A;
  j["B"] = sig.B;
  Json members = Json::array();
  for (const ValueFunction& f : cls.members()) {
    Json fj = Json::array();
    for (int h = 0; h < sig.H; ++h) {
      Json hj = Json::array();
      for (int s = 0; s < sig.S; ++s) {
        Json sj = Json::array();
        for (int a = 0; a < sig.A; ++a) {
          Json aj = Json::array();
          for (int b = 0; b < sig.B; ++b) aj.push_back(f(h, s, a, b));
          sj.push_back(std::move(aj));
        }
        hj.push_back(std::move(sj));
      }
      fj.push_back(std::move(hj));
    }
    members.push_back(std::move(fj));
  }
  j["members"] = std::move(members);
  return j;
}

FunctionClass ClassFromJson(const Json& j) {
  const Json& schema = Field(j, "schema");
  if (!schema.is_string() || schema.get<std::string>() != "fc-v1") {
    Fail(ErrorCode::kConfig, "unsupported function class schema");
  }
  Signature sig{IntField(j, "H"), IntField(j, "S"), IntField(j, "A"),
                IntField(j, "B")};
  const Json& mj = Field(j, "members");
  if (!mj.is_array()) Fail(ErrorCode::kConfig, "members must be an array");
  std::vector<ValueFunction> members;
  for (size_t i = 0; i < mj.size(); ++i) {
    std::vector<double> data;
    Flatten(mj[i], {sig.H, sig.S, sig.A, sig.B}, 0,
            "members[" + std::to_string(i) + "]", data);
    members.emplace_back(sig, std::move(data));
  }
  try {
    return FunctionClass(sig, std::move(members));
  } catch (const MgError& e) {
    Fail(ErrorCode::kConfig, std::string("invalid class: ") + e.what());
  }
}

Json PayoffToJson(const Payoff& m) {
  Json j = Json::array();
  for (int a = 0; a < m.rows(); ++a) {
    Json row = Json::array();
    for (int b = 0; b < m.cols(); ++b) row.push_back(m(a, b));
    j.push_back(std::move(row));
  }
  return j;
}

Payoff PayoffFromJson(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    Fail(ErrorCode::kConfig, "matrix must be a nonempty array of arrays");
  }
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < j.size(); ++i) {
    const Json& r = Array(j[i], j[0].size(), "matrix[" + std::to_string(i) + "]");
    std::vector<double> row;
    for (size_t k = 0; k < r.size(); ++k) {
      row.push_back(Number(r[k], "matrix entry"));
    }
    rows.push_back(std::move(row));
  }
  return Payoff::FromRows(rows);
}

Json PolicyToJson(const MarkovPolicy& policy) {
  Json j = Json::array();
  for (int h = 0; h < policy.H(); ++h) {
    Json hj = Json::array();
    for (int s = 0; s < policy.S(); ++s) {
      const auto p = policy.Probs(h, s);
      hj.push_back(Json(std::vector<double>(p.begin(), p.end())));
    }
    j.push_back(std::move(hj));
  }
  return j;
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kConfig, path + ": " + e.what());
  }
}

void WriteJsonFile(const std::string& path, const Json& j) {
  WriteTextFile(path, j.dump(2) + "\n");
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path);
  out << text;
  if (!out) Fail(ErrorCode::kIo, "write failed for " + path);
}

}  // namespace mggolf
