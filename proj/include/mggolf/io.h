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

#ifndef MGGOLF_IO_H_
#define MGGOLF_IO_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "mggolf/function_class.h"
#include "mggolf/markov_game.h"
#include "mggolf/matrix_game.h"

namespace mggolf {

using Json = nlohmann::ordered_json;

// Shortest round-trip text for a double ("%.17g"); "nan"/"inf" as is.
std::string FormatDouble(double x);

// {H, S, A, B, initial_state, transition[h][s][a][b][s'], reward[h][s][a][b]}.
Json MgToJson(const TabularMG& mg);
TabularMG MgFromJson(const Json& j);

// {"schema": "fc-v1", H, S, A, B, members[i][h][s][a][b]}.
Json ClassToJson(const FunctionClass& cls);
FunctionClass ClassFromJson(const Json& j);

// Row-major array of arrays.
Json PayoffToJson(const Payoff& m);
Payoff PayoffFromJson(const Json& j);

Json PolicyToJson(const MarkovPolicy& policy);

Json ReadJsonFile(const std::string& path);
// Writes j.dump(2) with a trailing newline.
void WriteJsonFile(const std::string& path, const Json& j);
void WriteTextFile(const std::string& path, const std::string& text);

}  // namespace mggolf

#endif  // MGGOLF_IO_H_
