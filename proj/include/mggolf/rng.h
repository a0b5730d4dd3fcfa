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

#ifndef MGGOLF_RNG_H_
#define MGGOLF_RNG_H_

#include <cstdint>
#include <random>
#include <span>

namespace mggolf {

// Purpose tags for stream derivation. A stream is identified by
// (master seed, counter, tag); see DeriveStreamSeed.
enum class StreamTag : std::uint64_t {
  kOptionOne = 1,
  kOptionTwo = 2,
  kOliveActivate = 3,
  kOliveEliminate = 4,
  kInnerActivate = 5,
  kInnerEliminate = 6,
  kClassBuild = 7,
  kGenerator = 8,
  kAdversary = 9,
};

// SplitMix64-based mixing of (seed, counter, tag) into a stream seed.
std::uint64_t DeriveStreamSeed(std::uint64_t seed, std::uint64_t counter,
                               StreamTag tag);

// Portable random source. Draws are produced from raw mt19937_64 output so
// the sequence is identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t counter, StreamTag tag)
      : engine_(DeriveStreamSeed(seed, counter, tag)) {}

  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  // Uniform integer in [0, n).
  int UniformInt(int n);
  // Index drawn from a probability vector (inverse CDF, lowest index first).
  int Categorical(std::span<const double> probs);

 private:
  std::mt19937_64 engine_;
};

}  // namespace mggolf

#endif  // MGGOLF_RNG_H_
