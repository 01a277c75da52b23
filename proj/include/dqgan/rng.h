// Copyright 2026 The dqgan-sim Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DQGAN_RNG_H_
#define DQGAN_RNG_H_

#include <cstdint>
#include <random>

namespace dqgan {

// Purposes for derived sub-streams. Data sampling and compressor rounding
// never share a stream, so swapping the compressor leaves the minibatch
// sequence untouched.
enum class StreamKind : std::uint64_t {
  kData = 1,
  kCompressor = 2,
  kInit = 3,
  kAux = 4,
};

// splitmix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

// Seed for the stream of `worker` in `round`, for the given purpose.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t worker,
                         std::uint64_t round, StreamKind kind);

// Thin wrapper over mt19937_64 with the draws the simulator needs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double Normal() { return normal_(engine_); }
  // Uniform integer in [0, n).
  std::uint64_t Index(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }
  std::uint64_t Next() { return engine_(); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace dqgan

#endif  // DQGAN_RNG_H_
