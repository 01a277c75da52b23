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

#ifndef DQGAN_QUANTIZE_H_
#define DQGAN_QUANTIZE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dqgan/rng.h"
#include "dqgan/vector_ops.h"

namespace dqgan {

// Values double as the wire tag.
enum class CompressorKind : std::uint8_t {
  kIdentity = 0,
  kTopK = 1,
  kStochasticBits = 2,
};

enum class ScaleNorm : std::uint8_t {
  kEuclidean = 0,
  kMax = 1,
};

// A delta-approximate compressor configuration. The dimension is bound at
// use time, see Validate().
class CompressorSpec {
 public:
  static constexpr std::uint32_t kMinBits = 2;
  static constexpr std::uint32_t kMaxBits = 32;

  static CompressorSpec Identity();
  static CompressorSpec TopK(std::uint32_t k);
  // `bits` per element: one sign bit plus (bits - 1) level bits.
  static CompressorSpec StochasticBits(std::uint32_t bits, ScaleNorm norm);

  // "identity", "topk:<k>", "bits:<m>:<max|l2>".
  static CompressorSpec Parse(std::string_view text);
  std::string ToString() const;

  CompressorKind kind() const { return kind_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t bits() const { return bits_; }
  ScaleNorm norm() const { return norm_; }
  // Number of positive levels, 2^(bits-1) - 1. Levels sit at r / levels.
  std::uint64_t levels() const;

  // Throws InvalidArgument unless the spec applies to vectors of size dim.
  void Validate(std::size_t dim) const;

  bool operator==(const CompressorSpec&) const = default;

 private:
  CompressorKind kind_ = CompressorKind::kIdentity;
  std::uint32_t k_ = 0;
  std::uint32_t bits_ = 0;
  ScaleNorm norm_ = ScaleNorm::kMax;
};

// Raised by Decompress on malformed wire data.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Largest vector dimension a message may carry.
inline constexpr std::uint32_t kMaxMessageDim = 1u << 26;

// Encoded gradient as it travels to the server.
//
// Layout, all integers and floats little-endian:
//   u32  dimension d
//   f64  scale s            (0 for identity / top-k)
//   u8   compressor tag     (CompressorKind)
//   top-k:           u32 k
//   stochastic bits: u8 bits, u8 norm (ScaleNorm)
// payload:
//   identity:        d x f64
//   top-k:           k x (u32 index, f64 value), indices strictly increasing
//   stochastic bits: d codes of `bits` bits each, packed LSB-first; code bit 0
//                    is the sign (1 = negative), bits 1.. hold the level.
//                    Padding bits in the last byte are zero.
struct QuantizedMessage {
  std::vector<std::uint8_t> bytes;

  bool operator==(const QuantizedMessage&) const = default;
};

std::uint64_t HeaderBits(const CompressorSpec& spec);
std::uint64_t PayloadBits(const CompressorSpec& spec, std::size_t dim);

// Compresses v. Stochastic rounding takes exactly one Uniform() draw per
// element; identity and top-k draw nothing.
QuantizedMessage Compress(std::span<const double> v,
                          const CompressorSpec& spec, Rng& rng);

ParamVector Decompress(const QuantizedMessage& msg);

// Header fields of a well-formed message; throws DecodeError otherwise.
struct MessageInfo {
  std::uint32_t dim = 0;
  double scale = 0.0;
  CompressorSpec spec;
  std::uint64_t payload_bits = 0;
};
MessageInfo Inspect(const QuantizedMessage& msg);

// Human-readable rendering for fixtures: header fields plus indices/values
// (top-k), signed levels (stochastic bits) or values (identity).
std::string ToDebugJson(const QuantizedMessage& msg);

// Exact E||Q(v) - v||^2. For stochastic bits this is the closed form of the
// two-point rounding; for top-k it is the (deterministic) residual.
// Identity is rejected.
double ExpectedErrorSq(std::span<const double> v, const CompressorSpec& spec);

// Provable delta for the spec at dimension dim, or nullopt when no bound is
// certified (stochastic bits outside d < 4 * levels^2 under max-norm scaling,
// or l2 scaling with d > 1).
std::optional<double> DeltaLowerBound(const CompressorSpec& spec,
                                      std::size_t dim);

// Empirical delta: 1 - max ExpectedErrorSq(v)/||v||^2 over n_samples
// vectors drawn from Gaussian, heavy-tailed, sparse and adversarial
// families.
double CertifyDelta(const CompressorSpec& spec, std::size_t dim,
                    std::size_t n_samples, Rng& rng);

}  // namespace dqgan

#endif  // DQGAN_QUANTIZE_H_
