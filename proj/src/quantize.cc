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

#include "dqgan/quantize.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <numeric>

#include "json.hpp"

namespace dqgan {

namespace {

constexpr std::size_t kBaseHeaderBytes = 4 + 8 + 1;
constexpr std::size_t kTopKEntryBytes = 4 + 8;

static_assert(std::endian::native == std::endian::little,
              "wire codec assumes a little-endian host");

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(x >> (8 * i)));
}

void PutF64(std::vector<std::uint8_t>& out, double x) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t U8() {
    Need(1);
    return bytes_[pos_++];
  }
  std::uint32_t U32() {
    Need(4);
    std::uint32_t x = 0;
    for (int i = 0; i < 4; ++i) x |= std::uint32_t{bytes_[pos_ + i]} << (8 * i);
    pos_ += 4;
    return x;
  }
  double F64() {
    Need(8);
    std::uint64_t x = 0;
    for (int i = 0; i < 8; ++i) x |= std::uint64_t{bytes_[pos_ + i]} << (8 * i);
    pos_ += 8;
    return std::bit_cast<double>(x);
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::span<const std::uint8_t> Rest() const { return bytes_.subspan(pos_); }

 private:
  void Need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw DecodeError("truncated message");
  }
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

// LSB-first bit packing.
class BitWriter {
 public:
  explicit BitWriter(std::vector<std::uint8_t>& out) : out_(out) {}
  void Put(std::uint64_t value, unsigned nbits) {
    for (unsigned i = 0; i < nbits; ++i) {
      if (used_ == 0) out_.push_back(0);
      if ((value >> i) & 1u) out_.back() |= static_cast<std::uint8_t>(1u << used_);
      used_ = (used_ + 1) % 8;
    }
  }

 private:
  std::vector<std::uint8_t>& out_;
  unsigned used_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> in) : in_(in) {}
  std::uint64_t Get(unsigned nbits) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < nbits; ++i, ++pos_) {
      const std::uint64_t bit = (in_[pos_ / 8] >> (pos_ % 8)) & 1u;
      v |= bit << i;
    }
    return v;
  }
  std::size_t position() const { return pos_; }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

// ||v||_2 without overflow for huge finite entries.
double ScaledEuclideanNorm(std::span<const double> v) {
  const double m = MaxAbs(v);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double x : v) {
    const double y = x / m;
    s += y * y;
  }
  return m * std::sqrt(s);
}

double QuantizationScale(std::span<const double> v, ScaleNorm norm) {
  return norm == ScaleNorm::kMax ? MaxAbs(v) : ScaledEuclideanNorm(v);
}

double LevelValue(double scale, std::uint64_t level, std::uint64_t levels) {
  return scale * (static_cast<double>(level) / static_cast<double>(levels));
}

// Lower grid index r with B_r <= a/s < B_{r+1}; r == levels marks the top
// grid point (no rounding needed).
std::uint64_t LowerLevel(double a, double scale, std::uint64_t levels,
                         double* frac) {
  const double x = a / scale * static_cast<double>(levels);
  const double fl = std::floor(x);
  if (fl >= static_cast<double>(levels)) {
    *frac = 0.0;
    return levels;
  }
  *frac = x - fl;
  return static_cast<std::uint64_t>(fl);
}

std::vector<std::uint32_t> TopKIndices(std::span<const double> v,
                                       std::uint32_t k) {
  std::vector<std::uint32_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0u);
  auto larger = [&](std::uint32_t a, std::uint32_t b) {
    const double ma = std::abs(v[a]);
    const double mb = std::abs(v[b]);
    return ma > mb || (ma == mb && a < b);
  };
  if (k < idx.size()) {
    std::nth_element(idx.begin(), idx.begin() + k, idx.end(), larger);
    idx.resize(k);
  }
  std::sort(idx.begin(), idx.end());
  return idx;
}

void WriteHeader(std::vector<std::uint8_t>& out, std::uint32_t dim,
                 double scale, const CompressorSpec& spec) {
  PutU32(out, dim);
  PutF64(out, scale);
  out.push_back(static_cast<std::uint8_t>(spec.kind()));
  switch (spec.kind()) {
    case CompressorKind::kIdentity:
      break;
    case CompressorKind::kTopK:
      PutU32(out, spec.k());
      break;
    case CompressorKind::kStochasticBits:
      out.push_back(static_cast<std::uint8_t>(spec.bits()));
      out.push_back(static_cast<std::uint8_t>(spec.norm()));
      break;
  }
}

struct Decoded {
  MessageInfo info;
  std::vector<std::uint32_t> indices;      // top-k
  std::vector<double> values;              // identity / top-k
  std::vector<std::int64_t> signed_levels; // stochastic bits
};

Decoded DecodeAll(const QuantizedMessage& msg) {
  Reader rd(msg.bytes);
  Decoded out;
  MessageInfo& info = out.info;
  info.dim = rd.U32();
  info.scale = rd.F64();
  const std::uint8_t tag = rd.U8();
  if (info.dim == 0) throw DecodeError("zero dimension");
  if (info.dim > kMaxMessageDim) throw DecodeError("dimension too large");
  if (!std::isfinite(info.scale) || info.scale < 0.0 ||
      std::signbit(info.scale)) {
    throw DecodeError("invalid scale");
  }
  switch (tag) {
    case static_cast<std::uint8_t>(CompressorKind::kIdentity):
      info.spec = CompressorSpec::Identity();
      break;
    case static_cast<std::uint8_t>(CompressorKind::kTopK): {
      const std::uint32_t k = rd.U32();
      if (k == 0 || k > info.dim) throw DecodeError("invalid top-k parameter");
      info.spec = CompressorSpec::TopK(k);
      break;
    }
    case static_cast<std::uint8_t>(CompressorKind::kStochasticBits): {
      const std::uint8_t bits = rd.U8();
      const std::uint8_t norm = rd.U8();
      if (bits < CompressorSpec::kMinBits || bits > CompressorSpec::kMaxBits) {
        throw DecodeError("invalid bit width");
      }
      if (norm > static_cast<std::uint8_t>(ScaleNorm::kMax)) {
        throw DecodeError("invalid scale norm");
      }
      info.spec = CompressorSpec::StochasticBits(bits, static_cast<ScaleNorm>(norm));
      break;
    }
    default:
      throw DecodeError("unknown compressor tag " + std::to_string(tag));
  }
  info.payload_bits = PayloadBits(info.spec, info.dim);
  const std::uint64_t payload_bytes = (info.payload_bits + 7) / 8;
  if (rd.remaining() != payload_bytes) {
    throw DecodeError("payload length mismatch: expected " +
                      std::to_string(payload_bytes) + " bytes, got " +
                      std::to_string(rd.remaining()));
  }

  switch (info.spec.kind()) {
    case CompressorKind::kIdentity:
      out.values.resize(info.dim);
      for (double& x : out.values) {
        x = rd.F64();
        if (!std::isfinite(x)) throw DecodeError("non-finite value");
      }
      break;
    case CompressorKind::kTopK: {
      out.indices.resize(info.spec.k());
      out.values.resize(info.spec.k());
      for (std::uint32_t j = 0; j < info.spec.k(); ++j) {
        out.indices[j] = rd.U32();
        out.values[j] = rd.F64();
        if (out.indices[j] >= info.dim) throw DecodeError("index out of range");
        if (j > 0 && out.indices[j] <= out.indices[j - 1]) {
          throw DecodeError("indices not strictly increasing");
        }
        if (!std::isfinite(out.values[j])) throw DecodeError("non-finite value");
      }
      break;
    }
    case CompressorKind::kStochasticBits: {
      const unsigned bits = info.spec.bits();
      BitReader br(rd.Rest());
      out.signed_levels.resize(info.dim);
      for (auto& lv : out.signed_levels) {
        const std::uint64_t code = br.Get(bits);
        const auto level = static_cast<std::int64_t>(code >> 1);
        lv = (code & 1u) ? -level : level;
      }
      // Padding must be zero so every payload has a single encoding.
      const std::size_t used = br.position();
      const auto rest = rd.Rest();
      for (std::size_t b = used; b < rest.size() * 8; ++b) {
        if ((rest[b / 8] >> (b % 8)) & 1u) throw DecodeError("nonzero padding");
      }
      break;
    }
  }
  return out;
}


}  // namespace

CompressorSpec CompressorSpec::Identity() { return CompressorSpec(); }

CompressorSpec CompressorSpec::TopK(std::uint32_t k) {
  if (k == 0) throw InvalidArgument("top-k requires k >= 1");
  CompressorSpec s;
  s.kind_ = CompressorKind::kTopK;
  s.k_ = k;
  return s;
}

CompressorSpec CompressorSpec::StochasticBits(std::uint32_t bits,
                                              ScaleNorm norm) {
  if (bits < kMinBits || bits > kMaxBits) {
    throw InvalidArgument("stochastic bits requires m in [2, 32], got " +
                          std::to_string(bits));
  }
  CompressorSpec s;
  s.kind_ = CompressorKind::kStochasticBits;
  s.bits_ = bits;
  s.norm_ = norm;
  return s;
}

std::uint64_t CompressorSpec::levels() const {
  if (kind_ != CompressorKind::kStochasticBits) return 0;
  return (std::uint64_t{1} << (bits_ - 1)) - 1;
}

void CompressorSpec::Validate(std::size_t dim) const {
  if (dim == 0) throw InvalidArgument("compressor: dimension must be >= 1");
  if (dim > kMaxMessageDim) {
    throw InvalidArgument("compressor: dimension too large");
  }
  if (kind_ == CompressorKind::kTopK && k_ > dim) {
    throw InvalidArgument("top-k: k=" + std::to_string(k_) +
                          " exceeds dimension " + std::to_string(dim));
  }
}

std::string CompressorSpec::ToString() const {
  switch (kind_) {
    case CompressorKind::kIdentity:
      return "identity";
    case CompressorKind::kTopK:
      return "topk:" + std::to_string(k_);
    case CompressorKind::kStochasticBits:
      return "bits:" + std::to_string(bits_) + ":" +
             (norm_ == ScaleNorm::kMax ? "max" : "l2");
  }
  return "?";
}

CompressorSpec CompressorSpec::Parse(std::string_view text) {
  auto parse_u32 = [&](std::string_view s) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw InvalidArgument("compressor: bad integer '" + std::string(s) + "'");
    }
    return v;
  };
  if (text == "identity") return Identity();
  if (text.starts_with("topk:")) return TopK(parse_u32(text.substr(5)));
  if (text.starts_with("bits:")) {
    std::string_view rest = text.substr(5);
    ScaleNorm norm = ScaleNorm::kMax;
    const auto colon = rest.find(':');
    if (colon != std::string_view::npos) {
      const std::string_view n = rest.substr(colon + 1);
      if (n == "max") {
        norm = ScaleNorm::kMax;
      } else if (n == "l2") {
        norm = ScaleNorm::kEuclidean;
      } else {
        throw InvalidArgument("compressor: unknown norm '" + std::string(n) + "'");
      }
      rest = rest.substr(0, colon);
    }
    return StochasticBits(parse_u32(rest), norm);
  }
  throw InvalidArgument("compressor: cannot parse '" + std::string(text) + "'");
}

std::uint64_t HeaderBits(const CompressorSpec& spec) {
  std::uint64_t bytes = kBaseHeaderBytes;
  if (spec.kind() == CompressorKind::kTopK) bytes += 4;
  if (spec.kind() == CompressorKind::kStochasticBits) bytes += 2;
  return bytes * 8;
}

std::uint64_t PayloadBits(const CompressorSpec& spec, std::size_t dim) {
  switch (spec.kind()) {
    case CompressorKind::kIdentity:
      return std::uint64_t{dim} * 64;
    case CompressorKind::kTopK:
      return std::uint64_t{spec.k()} * kTopKEntryBytes * 8;
    case CompressorKind::kStochasticBits:
      return std::uint64_t{dim} * spec.bits();
  }
  return 0;
}

QuantizedMessage Compress(std::span<const double> v,
                          const CompressorSpec& spec, Rng& rng) {
  if (v.empty()) throw InvalidArgument("Compress: empty vector");
  spec.Validate(v.size());
  CheckFinite(v, "Compress");
  const auto dim = static_cast<std::uint32_t>(v.size());

  QuantizedMessage msg;
  switch (spec.kind()) {
    case CompressorKind::kIdentity: {
      WriteHeader(msg.bytes, dim, 0.0, spec);
      for (double x : v) PutF64(msg.bytes, x);
      break;
    }
    case CompressorKind::kTopK: {
      WriteHeader(msg.bytes, dim, 0.0, spec);
      for (std::uint32_t i : TopKIndices(v, spec.k())) {
        PutU32(msg.bytes, i);
        PutF64(msg.bytes, v[i]);
      }
      break;
    }
    case CompressorKind::kStochasticBits: {
      const double scale = QuantizationScale(v, spec.norm());
      const std::uint64_t levels = spec.levels();
      WriteHeader(msg.bytes, dim, scale, spec);
      BitWriter bw(msg.bytes);
      for (double x : v) {
        const double u = rng.Uniform();
        std::uint64_t level = 0;
        if (scale > 0.0 && x != 0.0) {
          double frac = 0.0;
          level = LowerLevel(std::abs(x), scale, levels, &frac);
          if (level < levels && u < frac) ++level;
        }
        // Sign bit only for nonzero levels; zero has one encoding.
        const std::uint64_t sign = (level > 0 && x < 0.0) ? 1 : 0;
        bw.Put((level << 1) | sign, spec.bits());
      }
      break;
    }
  }
  return msg;
}

ParamVector Decompress(const QuantizedMessage& msg) {
  const Decoded d = DecodeAll(msg);
  const MessageInfo& info = d.info;
  switch (info.spec.kind()) {
    case CompressorKind::kIdentity:
      return d.values;
    case CompressorKind::kTopK: {
      ParamVector out(info.dim, 0.0);
      for (std::size_t j = 0; j < d.indices.size(); ++j) {
        out[d.indices[j]] = d.values[j];
      }
      return out;
    }
    case CompressorKind::kStochasticBits: {
      const std::uint64_t levels = info.spec.levels();
      ParamVector out(info.dim, 0.0);
      for (std::size_t i = 0; i < out.size(); ++i) {
        const std::int64_t lv = d.signed_levels[i];
        if (lv == 0) continue;
        const double mag = LevelValue(
            info.scale, static_cast<std::uint64_t>(lv < 0 ? -lv : lv), levels);
        out[i] = lv < 0 ? -mag : mag;
      }
      return out;
    }
  }
  return {};
}

MessageInfo Inspect(const QuantizedMessage& msg) { return DecodeAll(msg).info; }

std::string ToDebugJson(const QuantizedMessage& msg) {
  const Decoded d = DecodeAll(msg);
  nlohmann::ordered_json j;
  j["dimension"] = d.info.dim;
  j["scale"] = d.info.scale;
  j["compressor"] = d.info.spec.ToString();
  j["payload_bits"] = d.info.payload_bits;
  switch (d.info.spec.kind()) {
    case CompressorKind::kIdentity:
      j["values"] = d.values;
      break;
    case CompressorKind::kTopK:
      j["indices"] = d.indices;
      j["values"] = d.values;
      break;
    case CompressorKind::kStochasticBits:
      j["levels"] = d.signed_levels;
      break;
  }
  return j.dump();
}

double ExpectedErrorSq(std::span<const double> v, const CompressorSpec& spec) {
  if (v.empty()) throw InvalidArgument("ExpectedErrorSq: empty vector");
  spec.Validate(v.size());
  CheckFinite(v, "ExpectedErrorSq");
  switch (spec.kind()) {
    case CompressorKind::kIdentity:
      throw InvalidArgument(
          "ExpectedErrorSq: identity compressor has zero error by construction");
    case CompressorKind::kTopK: {
      std::vector<bool> keep(v.size(), false);
      for (auto i : TopKIndices(v, spec.k())) keep[i] = true;
      double total = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!keep[i]) total += v[i] * v[i];
      }
      return total;
    }
    case CompressorKind::kStochasticBits: {
      const double scale = QuantizationScale(v, spec.norm());
      if (scale == 0.0) return 0.0;
      const std::uint64_t levels = spec.levels();
      double total = 0.0;
      for (double x : v) {
        if (x == 0.0) continue;
        const double a = std::abs(x);
        double frac = 0.0;
        const std::uint64_t r = LowerLevel(a, scale, levels, &frac);
        if (r >= levels) continue;
        const double lo = LevelValue(scale, r, levels);
        const double hi = LevelValue(scale, r + 1, levels);
        // a (C_r + C_{r+1}) - C_r C_{r+1} - a^2, factored.
        total += std::max(0.0, (a - lo) * (hi - a));
      }
      return total;
    }
  }
  return 0.0;
}

std::optional<double> DeltaLowerBound(const CompressorSpec& spec,
                                      std::size_t dim) {
  spec.Validate(dim);
  switch (spec.kind()) {
    case CompressorKind::kIdentity:
      return 1.0;
    case CompressorKind::kTopK:
      return static_cast<double>(spec.k()) / static_cast<double>(dim);
    case CompressorKind::kStochasticBits: {
      // A single element always lands on the top grid point.
      if (dim == 1) return 1.0;
      if (spec.norm() != ScaleNorm::kMax) return std::nullopt;
      const double k = static_cast<double>(spec.levels());
      const double d = static_cast<double>(dim);
      // Per element the expected error is at most (s/k)^2 / 4 and
      // ||v||^2 >= s^2 when s = ||v||_inf.
      if (d >= 4.0 * k * k) return std::nullopt;
      return 1.0 - d / (4.0 * k * k);
    }
  }
  return std::nullopt;
}

double CertifyDelta(const CompressorSpec& spec, std::size_t dim,
                    std::size_t n_samples, Rng& rng) {
  spec.Validate(dim);
  if (n_samples == 0) throw InvalidArgument("CertifyDelta: n_samples must be >= 1");
  if (spec.kind() == CompressorKind::kIdentity) return 1.0;

  std::cauchy_distribution<double> cauchy(0.0, 1.0);
  ParamVector v(dim);
  double worst = 0.0;
  for (std::size_t n = 0; n < n_samples; ++n) {
    switch (n % 4) {
      case 0:  // Gaussian
        for (double& x : v) x = rng.Normal();
        break;
      case 1:  // heavy-tailed
        for (double& x : v) {
          x = cauchy(rng.engine());
          if (!std::isfinite(x)) x = 0.0;
        }
        break;
      case 2: {  // sparse spikes on a small background
        for (double& x : v) x = 1e-3 * rng.Normal();
        const std::size_t spikes = 1 + rng.Index(std::max<std::size_t>(1, dim / 4));
        for (std::size_t s = 0; s < spikes; ++s) v[rng.Index(dim)] = 10.0 * rng.Normal();
        break;
      }
      default: {  // adversarial
        const double sign0 = rng.Uniform() < 0.5 ? -1.0 : 1.0;
        if (spec.kind() == CompressorKind::kTopK) {
          // Equal magnitudes make the top-k inequality tight.
          for (double& x : v) x = rng.Uniform() < 0.5 ? -1.0 : 1.0;
        } else {
          // One element pins the scale; the rest sit at the midpoint of a
          // random grid segment, where rounding variance peaks.
          const double k = static_cast<double>(spec.levels());
          const bool first_segment = rng.Uniform() < 0.5;
          for (double& x : v) {
            const double r =
                first_segment ? 0.0 : std::floor(rng.Uniform() * k);
            x = (rng.Uniform() < 0.5 ? -1.0 : 1.0) * (r + 0.5) / k;
          }
          v[rng.Index(dim)] = sign0;
        }
        break;
      }
    }
    const double norm_sq = SquaredNorm(v);
    if (!(norm_sq > 0.0) || !std::isfinite(norm_sq)) continue;
    worst = std::max(worst, ExpectedErrorSq(v, spec) / norm_sq);
  }
  return 1.0 - worst;
}

}  // namespace dqgan
