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

#include "dqgan/vector_ops.h"

#include <algorithm>
#include <cmath>

namespace dqgan {

void CheckSameDim(std::span<const double> a, std::span<const double> b,
                  const char* what) {
  if (a.size() != b.size()) {
    throw InvalidArgument(std::string(what) + ": dimension mismatch (" +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  }
}

bool AllFinite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

void CheckFinite(std::span<const double> v, const char* what) {
  if (!AllFinite(v)) {
    throw NumericalError(std::string(what) + ": non-finite value");
  }
}

double Dot(std::span<const double> a, std::span<const double> b) {
  CheckSameDim(a, b, "Dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double SquaredNorm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

double Norm(std::span<const double> v) { return std::sqrt(SquaredNorm(v)); }

double MaxAbs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

ParamVector Axpy(std::span<const double> a, double alpha,
                 std::span<const double> b) {
  CheckSameDim(a, b, "Axpy");
  ParamVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + alpha * b[i];
  return out;
}

ParamVector Subtract(std::span<const double> a, std::span<const double> b) {
  CheckSameDim(a, b, "Subtract");
  ParamVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

void AddInPlace(ParamVector& acc, std::span<const double> v) {
  CheckSameDim(acc, v, "AddInPlace");
  for (std::size_t i = 0; i < v.size(); ++i) acc[i] += v[i];
}

void ScaleInPlace(ParamVector& v, double alpha) {
  for (double& x : v) x *= alpha;
}

ParamVector Mean(const std::vector<ParamVector>& vs) {
  if (vs.empty()) throw InvalidArgument("Mean: empty input");
  ParamVector acc = vs.front();
  for (std::size_t m = 1; m < vs.size(); ++m) AddInPlace(acc, vs[m]);
  const double count = static_cast<double>(vs.size());
  for (double& x : acc) x /= count;
  return acc;
}

double MaxAbsDiff(std::span<const double> a, std::span<const double> b) {
  CheckSameDim(a, b, "MaxAbsDiff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

}  // namespace dqgan
