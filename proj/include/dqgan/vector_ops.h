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

#ifndef DQGAN_VECTOR_OPS_H_
#define DQGAN_VECTOR_OPS_H_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dqgan {

// Joint parameter w = [theta; phi], and anything else living in the same
// space (operator values, error accumulators, quantized updates).
using ParamVector = std::vector<double>;

// Invalid configuration or argument (bad spec, dimension mismatch, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A NaN/Inf showed up in an operator value or iterate.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void CheckSameDim(std::span<const double> a, std::span<const double> b,
                  const char* what);
void CheckFinite(std::span<const double> v, const char* what);
bool AllFinite(std::span<const double> v);

double Dot(std::span<const double> a, std::span<const double> b);
double SquaredNorm(std::span<const double> v);
double Norm(std::span<const double> v);
double MaxAbs(std::span<const double> v);

// out = a + alpha * b
ParamVector Axpy(std::span<const double> a, double alpha,
                 std::span<const double> b);
ParamVector Subtract(std::span<const double> a, std::span<const double> b);
void AddInPlace(ParamVector& acc, std::span<const double> v);
void ScaleInPlace(ParamVector& v, double alpha);

// Elementwise mean of equally sized vectors, summed in the given order and
// divided by the count.
ParamVector Mean(const std::vector<ParamVector>& vs);

double MaxAbsDiff(std::span<const double> a, std::span<const double> b);

}  // namespace dqgan

#endif  // DQGAN_VECTOR_OPS_H_
