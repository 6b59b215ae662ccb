// Copyright 2026 The alphafair Authors
//
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

#ifndef ALPHAFAIR_COMMON_HPP
#define ALPHAFAIR_COMMON_HPP

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

namespace alphafair {

/// Input failed a model invariant (nonpositive capacity, unknown link id, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An instance file does not match the documented schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The problem admits no optimum (some request sees no finite capacity).
class UnboundedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Projection floors exceed the link capacity; the lower bound is invalid.
class InfeasibleFloorsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver hit its iteration cap before reaching tolerance.
class NonConvergedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-user fairness utility: w * x^(1-a)/(1-a), or w * log(x) at a = 1.
inline double alpha_utility_term(double weight, double x, double alpha) {
  if (alpha == 1.0) return weight * std::log(x);
  return weight * std::pow(x, 1.0 - alpha) / (1.0 - alpha);
}

/// Total utility over an allocation, summed in index order.
inline double alpha_utility(std::span<const double> weights,
                            std::span<const double> x, double alpha) {
  double total = 0.0;
  for (std::size_t r = 0; r < x.size(); ++r)
    total += alpha_utility_term(weights[r], x[r], alpha);
  return total;
}

inline void require_positive_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("alpha must be a positive real, got " +
                                std::to_string(alpha));
}

}  // namespace alphafair

#endif  // ALPHAFAIR_COMMON_HPP
