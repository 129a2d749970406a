// latfuse/semiring.h

// Copyright 2026  The latfuse Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LATFUSE_SEMIRING_H_
#define LATFUSE_SEMIRING_H_

#include <cmath>
#include <limits>
#include <string_view>

namespace latfuse {

/// Weights are costs in the negative-log domain: lower is more probable.
/// Both semirings share Times (addition), Zero (+inf) and One (0); they
/// differ only in Plus.
enum class Semiring { kLog, kTropical };

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline constexpr double Zero() { return kInfinity; }
inline constexpr double One() { return 0.0; }

inline bool IsZero(double w) { return w == kInfinity; }

/// -log(exp(-a) + exp(-b)), evaluated as min - log1p(exp(-|a - b|)).
inline double LogPlus(double a, double b) {
  if (a == kInfinity) return b;
  if (b == kInfinity) return a;
  double lo = a < b ? a : b;
  return lo - std::log1p(std::exp(-std::fabs(a - b)));
}

inline double TropicalPlus(double a, double b) { return a < b ? a : b; }

inline double Plus(Semiring s, double a, double b) {
  return s == Semiring::kLog ? LogPlus(a, b) : TropicalPlus(a, b);
}

inline double Times(double a, double b) {
  if (a == kInfinity || b == kInfinity) return kInfinity;
  return a + b;
}

// Left division a / b. Only meaningful for b != Zero().
inline double Divide(double a, double b) {
  if (a == kInfinity) return kInfinity;
  return a - b;
}

inline double ToCost(double prob) { return -std::log(prob); }
inline double ToProb(double cost) { return std::exp(-cost); }

std::string_view SemiringName(Semiring s);
Semiring ParseSemiring(std::string_view name);

}  // namespace latfuse

#endif  // LATFUSE_SEMIRING_H_
