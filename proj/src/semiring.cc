// src/semiring.cc

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

#include "latfuse/semiring.h"

#include <string>

#include "latfuse/error.h"

namespace latfuse {

std::string_view SemiringName(Semiring s) {
  return s == Semiring::kLog ? "log" : "tropical";
}

Semiring ParseSemiring(std::string_view name) {
  if (name == "log") return Semiring::kLog;
  if (name == "tropical" || name == "standard") return Semiring::kTropical;
  throw InputError("unknown semiring '" + std::string(name) + "'");
}

}  // namespace latfuse
