// tools/fixtures.h

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

#ifndef LATFUSE_TOOLS_FIXTURES_H_
#define LATFUSE_TOOLS_FIXTURES_H_

#include <cstdint>
#include <random>
#include <string>

#include "latfuse/ctc-lattice.h"
#include "latfuse/f0-class.h"

namespace latfuse::fixtures {

// mt19937_64's output sequence is fixed by the standard; the standard
// distributions are not, so values are derived from raw draws here.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  uint64_t Below(uint64_t n) { return engine_() % n; }

 private:
  std::mt19937_64 engine_;
};

/// T x K posteriors over the first K - 1 symbols of a fixed mora inventory
/// plus "<blank>".
PosteriorMatrix RandomPosteriors(Rng &rng, int frames, int labels);

/// `entries` lines of "surface<TAB>morae" over small fixed inventories.
std::string RandomDictionary(Rng &rng, int entries);

/// Voiced stretches with a wandering f0 separated by unvoiced gaps.
F0Track RandomTrack(Rng &rng, int samples, double hop);

/// Writes the homophone fixture into `dir`: PA posteriors ambiguous
/// between ハシ (0.45) and ハチ (0.55), confident TT posteriors for 端 and
/// for an out-of-vocabulary 箸, a one-entry lexicon 端 -> ハ シ, and two
/// manifests (homophone.tsv, homophone-oov.tsv).
void WriteHomophoneFixture(const std::string &dir);

}  // namespace latfuse::fixtures

#endif  // LATFUSE_TOOLS_FIXTURES_H_
