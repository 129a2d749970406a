// tests/semiring-test.cc

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

#include <cmath>

#include "doctest.h"
#include "test-util.h"

using namespace latfuse;

TEST_CASE("log plus") {
  CHECK(LogPlus(-std::log(0.3), -std::log(0.2)) ==
        doctest::Approx(-std::log(0.5)).epsilon(1e-14));
  CHECK(LogPlus(Zero(), 1.5) == 1.5);
  CHECK(LogPlus(1.5, Zero()) == 1.5);
  CHECK(IsZero(LogPlus(Zero(), Zero())));
  // No overflow far apart.
  CHECK(LogPlus(1000.0, 0.0) == doctest::Approx(0.0));
  CHECK(std::isfinite(LogPlus(-800.0, -800.0)));
}

TEST_CASE("tropical plus and times") {
  CHECK(TropicalPlus(1.0, 2.0) == 1.0);
  CHECK(Times(1.0, 2.0) == 3.0);
  CHECK(IsZero(Times(Zero(), -5.0)));
  CHECK(Times(One(), 4.0) == 4.0);
  CHECK(Divide(3.0, 1.0) == 2.0);
}

TEST_CASE("semiring axioms on random weights") {
  testing::TestRng rng(7);
  for (Semiring s : {Semiring::kLog, Semiring::kTropical}) {
    for (int i = 0; i < 1000; ++i) {
      double a = rng.Uniform(-5, 5), b = rng.Uniform(-5, 5), c = rng.Uniform(-5, 5);
      CHECK(std::fabs(Plus(s, Plus(s, a, b), c) - Plus(s, a, Plus(s, b, c))) <= 1e-12);
      CHECK(std::fabs(Plus(s, a, b) - Plus(s, b, a)) <= 1e-12);
      CHECK(std::fabs(Times(a, Plus(s, b, c)) -
                      Plus(s, Times(a, b), Times(a, c))) <= 1e-12);
      CHECK(Plus(s, a, Zero()) == a);
      CHECK(Times(a, One()) == a);
      CHECK(IsZero(Times(a, Zero())));
    }
  }
}

TEST_CASE("semiring names") {
  CHECK(ParseSemiring("log") == Semiring::kLog);
  CHECK(ParseSemiring("tropical") == Semiring::kTropical);
  CHECK(ParseSemiring(SemiringName(Semiring::kTropical)) == Semiring::kTropical);
  CHECK_THROWS(ParseSemiring("real"));
}
