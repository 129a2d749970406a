// tests/wfst-test.cc

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

#include "latfuse/wfst.h"

#include <sstream>

#include "doctest.h"
#include "latfuse/error.h"
#include "latfuse/symbol-table.h"

using namespace latfuse;

TEST_CASE("wfst construction") {
  Wfst fst;
  CHECK(fst.Empty());
  StateId a = fst.AddState(), b = fst.AddState();
  fst.SetStart(a);
  fst.AddArc(a, Arc(1, 1, 0.5, b));
  fst.SetFinal(b);
  CHECK(!fst.Empty());
  CHECK(fst.NumStates() == 2);
  CHECK(fst.NumArcs() == 1);
  CHECK(fst.IsFinal(b));
  CHECK(!fst.IsFinal(a));
  CHECK(fst.IsAcceptor());
  CHECK(!fst.HasEpsilons());
  CHECK(fst.IsDeterministic());

  fst.AddArc(a, Arc(1, 2, 0.1, b));
  CHECK(!fst.IsAcceptor());
  CHECK(!fst.IsDeterministic());
  fst.AddArc(b, Arc(0, 0, 0.0, b));
  CHECK(fst.HasEpsilons());
}

TEST_CASE("wfst rejects bad states and labels") {
  Wfst fst;
  fst.AddState();
  CHECK_THROWS_AS(fst.SetStart(3), Error);
  CHECK_THROWS_AS(fst.AddArc(0, Arc(1, 1, 0.0, 5)), Error);
  CHECK_THROWS_AS(fst.AddArc(0, Arc(-2, 1, 0.0, 0)), Error);
}

TEST_CASE("symbol table") {
  SymbolTable t;
  CHECK(t.Find(kEpsilonSymbol) == kEpsilon);
  Label a = t.AddSymbol("a");
  CHECK(a == 1);
  CHECK(t.AddSymbol("a") == a);
  CHECK(t.Symbol(a) == "a");
  CHECK(t.Find("zz") == kNoLabel);
  CHECK_THROWS(t.AddSymbol("b", a));
  t.AddSymbol("c", 7);
  CHECK(t.AvailableKey() == 8);
  CHECK_THROWS(t.Symbol(3));

  std::stringstream ss;
  t.Write(ss);
  SymbolTable u = SymbolTable::Read(ss, "mem");
  CHECK(u == t);

  std::stringstream bad("<eps>\t0\nx\tnotanumber\n");
  CHECK_THROWS_AS(SymbolTable::Read(bad, "bad"), InputError);
}
