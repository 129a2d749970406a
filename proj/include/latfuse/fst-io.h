// latfuse/fst-io.h

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

#ifndef LATFUSE_FST_IO_H_
#define LATFUSE_FST_IO_H_

#include <iosfwd>
#include <string>
#include <string_view>

#include "latfuse/symbol-table.h"
#include "latfuse/wfst.h"

// AT&T FSM text format. Arc lines are "src dst ilabel olabel weight" and
// final lines "state weight" (or just "state" for weight One()). The start
// state is the source of the first line. Labels are written as integer ids;
// the matching symbol table goes in a sidecar "symbol<TAB>id" file.
//
// Weights are printed in the shortest decimal form that parses back to the
// same double, so Write/Read round-trips bit-exactly.

namespace latfuse {

std::string FormatWeight(double w);
double ParseWeight(std::string_view text);  // throws InputError

void WriteAtt(std::ostream &os, const Wfst &fst);
Wfst ReadAtt(std::istream &is, Semiring semiring, const std::string &source);

void WriteAttFile(const std::string &path, const Wfst &fst);
Wfst ReadAttFile(const std::string &path, Semiring semiring = Semiring::kLog);

void WriteSymbolsFile(const std::string &path, const SymbolTable &symbols);
SymbolTable ReadSymbolsFile(const std::string &path);

}  // namespace latfuse

#endif  // LATFUSE_FST_IO_H_
