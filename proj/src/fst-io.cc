// src/fst-io.cc

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

#include "latfuse/fst-io.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "latfuse/error.h"

namespace latfuse {

namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

template <typename Int>
bool ParseInt(std::string_view text, Int *out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), *out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

std::string FormatWeight(double w) {
  if (IsZero(w)) return "Infinity";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w);
  return std::string(buf, ptr);
}

double ParseWeight(std::string_view text) {
  if (text == "Infinity" || text == "inf" || text == "+inf") return kInfinity;
  if (text == "-Infinity" || text == "-inf") return -kInfinity;
  double w = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), w);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw InputError("bad weight '" + std::string(text) + "'");
  return w;
}

void WriteAtt(std::ostream &os, const Wfst &fst) {
  if (fst.Empty()) return;
  // The start state has to come first; print it, then the rest in order.
  auto write_state = [&](StateId s) {
    for (const Arc &arc : fst.Arcs(s)) {
      os << s << '\t' << arc.nextstate << '\t' << arc.ilabel << '\t'
         << arc.olabel;
      if (arc.weight != One()) os << '\t' << FormatWeight(arc.weight);
      os << '\n';
    }
    if (fst.IsFinal(s)) {
      os << s;
      if (fst.Final(s) != One()) os << '\t' << FormatWeight(fst.Final(s));
      os << '\n';
    }
  };
  // A start state with neither arcs nor final weight would be lost.
  if (fst.NumArcs(fst.Start()) == 0 && !fst.IsFinal(fst.Start())) return;
  write_state(fst.Start());
  for (StateId s = 0; s < fst.NumStates(); ++s)
    if (s != fst.Start()) write_state(s);
}

Wfst ReadAtt(std::istream &is, Semiring semiring, const std::string &source) {
  Wfst fst(semiring);
  std::string line;
  int lineno = 0;
  auto ensure = [&](StateId s) {
    while (fst.NumStates() <= s) fst.AddState();
  };
  while (std::getline(is, line)) {
    ++lineno;
    auto fields = SplitFields(line);
    if (fields.empty()) continue;
    try {
      StateId src = 0;
      if (!ParseInt(fields[0], &src) || src < 0)
        throw InputError("bad state id '" + std::string(fields[0]) + "'");
      ensure(src);
      if (fst.Empty()) fst.SetStart(src);
      if (fields.size() <= 2) {
        fst.SetFinal(src, fields.size() == 2 ? ParseWeight(fields[1]) : One());
      } else if (fields.size() == 4 || fields.size() == 5) {
        StateId dst = 0;
        Label il = 0, ol = 0;
        if (!ParseInt(fields[1], &dst) || dst < 0)
          throw InputError("bad state id '" + std::string(fields[1]) + "'");
        if (!ParseInt(fields[2], &il) || il < 0 || !ParseInt(fields[3], &ol) ||
            ol < 0)
          throw InputError("bad label");
        double w = fields.size() == 5 ? ParseWeight(fields[4]) : One();
        ensure(dst);
        fst.AddArc(src, Arc(il, ol, w, dst));
      } else {
        throw InputError("expected 1, 2, 4 or 5 fields");
      }
    } catch (const InputError &e) {
      throw InputError(source, lineno, e.what());
    }
  }
  return fst;
}

void WriteAttFile(const std::string &path, const Wfst &fst) {
  std::ofstream os(path);
  if (!os) throw InputError("cannot open '" + path + "' for writing");
  WriteAtt(os, fst);
}

Wfst ReadAttFile(const std::string &path, Semiring semiring) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open '" + path + "'");
  return ReadAtt(is, semiring, path);
}

void WriteSymbolsFile(const std::string &path, const SymbolTable &symbols) {
  std::ofstream os(path);
  if (!os) throw InputError("cannot open '" + path + "' for writing");
  symbols.Write(os);
}

SymbolTable ReadSymbolsFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open '" + path + "'");
  return SymbolTable::Read(is, path);
}

}  // namespace latfuse
