// src/lexicon.cc

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

#include "latfuse/lexicon.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <set>

#include "latfuse/error.h"

namespace latfuse {

std::vector<DictEntry> ReadDictionary(std::istream &is, const std::string &source,
                                      DictionaryStats *stats) {
  DictionaryStats local;
  DictionaryStats &st = stats ? *stats : local;
  st = DictionaryStats{};

  // Keep first-seen order of surfaces so the built transducer is stable.
  std::map<std::vector<std::string>, size_t> position;
  std::vector<DictEntry> entries;
  std::vector<std::set<std::vector<MoraToken>>> seen;

  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    ++st.lines;
    size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw InputError(source, lineno, "expected 'surface<TAB>pronunciation'");
    std::vector<std::string> surface = TokenizeTt(line.substr(0, tab));
    if (surface.empty()) throw InputError(source, lineno, "empty surface");

    std::string joined;
    for (char c : line.substr(tab + 1))
      if (c != ' ' && c != '\t') joined += c;
    std::vector<MoraToken> pron;
    try {
      pron = TokenizePa(joined);
    } catch (const InputError &) {
      pron.clear();
    }
    if (pron.empty()) {
      ++st.discarded;
      continue;
    }

    auto [it, inserted] = position.emplace(surface, entries.size());
    if (inserted) {
      entries.push_back(DictEntry{surface, {}});
      seen.emplace_back();
    }
    if (!seen[it->second].insert(pron).second) {
      ++st.duplicates;
      continue;
    }
    entries[it->second].pronunciations.push_back(std::move(pron));
  }
  st.entries = static_cast<int>(entries.size());
  for (const auto &e : entries) st.pronunciations += e.pronunciations.size();
  return entries;
}

std::vector<DictEntry> ReadDictionaryFile(const std::string &path,
                                          DictionaryStats *stats) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open '" + path + "'");
  return ReadDictionary(is, path, stats);
}

LexiconFst BuildLexicon(const std::vector<DictEntry> &entries) {
  LexiconFst d;
  d.tt_symbols.AddSymbol(kUnknownSymbol);
  for (const auto &e : entries) {
    if (e.surface.empty()) throw Error("BuildLexicon: empty surface");
    for (const auto &c : e.surface) d.tt_symbols.AddSymbol(c);
    for (const auto &p : e.pronunciations) {
      if (p.empty()) throw Error("BuildLexicon: empty pronunciation");
      for (const auto &m : p) d.pa_symbols.AddSymbol(m.Render());
    }
  }

  // State 0 is the start; state 1 is the final hub every word returns to.
  // Words leave from the hub, and their first arc is duplicated from the
  // start, so at least one word is read.
  Wfst &fst = d.fst;
  fst.set_semiring(Semiring::kLog);
  const StateId start = fst.AddState();
  const StateId hub = fst.AddState();
  fst.SetStart(start);
  fst.SetFinal(hub, One());

  for (const auto &e : entries) {
    for (const auto &pron : e.pronunciations) {
      const size_t len = std::max(e.surface.size(), pron.size());
      StateId prev = hub;
      for (size_t i = 0; i < len; ++i) {
        Label il = i < e.surface.size() ? d.tt_symbols.Find(e.surface[i]) : kEpsilon;
        Label ol = i < pron.size() ? d.pa_symbols.Find(pron[i].Render()) : kEpsilon;
        StateId next = i + 1 == len ? hub : fst.AddState();
        fst.AddArc(prev, Arc(il, ol, One(), next));
        if (i == 0) fst.AddArc(start, Arc(il, ol, One(), next));
        prev = next;
      }
    }
  }
  return d;
}

Wfst TtToPaLattice(const Wfst &tt_lattice, const LexiconFst &d,
                   double prune_beam) {
  if (tt_lattice.Empty()) return Wfst(Semiring::kLog);
  return Optimize(ProjectOutput(Compose(tt_lattice, d.fst)), prune_beam);
}

Wfst ReweightWithPa(const Wfst &pa_lattice, const Wfst &t2p) {
  if (pa_lattice.Empty() || t2p.Empty()) return Wfst(Semiring::kLog);
  Wfst joint = Compose(pa_lattice, t2p);
  if (joint.Empty()) return joint;
  return NormalizeLocal(joint);
}

}  // namespace latfuse
