// latfuse/lexicon.h

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

#ifndef LATFUSE_LEXICON_H_
#define LATFUSE_LEXICON_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "latfuse/fst-ops.h"
#include "latfuse/pa-token.h"
#include "latfuse/symbol-table.h"
#include "latfuse/wfst.h"

namespace latfuse {

/// A surface form (one text token per character) and its pronunciations.
struct DictEntry {
  std::vector<std::string> surface;
  std::vector<std::vector<MoraToken>> pronunciations;
};

struct DictionaryStats {
  int lines = 0;
  int entries = 0;         // distinct surfaces
  int pronunciations = 0;  // distinct (surface, pronunciation) pairs
  int duplicates = 0;
  int discarded = 0;       // empty or unparsable pronunciations
};

/// Reads "surface<TAB>mora mora ..." lines; '#' starts a comment line.
/// Surfaces are NFKC-tokenized into characters. Lines with an empty or
/// unparsable pronunciation are discarded and counted, duplicate pairs are
/// merged. Structural problems (no tab, empty surface) throw InputError.
std::vector<DictEntry> ReadDictionary(std::istream &is, const std::string &source,
                                      DictionaryStats *stats = nullptr);
std::vector<DictEntry> ReadDictionaryFile(const std::string &path,
                                          DictionaryStats *stats = nullptr);

/// Text-token to PA transducer with its two symbol tables. The input table
/// always contains "<unk>", which no arc consumes.
struct LexiconFst {
  Wfst fst;
  SymbolTable tt_symbols;
  SymbolTable pa_symbols;
};

/// Kleene-plus closure over the dictionary: every path reads one or more
/// whole entries. Each (surface, pronunciation) pair is a linear path,
/// character per input arc and mora per output arc, padded with epsilons
/// on the shorter side. All weights are One(). An empty entry list gives a
/// transducer that accepts nothing.
LexiconFst BuildLexicon(const std::vector<DictEntry> &entries);

/// Optimize(ProjectOutput(Compose(tt_lattice, d))). `tt_lattice` must use
/// d.tt_symbols ids; the result uses d.pa_symbols ids. Returns the empty
/// automaton when no string of the lattice decomposes into entries.
Wfst TtToPaLattice(const Wfst &tt_lattice, const LexiconFst &d,
                   double prune_beam = kDefaultPruneBeam);

/// NormalizeLocal(Compose(pa_lattice, t2p)): carries the PA model's
/// preferences onto the dictionary's pronunciation variants. Empty when
/// either input is empty or the two languages do not intersect.
Wfst ReweightWithPa(const Wfst &pa_lattice, const Wfst &t2p);

}  // namespace latfuse

#endif  // LATFUSE_LEXICON_H_
