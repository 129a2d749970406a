// latfuse/fusion.h

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

#ifndef LATFUSE_FUSION_H_
#define LATFUSE_FUSION_H_

#include <string>
#include <vector>

#include "latfuse/ctc-lattice.h"
#include "latfuse/lexicon.h"
#include "latfuse/pa-token.h"
#include "latfuse/wfst.h"

// Lattice fusion decoding. The PA lattice L_P comes from the PA posteriors;
// the text-token lattice L_T is converted through the lexicon into a PA
// lattice, reweighted by L_P, and averaged with L_P by a mixture union. The
// best path of the fused lattice is the decoded mora sequence.

namespace latfuse {

enum class DecodeMode { kPaOnly, kConditioning, kFusion };

DecodeMode ParseDecodeMode(const std::string &name);  // pa-only|cond|fuse
std::string DecodeModeName(DecodeMode mode);

struct DecodeConfig {
  double mix = 0.5;                       // weight of L_P in the union
  double prune_beam = kDefaultPruneBeam;  // beam for every Optimize() call
};

/// Every intermediate automaton of one decode, for inspection and dumping.
/// PA-side lattices use the PA posterior matrix's label ids; TT-side ones
/// use the lexicon's text-token ids.
struct FusionTrace {
  Wfst pa_confusion;  // S_P
  Wfst pa_lattice;    // L_P
  Wfst tt_lattice;    // L_T
  Wfst t2p_raw;       // L'_T2P
  Wfst t2p;           // L_T2P
  Wfst fused;         // fused lattice (or L_T2P / L_P for the baselines)
  bool fell_back = false;  // fusion used L_P alone because L_T2P was empty
};

/// Opt(Union(pa, t2p, mix)); Opt(pa) when t2p is empty. Throws when both
/// are empty.
Wfst Fuse(const Wfst &pa_lattice, const Wfst &t2p_lattice, double mix,
          double prune_beam = kDefaultPruneBeam);

/// L_T from TT posteriors, relabeled into d.tt_symbols. Characters the
/// lexicon does not know become "<unk>".
Wfst TtLatticeFromPosteriors(const PosteriorMatrix &tt_posteriors,
                             const LexiconFst &d, double prune_beam);

/// Single-path, probability-one L_T for an external transcript.
Wfst TtLatticeFromText(const std::string &text, const LexiconFst &d);

/// L_T2P in the PA matrix's label space, or empty when the TT lattice has
/// no dictionary-decomposable string in common with L_P.
Wfst BuildT2pLattice(const Wfst &pa_lattice, const SymbolTable &pa_symbols,
                     const Wfst &tt_lattice, const LexiconFst &d,
                     double prune_beam, Wfst *t2p_raw = nullptr);

/// shortest_path(L_P).
std::vector<MoraToken> DecodePaOnly(const PosteriorMatrix &y_pa,
                                    const DecodeConfig &cfg,
                                    FusionTrace *trace = nullptr);

/// shortest_path(Fuse(L_P, L_T2P)); falls back to L_P when L_T2P is empty.
std::vector<MoraToken> DecodeMtLf(const PosteriorMatrix &y_pa,
                                  const Wfst &tt_lattice, const LexiconFst &d,
                                  const DecodeConfig &cfg,
                                  FusionTrace *trace = nullptr);
std::vector<MoraToken> DecodeMtLf(const PosteriorMatrix &y_pa,
                                  const PosteriorMatrix &y_tt,
                                  const LexiconFst &d, const DecodeConfig &cfg,
                                  FusionTrace *trace = nullptr);

/// Explicit conditioning: shortest_path(L_T2P). Throws latfuse::Error when
/// L_T2P is empty; there is no fallback.
std::vector<MoraToken> DecodeExplicitConditioning(
    const PosteriorMatrix &y_pa, const Wfst &tt_lattice, const LexiconFst &d,
    const DecodeConfig &cfg, FusionTrace *trace = nullptr);
std::vector<MoraToken> DecodeExplicitConditioning(
    const PosteriorMatrix &y_pa, const PosteriorMatrix &y_tt,
    const LexiconFst &d, const DecodeConfig &cfg, FusionTrace *trace = nullptr);

/// Maps PA matrix label ids back to morae.
std::vector<MoraToken> LabelsToMorae(const std::vector<Label> &labels,
                                     const SymbolTable &pa_symbols);

}  // namespace latfuse

#endif  // LATFUSE_FUSION_H_
