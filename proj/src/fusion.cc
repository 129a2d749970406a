// src/fusion.cc

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

#include "latfuse/fusion.h"

#include "latfuse/error.h"
#include "latfuse/fst-ops.h"

namespace latfuse {

namespace {

// Label maps between two symbol tables via the symbol strings. Labels
// missing from `to` map to `missing`.
std::vector<Label> TableMap(const SymbolTable &from, const SymbolTable &to,
                            Label missing) {
  std::vector<Label> map(from.AvailableKey(), missing);
  for (Label id : from.Ids()) {
    Label target = to.Find(from.Symbol(id));
    map[id] = target == kNoLabel ? missing : target;
  }
  return map;
}

Wfst MapLabels(const Wfst &fst, const std::vector<Label> &map) {
  return Relabel(fst, [&map](Label l) {
    return l >= 0 && l < static_cast<Label>(map.size()) ? map[l] : kNoLabel;
  });
}

struct Lattices {
  Wfst pa_confusion;
  Wfst pa;
  Wfst t2p_raw;
  Wfst t2p;
};

Lattices BuildLattices(const PosteriorMatrix &y_pa, const Wfst &tt_lattice,
                       const LexiconFst &d, const DecodeConfig &cfg,
                       bool need_confusion) {
  Lattices l;
  if (need_confusion) l.pa_confusion = BuildConfusionNetwork(y_pa);
  l.pa = CtcLattice(y_pa, cfg.prune_beam);
  if (l.pa.Empty()) throw Error("PA lattice is empty");
  l.t2p = BuildT2pLattice(l.pa, y_pa.Symbols(), tt_lattice, d, cfg.prune_beam,
                          &l.t2p_raw);
  return l;
}

}  // namespace

DecodeMode ParseDecodeMode(const std::string &name) {
  if (name == "pa-only") return DecodeMode::kPaOnly;
  if (name == "cond") return DecodeMode::kConditioning;
  if (name == "fuse") return DecodeMode::kFusion;
  throw InputError("unknown decode mode '" + name + "'");
}

std::string DecodeModeName(DecodeMode mode) {
  switch (mode) {
    case DecodeMode::kPaOnly: return "pa-only";
    case DecodeMode::kConditioning: return "cond";
    case DecodeMode::kFusion: return "fuse";
  }
  return "?";
}

Wfst Fuse(const Wfst &pa_lattice, const Wfst &t2p_lattice, double mix,
          double prune_beam) {
  if (pa_lattice.Empty() && t2p_lattice.Empty())
    throw Error("Fuse: both lattices are empty");
  if (t2p_lattice.Empty()) return Optimize(pa_lattice, prune_beam);
  return Optimize(Union(pa_lattice, t2p_lattice, mix), prune_beam);
}

Wfst TtLatticeFromPosteriors(const PosteriorMatrix &tt_posteriors,
                             const LexiconFst &d, double prune_beam) {
  Wfst native = CtcLattice(tt_posteriors, prune_beam);
  return MapLabels(native, TableMap(tt_posteriors.Symbols(), d.tt_symbols,
                                    d.tt_symbols.Find(kUnknownSymbol)));
}

Wfst TtLatticeFromText(const std::string &text, const LexiconFst &d) {
  std::vector<Label> ids = ResolveTt(TokenizeTt(text), d.tt_symbols);
  Wfst fst(Semiring::kLog);
  StateId s = fst.AddState();
  fst.SetStart(s);
  for (Label id : ids) {
    StateId next = fst.AddState();
    fst.AddArc(s, Arc(id, id, One(), next));
    s = next;
  }
  fst.SetFinal(s, One());
  return fst;
}

Wfst BuildT2pLattice(const Wfst &pa_lattice, const SymbolTable &pa_symbols,
                     const Wfst &tt_lattice, const LexiconFst &d,
                     double prune_beam, Wfst *t2p_raw) {
  Wfst raw = TtToPaLattice(tt_lattice, d, prune_beam);
  // Morae the PA model cannot emit never survive the intersection with
  // L_P, so their arcs are dropped during relabeling.
  Wfst mapped = MapLabels(raw, TableMap(d.pa_symbols, pa_symbols, kNoLabel));
  if (t2p_raw) *t2p_raw = raw;
  return ReweightWithPa(pa_lattice, mapped);
}

std::vector<MoraToken> LabelsToMorae(const std::vector<Label> &labels,
                                     const SymbolTable &pa_symbols) {
  std::vector<MoraToken> out;
  out.reserve(labels.size());
  for (Label l : labels) out.push_back(ParseMora(pa_symbols.Symbol(l)));
  return out;
}

std::vector<MoraToken> DecodePaOnly(const PosteriorMatrix &y_pa,
                                    const DecodeConfig &cfg, FusionTrace *trace) {
  Wfst pa = CtcLattice(y_pa, cfg.prune_beam);
  if (pa.Empty()) throw Error("PA lattice is empty");
  Path best = ShortestPath(pa);
  if (trace) {
    trace->pa_confusion = BuildConfusionNetwork(y_pa);
    trace->pa_lattice = pa;
    trace->fused = pa;
  }
  return LabelsToMorae(best.labels, y_pa.Symbols());
}

std::vector<MoraToken> DecodeMtLf(const PosteriorMatrix &y_pa,
                                  const Wfst &tt_lattice, const LexiconFst &d,
                                  const DecodeConfig &cfg, FusionTrace *trace) {
  Lattices l = BuildLattices(y_pa, tt_lattice, d, cfg, trace != nullptr);
  Wfst fused = Fuse(l.pa, l.t2p, cfg.mix, cfg.prune_beam);
  Path best = ShortestPath(fused);
  if (trace) {
    trace->pa_confusion = std::move(l.pa_confusion);
    trace->pa_lattice = std::move(l.pa);
    trace->tt_lattice = tt_lattice;
    trace->t2p_raw = std::move(l.t2p_raw);
    trace->t2p = std::move(l.t2p);
    trace->fused = std::move(fused);
    trace->fell_back = trace->t2p.Empty();
  }
  return LabelsToMorae(best.labels, y_pa.Symbols());
}

std::vector<MoraToken> DecodeMtLf(const PosteriorMatrix &y_pa,
                                  const PosteriorMatrix &y_tt,
                                  const LexiconFst &d, const DecodeConfig &cfg,
                                  FusionTrace *trace) {
  return DecodeMtLf(y_pa, TtLatticeFromPosteriors(y_tt, d, cfg.prune_beam), d,
                    cfg, trace);
}

std::vector<MoraToken> DecodeExplicitConditioning(
    const PosteriorMatrix &y_pa, const Wfst &tt_lattice, const LexiconFst &d,
    const DecodeConfig &cfg, FusionTrace *trace) {
  Lattices l = BuildLattices(y_pa, tt_lattice, d, cfg, trace != nullptr);
  if (trace) {
    trace->pa_confusion = l.pa_confusion;
    trace->pa_lattice = l.pa;
    trace->tt_lattice = tt_lattice;
    trace->t2p_raw = l.t2p_raw;
    trace->t2p = l.t2p;
    trace->fused = l.t2p;
  }
  if (l.t2p.Empty())
    throw Error("explicit conditioning: text lattice yields no pronunciation "
                "compatible with the PA lattice");
  Path best = ShortestPath(l.t2p);
  return LabelsToMorae(best.labels, y_pa.Symbols());
}

std::vector<MoraToken> DecodeExplicitConditioning(
    const PosteriorMatrix &y_pa, const PosteriorMatrix &y_tt,
    const LexiconFst &d, const DecodeConfig &cfg, FusionTrace *trace) {
  return DecodeExplicitConditioning(
      y_pa, TtLatticeFromPosteriors(y_tt, d, cfg.prune_beam), d, cfg, trace);
}

}  // namespace latfuse
