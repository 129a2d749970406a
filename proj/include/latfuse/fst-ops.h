// latfuse/fst-ops.h

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

#ifndef LATFUSE_FST_OPS_H_
#define LATFUSE_FST_OPS_H_

#include <functional>
#include <vector>

#include "latfuse/wfst.h"

// Weighted automaton algorithms. Every function is pure: it takes its
// inputs by const reference and returns a new automaton.
//
// Most of these assume acyclic input (lattices, confusion networks and
// their compositions with a lexicon are all DAGs). Functions that need a
// topological order throw latfuse::Error on cyclic input instead of
// silently degrading.

namespace latfuse {

/// Default pruning beam, in natural-log cost units.
inline constexpr double kDefaultPruneBeam = 10.0;

/// Relative tolerance under which two path costs count as tied in
/// ShortestPath() and as equal in Prune().
inline constexpr double kCostTolerance = 1e-9;

/// Grid used to quantize residual and pushed weights when hashing states
/// in Determinize() and Minimize().
inline constexpr double kQuantizeDelta = 1e-10;

/// Topological order of all states. Throws if the automaton has a cycle.
std::vector<StateId> TopologicalOrder(const Wfst &fst);
bool IsAcyclic(const Wfst &fst);

/// Removes states that are not both accessible and coaccessible, and arcs
/// with weight Zero(). State order is otherwise preserved.
Wfst Connect(const Wfst &fst);

/// Weighted composition with the three-state epsilon filter, so that each
/// pair of epsilon alignments contributes exactly one path. Both operands
/// must share a semiring; b's input labels must use a's output symbols.
Wfst Compose(const Wfst &a, const Wfst &b);

/// Acceptor keeping the output side: ilabel := olabel.
Wfst ProjectOutput(const Wfst &fst);
Wfst ProjectInput(const Wfst &fst);

/// Removes arcs labeled epsilon on both sides, merging parallel epsilon
/// paths with semiring Plus. Throws on epsilon cycles.
Wfst RmEpsilon(const Wfst &fst);

/// Weighted subset construction for epsilon-free acyclic acceptors. The
/// weight of each string in the output is the semiring sum over all of its
/// accepting paths in the input.
Wfst Determinize(const Wfst &fst);

/// Minimal deterministic acceptor with the same string-to-weight map.
/// Pushes weights toward the start state, merges states with identical
/// (final weight, outgoing signature) bottom-up, then restores the total
/// weight on the start state. Requires deterministic, acyclic input.
Wfst Minimize(const Wfst &fst);

/// Keeps the states and arcs lying on some accepting path whose tropical
/// cost is within `beam` of the best path. `beam` may be kInfinity.
Wfst Prune(const Wfst &fst, double beam);

/// Mixture union: a string's weight is
///   Plus(Times(-log mix, w_a(s)), Times(-log(1 - mix), w_b(s))).
/// With mix = 0.5 in the log semiring this is the average of the two
/// distributions. The result has a fresh start state with epsilon arcs.
Wfst Union(const Wfst &a, const Wfst &b, double mix = 0.5);

struct Path {
  std::vector<Label> labels;  // output labels, epsilons dropped
  double cost = Zero();
};

/// Best accepting path, reading arc weights as tropical costs regardless
/// of the automaton's semiring. Among paths whose costs agree within
/// kCostTolerance the lexicographically smallest label sequence wins.
/// Throws if nothing is accepted.
Path ShortestPath(const Wfst &fst);

/// Semiring sum over all accepting paths; Zero() for the empty language.
double ShortestDistance(const Wfst &fst);

/// Per-state forward (from start) and backward (to final) distances in
/// the given semiring. Requires acyclic input.
std::vector<double> ForwardDistance(const Wfst &fst, Semiring s);
std::vector<double> BackwardDistance(const Wfst &fst, Semiring s);

/// Rescales every state so its outgoing arc probabilities plus its final
/// probability sum to one. Log semiring only.
Wfst NormalizeLocal(const Wfst &fst);

/// prune -> rm-epsilon -> determinize -> minimize, in that order.
Wfst Optimize(const Wfst &fst, double prune_beam = kDefaultPruneBeam);

/// Maps every label through `map` (applied to both sides). Arcs whose
/// label maps to kNoLabel are dropped, and the result is connected.
Wfst Relabel(const Wfst &fst, const std::function<Label(Label)> &map);

}  // namespace latfuse

#endif  // LATFUSE_FST_OPS_H_
