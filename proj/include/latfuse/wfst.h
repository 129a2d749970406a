// latfuse/wfst.h

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

#ifndef LATFUSE_WFST_H_
#define LATFUSE_WFST_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "latfuse/semiring.h"

namespace latfuse {

using StateId = int32_t;
using Label = int32_t;

inline constexpr Label kEpsilon = 0;
inline constexpr Label kNoLabel = -1;
inline constexpr StateId kNoState = -1;

struct Arc {
  Label ilabel = kEpsilon;
  Label olabel = kEpsilon;
  double weight = One();
  StateId nextstate = kNoState;

  Arc() = default;
  Arc(Label i, Label o, double w, StateId next)
      : ilabel(i), olabel(o), weight(w), nextstate(next) {}

  bool operator==(const Arc &other) const = default;
};

/// Weighted transducer stored as per-state arc vectors. An automaton with
/// no start state is the empty automaton (it accepts nothing).
///
/// Algorithms in fst-ops.h never mutate their inputs; a Wfst is built once
/// through the mutators below and then treated as a value.
class Wfst {
 public:
  explicit Wfst(Semiring semiring = Semiring::kLog) : semiring_(semiring) {}

  StateId AddState();
  void AddStates(size_t n);
  void SetStart(StateId s);
  void SetFinal(StateId s, double weight = One());
  void AddArc(StateId s, const Arc &arc);
  void ReserveArcs(StateId s, size_t n);
  std::vector<Arc> &MutableArcs(StateId s) { return arcs_[s]; }

  Semiring semiring() const { return semiring_; }
  void set_semiring(Semiring s) { semiring_ = s; }

  StateId Start() const { return start_; }
  bool Empty() const { return start_ == kNoState; }
  StateId NumStates() const { return static_cast<StateId>(arcs_.size()); }
  size_t NumArcs() const;
  size_t NumArcs(StateId s) const { return arcs_[s].size(); }
  const std::vector<Arc> &Arcs(StateId s) const { return arcs_[s]; }

  double Final(StateId s) const { return finals_[s]; }
  bool IsFinal(StateId s) const { return !IsZero(finals_[s]); }

  bool IsAcceptor() const;
  bool HasEpsilons() const;
  /// At most one arc per (state, input label) and no input epsilons.
  bool IsDeterministic() const;
  bool IsValidState(StateId s) const { return s >= 0 && s < NumStates(); }

  bool operator==(const Wfst &other) const = default;

 private:
  std::vector<std::vector<Arc>> arcs_;
  std::vector<double> finals_;
  StateId start_ = kNoState;
  Semiring semiring_;
};

}  // namespace latfuse

#endif  // LATFUSE_WFST_H_
