// src/wfst.cc

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

#include <string>
#include <unordered_set>

#include "latfuse/error.h"

namespace latfuse {

StateId Wfst::AddState() {
  arcs_.emplace_back();
  finals_.push_back(Zero());
  return NumStates() - 1;
}

void Wfst::AddStates(size_t n) {
  arcs_.resize(arcs_.size() + n);
  finals_.resize(finals_.size() + n, Zero());
}

void Wfst::SetStart(StateId s) {
  if (!IsValidState(s)) throw Error("SetStart: invalid state " + std::to_string(s));
  start_ = s;
}

void Wfst::SetFinal(StateId s, double weight) {
  if (!IsValidState(s)) throw Error("SetFinal: invalid state " + std::to_string(s));
  finals_[s] = weight;
}

void Wfst::AddArc(StateId s, const Arc &arc) {
  if (!IsValidState(s) || !IsValidState(arc.nextstate))
    throw Error("AddArc: invalid state in arc " + std::to_string(s) + " -> " +
                std::to_string(arc.nextstate));
  if (arc.ilabel < 0 || arc.olabel < 0) throw Error("AddArc: negative label");
  arcs_[s].push_back(arc);
}

void Wfst::ReserveArcs(StateId s, size_t n) { arcs_[s].reserve(n); }

size_t Wfst::NumArcs() const {
  size_t n = 0;
  for (const auto &v : arcs_) n += v.size();
  return n;
}

bool Wfst::IsAcceptor() const {
  for (const auto &v : arcs_)
    for (const Arc &a : v)
      if (a.ilabel != a.olabel) return false;
  return true;
}

bool Wfst::HasEpsilons() const {
  for (const auto &v : arcs_)
    for (const Arc &a : v)
      if (a.ilabel == kEpsilon || a.olabel == kEpsilon) return true;
  return false;
}

bool Wfst::IsDeterministic() const {
  for (const auto &v : arcs_) {
    std::unordered_set<Label> seen;
    for (const Arc &a : v) {
      if (a.ilabel == kEpsilon) return false;
      if (!seen.insert(a.ilabel).second) return false;
    }
  }
  return true;
}

}  // namespace latfuse
