// src/fst-ops.cc

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

#include "latfuse/fst-ops.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>

#include "latfuse/error.h"

namespace latfuse {

namespace {

bool IsEpsilonArc(const Arc &arc) {
  return arc.ilabel == kEpsilon && arc.olabel == kEpsilon;
}

int64_t Quantize(double w) {
  if (IsZero(w)) return std::numeric_limits<int64_t>::max();
  return std::llround(w / kQuantizeDelta);
}

// Kahn's algorithm over the arcs selected by `use`. Returns fewer than
// NumStates() entries when the selected subgraph has a cycle.
template <typename Pred>
std::vector<StateId> KahnOrder(const Wfst &fst, Pred use) {
  const StateId n = fst.NumStates();
  std::vector<int> indegree(n, 0);
  for (StateId s = 0; s < n; ++s)
    for (const Arc &arc : fst.Arcs(s))
      if (use(arc)) ++indegree[arc.nextstate];
  std::deque<StateId> queue;
  for (StateId s = 0; s < n; ++s)
    if (indegree[s] == 0) queue.push_back(s);
  std::vector<StateId> order;
  order.reserve(n);
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    order.push_back(s);
    for (const Arc &arc : fst.Arcs(s))
      if (use(arc) && --indegree[arc.nextstate] == 0)
        queue.push_back(arc.nextstate);
  }
  return order;
}

void RequireAcceptor(const Wfst &fst, const char *op) {
  if (!fst.IsAcceptor())
    throw Error(std::string(op) + ": input must be an acceptor");
}

bool CostLess(double a, double b) {
  double tol = kCostTolerance * std::max(1.0, std::min(std::fabs(a), std::fabs(b)));
  return a < b - tol;
}

}  // namespace

std::vector<StateId> TopologicalOrder(const Wfst &fst) {
  auto order = KahnOrder(fst, [](const Arc &) { return true; });
  if (static_cast<StateId>(order.size()) != fst.NumStates())
    throw Error("automaton is cyclic; only acyclic lattices are supported");
  return order;
}

bool IsAcyclic(const Wfst &fst) {
  auto order = KahnOrder(fst, [](const Arc &) { return true; });
  return static_cast<StateId>(order.size()) == fst.NumStates();
}

Wfst Connect(const Wfst &fst) {
  Wfst out(fst.semiring());
  if (fst.Empty()) return out;
  const StateId n = fst.NumStates();

  std::vector<char> access(n, 0), coaccess(n, 0);
  std::vector<StateId> stack{fst.Start()};
  access[fst.Start()] = 1;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const Arc &arc : fst.Arcs(s)) {
      if (IsZero(arc.weight) || access[arc.nextstate]) continue;
      access[arc.nextstate] = 1;
      stack.push_back(arc.nextstate);
    }
  }

  std::vector<std::vector<StateId>> preds(n);
  for (StateId s = 0; s < n; ++s)
    for (const Arc &arc : fst.Arcs(s))
      if (!IsZero(arc.weight)) preds[arc.nextstate].push_back(s);
  for (StateId s = 0; s < n; ++s)
    if (fst.IsFinal(s)) {
      coaccess[s] = 1;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId p : preds[s])
      if (!coaccess[p]) {
        coaccess[p] = 1;
        stack.push_back(p);
      }
  }

  if (!access[fst.Start()] || !coaccess[fst.Start()]) return out;
  std::vector<StateId> remap(n, kNoState);
  for (StateId s = 0; s < n; ++s)
    if (access[s] && coaccess[s]) remap[s] = out.AddState();
  for (StateId s = 0; s < n; ++s) {
    if (remap[s] == kNoState) continue;
    out.SetFinal(remap[s], fst.Final(s));
    for (const Arc &arc : fst.Arcs(s)) {
      if (IsZero(arc.weight) || remap[arc.nextstate] == kNoState) continue;
      out.AddArc(remap[s],
                 Arc(arc.ilabel, arc.olabel, arc.weight, remap[arc.nextstate]));
    }
  }
  out.SetStart(remap[fst.Start()]);
  return out;
}

Wfst Compose(const Wfst &a, const Wfst &b) {
  if (a.semiring() != b.semiring())
    throw Error("Compose: semiring mismatch (" +
                std::string(SemiringName(a.semiring())) + " vs " +
                std::string(SemiringName(b.semiring())) + ")");
  Wfst out(a.semiring());
  if (a.Empty() || b.Empty()) return out;

  // b's arcs sorted by input label for matching.
  std::vector<std::vector<Arc>> b_sorted(b.NumStates());
  for (StateId s = 0; s < b.NumStates(); ++s) {
    b_sorted[s] = b.Arcs(s);
    std::stable_sort(b_sorted[s].begin(), b_sorted[s].end(),
                     [](const Arc &x, const Arc &y) { return x.ilabel < y.ilabel; });
  }
  auto matches = [&](StateId s, Label ilabel) {
    return std::equal_range(
        b_sorted[s].begin(), b_sorted[s].end(), Arc(ilabel, 0, 0.0, 0),
        [](const Arc &x, const Arc &y) { return x.ilabel < y.ilabel; });
  };

  // Composed state = (state in a, state in b, filter state). Filter 0: no
  // pending epsilon move; 1: last move advanced only a on an output
  // epsilon; 2: last move advanced only b on an input epsilon.
  struct Triple {
    StateId sa, sb;
    int filter;
  };
  std::vector<Triple> triples;
  std::unordered_map<uint64_t, StateId> index;
  const uint64_t nb = static_cast<uint64_t>(b.NumStates());
  std::deque<StateId> queue;
  auto find_or_add = [&](StateId sa, StateId sb, int filter) {
    uint64_t key = (static_cast<uint64_t>(sa) * nb + sb) * 3 + filter;
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    StateId id = out.AddState();
    index.emplace(key, id);
    triples.push_back({sa, sb, filter});
    queue.push_back(id);
    return id;
  };

  out.SetStart(find_or_add(a.Start(), b.Start(), 0));
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    const Triple t = triples[s];
    out.SetFinal(s, Times(a.Final(t.sa), b.Final(t.sb)));

    for (const Arc &ea : a.Arcs(t.sa)) {
      if (ea.olabel == kEpsilon) {
        if (t.filter != 2) {
          StateId next = find_or_add(ea.nextstate, t.sb, 1);
          out.AddArc(s, Arc(ea.ilabel, kEpsilon, ea.weight, next));
        }
        if (t.filter == 0) {
          auto [lo, hi] = matches(t.sb, kEpsilon);
          for (auto it = lo; it != hi; ++it) {
            StateId next = find_or_add(ea.nextstate, it->nextstate, 0);
            out.AddArc(s, Arc(ea.ilabel, it->olabel,
                              Times(ea.weight, it->weight), next));
          }
        }
      } else {
        auto [lo, hi] = matches(t.sb, ea.olabel);
        for (auto it = lo; it != hi; ++it) {
          StateId next = find_or_add(ea.nextstate, it->nextstate, 0);
          out.AddArc(s, Arc(ea.ilabel, it->olabel, Times(ea.weight, it->weight),
                            next));
        }
      }
    }
    if (t.filter != 1) {
      auto [lo, hi] = matches(t.sb, kEpsilon);
      for (auto it = lo; it != hi; ++it) {
        StateId next = find_or_add(t.sa, it->nextstate, 2);
        out.AddArc(s, Arc(kEpsilon, it->olabel, it->weight, next));
      }
    }
  }
  return Connect(out);
}

Wfst ProjectOutput(const Wfst &fst) {
  Wfst out = fst;
  for (StateId s = 0; s < out.NumStates(); ++s)
    for (Arc &arc : out.MutableArcs(s)) arc.ilabel = arc.olabel;
  return out;
}

Wfst ProjectInput(const Wfst &fst) {
  Wfst out = fst;
  for (StateId s = 0; s < out.NumStates(); ++s)
    for (Arc &arc : out.MutableArcs(s)) arc.olabel = arc.ilabel;
  return out;
}

Wfst RmEpsilon(const Wfst &fst) {
  if (fst.Empty()) return Wfst(fst.semiring());
  const Semiring sr = fst.semiring();
  const StateId n = fst.NumStates();
  auto order = KahnOrder(fst, IsEpsilonArc);
  if (static_cast<StateId>(order.size()) != n)
    throw Error("RmEpsilon: epsilon cycle; closure is not supported");

  // closure[p]: states reachable from p by epsilon paths, with the semiring
  // sum of those paths' weights. Filled in reverse topological order.
  std::vector<std::map<StateId, double>> closure(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    StateId p = *it;
    auto &cp = closure[p];
    cp[p] = One();
    for (const Arc &arc : fst.Arcs(p)) {
      if (!IsEpsilonArc(arc) || IsZero(arc.weight)) continue;
      for (const auto &[q, w] : closure[arc.nextstate]) {
        double v = Times(arc.weight, w);
        auto [slot, inserted] = cp.emplace(q, v);
        if (!inserted) slot->second = Plus(sr, slot->second, v);
      }
    }
  }

  Wfst out(sr);
  out.AddStates(n);
  out.SetStart(fst.Start());
  for (StateId p = 0; p < n; ++p) {
    double final_weight = Zero();
    for (const auto &[q, w] : closure[p]) {
      final_weight = Plus(sr, final_weight, Times(w, fst.Final(q)));
      for (const Arc &arc : fst.Arcs(q)) {
        if (IsEpsilonArc(arc)) continue;
        out.AddArc(p, Arc(arc.ilabel, arc.olabel, Times(w, arc.weight),
                          arc.nextstate));
      }
    }
    out.SetFinal(p, final_weight);
  }
  return Connect(out);
}

Wfst Determinize(const Wfst &fst) {
  RequireAcceptor(fst, "Determinize");
  Wfst out(fst.semiring());
  if (fst.Empty()) return out;
  const Semiring sr = fst.semiring();
  for (StateId s = 0; s < fst.NumStates(); ++s)
    for (const Arc &arc : fst.Arcs(s))
      if (arc.ilabel == kEpsilon)
        throw Error("Determinize: input has epsilon arcs; run RmEpsilon first");
  TopologicalOrder(fst);  // acyclicity check

  // A determinized state is a set of (input state, residual weight) pairs
  // sorted by state id.
  using Subset = std::vector<std::pair<StateId, double>>;
  std::vector<Subset> subsets;
  std::map<std::vector<int64_t>, StateId> index;
  std::deque<StateId> queue;
  auto find_or_add = [&](Subset subset) {
    std::vector<int64_t> key;
    key.reserve(subset.size() * 2);
    for (const auto &[q, w] : subset) {
      key.push_back(q);
      key.push_back(Quantize(w));
    }
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    StateId id = out.AddState();
    index.emplace(std::move(key), id);
    subsets.push_back(std::move(subset));
    queue.push_back(id);
    return id;
  };

  out.SetStart(find_or_add(Subset{{fst.Start(), One()}}));
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    const Subset subset = subsets[s];

    double final_weight = Zero();
    std::map<Label, std::map<StateId, double>> by_label;
    for (const auto &[q, residual] : subset) {
      final_weight = Plus(sr, final_weight, Times(residual, fst.Final(q)));
      for (const Arc &arc : fst.Arcs(q)) {
        if (IsZero(arc.weight)) continue;
        double v = Times(residual, arc.weight);
        auto [slot, inserted] = by_label[arc.ilabel].emplace(arc.nextstate, v);
        if (!inserted) slot->second = Plus(sr, slot->second, v);
      }
    }
    out.SetFinal(s, final_weight);

    for (const auto &[label, dests] : by_label) {
      double total = Zero();
      for (const auto &[q, v] : dests) total = Plus(sr, total, v);
      Subset next;
      next.reserve(dests.size());
      for (const auto &[q, v] : dests) next.emplace_back(q, Divide(v, total));
      StateId t = find_or_add(std::move(next));
      out.AddArc(s, Arc(label, label, total, t));
    }
  }
  return out;
}

Wfst Minimize(const Wfst &fst) {
  RequireAcceptor(fst, "Minimize");
  if (!fst.IsDeterministic())
    throw Error("Minimize: input must be deterministic and epsilon-free");
  Wfst in = Connect(fst);
  Wfst out(fst.semiring());
  if (in.Empty()) return out;
  const Semiring sr = in.semiring();
  const StateId n = in.NumStates();
  const auto order = TopologicalOrder(in);
  const auto potential = BackwardDistance(in, sr);

  // Pushed weights: every state's outgoing mass becomes One(); the total
  // weight of the automaton ends up in potential[start].
  auto pushed = [&](StateId s, const Arc &arc) {
    return Divide(Times(arc.weight, potential[arc.nextstate]), potential[s]);
  };
  std::vector<std::vector<Arc>> sorted(n);
  for (StateId s = 0; s < n; ++s) {
    sorted[s] = in.Arcs(s);
    std::sort(sorted[s].begin(), sorted[s].end(),
              [](const Arc &x, const Arc &y) { return x.ilabel < y.ilabel; });
  }

  // Acyclic minimization: a state's class is determined by its final
  // weight and the (label, weight, class) triples of its arcs, so classes
  // can be assigned in reverse topological order.
  std::vector<int> cls(n, -1);
  std::vector<StateId> representative;
  std::map<std::vector<int64_t>, int> signatures;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    StateId s = *it;
    std::vector<int64_t> sig;
    sig.reserve(1 + 3 * sorted[s].size());
    sig.push_back(Quantize(Divide(in.Final(s), potential[s])));
    for (const Arc &arc : sorted[s]) {
      sig.push_back(arc.ilabel);
      sig.push_back(Quantize(pushed(s, arc)));
      sig.push_back(cls[arc.nextstate]);
    }
    auto [slot, inserted] =
        signatures.emplace(std::move(sig), static_cast<int>(representative.size()));
    if (inserted) representative.push_back(s);
    cls[s] = slot->second;
  }

  std::vector<StateId> new_id(representative.size(), kNoState);
  std::deque<int> queue;
  const int start_cls = cls[in.Start()];
  new_id[start_cls] = out.AddState();
  queue.push_back(start_cls);
  while (!queue.empty()) {
    int c = queue.front();
    queue.pop_front();
    StateId rep = representative[c];
    for (const Arc &arc : sorted[rep]) {
      int next_cls = cls[arc.nextstate];
      if (new_id[next_cls] == kNoState) {
        new_id[next_cls] = out.AddState();
        queue.push_back(next_cls);
      }
    }
  }
  for (size_t c = 0; c < representative.size(); ++c) {
    if (new_id[c] == kNoState) continue;
    StateId rep = representative[c];
    StateId s = new_id[c];
    out.SetFinal(s, Divide(in.Final(rep), potential[rep]));
    for (const Arc &arc : sorted[rep])
      out.AddArc(s, Arc(arc.ilabel, arc.olabel, pushed(rep, arc),
                        new_id[cls[arc.nextstate]]));
  }

  // In a connected acyclic automaton the start state has no equivalent
  // (its language would otherwise contain itself with a non-empty
  // prefix), so the total weight can go back on the start state alone.
  StateId start = new_id[start_cls];
  out.SetStart(start);
  const double total = potential[in.Start()];
  for (Arc &arc : out.MutableArcs(start)) arc.weight = Times(total, arc.weight);
  out.SetFinal(start, Times(total, out.Final(start)));
  return out;
}

std::vector<double> ForwardDistance(const Wfst &fst, Semiring sr) {
  std::vector<double> alpha(fst.NumStates(), Zero());
  if (fst.Empty()) return alpha;
  alpha[fst.Start()] = One();
  for (StateId s : TopologicalOrder(fst)) {
    if (IsZero(alpha[s])) continue;
    for (const Arc &arc : fst.Arcs(s))
      alpha[arc.nextstate] =
          Plus(sr, alpha[arc.nextstate], Times(alpha[s], arc.weight));
  }
  return alpha;
}

std::vector<double> BackwardDistance(const Wfst &fst, Semiring sr) {
  std::vector<double> beta(fst.NumStates(), Zero());
  const auto order = TopologicalOrder(fst);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    StateId s = *it;
    double d = fst.Final(s);
    for (const Arc &arc : fst.Arcs(s))
      d = Plus(sr, d, Times(arc.weight, beta[arc.nextstate]));
    beta[s] = d;
  }
  return beta;
}

Wfst Prune(const Wfst &fst, double beam) {
  if (std::isnan(beam) || beam < 0) throw Error("Prune: beam must be >= 0");
  Wfst out(fst.semiring());
  if (fst.Empty()) return out;
  const auto alpha = ForwardDistance(fst, Semiring::kTropical);
  const auto beta = BackwardDistance(fst, Semiring::kTropical);
  const double best = beta[fst.Start()];
  if (IsZero(best)) return out;
  double limit = best + beam;
  if (std::isfinite(limit))
    limit += kCostTolerance * std::max(1.0, std::fabs(best));

  out = fst;
  for (StateId s = 0; s < out.NumStates(); ++s) {
    if (Times(alpha[s], out.Final(s)) > limit) out.SetFinal(s, Zero());
    auto &arcs = out.MutableArcs(s);
    std::erase_if(arcs, [&](const Arc &arc) {
      double through = Times(Times(alpha[s], arc.weight), beta[arc.nextstate]);
      return IsZero(through) || through > limit;
    });
  }
  return Connect(out);
}

Wfst Union(const Wfst &a, const Wfst &b, double mix) {
  if (!(mix > 0.0 && mix < 1.0))
    throw Error("Union: mix must lie strictly between 0 and 1");
  if (a.semiring() != b.semiring()) throw Error("Union: semiring mismatch");
  Wfst out(a.semiring());
  if (a.Empty() && b.Empty()) return out;
  StateId start = out.AddState();
  out.SetStart(start);
  auto append = [&](const Wfst &part, double weight) {
    if (part.Empty()) return;
    const StateId offset = out.NumStates();
    out.AddStates(part.NumStates());
    for (StateId s = 0; s < part.NumStates(); ++s) {
      out.SetFinal(s + offset, part.Final(s));
      for (const Arc &arc : part.Arcs(s))
        out.AddArc(s + offset, Arc(arc.ilabel, arc.olabel, arc.weight,
                                   arc.nextstate + offset));
    }
    out.AddArc(start, Arc(kEpsilon, kEpsilon, weight, part.Start() + offset));
  };
  append(a, ToCost(mix));
  append(b, ToCost(1.0 - mix));
  return out;
}

Path ShortestPath(const Wfst &fst) {
  if (fst.Empty()) throw Error("ShortestPath: empty automaton");
  const StateId n = fst.NumStates();
  const auto order = TopologicalOrder(fst);

  std::vector<double> cost(n, Zero());
  std::vector<std::vector<Label>> suffix(n);
  std::vector<char> reached(n, 0);
  auto better = [](double c, const std::vector<Label> &seq, double best_c,
                   const std::vector<Label> &best_seq) {
    if (CostLess(c, best_c)) return true;
    if (CostLess(best_c, c)) return false;
    if (seq != best_seq) return seq < best_seq;
    return c < best_c;
  };

  std::vector<Label> candidate;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    StateId s = *it;
    if (fst.IsFinal(s)) {
      cost[s] = fst.Final(s);
      suffix[s].clear();
      reached[s] = 1;
    }
    for (const Arc &arc : fst.Arcs(s)) {
      StateId t = arc.nextstate;
      if (!reached[t] || IsZero(arc.weight)) continue;
      double c = Times(arc.weight, cost[t]);
      candidate.clear();
      if (arc.olabel != kEpsilon) candidate.push_back(arc.olabel);
      candidate.insert(candidate.end(), suffix[t].begin(), suffix[t].end());
      if (!reached[s] || better(c, candidate, cost[s], suffix[s])) {
        cost[s] = c;
        suffix[s] = candidate;
        reached[s] = 1;
      }
    }
  }
  if (!reached[fst.Start()])
    throw Error("ShortestPath: automaton accepts no string");
  return Path{suffix[fst.Start()], cost[fst.Start()]};
}

double ShortestDistance(const Wfst &fst) {
  if (fst.Empty()) return Zero();
  const Semiring sr = fst.semiring();
  const auto alpha = ForwardDistance(fst, sr);
  double total = Zero();
  for (StateId s = 0; s < fst.NumStates(); ++s)
    total = Plus(sr, total, Times(alpha[s], fst.Final(s)));
  return total;
}

Wfst NormalizeLocal(const Wfst &fst) {
  if (fst.semiring() != Semiring::kLog)
    throw Error("NormalizeLocal: requires the log semiring");
  Wfst out = fst;
  for (StateId s = 0; s < out.NumStates(); ++s) {
    double mass = out.Final(s);
    for (const Arc &arc : out.Arcs(s)) mass = LogPlus(mass, arc.weight);
    if (IsZero(mass))
      throw Error("NormalizeLocal: state " + std::to_string(s) +
                  " has zero outgoing mass");
    for (Arc &arc : out.MutableArcs(s)) arc.weight = Divide(arc.weight, mass);
    out.SetFinal(s, Divide(out.Final(s), mass));
  }
  return out;
}

Wfst Optimize(const Wfst &fst, double prune_beam) {
  Wfst pruned = Prune(fst, prune_beam);
  if (pruned.Empty()) return pruned;
  return Minimize(Determinize(RmEpsilon(pruned)));
}

Wfst Relabel(const Wfst &fst, const std::function<Label(Label)> &map) {
  Wfst out = fst;
  for (StateId s = 0; s < out.NumStates(); ++s) {
    auto &arcs = out.MutableArcs(s);
    for (Arc &arc : arcs) {
      arc.ilabel = arc.ilabel == kEpsilon ? kEpsilon : map(arc.ilabel);
      arc.olabel = arc.olabel == kEpsilon ? kEpsilon : map(arc.olabel);
    }
    std::erase_if(arcs, [](const Arc &arc) {
      return arc.ilabel == kNoLabel || arc.olabel == kNoLabel;
    });
  }
  return Connect(out);
}

}  // namespace latfuse
