// src/ctc-lattice.cc

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

#include "latfuse/ctc-lattice.h"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "latfuse/error.h"
#include "latfuse/fst-io.h"

namespace latfuse {

namespace {

std::vector<std::string> SplitTabs(const std::string &line) {
  std::vector<std::string> out;
  size_t begin = 0;
  while (true) {
    size_t tab = line.find('\t', begin);
    out.push_back(line.substr(begin, tab - begin));
    if (tab == std::string::npos) break;
    begin = tab + 1;
  }
  return out;
}

}  // namespace

PosteriorMatrix::PosteriorMatrix(const std::vector<std::string> &label_names,
                                 std::vector<double> log_probs) {
  Init(label_names, std::move(log_probs));
  Validate();
}

void PosteriorMatrix::Init(const std::vector<std::string> &label_names,
                           std::vector<double> log_probs) {
  log_probs_ = std::move(log_probs);
  num_labels_ = static_cast<int>(label_names.size());
  for (size_t k = 0; k < label_names.size(); ++k) {
    if (symbols_.Contains(label_names[k]))
      throw InputError("duplicate label '" + label_names[k] + "'");
    symbols_.AddSymbol(label_names[k], static_cast<Label>(k + 1));
    if (label_names[k] == kBlankSymbol) blank_ = static_cast<Label>(k + 1);
  }
  if (blank_ == kNoLabel) throw InputError("label set has no <blank>");
  if (num_labels_ == 0 || log_probs_.size() % num_labels_ != 0)
    throw InputError("posterior data is not a whole number of rows");
  num_frames_ = static_cast<int>(log_probs_.size() / num_labels_);
}

std::string PosteriorMatrix::RowError(int t) const {
  double mass = Zero();
  for (int k = 0; k < num_labels_; ++k) {
    double y = LogProb(t, k);
    if (std::isnan(y) || y > 0.0)
      return "frame " + std::to_string(t) + ": log-probabilities must be <= 0";
    mass = LogPlus(mass, -y);
  }
  if (!(std::fabs(mass) <= kRowTolerance))
    return "frame " + std::to_string(t) + " is not normalized (logsumexp = " +
           FormatWeight(-mass) + ")";
  return "";
}

void PosteriorMatrix::Validate() const {
  if (num_frames_ < 1) throw InputError("posterior matrix has no frames");
  if (num_labels_ < 2)
    throw InputError("posterior matrix needs a real label besides <blank>");
  for (int t = 0; t < num_frames_; ++t) {
    std::string error = RowError(t);
    if (!error.empty()) throw InputError(error);
  }
}

PosteriorMatrix PosteriorMatrix::Read(std::istream &is,
                                      const std::string &source) {
  std::string line;
  int lineno = 0;
  std::vector<std::string> labels;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    labels = SplitTabs(line);
    break;
  }
  if (labels.empty()) throw InputError(source, lineno, "missing label header");
  const int header_line = lineno;
  for (const auto &l : labels)
    if (l.empty()) throw InputError(source, lineno, "empty label name");

  std::vector<double> data;
  std::vector<int> row_lines;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = SplitTabs(line);
    if (fields.size() != labels.size())
      throw InputError(source, lineno,
                       "expected " + std::to_string(labels.size()) +
                           " values, got " + std::to_string(fields.size()));
    for (const auto &f : fields) {
      try {
        data.push_back(ParseWeight(f));
      } catch (const InputError &) {
        throw InputError(source, lineno, "bad log-probability '" + f + "'");
      }
    }
    row_lines.push_back(lineno);
  }

  PosteriorMatrix m;
  try {
    m.Init(labels, std::move(data));
  } catch (const InputError &e) {
    throw InputError(source, header_line, e.what());
  }
  if (m.NumFrames() < 1) throw InputError(source, lineno, "no frames");
  if (m.NumLabels() < 2)
    throw InputError(source, header_line, "need a real label besides <blank>");
  for (int t = 0; t < m.NumFrames(); ++t) {
    std::string error = m.RowError(t);
    if (!error.empty()) throw InputError(source, row_lines[t], error);
  }
  return m;
}

PosteriorMatrix PosteriorMatrix::ReadFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open '" + path + "'");
  return Read(is, path);
}

void PosteriorMatrix::Write(std::ostream &os) const {
  for (int k = 0; k < num_labels_; ++k)
    os << (k ? "\t" : "") << symbols_.Symbol(LabelOf(k));
  os << '\n';
  for (int t = 0; t < num_frames_; ++t) {
    for (int k = 0; k < num_labels_; ++k)
      os << (k ? "\t" : "") << FormatWeight(LogProb(t, k));
    os << '\n';
  }
}

Wfst BuildConfusionNetwork(const PosteriorMatrix &posteriors) {
  Wfst fst(Semiring::kLog);
  const int frames = posteriors.NumFrames();
  fst.AddStates(frames + 1);
  fst.SetStart(0);
  for (int t = 0; t < frames; ++t) {
    fst.ReserveArcs(t, posteriors.NumLabels());
    for (int k = 0; k < posteriors.NumLabels(); ++k) {
      double cost = -posteriors.LogProb(t, k);
      if (IsZero(cost)) continue;
      Label label = posteriors.LabelOf(k);
      fst.AddArc(t, Arc(label, label, cost, t + 1));
    }
  }
  fst.SetFinal(frames, One());
  return fst;
}

Wfst BuildBlankRemover(const SymbolTable &symbols, Label blank) {
  if (!symbols.HasId(blank)) throw Error("BuildBlankRemover: unknown blank id");
  std::vector<Label> labels;
  for (Label id : symbols.Ids())
    if (id != kEpsilon && id != blank) labels.push_back(id);

  Wfst fst(Semiring::kLog);
  fst.AddStates(labels.size() + 1);
  fst.SetStart(0);
  // State i + 1 remembers that labels[i] was the last emission.
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    fst.SetFinal(s, One());
    fst.AddArc(s, Arc(blank, kEpsilon, One(), 0));
    for (size_t i = 0; i < labels.size(); ++i) {
      StateId next = static_cast<StateId>(i + 1);
      Label out = s == next ? kEpsilon : labels[i];
      fst.AddArc(s, Arc(labels[i], out, One(), next));
    }
  }
  return fst;
}

Wfst CtcLattice(const PosteriorMatrix &posteriors, double prune_beam) {
  Wfst confusion = BuildConfusionNetwork(posteriors);
  Wfst remover = BuildBlankRemover(posteriors.Symbols(), posteriors.Blank());
  return Optimize(ProjectOutput(Compose(confusion, remover)), prune_beam);
}

}  // namespace latfuse
