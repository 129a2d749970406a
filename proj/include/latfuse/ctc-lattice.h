// latfuse/ctc-lattice.h

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

#ifndef LATFUSE_CTC_LATTICE_H_
#define LATFUSE_CTC_LATTICE_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "latfuse/fst-ops.h"
#include "latfuse/symbol-table.h"
#include "latfuse/wfst.h"

namespace latfuse {

/// Per-frame CTC log-probabilities, T frames by K labels (blank included).
/// Column k carries label id k + 1 in `symbols`; id 0 stays epsilon.
class PosteriorMatrix {
 public:
  /// Row tolerance used by Validate(): |logsumexp(row)| must not exceed it.
  static constexpr double kRowTolerance = 1e-6;

  PosteriorMatrix() = default;
  /// `label_names` in column order; exactly one must be "<blank>".
  /// `log_probs` is row-major, T x K. The result is Validate()d.
  PosteriorMatrix(const std::vector<std::string> &label_names,
                  std::vector<double> log_probs);

  int NumFrames() const { return num_frames_; }
  int NumLabels() const { return num_labels_; }
  double LogProb(int t, int k) const { return log_probs_[t * num_labels_ + k]; }
  Label LabelOf(int k) const { return k + 1; }
  Label Blank() const { return blank_; }
  const SymbolTable &Symbols() const { return symbols_; }
  const std::vector<double> &Data() const { return log_probs_; }

  /// Throws InputError unless T >= 1, K >= 2 and every row is a
  /// distribution within kRowTolerance.
  void Validate() const;

  /// Header of tab-separated label names, then T rows of K tab-separated
  /// natural-log probabilities. Rows are validated.
  static PosteriorMatrix Read(std::istream &is, const std::string &source);
  static PosteriorMatrix ReadFile(const std::string &path);
  void Write(std::ostream &os) const;

 private:
  void Init(const std::vector<std::string> &label_names,
            std::vector<double> log_probs);
  std::string RowError(int t) const;  // "" when row t is a distribution

  SymbolTable symbols_;
  std::vector<double> log_probs_;
  int num_frames_ = 0;
  int num_labels_ = 0;
  Label blank_ = kNoLabel;
};

/// Chain acceptor with T + 1 states; state t has one arc per label to
/// state t + 1, weighted -log p(k | t). Arcs of probability zero are not
/// materialized. State T is final with weight One().
Wfst BuildConfusionNetwork(const PosteriorMatrix &posteriors);

/// Transducer from frame-label strings to collapsed CTC strings: blank
/// emits epsilon, the first label of a run emits itself and repeats emit
/// epsilon. State 0 is the start/post-blank state; every other state
/// remembers the last real label. All states are final; weights are One().
Wfst BuildBlankRemover(const SymbolTable &symbols, Label blank);

/// Optimize(ProjectOutput(Compose(S, B))): a deterministic, minimal,
/// epsilon-free log-semiring acceptor over collapsed label sequences, in
/// the posterior matrix's label ids.
Wfst CtcLattice(const PosteriorMatrix &posteriors,
                double prune_beam = kDefaultPruneBeam);

}  // namespace latfuse

#endif  // LATFUSE_CTC_LATTICE_H_
