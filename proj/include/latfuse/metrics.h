// latfuse/metrics.h

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

#ifndef LATFUSE_METRICS_H_
#define LATFUSE_METRICS_H_

#include <string>
#include <string_view>
#include <vector>

#include "latfuse/pa-token.h"

namespace latfuse {

struct AlignmentResult {
  int substitutions = 0;
  int insertions = 0;
  int deletions = 0;
  int ref_len = 0;

  int Errors() const { return substitutions + insertions + deletions; }
  /// (S + I + D) / ref_len; may exceed 1.
  double ErrorRate() const {
    return ref_len == 0 ? 0.0 : static_cast<double>(Errors()) / ref_len;
  }
};

/// Unit-cost Levenshtein alignment. On ties the backtrace prefers
/// match/substitution, then deletion, then insertion.
AlignmentResult Align(const std::vector<std::string> &ref,
                      const std::vector<std::string> &hyp);

/// Mora-label error rate. With count_accent = false the accent marks are
/// stripped from both sides before aligning. Throws on an empty reference.
AlignmentResult Mler(const std::vector<MoraToken> &ref,
                     const std::vector<MoraToken> &hyp, bool count_accent);

/// Character error rate over NFKC code points. Throws on an empty reference.
AlignmentResult Cer(std::string_view ref, std::string_view hyp);

/// Corpus-level micro average: sum of errors over sum of reference lengths.
double CorpusAggregate(const std::vector<AlignmentResult> &results);

}  // namespace latfuse

#endif  // LATFUSE_METRICS_H_
