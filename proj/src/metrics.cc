// src/metrics.cc

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

#include "latfuse/metrics.h"

#include <algorithm>

#include "latfuse/error.h"

namespace latfuse {

AlignmentResult Align(const std::vector<std::string> &ref,
                      const std::vector<std::string> &hyp) {
  const size_t n = ref.size(), m = hyp.size();
  // cost[i][j]: edit distance between ref[0, i) and hyp[0, j).
  std::vector<std::vector<int>> cost(n + 1, std::vector<int>(m + 1, 0));
  for (size_t i = 0; i <= n; ++i) cost[i][0] = static_cast<int>(i);
  for (size_t j = 0; j <= m; ++j) cost[0][j] = static_cast<int>(j);
  for (size_t i = 1; i <= n; ++i)
    for (size_t j = 1; j <= m; ++j) {
      int diag = cost[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      cost[i][j] = std::min({diag, cost[i - 1][j] + 1, cost[i][j - 1] + 1});
    }

  AlignmentResult r;
  r.ref_len = static_cast<int>(n);
  size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      int sub = ref[i - 1] == hyp[j - 1] ? 0 : 1;
      if (cost[i][j] == cost[i - 1][j - 1] + sub) {
        r.substitutions += sub;
        --i, --j;
        continue;
      }
    }
    if (i > 0 && cost[i][j] == cost[i - 1][j] + 1) {
      ++r.deletions;
      --i;
    } else {
      ++r.insertions;
      --j;
    }
  }
  return r;
}

AlignmentResult Mler(const std::vector<MoraToken> &ref,
                     const std::vector<MoraToken> &hyp, bool count_accent) {
  if (ref.empty()) throw Error("MLER: empty reference");
  auto render = [count_accent](const std::vector<MoraToken> &tokens) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto &t : tokens)
      out.push_back(count_accent ? t.Render() : t.kana);
    return out;
  };
  return Align(render(ref), render(hyp));
}

AlignmentResult Cer(std::string_view ref, std::string_view hyp) {
  auto r = TokenizeTt(ref);
  if (r.empty()) throw Error("CER: empty reference");
  return Align(r, TokenizeTt(hyp));
}

double CorpusAggregate(const std::vector<AlignmentResult> &results) {
  if (results.empty()) throw Error("CorpusAggregate: no results");
  long errors = 0, ref_len = 0;
  for (const auto &r : results) {
    errors += r.Errors();
    ref_len += r.ref_len;
  }
  if (ref_len == 0) throw Error("CorpusAggregate: total reference length is 0");
  return static_cast<double>(errors) / static_cast<double>(ref_len);
}

}  // namespace latfuse
