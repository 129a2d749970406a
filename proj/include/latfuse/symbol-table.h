// latfuse/symbol-table.h

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

#ifndef LATFUSE_SYMBOL_TABLE_H_
#define LATFUSE_SYMBOL_TABLE_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "latfuse/wfst.h"

namespace latfuse {

inline constexpr std::string_view kEpsilonSymbol = "<eps>";
inline constexpr std::string_view kBlankSymbol = "<blank>";
inline constexpr std::string_view kUnknownSymbol = "<unk>";

/// Bidirectional token <-> label map. Id 0 is always bound to "<eps>".
/// Ids need not be dense when read from a file, but tables built with
/// AddSymbol() are.
class SymbolTable {
 public:
  SymbolTable();

  /// Returns the existing id if `symbol` is known, else assigns the next id.
  Label AddSymbol(std::string_view symbol);
  /// Binds `symbol` to `id`. Rebinding either side to something else throws.
  void AddSymbol(std::string_view symbol, Label id);

  Label Find(std::string_view symbol) const;  // kNoLabel when absent
  bool Contains(std::string_view symbol) const {
    return Find(symbol) != kNoLabel;
  }
  const std::string &Symbol(Label id) const;  // throws when absent
  bool HasId(Label id) const;

  /// Number of bound symbols, including <eps>.
  size_t Size() const { return by_symbol_.size(); }
  Label AvailableKey() const { return next_id_; }

  /// All ids in increasing order.
  std::vector<Label> Ids() const;

  void Write(std::ostream &os) const;
  static SymbolTable Read(std::istream &is, const std::string &source);

  bool operator==(const SymbolTable &other) const {
    return by_symbol_ == other.by_symbol_;
  }

 private:
  std::unordered_map<std::string, Label> by_symbol_;
  std::unordered_map<Label, std::string> by_id_;
  Label next_id_ = 1;
};

}  // namespace latfuse

#endif  // LATFUSE_SYMBOL_TABLE_H_
