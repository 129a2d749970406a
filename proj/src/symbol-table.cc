// src/symbol-table.cc

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

#include "latfuse/symbol-table.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include "latfuse/error.h"

namespace latfuse {

SymbolTable::SymbolTable() { AddSymbol(kEpsilonSymbol, kEpsilon); }

Label SymbolTable::AddSymbol(std::string_view symbol) {
  Label id = Find(symbol);
  if (id != kNoLabel) return id;
  id = next_id_;
  AddSymbol(symbol, id);
  return id;
}

void SymbolTable::AddSymbol(std::string_view symbol, Label id) {
  if (id < 0) throw Error("negative symbol id for '" + std::string(symbol) + "'");
  if (symbol.empty()) throw Error("empty symbol");
  auto it = by_symbol_.find(std::string(symbol));
  if (it != by_symbol_.end()) {
    if (it->second == id) return;
    throw Error("symbol '" + std::string(symbol) + "' already bound to id " +
                std::to_string(it->second) + ", cannot rebind to " +
                std::to_string(id));
  }
  auto jt = by_id_.find(id);
  if (jt != by_id_.end())
    throw Error("id " + std::to_string(id) + " already bound to '" + jt->second +
                "', cannot rebind to '" + std::string(symbol) + "'");
  by_symbol_.emplace(symbol, id);
  by_id_.emplace(id, symbol);
  next_id_ = std::max(next_id_, id + 1);
}

Label SymbolTable::Find(std::string_view symbol) const {
  auto it = by_symbol_.find(std::string(symbol));
  return it == by_symbol_.end() ? kNoLabel : it->second;
}

const std::string &SymbolTable::Symbol(Label id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw Error("unknown symbol id " + std::to_string(id));
  return it->second;
}

bool SymbolTable::HasId(Label id) const { return by_id_.count(id) != 0; }

std::vector<Label> SymbolTable::Ids() const {
  std::vector<Label> ids;
  ids.reserve(by_id_.size());
  for (const auto &[id, sym] : by_id_) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

void SymbolTable::Write(std::ostream &os) const {
  for (Label id : Ids()) os << by_id_.at(id) << '\t' << id << '\n';
}

SymbolTable SymbolTable::Read(std::istream &is, const std::string &source) {
  SymbolTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    size_t tab = line.rfind('\t');
    if (tab == std::string::npos || tab == 0)
      throw InputError(source, lineno, "expected 'symbol<TAB>id'");
    std::string sym = line.substr(0, tab);
    Label id = 0;
    const char *first = line.data() + tab + 1, *last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, id);
    if (ec != std::errc() || ptr != last || id < 0)
      throw InputError(source, lineno, "bad symbol id");
    if (id == kEpsilon && sym != kEpsilonSymbol)
      throw InputError(source, lineno, "id 0 is reserved for <eps>");
    try {
      table.AddSymbol(sym, id);
    } catch (const Error &e) {
      throw InputError(source, lineno, e.what());
    }
  }
  return table;
}

}  // namespace latfuse
