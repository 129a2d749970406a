// latfuse/pa-token.h

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

#ifndef LATFUSE_PA_TOKEN_H_
#define LATFUSE_PA_TOKEN_H_

#include <string>
#include <string_view>
#include <vector>

#include "latfuse/symbol-table.h"

namespace latfuse {

/// One katakana mora, optionally carrying the pitch-accent mark. Rendered
/// as the kana followed by an apostrophe when accented, e.g. "キュ'".
struct MoraToken {
  std::string kana;
  bool accented = false;

  std::string Render() const { return accented ? kana + "'" : kana; }
  MoraToken Unaccented() const { return MoraToken{kana, false}; }
  bool operator==(const MoraToken &) const = default;
  auto operator<=>(const MoraToken &) const = default;
};

/// Splits accent-marked katakana into morae.
///
/// A base kana absorbs a directly following small kana (ャュョァィゥェォヮ)
/// into one mora; ッ and ン are morae of their own. An apostrophe marks the
/// preceding mora as accented. The long-vowel mark ー becomes an unaccented
/// copy of the preceding mora's vowel, so "キュ'ー" gives [キュ', ウ].
///
/// Throws latfuse::InputError on non-katakana input (the message carries the
/// code-point position), on a leading ー or apostrophe, on ー after ン or ッ,
/// and on a doubled apostrophe.
std::vector<MoraToken> TokenizePa(std::string_view katakana);

/// Parses a single rendered mora such as "シ'"; throws unless the text is
/// exactly one mora.
MoraToken ParseMora(std::string_view text);

std::string RenderPa(const std::vector<MoraToken> &tokens);

/// Vowel kana (ア, イ, ウ, エ or オ) of a mora, or "" for ン, ッ and anything
/// without a vowel.
std::string VowelOf(std::string_view kana);

/// NFKC normalization (ICU).
std::string NormalizeNfkc(std::string_view text);

/// UTF-8 code points of `text`, each as its own string. Invalid bytes
/// become U+FFFD.
std::vector<std::string> SplitCodePoints(std::string_view text);

/// Character-level text tokens: NFKC, then one token per code point.
std::vector<std::string> TokenizeTt(std::string_view text);

/// Resolves text tokens against `symbols`; unknown tokens map to the id of
/// "<unk>", which must be present in the table.
std::vector<Label> ResolveTt(const std::vector<std::string> &tokens,
                             const SymbolTable &symbols);

}  // namespace latfuse

#endif  // LATFUSE_PA_TOKEN_H_
