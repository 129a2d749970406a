// src/pa-token.cc

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

#include "latfuse/pa-token.h"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <string>
#include <unordered_map>

#include "latfuse/error.h"

namespace latfuse {

namespace {

constexpr char32_t kLongVowelMark = U'ー';
constexpr char32_t kSokuon = U'ッ';
constexpr char32_t kHatsuon = U'ン';

bool IsKatakanaLetter(char32_t c) { return c >= U'ァ' && c <= U'ヺ'; }

bool IsCombiningSmallKana(char32_t c) {
  switch (c) {
    case U'ャ': case U'ュ': case U'ョ': case U'ァ': case U'ィ':
    case U'ゥ': case U'ェ': case U'ォ': case U'ヮ':
      return true;
    default:
      return false;
  }
}

const std::unordered_map<char32_t, char32_t> &VowelTable() {
  static const std::unordered_map<char32_t, char32_t> table = [] {
    std::unordered_map<char32_t, char32_t> t;
    const std::u32string rows[5] = {
        U"アカガサザタダナハバパマヤラワャァヮヵヷ",
        U"イキギシジチヂニヒビピミリヰィヸ",
        U"ウクグスズツヅヌフブプムユルュゥヴ",
        U"エケゲセゼテデネヘベペメレヱェヶヹ",
        U"オコゴソゾトドノホボポモヨロヲョォヺ",
    };
    const char32_t vowels[5] = {U'ア', U'イ', U'ウ', U'エ', U'オ'};
    for (int v = 0; v < 5; ++v)
      for (char32_t c : rows[v]) t[c] = vowels[v];
    return t;
  }();
  return table;
}

std::string EncodeUtf8(char32_t c) {
  char buf[4];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(reinterpret_cast<uint8_t *>(buf), len, 4, static_cast<UChar32>(c), error);
  if (error) return "\xEF\xBF\xBD";
  return std::string(buf, len);
}

std::u32string DecodeUtf8(std::string_view text) {
  std::u32string out;
  const auto *s = reinterpret_cast<const uint8_t *>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c = 0;
    U8_NEXT(s, i, length, c);
    out.push_back(c < 0 ? U'�' : static_cast<char32_t>(c));
  }
  return out;
}

}  // namespace

std::string VowelOf(std::string_view kana) {
  std::u32string cps = DecodeUtf8(kana);
  if (cps.empty()) return "";
  const auto &table = VowelTable();
  auto it = table.find(cps.back());
  return it == table.end() ? "" : EncodeUtf8(it->second);
}

std::vector<MoraToken> TokenizePa(std::string_view katakana) {
  const std::u32string cps = DecodeUtf8(katakana);
  std::vector<MoraToken> out;
  // True while the last mora is a lone base kana taken from the input, so
  // a following small kana still belongs to it.
  bool can_absorb = false;
  // Set right after an apostrophe that closed an absorbing mora: a small
  // kana here would split キ'ュ-style, which is malformed.
  bool accent_split = false;
  for (size_t pos = 0; pos < cps.size(); ++pos) {
    const char32_t c = cps[pos];
    auto fail = [&](const std::string &why) {
      throw InputError("PA tokenizer: " + why + " at code point " +
                       std::to_string(pos) + " in '" + std::string(katakana) + "'");
    };
    if (c == U'\'') {
      if (out.empty()) fail("leading apostrophe");
      if (out.back().accented) fail("doubled apostrophe");
      out.back().accented = true;
      accent_split = can_absorb;
      can_absorb = false;
      continue;
    } else if (c == kLongVowelMark) {
      if (out.empty()) fail("leading long-vowel mark");
      std::string vowel = VowelOf(out.back().kana);
      if (vowel.empty()) fail("long-vowel mark after a mora without a vowel");
      out.push_back(MoraToken{vowel, false});
      can_absorb = false;
    } else if (IsCombiningSmallKana(c) && can_absorb) {
      out.back().kana += EncodeUtf8(c);
      can_absorb = false;
    } else if (IsKatakanaLetter(c)) {
      if (IsCombiningSmallKana(c) && accent_split)
        fail("accent mark inside a mora");
      out.push_back(MoraToken{EncodeUtf8(c), false});
      can_absorb = c != kSokuon && c != kHatsuon && !IsCombiningSmallKana(c);
    } else {
      fail("non-katakana character '" + EncodeUtf8(c) + "'");
    }
    accent_split = false;
  }
  return out;
}

MoraToken ParseMora(std::string_view text) {
  auto tokens = TokenizePa(text);
  if (tokens.size() != 1)
    throw InputError("'" + std::string(text) + "' is not a single mora");
  return tokens.front();
}

std::string RenderPa(const std::vector<MoraToken> &tokens) {
  std::string out;
  for (const MoraToken &t : tokens) out += t.Render();
  return out;
}

std::string NormalizeNfkc(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2 *nfkc = icu::Normalizer2::getNFKCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFKC normalizer unavailable");
  icu::UnicodeString src = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString dst = nfkc->normalize(src, status);
  if (U_FAILURE(status)) throw Error("NFKC normalization failed");
  std::string out;
  dst.toUTF8String(out);
  return out;
}

std::vector<std::string> SplitCodePoints(std::string_view text) {
  std::vector<std::string> out;
  const auto *s = reinterpret_cast<const uint8_t *>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    int32_t begin = i;
    UChar32 c = 0;
    U8_NEXT(s, i, length, c);
    if (c < 0)
      out.emplace_back("\xEF\xBF\xBD");
    else
      out.emplace_back(text.substr(begin, i - begin));
  }
  return out;
}

std::vector<std::string> TokenizeTt(std::string_view text) {
  return SplitCodePoints(NormalizeNfkc(text));
}

std::vector<Label> ResolveTt(const std::vector<std::string> &tokens,
                             const SymbolTable &symbols) {
  const Label unk = symbols.Find(kUnknownSymbol);
  if (unk == kNoLabel) throw Error("ResolveTt: symbol table lacks <unk>");
  std::vector<Label> ids;
  ids.reserve(tokens.size());
  for (const auto &t : tokens) {
    Label id = symbols.Find(t);
    ids.push_back(id == kNoLabel ? unk : id);
  }
  return ids;
}

}  // namespace latfuse
