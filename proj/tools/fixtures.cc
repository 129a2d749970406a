// tools/fixtures.cc

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

#include "fixtures.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "latfuse/error.h"

namespace latfuse::fixtures {

namespace {

const std::vector<std::string> kMorae = {
    "ア", "イ", "ウ", "エ", "オ", "カ", "キ'", "ク", "ケ", "コ",
    "サ", "シ", "ス'", "セ", "ソ", "タ", "チ", "ツ", "テ'", "ト",
    "ナ", "ニ", "ヌ", "ネ", "ノ", "ハ", "ヒ'", "フ", "ヘ", "ホ",
    "キュ", "シャ", "チョ'", "ン", "ッ",
};

const std::vector<std::string> kSurfaceChars = {
    "端", "箸", "橋", "雨", "飴", "花", "鼻", "山", "川", "空",
    "海", "日", "本", "語", "人", "か", "な", "の", "た", "し",
};

void WriteFile(const std::filesystem::path &path, const std::string &text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write '" + path.string() + "'");
  os << text;
}

std::string Serialize(const PosteriorMatrix &m) {
  std::ostringstream os;
  m.Write(os);
  return os.str();
}

// Rows given as unnormalized probabilities over `labels`.
PosteriorMatrix FromProbs(const std::vector<std::string> &labels,
                          const std::vector<std::vector<double>> &rows) {
  std::vector<double> data;
  for (const auto &row : rows) {
    double total = 0.0;
    for (double p : row) total += p;
    for (double p : row) data.push_back(std::log(p / total));
  }
  return PosteriorMatrix(labels, std::move(data));
}

}  // namespace

PosteriorMatrix RandomPosteriors(Rng &rng, int frames, int labels) {
  if (frames < 1 || labels < 2 || labels > static_cast<int>(kMorae.size()) + 1)
    throw InputError("gen-fixture: need frames >= 1 and 2 <= labels <= " +
                     std::to_string(kMorae.size() + 1));
  std::vector<std::string> names(kMorae.begin(), kMorae.begin() + labels - 1);
  names.emplace_back("<blank>");
  // Spiky rows like real CTC output: each frame has one dominant label
  // (blank half of the time) over low-level noise.
  std::vector<std::vector<double>> rows(frames, std::vector<double>(labels));
  for (auto &row : rows) {
    const int dominant = rng.Uniform() < 0.5
                             ? labels - 1
                             : static_cast<int>(rng.Below(labels - 1));
    for (int k = 0; k < labels; ++k)
      row[k] = std::exp(3.0 * rng.Uniform() + (k == dominant ? 8.0 : 0.0));
  }
  return FromProbs(names, rows);
}

std::string RandomDictionary(Rng &rng, int entries) {
  std::ostringstream os;
  os << "# generated dictionary\n";
  for (int i = 0; i < entries; ++i) {
    int surface_len = 1 + static_cast<int>(rng.Below(2));
    int pron_len = 1 + static_cast<int>(rng.Below(3));
    for (int c = 0; c < surface_len; ++c)
      os << kSurfaceChars[rng.Below(kSurfaceChars.size())];
    os << '\t';
    for (int m = 0; m < pron_len; ++m) {
      // ン and ッ are fine anywhere except that neither may be followed by
      // ー, which the generator never emits.
      os << (m ? " " : "") << kMorae[rng.Below(kMorae.size())];
    }
    os << '\n';
  }
  return os.str();
}

F0Track RandomTrack(Rng &rng, int samples, double hop) {
  F0Track track;
  track.hop = hop;
  double f0 = 80.0 + 150.0 * rng.Uniform();
  bool voiced = rng.Uniform() < 0.5;
  for (int i = 0; i < samples; ++i) {
    if (rng.Uniform() < 0.08) voiced = !voiced;
    f0 *= std::exp(0.05 * (rng.Uniform() - 0.5));
    f0 = std::fmin(std::fmax(f0, 50.0), 500.0);
    track.f0.push_back(voiced ? f0 : 0.0);
  }
  return track;
}

void WriteHomophoneFixture(const std::string &dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path root(dir);

  // Frame 0 is ハ, frame 1 splits between シ and チ.
  const std::vector<std::string> pa_labels = {"ハ", "シ", "チ", "<blank>"};
  WriteFile(root / "pa.post",
            Serialize(FromProbs(pa_labels, {{1.0, 1e-9, 1e-9, 1e-9},
                                            {1e-9, 0.45, 0.55, 1e-9}})));

  const std::vector<std::string> tt_labels = {"端", "箸", "<blank>"};
  WriteFile(root / "tt.post",
            Serialize(FromProbs(tt_labels, {{0.98, 0.01, 0.01}, {0.01, 0.01, 0.98}})));
  WriteFile(root / "tt-oov.post",
            Serialize(FromProbs({"箸", "<blank>"}, {{0.98, 0.02}, {0.02, 0.98}})));

  WriteFile(root / "lexicon.tsv", "# surface\tpronunciation\n端\tハ シ\n");
  WriteFile(root / "homophone.tsv", "hashi\tpa.post\ttt.post\n");
  WriteFile(root / "homophone-oov.tsv", "hashi-oov\tpa.post\ttt-oov.post\n");
}

}  // namespace latfuse::fixtures
