// tests/acceptance-test.cc

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

// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Exits non-zero when any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "latfuse/ctc-lattice.h"
#include "latfuse/error.h"
#include "latfuse/f0-class.h"
#include "latfuse/fst-ops.h"
#include "latfuse/fusion.h"
#include "latfuse/metrics.h"
#include "latfuse/pa-token.h"
#include "test-util.h"

namespace fs = std::filesystem;
using namespace latfuse;
using namespace latfuse::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void Fail(const std::string &why) {
    if (pass) detail = why;
    pass = false;
  }
  void Expect(bool ok, const std::string &why) {
    if (!ok) Fail(why);
  }
};

std::string Num(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

Outcome CtcOracle() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  TestRng rng(1001);
  double worst = 0.0, worst_mass = 0.0;
  for (int i = 0; i < 200; ++i) {
    PosteriorMatrix m = RandomPosteriorMatrix(rng, rng.Int(1, 6), rng.Int(2, 4));
    Wfst l = CtcLattice(m, kInfinity);
    worst = std::max(worst, MaxCostDiff(EnumeratePaths(l), BruteForceCtc(m)));
    worst_mass = std::max(worst_mass, std::fabs(ShortestDistance(l)));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.Expect(worst <= 1e-9, "max string cost error " + Num(worst));
  o.Expect(worst_mass <= 1e-9, "max total-mass cost " + Num(worst_mass));
  o.Expect(secs < 10.0, "took " + Num(secs) + " s");
  if (o.pass)
    o.detail = "max err " + Num(worst) + ", mass err " + Num(worst_mass) + ", " +
               Num(secs) + " s";
  return o;
}

Outcome OptPreservation() {
  Outcome o;
  TestRng rng(1002);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    Wfst a = RandomAcyclic(rng, 8, 3, 0.3);
    WeightMap ref = EnumeratePaths(a);
    Wfst d = Determinize(RmEpsilon(Prune(a, kInfinity)));
    Wfst m = Minimize(d);
    worst = std::max(worst, MaxCostDiff(EnumeratePaths(m), ref));
    worst = std::max(worst, MaxCostDiff(EnumeratePaths(Optimize(a, kInfinity)), ref));
    o.Expect(m.IsDeterministic(), "minimize output not deterministic");
    o.Expect(m.NumStates() <= d.NumStates(), "minimize grew the automaton");
  }
  o.Expect(worst <= 1e-9, "max cost error " + Num(worst));
  if (o.pass) o.detail = "max err " + Num(worst);
  return o;
}

Outcome FusionAverage() {
  Outcome o;
  TestRng rng(1003);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Wfst a = RandomAcyclic(rng, 6, 3, 0.2), b = RandomAcyclic(rng, 6, 3, 0.2);
    WeightMap ma = EnumeratePaths(a), mb = EnumeratePaths(b);
    Wfst u = Union(a, b, 0.5);
    const double mass = std::exp(-ShortestDistance(u));
    const double expect = 0.5 * TotalProb(ma) + 0.5 * TotalProb(mb);
    worst = std::max(worst, std::fabs(mass - expect) / std::max(expect, 1e-300));
    // Per-string mixture, on the union and on the optimized fused lattice.
    WeightMap mix;
    for (const auto &src : {ma, mb})
      for (const auto &[labels, cost] : src) mix[labels] += 0.5 * std::exp(-cost);
    for (const Wfst &f : {u, Fuse(a, b, 0.5, kInfinity)}) {
      WeightMap got = EnumeratePaths(f);
      o.Expect(got.size() == mix.size(), "string sets differ");
      for (const auto &[labels, p] : mix) {
        auto it = got.find(labels);
        if (it == got.end()) continue;
        worst = std::max(worst, std::fabs(std::exp(-it->second) - p) / p);
      }
    }
  }
  o.Expect(worst <= 1e-9, "max relative error " + Num(worst));
  if (o.pass) o.detail = "max rel err " + Num(worst);
  return o;
}

PosteriorMatrix FromProbs(const std::vector<std::string> &names,
                          const std::vector<std::vector<double>> &rows) {
  std::vector<double> data;
  for (const auto &row : rows) {
    double sum = 0.0;
    for (double p : row) sum += p;
    for (double p : row) data.push_back(std::log(p / sum));
  }
  return PosteriorMatrix(names, data);
}

Outcome Homophone() {
  Outcome o;
  PosteriorMatrix pa = FromProbs({"ハ", "シ", "チ", "<blank>"},
                                 {{1.0, 1e-9, 1e-9, 1e-9}, {1e-9, 0.45, 0.55, 1e-9}});
  PosteriorMatrix tt = FromProbs({"端", "<blank>"}, {{0.98, 0.02}, {0.02, 0.98}});
  PosteriorMatrix oov = FromProbs({"箸", "<blank>"}, {{0.98, 0.02}, {0.02, 0.98}});
  LexiconFst d = BuildLexicon({{{"端"}, {TokenizePa("ハシ")}}});
  DecodeConfig cfg;
  const auto hashi = TokenizePa("ハシ"), hachi = TokenizePa("ハチ");
  const auto pa_only = DecodePaOnly(pa, cfg);
  o.Expect(pa_only == hachi, "pa-only gave " + RenderPa(pa_only));
  o.Expect(DecodeMtLf(pa, tt, d, cfg) == hashi, "fuse did not give ハシ");
  o.Expect(DecodeExplicitConditioning(pa, tt, d, cfg) == hashi, "cond did not give ハシ");
  bool cond_failed = false;
  try {
    DecodeExplicitConditioning(pa, oov, d, cfg);
  } catch (const Error &) {
    cond_failed = true;
  }
  o.Expect(cond_failed, "cond succeeded on the OOV variant");
  o.Expect(DecodeMtLf(pa, oov, d, cfg) == pa_only, "fuse OOV differs from pa-only");
  if (o.pass) o.detail = "fuse/cond ハシ, pa-only ハチ, OOV: cond fails, fuse ハチ";
  return o;
}

Outcome NormalizeLocalMass() {
  Outcome o;
  TestRng rng(1005);
  double worst = 0.0;
  int lattices = 0;
  while (lattices < 100) {
    Wfst a = Connect(RandomAcyclic(rng, 8, 3, 0.2));
    if (a.Empty()) continue;
    ++lattices;
    Wfst n = NormalizeLocal(a);
    for (StateId s = 0; s < n.NumStates(); ++s) {
      long double mass = std::exp(-static_cast<long double>(n.Final(s)));
      for (const Arc &arc : n.Arcs(s)) mass += std::exp(-static_cast<long double>(arc.weight));
      worst = std::max(worst, static_cast<double>(std::fabs(mass - 1.0L)));
    }
  }
  o.Expect(worst <= 1e-12, "max |mass - 1| " + Num(worst));
  if (o.pass) o.detail = "max |mass - 1| " + Num(worst);
  return o;
}

Outcome F0Classes() {
  Outcome o;
  std::set<int> ids;
  for (int id = 0; id < kNumF0Classes; ++id) {
    const int got = ClassifyFrame(ClassFixture(id), 0.1, 0.04).id;
    o.Expect(got == id, "fixture " + std::to_string(id) + " gave " + std::to_string(got));
    ids.insert(got);
  }
  o.Expect(ids.size() == 10, "only " + std::to_string(ids.size()) + " ids reached");
  TestRng rng(1006);
  for (int i = 0; i < 100; ++i) {
    F0Track t = RandomF0Track(rng, 200), doubled = t;
    for (double &v : doubled.f0) v *= 2.0;
    o.Expect(ClassifyUtterance(t) == ClassifyUtterance(doubled),
             "ids changed under f0 x 2");
  }
  AnalysisWindows w = WindowSegments(0.1, 0.04);
  o.Expect(w.left == Interval{0.04, 0.08} && w.center == Interval{0.08, 0.12} &&
               w.right == Interval{0.12, 0.16},
           "window example mismatch");
  if (o.pass) o.detail = "10/10 ids, 100 scaled tracks, exact windows";
  return o;
}

Outcome Tokenizer() {
  Outcome o;
  o.Expect(TokenizePa("キュー") == std::vector<MoraToken>{{"キュ", false}, {"ウ", false}},
           "キュー");
  o.Expect(TokenizePa("キュ'ー") == std::vector<MoraToken>{{"キュ", true}, {"ウ", false}},
           "キュ'ー");
  TestRng rng(1007);
  for (int i = 0; i < 1000; ++i) {
    auto seq = RandomMorae(rng, 12);
    o.Expect(TokenizePa(RenderPa(seq)) == seq, "round trip failed on " + RenderPa(seq));
    // Same sequence with long-vowel marks sprinkled in after vowel morae.
    std::string text;
    for (const auto &t : seq) {
      text += t.Render();
      if (!VowelOf(t.kana).empty() && rng.Bernoulli(0.3)) text += "ー";
    }
    for (const auto &t : TokenizePa(text))
      o.Expect(t.Render().find("ー") == std::string::npos, "ー in output of " + text);
  }
  if (o.pass) o.detail = "examples, 1000 round trips, no ー";
  return o;
}

Outcome Metrics() {
  Outcome o;
  ExhaustiveAligner oracle;
  std::vector<std::vector<int>> seqs = {{}};
  for (size_t i = 0; i < seqs.size(); ++i)
    if (seqs[i].size() < 6)
      for (int x = 0; x < 3; ++x) {
        auto s = seqs[i];
        s.push_back(x);
        seqs.push_back(s);
      }
  auto strings = [](const std::vector<int> &v) {
    std::vector<std::string> out;
    for (int x : v) out.emplace_back(1, static_cast<char>('a' + x));
    return out;
  };
  std::vector<std::vector<std::string>> as_strings;
  for (const auto &s : seqs) as_strings.push_back(strings(s));
  long pairs = 0;
  for (size_t i = 0; i < seqs.size() && o.pass; ++i)
    for (size_t j = 0; j < seqs.size(); ++j) {
      ++pairs;
      AlignmentResult r = Align(as_strings[i], as_strings[j]);
      const int expect = oracle.Distance(seqs[i], seqs[j]);
      if (r.Errors() != expect ||
          r.insertions - r.deletions != static_cast<int>(seqs[j].size() - seqs[i].size())) {
        o.Fail("pair " + std::to_string(i) + "," + std::to_string(j));
        break;
      }
    }
  TestRng rng(1008);
  int compared = 0;
  while (compared < 500) {
    auto ref = RandomMorae(rng, 10), hyp = RandomMorae(rng, 10);
    if (ref.empty()) continue;
    ++compared;
    o.Expect(Mler(ref, hyp, false).ErrorRate() <= Mler(ref, hyp, true).ErrorRate(),
             "stripped MLER exceeded accented MLER");
  }
  if (o.pass) o.detail = std::to_string(pairs) + " pairs, 500 MLER pairs";
  return o;
}

int Shell(const std::string &cmd) {
  int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string Slurp(const fs::path &p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Outcome Determinism() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() /
                       ("latfuse-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string bin = LATFUSE_BIN;
  std::string manifest;
  bool gen_ok = Shell(bin + " gen-fixture --kind homophone --out " + dir.string()) == 0;
  gen_ok = gen_ok && Shell(bin + " gen-fixture --kind dictionary --seed 7 --entries 100 --out " +
                           (dir / "dict.tsv").string()) == 0;
  for (int i = 0; i < 40 && gen_ok; ++i) {
    const std::string id = "r" + std::to_string(i);
    gen_ok = Shell(bin + " gen-fixture --kind posteriors --seed " + std::to_string(i) +
                   " --frames 8 --labels 10 --out " + (dir / (id + ".pa")).string()) == 0 &&
             Shell(bin + " gen-fixture --kind posteriors --seed " + std::to_string(500 + i) +
                   " --frames 3 --labels 4 --out " + (dir / (id + ".tt")).string()) == 0;
    manifest += id + "\t" + id + ".pa\t" + id + ".tt\n";
  }
  o.Expect(gen_ok, "fixture generation failed");
  {
    std::ofstream os(dir / "m.tsv");
    os << manifest;
  }
  for (const char *mode : {"pa-only", "fuse", "cond"}) {
    const std::string base = bin + " decode --keep-going --mode " + mode +
                             " --lexicon " + (dir / "dict.tsv").string() +
                             " --manifest " + (dir / "m.tsv").string();
    const fs::path one = dir / (std::string(mode) + ".1"), eight = dir / (std::string(mode) + ".8");
    o.Expect(Shell(base + " --jobs 1 > " + one.string() + " 2>/dev/null") == 0,
             std::string(mode) + " --jobs 1 failed");
    o.Expect(Shell(base + " --jobs 8 > " + eight.string() + " 2>/dev/null") == 0,
             std::string(mode) + " --jobs 8 failed");
    const std::string a = Slurp(one), b = Slurp(eight);
    o.Expect(!a.empty() && a == b, std::string(mode) + " outputs differ");
  }
  fs::remove_all(dir);
  if (o.pass) o.detail = "40 utterances x 3 modes byte-identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"ctc-oracle-equivalence", CtcOracle},
      {"opt-preservation", OptPreservation},
      {"fusion-average", FusionAverage},
      {"homophone-fixture", Homophone},
      {"normalize-local", NormalizeLocalMass},
      {"f0-classes", F0Classes},
      {"tokenizer", Tokenizer},
      {"metrics", Metrics},
      {"end-to-end-determinism", Determinism},
  };
  int failed = 0;
  for (const auto &[name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception &e) {
      o.Fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    failed += !o.pass;
  }
  std::cout << (failed ? "FAILED " : "OK ") << criteria.size() - failed << "/"
            << criteria.size() << " criteria" << std::endl;
  return failed ? 1 : 0;
}
