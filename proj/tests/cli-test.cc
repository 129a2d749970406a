// tests/cli-test.cc

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

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "latfuse/ctc-lattice.h"
#include "latfuse/f0-class.h"
#include "latfuse/fst-io.h"
#include "latfuse/fst-ops.h"
#include "test-util.h"

namespace fs = std::filesystem;
using namespace latfuse;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the CLI with `args` (already shell-quoted), capturing stdout.
Run Cli(const std::string &args) {
  const std::string cmd = std::string(LATFUSE_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE *pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string Slurp(const fs::path &p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void Spit(const fs::path &p, const std::string &text) {
  std::ofstream os(p, std::ios::binary);
  os << text;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("latfuse-cli-test-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string &name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(Cli("--help").status == 0);
  CHECK(Cli("").status == 2);
  CHECK(Cli("decode --bogus").status == 2);
  CHECK(Cli("decode").status == 2);
}

TEST_CASE("gen-fixture") {
  TempDir tmp;
  Run a = Cli("gen-fixture --kind posteriors --seed 1 --frames 3 --labels 3");
  Run b = Cli("gen-fixture --kind posteriors --seed 1 --frames 3 --labels 3");
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != Cli("gen-fixture --kind posteriors --seed 2 --frames 3 --labels 3").out);
  std::stringstream ss(a.out);
  PosteriorMatrix m = PosteriorMatrix::Read(ss, "gen");
  CHECK(m.NumFrames() == 3);
  CHECK(m.NumLabels() == 3);
  for (int t = 0; t < 3; ++t) {
    double sum = 0.0;
    for (int k = 0; k < 3; ++k) sum += std::exp(m.LogProb(t, k));
    CHECK(std::fabs(sum - 1.0) < 1e-6);
  }
  // Generated posteriors pass the frame-path oracle end to end.
  Run g = Cli("gen-fixture --kind posteriors --seed 5 --frames 4 --labels 4 --out " +
              (tmp / "g.post"));
  REQUIRE(g.status == 0);
  PosteriorMatrix gm = PosteriorMatrix::ReadFile(tmp / "g.post");
  CHECK(testing::MaxCostDiff(testing::EnumeratePaths(CtcLattice(gm, kInfinity)),
                             testing::BruteForceCtc(gm)) < 1e-9);

  Run d1 = Cli("gen-fixture --kind dictionary --seed 3 --entries 20");
  CHECK(d1.status == 0);
  CHECK(d1.out == Cli("gen-fixture --kind dictionary --seed 3 --entries 20").out);
  Run t1 = Cli("gen-fixture --kind track --seed 3 --samples 50");
  CHECK(t1.status == 0);
  CHECK(t1.out.rfind("hop=", 0) == 0);
  CHECK(Cli("gen-fixture --kind nothing").status == 2);
}

TEST_CASE("decode") {
  TempDir tmp;
  REQUIRE(Cli("gen-fixture --kind homophone --out " + tmp.path.string()).status == 0);
  const std::string lex = "--lexicon " + (tmp / "lexicon.tsv");
  const std::string pa = "--pa-posteriors " + (tmp / "pa.post");
  const std::string tt = "--tt-posteriors " + (tmp / "tt.post");

  SUBCASE("single utterance modes") {
    CHECK(Cli("decode --mode pa-only " + pa).out == "ハチ\n");
    Run f = Cli("decode --mode fuse " + pa + " " + tt + " " + lex);
    CHECK(f.status == 0);
    CHECK(f.out == "ハシ\n");
    CHECK(Cli("decode --mode cond " + pa + " " + tt + " " + lex).out == "ハシ\n");
    Spit(tmp / "text.txt", "端\n");
    CHECK(Cli("decode --mode cond " + pa + " --tt-text " + (tmp / "text.txt") + " " + lex)
              .out == "ハシ\n");
  }
  SUBCASE("shipped lexicon") {
    const std::string small = std::string("--lexicon ") + LATFUSE_DATA_DIR + "/lexicon-small.tsv";
    CHECK(Cli("decode --mode fuse " + pa + " " + tt + " " + small).out == "ハシ\n");
    CHECK(Cli("decode --mode cond " + pa + " " + tt + " " + small).out == "ハシ\n");
  }
  SUBCASE("one-hot pa-only") {
    Spit(tmp / "onehot.post",
         "ア\tイ\t<blank>\n0\t-inf\t-inf\n-inf\t-inf\t0\n-inf\t0\t-inf\n");
    Run r = Cli("decode --mode pa-only --pa-posteriors " + (tmp / "onehot.post"));
    CHECK(r.status == 0);
    CHECK(r.out == "アイ\n");
  }
  SUBCASE("manifest and failures") {
    Run ok = Cli("decode --mode fuse --manifest " + (tmp / "homophone.tsv") + " " + lex);
    CHECK(ok.status == 0);
    CHECK(ok.out == "hashi\tハシ\n");
    Run oov = Cli("decode --mode cond --manifest " + (tmp / "homophone-oov.tsv") + " " + lex);
    CHECK(oov.status == 1);
    Run kept = Cli("decode --mode cond --keep-going --manifest " +
                   (tmp / "homophone-oov.tsv") + " " + lex);
    CHECK(kept.status == 0);
    CHECK(kept.out == "hashi-oov\t\n");
    Run fb = Cli("decode --mode fuse --manifest " + (tmp / "homophone-oov.tsv") + " " + lex);
    CHECK(fb.status == 0);
    CHECK(fb.out == "hashi-oov\tハチ\n");
  }
  SUBCASE("input errors exit 2") {
    Spit(tmp / "bad.post", "ア\t<blank>\n-0.1\t-0.1\n");
    CHECK(Cli("decode --mode pa-only --pa-posteriors " + (tmp / "bad.post")).status == 2);
    CHECK(Cli("decode --mode pa-only --pa-posteriors " + (tmp / "missing.post")).status == 2);
    CHECK(Cli("decode --mode fuse " + pa + " " + tt).status == 2);
    CHECK(Cli("decode --mode fuse --mix 1.5 " + pa + " " + tt + " " + lex).status == 2);
    CHECK(Cli("decode --mode nope " + pa).status == 2);
  }
  SUBCASE("dump lattices") {
    Run r = Cli("decode --mode fuse " + pa + " " + tt + " " + lex + " --dump-lattice " +
                (tmp / "dump"));
    REQUIRE(r.status == 0);
    for (const char *f : {"S_P.fst", "L_P.fst", "L_T.fst", "L_T2P_raw.fst", "L_T2P.fst",
                          "fused.fst", "pa.syms", "tt.syms"})
      CHECK(fs::exists(tmp.path / "dump" / "utt" / f));
    Wfst fused = ReadAttFile(tmp / "dump/utt/fused.fst");
    // The fixture's 1e-9 floors fall outside the beam.
    CHECK(std::fabs(ShortestDistance(fused)) < 1e-6);
  }
}

TEST_CASE("parallel decode keeps input order") {
  TempDir tmp;
  std::string manifest;
  for (int i = 0; i < 24; ++i) {
    const std::string name = "u" + std::to_string(i) + ".post";
    REQUIRE(Cli("gen-fixture --kind posteriors --seed " + std::to_string(100 + i) +
                " --frames 6 --labels 5 --out " + (tmp / name))
                .status == 0);
    manifest += "u" + std::to_string(i) + "\t" + name + "\n";
  }
  Spit(tmp / "m.tsv", manifest);
  Run a = Cli("decode --mode pa-only --jobs 1 --manifest " + (tmp / "m.tsv"));
  Run b = Cli("decode --mode pa-only --jobs 8 --manifest " + (tmp / "m.tsv"));
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("u0\t", 0) == 0);
}

TEST_CASE("score") {
  TempDir tmp;
  Spit(tmp / "ref.txt", "カキ'\nア\n");
  Spit(tmp / "hyp.txt", "カキ\nアイ\n");
  Run r = Cli("score --metric mler --ref " + (tmp / "ref.txt") + " --hyp " + (tmp / "hyp.txt"));
  CHECK(r.status == 0);
  CHECK(r.out ==
        "utt\tsub\tins\tdel\tref_len\terror_rate\n"
        "1\t1\t0\t0\t2\t0.5000\n"
        "2\t0\t1\t0\t1\t1.0000\n"
        "TOTAL\t1\t1\t0\t3\t0.6667\n");
  Run s = Cli("score --metric mler-noaccent --ref " + (tmp / "ref.txt") + " --hyp " +
              (tmp / "hyp.txt"));
  CHECK(s.out.find("TOTAL\t0\t1\t0\t3\t0.3333") != std::string::npos);
  Spit(tmp / "cref.txt", "端だ\n");
  Spit(tmp / "chyp.txt", "箸だ\n");
  Run c = Cli("score --metric cer --ref " + (tmp / "cref.txt") + " --hyp " + (tmp / "chyp.txt"));
  CHECK(c.out.find("TOTAL\t1\t0\t0\t2\t0.5000") != std::string::npos);
  Spit(tmp / "short.txt", "ア\n");
  CHECK(Cli("score --ref " + (tmp / "ref.txt") + " --hyp " + (tmp / "short.txt")).status == 2);
}

TEST_CASE("f0-label") {
  TempDir tmp;
  std::ofstream os(tmp / "t.f0");
  testing::ClassFixture(6).Write(os);
  os.close();
  Run r = Cli("f0-label --frame-rate 10 --track " + (tmp / "t.f0"));
  CHECK(r.status == 0);
  // Frames at 0.0 and 0.1 s; the second is the constructed one.
  CHECK(r.out == "3\n6\n");
  Spit(tmp / "bad.f0", "100\n");
  CHECK(Cli("f0-label --track " + (tmp / "bad.f0")).status == 2);
}

TEST_CASE("dump-lattice") {
  TempDir tmp;
  REQUIRE(Cli("gen-fixture --kind posteriors --seed 9 --frames 3 --labels 3 --out " +
              (tmp / "p.post"))
              .status == 0);
  Run r = Cli("dump-lattice --posteriors " + (tmp / "p.post") + " --out " + (tmp / "d"));
  CHECK(r.status == 0);
  for (const char *f : {"S.fst", "B.fst", "L.fst", "labels.syms"})
    CHECK(fs::exists(tmp.path / "d" / f));
}
