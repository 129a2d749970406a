// tools/latfuse.cc

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

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "fixtures.h"
#include "latfuse/ctc-lattice.h"
#include "latfuse/error.h"
#include "latfuse/f0-class.h"
#include "latfuse/fst-io.h"
#include "latfuse/fusion.h"
#include "latfuse/lexicon.h"
#include "latfuse/metrics.h"
#include "latfuse/pa-token.h"

namespace fs = std::filesystem;
using namespace latfuse;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDecode = 1;
constexpr int kExitInput = 2;

std::vector<std::string> ReadLines(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::string ReadText(const std::string &path) {
  auto lines = ReadLines(path);
  std::string text;
  for (const auto &l : lines) text += l;
  return text;
}

// ---------------------------------------------------------------- decode

struct Utterance {
  std::string id;
  std::string pa_path;
  std::string tt_path;  // empty for pa-only
};

struct DecodeOptions {
  std::string pa_posteriors, manifest;
  std::string tt_posteriors, tt_text;
  std::string tt_format = "posteriors";
  std::string lexicon;
  std::string mode = "fuse";
  double mix = 0.5;
  double prune = kDefaultPruneBeam;
  std::string dump_dir;
  int jobs = 1;
  bool keep_going = false;
};

struct DecodeResult {
  std::string output;
  int status = kExitOk;
  std::string error;
};

void DumpTrace(const fs::path &dir, const FusionTrace &trace,
               const PosteriorMatrix &y_pa, const LexiconFst *d) {
  fs::create_directories(dir);
  WriteAttFile((dir / "S_P.fst").string(), trace.pa_confusion);
  WriteAttFile((dir / "L_P.fst").string(), trace.pa_lattice);
  WriteSymbolsFile((dir / "pa.syms").string(), y_pa.Symbols());
  if (d != nullptr) {
    WriteAttFile((dir / "L_T.fst").string(), trace.tt_lattice);
    WriteAttFile((dir / "L_T2P_raw.fst").string(), trace.t2p_raw);
    WriteAttFile((dir / "L_T2P.fst").string(), trace.t2p);
    WriteSymbolsFile((dir / "tt.syms").string(), d->tt_symbols);
  }
  WriteAttFile((dir / "fused.fst").string(), trace.fused);
}

DecodeResult DecodeOne(const Utterance &utt, const DecodeOptions &opt,
                       DecodeMode mode, const LexiconFst *d, bool tt_is_text) {
  DecodeResult r;
  try {
    DecodeConfig cfg;
    cfg.mix = opt.mix;
    cfg.prune_beam = opt.prune;
    FusionTrace trace;
    FusionTrace *tp = &trace;
    PosteriorMatrix y_pa = PosteriorMatrix::ReadFile(utt.pa_path);
    std::vector<MoraToken> morae;
    if (mode == DecodeMode::kPaOnly) {
      morae = DecodePaOnly(y_pa, cfg, tp);
    } else {
      Wfst l_t;
      if (tt_is_text)
        l_t = TtLatticeFromText(ReadText(utt.tt_path), *d);
      else
        l_t = TtLatticeFromPosteriors(PosteriorMatrix::ReadFile(utt.tt_path),
                                      *d, cfg.prune_beam);
      if (mode == DecodeMode::kFusion)
        morae = DecodeMtLf(y_pa, l_t, *d, cfg, tp);
      else
        morae = DecodeExplicitConditioning(y_pa, l_t, *d, cfg, tp);
      if (trace.fell_back)
        std::cerr << "latfuse: " << utt.id << ": no lexicon path, using the PA lattice alone\n";
    }
    if (!opt.dump_dir.empty())
      DumpTrace(fs::path(opt.dump_dir) / utt.id, trace, y_pa,
                mode == DecodeMode::kPaOnly ? nullptr : d);
    r.output = RenderPa(morae);
  } catch (const InputError &e) {
    r.status = kExitInput;
    r.error = e.what();
  } catch (const std::exception &e) {
    r.status = kExitDecode;
    r.error = e.what();
  }
  return r;
}

std::vector<Utterance> ReadManifest(const std::string &path, bool need_tt) {
  const fs::path base = fs::path(path).parent_path();
  auto resolve = [&base](const std::string &p) {
    fs::path q(p);
    return q.is_absolute() ? q.string() : (base / q).string();
  };
  std::vector<Utterance> utts;
  auto lines = ReadLines(path);
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string &line = lines[i];
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, '\t')) fields.push_back(f);
    if (fields.size() < 2 || fields.size() > 3 || fields[0].empty())
      throw InputError(path, static_cast<int>(i + 1),
                       "expected 'id<TAB>pa_file[<TAB>tt_file]'");
    if (need_tt && fields.size() < 3)
      throw InputError(path, static_cast<int>(i + 1),
                       "this mode needs a tt_file column");
    Utterance u{fields[0], resolve(fields[1]), ""};
    if (fields.size() == 3) u.tt_path = resolve(fields[2]);
    utts.push_back(std::move(u));
  }
  return utts;
}

int RunDecode(const DecodeOptions &opt) {
  const DecodeMode mode = ParseDecodeMode(opt.mode);
  if (!(opt.mix > 0.0 && opt.mix < 1.0))
    throw InputError("--mix must lie strictly between 0 and 1");
  if (!(opt.prune >= 0.0)) throw InputError("--prune must be non-negative");
  if (opt.jobs < 1) throw InputError("--jobs must be at least 1");
  const bool need_tt = mode != DecodeMode::kPaOnly;

  std::unique_ptr<LexiconFst> lexicon;
  if (need_tt) {
    if (opt.lexicon.empty())
      throw InputError("--lexicon is required for mode " + opt.mode);
    DictionaryStats stats;
    auto entries = ReadDictionaryFile(opt.lexicon, &stats);
    if (stats.discarded > 0)
      std::cerr << "latfuse: " << opt.lexicon << ": discarded "
                << stats.discarded << " unparsable pronunciation(s)\n";
    lexicon = std::make_unique<LexiconFst>(BuildLexicon(entries));
  }

  std::vector<Utterance> utts;
  bool tt_is_text = false;
  const bool manifest_mode = !opt.manifest.empty();
  if (manifest_mode) {
    if (opt.tt_format != "posteriors" && opt.tt_format != "text")
      throw InputError("--tt-format must be 'posteriors' or 'text'");
    tt_is_text = opt.tt_format == "text";
    utts = ReadManifest(opt.manifest, need_tt);
  } else {
    Utterance u{"utt", opt.pa_posteriors, ""};
    if (need_tt) {
      if (opt.tt_posteriors.empty() && opt.tt_text.empty())
        throw InputError("mode " + opt.mode +
                         " needs --tt-posteriors or --tt-text");
      tt_is_text = !opt.tt_text.empty();
      u.tt_path = tt_is_text ? opt.tt_text : opt.tt_posteriors;
    }
    utts.push_back(std::move(u));
  }

  std::vector<DecodeResult> results(utts.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < utts.size(); i = next++)
      results[i] = DecodeOne(utts[i], opt, mode, lexicon.get(), tt_is_text);
  };
  const int nthreads =
      std::min<int>(opt.jobs, static_cast<int>(std::max<size_t>(utts.size(), 1)));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
  }

  int status = kExitOk;
  for (size_t i = 0; i < utts.size(); ++i) {
    const DecodeResult &r = results[i];
    if (r.status != kExitOk) {
      std::cerr << "latfuse: " << utts[i].id << ": " << r.error << '\n';
      if (!opt.keep_going) {
        std::cout.flush();
        return r.status;
      }
      if (status == kExitOk) status = r.status;
      if (manifest_mode) std::cout << utts[i].id << '\t' << '\n';
      continue;
    }
    if (manifest_mode)
      std::cout << utts[i].id << '\t' << r.output << '\n';
    else
      std::cout << r.output << '\n';
  }
  return opt.keep_going ? kExitOk : status;
}

// ---------------------------------------------------------------- score

int RunScore(const std::string &ref_path, const std::string &hyp_path,
             const std::string &metric) {
  if (metric != "mler" && metric != "mler-noaccent" && metric != "cer")
    throw InputError("--metric must be mler, mler-noaccent or cer");
  auto ref = ReadLines(ref_path);
  auto hyp = ReadLines(hyp_path);
  if (ref.size() != hyp.size())
    throw InputError("'" + ref_path + "' has " + std::to_string(ref.size()) +
                     " lines but '" + hyp_path + "' has " +
                     std::to_string(hyp.size()));
  std::vector<AlignmentResult> all;
  std::cout << "utt\tsub\tins\tdel\tref_len\terror_rate\n";
  auto row = [](const std::string &name, const AlignmentResult &r, double rate) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", rate);
    std::cout << name << '\t' << r.substitutions << '\t' << r.insertions << '\t'
              << r.deletions << '\t' << r.ref_len << '\t' << buf << '\n';
  };
  for (size_t i = 0; i < ref.size(); ++i) {
    AlignmentResult r;
    try {
      if (metric == "cer") {
        r = Cer(ref[i], hyp[i]);
      } else {
        auto rt = TokenizePa(ref[i]);
        auto ht = TokenizePa(hyp[i]);
        if (rt.empty()) throw InputError("empty reference");
        r = Mler(rt, ht, metric == "mler");
      }
    } catch (const Error &e) {
      throw InputError(ref_path, static_cast<int>(i + 1), e.what());
    }
    all.push_back(r);
    row(std::to_string(i + 1), r, r.ErrorRate());
  }
  if (all.empty()) throw InputError("'" + ref_path + "' is empty");
  AlignmentResult total;
  for (const auto &r : all) {
    total.substitutions += r.substitutions;
    total.insertions += r.insertions;
    total.deletions += r.deletions;
    total.ref_len += r.ref_len;
  }
  row("TOTAL", total, CorpusAggregate(all));
  return kExitOk;
}

// ---------------------------------------------------------------- f0-label

int RunF0Label(const std::string &track_path, double frame_rate, double window) {
  F0Track track = F0Track::ReadFile(track_path);
  for (const F0Class &c : ClassifyUtterance(track, frame_rate, window))
    std::cout << c.id << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- gen-fixture

struct FixtureOptions {
  std::string kind;
  uint64_t seed = 1;
  int frames = 8;
  int labels = 5;
  int entries = 100;
  int samples = 300;
  double hop = kDefaultF0Hop;
  std::string out;
};

int RunGenFixture(const FixtureOptions &opt) {
  if (opt.kind == "homophone") {
    if (opt.out.empty()) throw InputError("--out DIR is required for homophone");
    fixtures::WriteHomophoneFixture(opt.out);
    return kExitOk;
  }
  fixtures::Rng rng(opt.seed);
  std::ostringstream os;
  if (opt.kind == "posteriors") {
    fixtures::RandomPosteriors(rng, opt.frames, opt.labels).Write(os);
  } else if (opt.kind == "dictionary") {
    if (opt.entries < 1) throw InputError("--entries must be positive");
    os << fixtures::RandomDictionary(rng, opt.entries);
  } else if (opt.kind == "track") {
    if (opt.samples < 1 || !(opt.hop > 0.0))
      throw InputError("--samples and --hop must be positive");
    fixtures::RandomTrack(rng, opt.samples, opt.hop).Write(os);
  } else {
    throw InputError("unknown fixture kind '" + opt.kind + "'");
  }
  if (opt.out.empty() || opt.out == "-") {
    std::cout << os.str();
  } else {
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) throw InputError("cannot write '" + opt.out + "'");
    f << os.str();
  }
  return kExitOk;
}

// ---------------------------------------------------------------- dump-lattice

int RunDumpLattice(const std::string &posteriors, double prune,
                   const std::string &out) {
  PosteriorMatrix m = PosteriorMatrix::ReadFile(posteriors);
  fs::path dir(out);
  fs::create_directories(dir);
  WriteAttFile((dir / "S.fst").string(), BuildConfusionNetwork(m));
  WriteAttFile((dir / "B.fst").string(), BuildBlankRemover(m.Symbols(), m.Blank()));
  WriteAttFile((dir / "L.fst").string(), CtcLattice(m, prune));
  WriteSymbolsFile((dir / "labels.syms").string(), m.Symbols());
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Lattice fusion of phonetic-accent and text-token CTC outputs"};
  app.require_subcommand(1);

  DecodeOptions dopt;
  auto *decode = app.add_subcommand("decode", "Decode PA label sequences");
  auto *pa_opt = decode->add_option("--pa-posteriors", dopt.pa_posteriors,
                                    "PA posterior matrix of one utterance");
  auto *man_opt = decode->add_option(
      "--manifest", dopt.manifest,
      "TSV of id, PA posteriors and optional TT file; paths relative to it");
  pa_opt->excludes(man_opt);
  auto *ttp = decode->add_option("--tt-posteriors", dopt.tt_posteriors,
                                 "TT posterior matrix");
  auto *ttt = decode->add_option("--tt-text", dopt.tt_text,
                                 "text transcript instead of TT posteriors");
  ttp->excludes(ttt);
  ttp->excludes(man_opt);
  ttt->excludes(man_opt);
  decode->add_option("--tt-format", dopt.tt_format,
                     "kind of the manifest's TT files: posteriors or text")
      ->capture_default_str();
  decode->add_option("--lexicon", dopt.lexicon, "pronunciation dictionary TSV");
  decode->add_option("--mode", dopt.mode, "pa-only, cond or fuse")
      ->capture_default_str();
  decode->add_option("--mix", dopt.mix, "weight of the PA lattice in the fusion")
      ->capture_default_str();
  decode->add_option("--prune", dopt.prune, "pruning beam (cost units)")
      ->capture_default_str();
  decode->add_option("--dump-lattice", dopt.dump_dir,
                     "write every intermediate lattice under DIR/<id>/");
  decode->add_option("--jobs", dopt.jobs, "worker threads")->capture_default_str();
  decode->add_flag("--keep-going", dopt.keep_going,
                   "continue past failed utterances and exit 0");

  std::string ref, hyp, metric = "mler";
  auto *score = app.add_subcommand("score", "Score hypotheses against references");
  score->add_option("--ref", ref, "reference file, one utterance per line")->required();
  score->add_option("--hyp", hyp, "hypothesis file, one utterance per line")->required();
  score->add_option("--metric", metric, "mler, mler-noaccent or cer")
      ->capture_default_str();

  std::string track;
  double frame_rate = kDefaultFrameRate, window = kDefaultF0Window;
  auto *f0 = app.add_subcommand("f0-label", "Frame-level f0 class labels");
  f0->add_option("--track", track, "f0 track file")->required();
  f0->add_option("--frame-rate", frame_rate, "label frames per second")
      ->capture_default_str();
  f0->add_option("--window", window, "analysis segment length in seconds")
      ->capture_default_str();

  FixtureOptions fopt;
  auto *gen = app.add_subcommand("gen-fixture", "Write seeded test fixtures");
  gen->add_option("--kind", fopt.kind, "posteriors, dictionary, track or homophone")
      ->required();
  gen->add_option("--seed", fopt.seed, "RNG seed")->capture_default_str();
  gen->add_option("--frames", fopt.frames, "posterior frames")->capture_default_str();
  gen->add_option("--labels", fopt.labels, "posterior labels including blank")
      ->capture_default_str();
  gen->add_option("--entries", fopt.entries, "dictionary entries")
      ->capture_default_str();
  gen->add_option("--samples", fopt.samples, "f0 samples")->capture_default_str();
  gen->add_option("--hop", fopt.hop, "f0 hop in seconds")->capture_default_str();
  gen->add_option("--out", fopt.out, "output file, or directory for homophone");

  std::string dl_post, dl_out;
  double dl_prune = kDefaultPruneBeam;
  auto *dump = app.add_subcommand("dump-lattice",
                                  "Write S, B and the CTC lattice of a matrix");
  dump->add_option("--posteriors", dl_post, "posterior matrix")->required();
  dump->add_option("--prune", dl_prune, "pruning beam")->capture_default_str();
  dump->add_option("--out", dl_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitInput;
  }

  std::ios::sync_with_stdio(false);
  try {
    if (decode->parsed()) {
      if (dopt.pa_posteriors.empty() && dopt.manifest.empty())
        throw InputError("decode needs --pa-posteriors or --manifest");
      return RunDecode(dopt);
    }
    if (score->parsed()) return RunScore(ref, hyp, metric);
    if (f0->parsed()) return RunF0Label(track, frame_rate, window);
    if (gen->parsed()) return RunGenFixture(fopt);
    if (dump->parsed()) return RunDumpLattice(dl_post, dl_prune, dl_out);
  } catch (const InputError &e) {
    std::cerr << "latfuse: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception &e) {
    std::cerr << "latfuse: " << e.what() << '\n';
    return kExitDecode;
  }
  return kExitOk;
}
