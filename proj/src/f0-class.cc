// src/f0-class.cc

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

#include "latfuse/f0-class.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "latfuse/error.h"
#include "latfuse/fst-io.h"

namespace latfuse {

namespace {

constexpr double kTimeGrid = 1e9;  // ticks per second

// Sample indices that may fall inside `interval`; exact membership is
// decided by Interval::Contains on snapped sample times.
std::pair<size_t, size_t> CandidateRange(const F0Track &track,
                                         const Interval &interval) {
  const double n = static_cast<double>(track.f0.size());
  double lo = std::floor(interval.begin / track.hop) - 1.0;
  double hi = std::ceil(interval.end / track.hop) + 1.0;
  lo = std::clamp(lo, 0.0, n);
  hi = std::clamp(hi, 0.0, n);
  return {static_cast<size_t>(lo), static_cast<size_t>(hi)};
}

}  // namespace

double SnapTime(double seconds) {
  return std::round(seconds * kTimeGrid) / kTimeGrid;
}

double F0Track::SampleTime(size_t i) const {
  return SnapTime(static_cast<double>(i) * hop);
}

F0Track F0Track::Read(std::istream &is, const std::string &source) {
  F0Track track;
  std::string line;
  int lineno = 0;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!have_header) {
      if (line.rfind("hop=", 0) != 0)
        throw InputError(source, lineno, "expected 'hop=<seconds>' header");
      try {
        track.hop = ParseWeight(line.substr(4));
      } catch (const InputError &) {
        throw InputError(source, lineno, "bad hop value");
      }
      if (!(track.hop > 0.0) || !std::isfinite(track.hop))
        throw InputError(source, lineno, "hop must be positive");
      have_header = true;
      continue;
    }
    double v = 0.0;
    try {
      v = ParseWeight(line);
    } catch (const InputError &) {
      throw InputError(source, lineno, "bad f0 value '" + line + "'");
    }
    if (std::isnan(v) || std::isinf(v))
      throw InputError(source, lineno, "f0 must be finite");
    track.f0.push_back(v > 0.0 ? v : 0.0);
  }
  if (!have_header) throw InputError(source, lineno, "missing 'hop=' header");
  return track;
}

F0Track F0Track::ReadFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open '" + path + "'");
  return Read(is, path);
}

void F0Track::Write(std::ostream &os) const {
  os << "hop=" << FormatWeight(hop) << '\n';
  for (double v : f0) os << FormatWeight(v) << '\n';
}

AnalysisWindows WindowSegments(double t_n, double w) {
  if (!(w > 0.0)) throw Error("window length must be positive");
  AnalysisWindows win;
  win.left = {SnapTime(t_n - 1.5 * w), SnapTime(t_n - 0.5 * w)};
  win.center = {SnapTime(t_n - 0.5 * w), SnapTime(t_n + 0.5 * w)};
  win.right = {SnapTime(t_n + 0.5 * w), SnapTime(t_n + 1.5 * w)};
  return win;
}

bool IsVoiced(const F0Track &track, const Interval &interval) {
  auto [lo, hi] = CandidateRange(track, interval);
  for (size_t i = lo; i < hi; ++i)
    if (track.Voiced(i) && interval.Contains(track.SampleTime(i))) return true;
  return false;
}

double MeanLogF0(const F0Track &track, const Interval &interval) {
  auto [lo, hi] = CandidateRange(track, interval);
  double sum = 0.0;
  int count = 0;
  for (size_t i = lo; i < hi; ++i) {
    if (track.Voiced(i) && interval.Contains(track.SampleTime(i))) {
      sum += std::log(track.f0[i]);
      ++count;
    }
  }
  if (count == 0) throw Error("MeanLogF0: interval has no voiced sample");
  return sum / count;
}

F0Class ClassifyFrame(const F0Track &track, double t_n, double w) {
  const AnalysisWindows win = WindowSegments(t_n, w);
  const bool left = IsVoiced(track, win.left);
  const bool right = IsVoiced(track, win.right);
  int base = 0;
  if (!left && !right) {
    base = 0;
  } else if (!left) {
    base = 1;
  } else if (!right) {
    base = 2;
  } else {
    bool rising = MeanLogF0(track, win.left) < MeanLogF0(track, win.right);
    base = rising ? 3 : 4;
  }
  return F0Class{2 * base + (IsVoiced(track, win.center) ? 0 : 1)};
}

std::vector<F0Class> ClassifyUtterance(const F0Track &track, double frame_rate,
                                       double w) {
  if (!(frame_rate > 0.0)) throw Error("frame rate must be positive");
  std::vector<F0Class> out;
  if (track.f0.empty()) return out;
  // Snap before ceil so 1 s at 12.5 Hz gives 13 frames, not 14.
  const double frames = SnapTime(track.Duration() * frame_rate);
  const size_t n = static_cast<size_t>(std::ceil(frames));
  out.reserve(n);
  for (size_t i = 0; i < n; ++i)
    out.push_back(ClassifyFrame(track, static_cast<double>(i) / frame_rate, w));
  return out;
}

}  // namespace latfuse
