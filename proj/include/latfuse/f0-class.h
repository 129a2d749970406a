// latfuse/f0-class.h

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

#ifndef LATFUSE_F0_CLASS_H_
#define LATFUSE_F0_CLASS_H_

#include <iosfwd>
#include <string>
#include <vector>

// Ten-way f0-trajectory classes used as frame-level training targets.
//
// Each frame n at time t_n gets three windows of width w: left
// [t_n - 1.5w, t_n - 0.5w), center [t_n - 0.5w, t_n + 0.5w) and right
// [t_n + 0.5w, t_n + 1.5w). The voicedness of the left and right windows,
// plus whether mean log-f0 rises from left to right when both are voiced,
// gives five base classes; the center window's voicedness doubles that:
//
//   id = 2 * base + (center unvoiced ? 1 : 0)
//   base 0: (u, u)   1: (u, v)   2: (v, u)
//        3: (v, v) with P(L) < P(R)   4: (v, v) otherwise
//
// Times are snapped to a 1 ns grid before comparison, so window edges and
// sample timestamps that should coincide compare equal.

namespace latfuse {

inline constexpr double kDefaultF0Hop = 0.010;
inline constexpr double kDefaultF0Window = 0.040;
inline constexpr double kDefaultFrameRate = 12.5;
inline constexpr int kNumF0Classes = 10;

struct F0Track {
  double hop = kDefaultF0Hop;
  std::vector<double> f0;  // Hz; 0 marks an unvoiced sample

  bool Voiced(size_t i) const { return f0[i] > 0.0; }
  double SampleTime(size_t i) const;
  double Duration() const { return static_cast<double>(f0.size()) * hop; }

  /// Line 1 "hop=<seconds>", then one f0 value per line. Zero or negative
  /// values mean unvoiced.
  static F0Track Read(std::istream &is, const std::string &source);
  static F0Track ReadFile(const std::string &path);
  void Write(std::ostream &os) const;
};

/// Half-open time interval [begin, end).
struct Interval {
  double begin = 0.0;
  double end = 0.0;
  bool Contains(double t) const { return t >= begin && t < end; }
  bool operator==(const Interval &) const = default;
};

struct AnalysisWindows {
  Interval left, center, right;
};

struct F0Class {
  int id = 0;
  int Base() const { return id / 2; }
  bool CenterUnvoiced() const { return id % 2 == 1; }
  bool operator==(const F0Class &) const = default;
};

double SnapTime(double seconds);

AnalysisWindows WindowSegments(double t_n, double w = kDefaultF0Window);

bool IsVoiced(const F0Track &track, const Interval &interval);

/// Mean natural-log f0 over the voiced samples of `interval`. Throws
/// latfuse::Error when the interval holds no voiced sample.
double MeanLogF0(const F0Track &track, const Interval &interval);

F0Class ClassifyFrame(const F0Track &track, double t_n,
                      double w = kDefaultF0Window);

/// Frames at t_n = n / frame_rate for n in [0, ceil(duration * frame_rate)).
std::vector<F0Class> ClassifyUtterance(const F0Track &track,
                                       double frame_rate = kDefaultFrameRate,
                                       double w = kDefaultF0Window);

}  // namespace latfuse

#endif  // LATFUSE_F0_CLASS_H_
