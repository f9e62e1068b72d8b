#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "smd/error.hpp"

namespace smd {

enum class SegmentKind { Increases, Decreases, Holds, Repeats };

// A classified interval [first_frame, last_frame]. Boundaries are shared
// between neighbours, so the last frame of one segment is the first frame of
// the next. For Repeats, v_start/v_end hold the low/high envelope.
struct Segment {
  SegmentKind kind = SegmentKind::Holds;
  std::size_t first_frame = 0;
  std::size_t last_frame = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  double v_start = 0.0;
  double v_end = 0.0;
  double level = 0.0;  // mean of the smoothed values over the interval
  int cycles = 0;      // Repeats only

  bool moving() const noexcept { return kind == SegmentKind::Increases || kind == SegmentKind::Decreases; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

// Centered moving average; near the ends the window is truncated to the
// samples that exist.
inline std::vector<double> smooth(std::span<const double> values, int window) {
  if (window < 1 || window % 2 == 0) throw Error(ErrorCode::BadWindow, "window must be odd and >= 1");
  if (static_cast<std::size_t>(window) > values.size()) {
    throw Error(ErrorCode::BadWindow, "window " + std::to_string(window) + " exceeds series length " +
                                          std::to_string(values.size()));
  }
  const std::size_t n = values.size();
  const std::size_t half = static_cast<std::size_t>(window / 2);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(n - 1, i + half);
    // Averaging deviations from the centre sample keeps constants exact.
    double deviation = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) deviation += values[k] - values[i];
    out[i] = values[i] + deviation / static_cast<double>(hi - lo + 1);
  }
  return out;
}

// Largest odd window not longer than the series.
inline int effective_window(int window, std::size_t length) {
  if (length == 0) return 1;
  const int cap = static_cast<int>(length % 2 == 1 ? length : length - 1);
  return std::min(window, cap);
}

// Interior turning points. Runs of equal values are collapsed and a run that
// is higher (or lower) than both neighbouring runs is an extremum, located
// at the run's first frame.
inline std::vector<std::size_t> local_extrema(std::span<const double> values) {
  std::vector<std::size_t> runs;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i == 0 || values[i] != values[i - 1]) runs.push_back(i);
  }
  std::vector<std::size_t> out;
  for (std::size_t r = 1; r + 1 < runs.size(); ++r) {
    const double prev = values[runs[r - 1]];
    const double cur = values[runs[r]];
    const double next = values[runs[r + 1]];
    if ((cur > prev && cur > next) || (cur < prev && cur < next)) out.push_back(runs[r]);
  }
  return out;
}

inline double mean_over(std::span<const double> values, std::size_t first, std::size_t last) {
  double sum = 0.0;
  for (std::size_t i = first; i <= last; ++i) sum += values[i];
  return sum / static_cast<double>(last - first + 1);
}

inline Segment make_segment(std::span<const double> values, double fps, std::size_t first, std::size_t last,
                            double threshold) {
  Segment s;
  s.first_frame = first;
  s.last_frame = last;
  s.t_start = static_cast<double>(first) / fps;
  s.t_end = static_cast<double>(last) / fps;
  s.v_start = values[first];
  s.v_end = values[last];
  s.level = mean_over(values, first, last);
  const double change = s.v_end - s.v_start;
  if (change >= threshold) {
    s.kind = SegmentKind::Increases;
  } else if (-change >= threshold) {
    s.kind = SegmentKind::Decreases;
  } else {
    s.kind = SegmentKind::Holds;
  }
  return s;
}

// Breakpoints: the first frame, every local extremum that differs from the
// previously kept breakpoint by at least `threshold`, and the last frame.
inline std::vector<std::size_t> extrema_breakpoints(std::span<const double> values, double threshold) {
  std::vector<std::size_t> breaks{0};
  for (std::size_t e : local_extrema(values)) {
    if (std::abs(values[e] - values[breaks.back()]) >= threshold) breaks.push_back(e);
  }
  if (values.size() > 1 && breaks.back() != values.size() - 1) breaks.push_back(values.size() - 1);
  return breaks;
}

// Peak-valley segmentation of an already smoothed series into
// Increases/Decreases/Holds, with same-kind neighbours merged.
inline std::vector<Segment> segment_extrema(std::span<const double> values, double fps, double threshold) {
  if (values.size() < 2) throw Error(ErrorCode::InvalidSequence, "segmentation needs at least 2 samples");
  if (!(threshold > 0)) throw Error(ErrorCode::InvalidConfig, "segmentation threshold must be > 0");
  const auto breaks = extrema_breakpoints(values, threshold);
  std::vector<Segment> out;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Segment s = make_segment(values, fps, breaks[i], breaks[i + 1], threshold);
    if (!out.empty() && out.back().kind == s.kind) {
      out.back() = make_segment(values, fps, out.back().first_frame, s.last_frame, threshold);
    } else {
      out.push_back(s);
    }
  }
  return out;
}

namespace detail {

// Pearson correlation of a span against itself shifted by `lag`.
inline double lagged_correlation(std::span<const double> values, std::size_t first, std::size_t last,
                                 std::size_t lag) {
  const std::size_t n = last - first + 1;
  if (lag == 0 || lag + 2 > n) return 0.0;
  const double mean = mean_over(values, first, last);
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = first; i + lag <= last; ++i) {
    const double a = values[i] - mean;
    const double b = values[i + lag] - mean;
    ab += a * b;
    aa += a * a;
    bb += b * b;
  }
  if (aa <= 0.0 || bb <= 0.0) return 0.0;
  return ab / std::sqrt(aa * bb);
}

inline bool is_cycle_train(std::span<const Segment> train, std::span<const double> values, double consistency) {
  // Edge segments of a train are usually partial swings; period and
  // amplitude statistics come from the interior ones.
  const auto interior = train.subspan(1, train.size() - 2);
  double length_sum = 0.0;
  std::vector<double> amplitudes;
  for (const auto& s : interior) {
    length_sum += static_cast<double>(s.last_frame - s.first_frame);
    amplitudes.push_back(std::abs(s.v_end - s.v_start));
  }
  const double half_period = length_sum / static_cast<double>(interior.size());
  const auto lag = static_cast<std::size_t>(std::lround(2.0 * half_period));

  const double amp_mean = std::accumulate(amplitudes.begin(), amplitudes.end(), 0.0) / amplitudes.size();
  double amp_var = 0.0;
  for (double a : amplitudes) amp_var += (a - amp_mean) * (a - amp_mean);
  amp_var /= static_cast<double>(amplitudes.size());
  const double cv = amp_mean > 0.0 ? std::sqrt(amp_var) / amp_mean : 1.0;
  if (cv > 1.0 - consistency) return false;

  const double r = lagged_correlation(values, train.front().first_frame, train.back().last_frame, lag);
  return r >= consistency;
}

}  // namespace detail

// Collapse alternating Increases/Decreases trains with consistent amplitude
// and a strong one-period autocorrelation into a single Repeats segment.
inline std::vector<Segment> detect_cycles(std::span<const Segment> segments, std::span<const double> values,
                                          double consistency, std::size_t min_run = 4) {
  std::vector<Segment> out;
  std::size_t i = 0;
  while (i < segments.size()) {
    if (!segments[i].moving()) {
      out.push_back(segments[i++]);
      continue;
    }
    std::size_t j = i + 1;
    while (j < segments.size() && segments[j].moving() && segments[j].kind != segments[j - 1].kind) ++j;
    const auto train = segments.subspan(i, j - i);
    if (train.size() >= std::max<std::size_t>(min_run, 3) && detail::is_cycle_train(train, values, consistency)) {
      Segment merged;
      merged.kind = SegmentKind::Repeats;
      merged.first_frame = train.front().first_frame;
      merged.last_frame = train.back().last_frame;
      merged.t_start = train.front().t_start;
      merged.t_end = train.back().t_end;
      merged.v_start = train.front().v_start;
      merged.v_end = train.front().v_start;
      for (const auto& s : train) {
        merged.v_start = std::min({merged.v_start, s.v_start, s.v_end});
        merged.v_end = std::max({merged.v_end, s.v_start, s.v_end});
      }
      merged.level = mean_over(values, merged.first_frame, merged.last_frame);
      merged.cycles = static_cast<int>(train.size() / 2);
      out.push_back(merged);
    } else {
      out.insert(out.end(), train.begin(), train.end());
    }
    i = j;
  }
  return out;
}

}  // namespace smd
