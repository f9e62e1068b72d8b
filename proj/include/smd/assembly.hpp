#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "smd/config.hpp"
#include "smd/kinematics.hpp"
#include "smd/motion.hpp"
#include "smd/tempseg.hpp"
#include "smd/trajectory.hpp"

namespace smd {

struct AngleLine {
  AngleId id;
  std::vector<Segment> segments;
};

struct GroupBlock {
  BodyGroup group;
  std::vector<AngleLine> lines;
};

struct TrajectoryLine {
  TrajectoryAxis axis;
  std::vector<Segment> segments;
};

struct SmdDocument {
  double duration_s = 0.0;
  std::size_t frame_count = 0;
  double fps = 20.0;
  TrajectoryMode trajectory_mode = TrajectoryMode::Absolute;
  TrajectorySummary summary;
  std::vector<TrajectoryLine> trajectory;  // empty when the mode is None
  std::vector<GroupBlock> joints;          // canonical group order
};

// Vocabulary used by the renderer.
namespace vocab {
inline constexpr std::string_view kArrow = "→";
inline constexpr std::string_view kDash = "–";
inline constexpr std::string_view kDegree = "°";
inline constexpr std::string_view kIncreases = "increases";
inline constexpr std::string_view kDecreases = "decreases";
inline constexpr std::string_view kHoldsAt = "holds at";
inline constexpr std::string_view kRepeats = "repeats";

struct AxisVocabulary {
  std::string_view label;
  std::string_view positive;
  std::string_view negative;
  std::string_view unit;
};

constexpr AxisVocabulary axis(TrajectoryAxis a) noexcept {
  switch (a) {
    case TrajectoryAxis::Forward: return {"Forward Position", "moves forward", "moves backward", "m"};
    case TrajectoryAxis::Lateral: return {"Lateral Position", "moves left", "moves right", "m"};
    case TrajectoryAxis::Height: return {"Height", "rises", "lowers", "m"};
    case TrajectoryAxis::Yaw: return {"Body Rotation", "turns left", "turns right", kDegree};
  }
  return {"Height", "rises", "lowers", "m"};
}
}  // namespace vocab

namespace format {

inline std::string degrees(double v) {
  const long long r = std::llround(v);
  return std::to_string(r) + std::string(vocab::kDegree);
}

inline std::string fixed(double v, int decimals) {
  const double scale = decimals == 1 ? 10.0 : 100.0;
  long long r = std::llround(v * scale);
  const bool negative = r < 0;
  if (negative) r = -r;
  const long long whole = r / static_cast<long long>(scale);
  const long long frac = r % static_cast<long long>(scale);
  char buf[48];
  std::snprintf(buf, sizeof buf, decimals == 1 ? "%s%lld.%01lld" : "%s%lld.%02lld", negative ? "-" : "", whole, frac);
  return buf;
}

inline std::string meters(double v) { return fixed(v, 2) + "m"; }
inline std::string seconds(double v) { return fixed(v, 1) + "s"; }

inline std::string fps(double v) {
  if (std::abs(v - std::round(v)) < 1e-9) return std::to_string(std::llround(v));
  std::string s = fixed(v, 2);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

inline std::string time_range(const Segment& s) {
  return "[" + seconds(s.t_start) + std::string(vocab::kDash) + seconds(s.t_end) + "]";
}

}  // namespace format

// Activity score used for Top-K selection: range of the smoothed series.
inline double activity_score(std::span<const double> smoothed) {
  if (smoothed.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(smoothed.begin(), smoothed.end());
  return *hi - *lo;
}

// Indices (into canonical order) of the k highest-scoring series; ties go
// to the earlier angle. The result is sorted canonically.
inline std::vector<std::size_t> top_k_indices(std::span<const double> scores, int k) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  const auto keep = std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 0)), order.size());
  order.resize(keep);
  std::sort(order.begin(), order.end());
  return order;
}

inline std::vector<AngleSeries> select_top_k(const std::vector<AngleSeries>& angles, int k, int smooth_window = 7) {
  if (k < 1 || k > static_cast<int>(angles.size())) {
    throw Error(ErrorCode::InvalidConfig, "k must be in [1, " + std::to_string(angles.size()) + "]");
  }
  std::vector<double> scores;
  scores.reserve(angles.size());
  for (const auto& a : angles) {
    scores.push_back(activity_score(smooth(a.values, effective_window(smooth_window, a.values.size()))));
  }
  std::vector<AngleSeries> out;
  for (std::size_t i : top_k_indices(scores, k)) out.push_back(angles[i]);
  return out;
}

// Segments of one already smoothed joint-angle series, cycles merged.
inline std::vector<Segment> segment_angle(std::span<const double> smoothed, double fps, const SmdConfig& cfg) {
  auto segments = segment_extrema(smoothed, fps, cfg.delta_deg);
  return detect_cycles(segments, smoothed, cfg.cycle_consistency, static_cast<std::size_t>(cfg.min_cycle_segments));
}

inline SmdDocument build_document(const JointSequence& seq, const SmdConfig& cfg) {
  validate(seq);
  validate(cfg);
  SmdDocument doc;
  doc.frame_count = seq.frames.size();
  doc.fps = seq.fps;
  doc.duration_s = seq.duration();
  doc.trajectory_mode = cfg.trajectory_mode;
  const int window = effective_window(cfg.smooth_window, seq.frames.size());

  if (cfg.trajectory_mode != TrajectoryMode::None) {
    doc.summary = summarize_trajectory(seq);
    for (const auto& series : extract_trajectory(seq, cfg.trajectory_mode)) {
      doc.trajectory.push_back({series.axis, segment_trajectory(series, cfg)});
    }
  }

  const auto angles = compute_joint_angles(seq);
  std::vector<std::vector<double>> smoothed;
  std::vector<double> scores;
  for (const auto& a : angles) {
    smoothed.push_back(smooth(a.values, window));
    scores.push_back(activity_score(smoothed.back()));
  }
  std::vector<std::size_t> selected(angles.size());
  std::iota(selected.begin(), selected.end(), std::size_t{0});
  if (!cfg.joint_selection.is_all()) selected = top_k_indices(scores, cfg.joint_selection.top_k);

  for (std::size_t i : selected) {
    auto segments = segment_angle(smoothed[i], seq.fps, cfg);
    const BodyGroup group = angles[i].def().group;
    if (doc.joints.empty() || doc.joints.back().group != group) doc.joints.push_back({group, {}});
    doc.joints.back().lines.push_back({angles[i].id, std::move(segments)});
  }
  return doc;
}

inline std::string render_angle_segment(const Segment& s) {
  using namespace format;
  std::string out;
  switch (s.kind) {
    case SegmentKind::Increases:
    case SegmentKind::Decreases:
      out = std::string(s.kind == SegmentKind::Increases ? vocab::kIncreases : vocab::kDecreases) + " " +
            degrees(s.v_start) + " " + std::string(vocab::kArrow) + " " + degrees(s.v_end);
      break;
    case SegmentKind::Holds:
      out = std::string(vocab::kHoldsAt) + " " + degrees(s.level);
      break;
    case SegmentKind::Repeats:
      out = std::string(vocab::kRepeats) + " " + std::to_string(s.cycles) + " cycles " + degrees(s.v_start) +
            std::string(vocab::kDash) + degrees(s.v_end);
      break;
  }
  return out + " " + time_range(s);
}

inline std::string render_trajectory_segment(TrajectoryAxis axis, const Segment& s) {
  const auto words = vocab::axis(axis);
  auto value = [&](double v) {
    return axis == TrajectoryAxis::Yaw ? format::degrees(v) : format::meters(v);
  };
  std::string out;
  switch (s.kind) {
    case SegmentKind::Increases:
    case SegmentKind::Decreases:
      out = std::string(s.kind == SegmentKind::Increases ? words.positive : words.negative) + " " + value(s.v_start) +
            " " + std::string(vocab::kArrow) + " " + value(s.v_end);
      break;
    case SegmentKind::Holds:
    case SegmentKind::Repeats:
      out = std::string(vocab::kHoldsAt) + " " + value(s.level);
      break;
  }
  return out + " " + format::time_range(s);
}

template <class Segments, class RenderOne>
std::string join_segments(const Segments& segments, RenderOne&& render_one) {
  std::string out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i) out += ", ";
    out += render_one(segments[i]);
  }
  return out;
}

inline std::string render_smd(const SmdDocument& doc) {
  std::string out;
  out += "Motion: " + format::seconds(doc.duration_s) + " (" + std::to_string(doc.frame_count) + " frames at " +
         format::fps(doc.fps) + " FPS)\n";
  if (doc.trajectory_mode != TrajectoryMode::None) {
    out += "\nGlobal Trajectory:\n";
    out += "Summary: displacement " + format::meters(doc.summary.overall_displacement_m) + ", height change " +
           format::meters(doc.summary.height_change_m) + ", average height " +
           format::meters(doc.summary.average_height_m) + "\n";
    for (const auto& line : doc.trajectory) {
      out += std::string(vocab::axis(line.axis).label) + ": " +
             join_segments(line.segments, [&](const Segment& s) { return render_trajectory_segment(line.axis, s); }) +
             "\n";
    }
  }
  if (!doc.joints.empty()) {
    out += "\nJoint Angles:\n";
    for (const auto& block : doc.joints) {
      out += "[" + std::string(group_name(block.group)) + "]\n";
      for (const auto& line : block.lines) {
        out += std::string(definition(line.id).display_phrase) + ": " +
               join_segments(line.segments, render_angle_segment) + "\n";
      }
    }
  }
  return out;
}

// Tokenizer-independent size estimate: ceil(bytes / 4) + words / 2.
inline std::size_t estimate_tokens(std::string_view text) {
  std::size_t words = 0;
  bool in_word = false;
  for (unsigned char c : text) {
    const bool space = c == ' ' || c == '\n' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
    if (!space && !in_word) ++words;
    in_word = !space;
  }
  return (text.size() + 3) / 4 + words / 2;
}

// The full motion-to-text conversion.
inline std::string convert(const JointSequence& seq, const SmdConfig& cfg = {}) {
  return render_smd(build_document(seq, cfg));
}

}  // namespace smd
