#pragma once

#include <array>
#include <cmath>
#include <string_view>
#include <vector>

#include "smd/config.hpp"
#include "smd/kinematics.hpp"
#include "smd/motion.hpp"
#include "smd/tempseg.hpp"

namespace smd {

enum class TrajectoryAxis { Forward, Lateral, Height, Yaw };

inline constexpr std::array<TrajectoryAxis, 4> kTrajectoryAxes{TrajectoryAxis::Forward, TrajectoryAxis::Lateral,
                                                               TrajectoryAxis::Height, TrajectoryAxis::Yaw};

struct TrajectorySeries {
  TrajectoryAxis axis = TrajectoryAxis::Forward;
  std::vector<double> values;  // meters, or unwrapped degrees for Yaw
  double fps = 20.0;
  TrajectoryMode mode = TrajectoryMode::Absolute;
};

struct TrajectorySummary {
  double overall_displacement_m = 0.0;
  double height_change_m = 0.0;
  double average_height_m = 0.0;
};

// Forward/Lateral/Height/Yaw of the pelvis. Absolute mode reports raw world
// coordinates; Egocentric mode reports horizontal displacement from frame 0
// along the frame-0 body heading and its left-pointing perpendicular.
inline std::array<TrajectorySeries, 4> extract_trajectory(const JointSequence& seq, TrajectoryMode mode) {
  const WorldAxes world = world_axes(seq.up_axis);
  const std::size_t n = seq.frames.size();
  std::array<TrajectorySeries, 4> out;
  for (std::size_t a = 0; a < out.size(); ++a) {
    out[a].axis = kTrajectoryAxes[a];
    out[a].fps = seq.fps;
    out[a].mode = mode == TrajectoryMode::Egocentric ? TrajectoryMode::Egocentric : TrajectoryMode::Absolute;
    out[a].values.resize(n);
  }

  Vec3 forward = world.forward;
  Vec3 lateral = world.lateral;
  const Vec3 origin = seq.frames.empty() ? Vec3::Zero() : seq.at(0, Joint::Pelvis);
  std::vector<double> yaw(n);
  for (std::size_t t = 0; t < n; ++t) {
    const Pose& pose = seq.frames[t];
    CoordinateFrame body;
    try {
      body = body_local_frame(pose[index(Joint::Pelvis)], pose[index(Joint::LeftHip)], pose[index(Joint::RightHip)],
                              Vec3(pose[index(Joint::Neck)] - pose[index(Joint::Pelvis)]));
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " at frame " + std::to_string(t));
    }
    yaw[t] = heading_yaw(body, world);
    if (t == 0 && mode == TrajectoryMode::Egocentric) {
      Vec3 heading = body.e_z - body.e_z.dot(world.up) * world.up;
      if (heading.norm() > 1e-12) {
        forward = heading.normalized();
        lateral = world.up.cross(forward);
      }
    }
  }
  yaw = unwrap_degrees(yaw);

  for (std::size_t t = 0; t < n; ++t) {
    const Vec3& pelvis = seq.at(t, Joint::Pelvis);
    if (mode == TrajectoryMode::Egocentric) {
      const Vec3 d = pelvis - origin;
      out[0].values[t] = d.dot(forward);
      out[1].values[t] = d.dot(lateral);
    } else {
      out[0].values[t] = pelvis.dot(world.forward);
      out[1].values[t] = pelvis.dot(world.lateral);
    }
    out[2].values[t] = pelvis.dot(world.up);
    out[3].values[t] = yaw[t];
  }
  return out;
}

inline std::vector<Segment> segment_trajectory(const TrajectorySeries& series, const SmdConfig& cfg) {
  const auto smoothed = smooth(series.values, effective_window(cfg.smooth_window, series.values.size()));
  const double threshold = series.axis == TrajectoryAxis::Yaw ? cfg.yaw_threshold_deg : cfg.pos_threshold_m;
  return segment_extrema(smoothed, series.fps, threshold);
}

inline TrajectorySummary summarize_trajectory(const JointSequence& seq) {
  const WorldAxes world = world_axes(seq.up_axis);
  TrajectorySummary s;
  if (seq.frames.empty()) return s;
  const Vec3& first = seq.at(0, Joint::Pelvis);
  const Vec3& last = seq.at(seq.frames.size() - 1, Joint::Pelvis);
  const Vec3 d = last - first;
  s.overall_displacement_m = (d - d.dot(world.up) * world.up).norm();
  s.height_change_m = d.dot(world.up);
  double sum = 0.0;
  for (const auto& pose : seq.frames) sum += pose[index(Joint::Pelvis)].dot(world.up);
  s.average_height_m = sum / static_cast<double>(seq.frames.size());
  return s;
}

}  // namespace smd
