#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "smd/error.hpp"
#include "smd/skeleton.hpp"

namespace smd {

using Vec3 = Eigen::Vector3d;
using Pose = std::array<Vec3, kJointCount>;

enum class UpAxis { Y, Z };

// World directions used for trajectory and global pelvis angles. Each set is
// right-handed with lateral = up x forward, and "lateral" pointing to the
// left of a subject that faces "forward".
struct WorldAxes {
  Vec3 lateral;
  Vec3 up;
  Vec3 forward;
};

inline WorldAxes world_axes(UpAxis up) {
  if (up == UpAxis::Y) return {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
  return {-Vec3::UnitX(), Vec3::UnitZ(), Vec3::UnitY()};
}

struct JointSequence {
  std::vector<Pose> frames;
  double fps = 20.0;
  UpAxis up_axis = UpAxis::Y;

  std::size_t frame_count() const noexcept { return frames.size(); }
  double duration() const noexcept {
    return frames.size() < 2 ? 0.0 : static_cast<double>(frames.size() - 1) / fps;
  }
  const Vec3& at(std::size_t frame, Joint j) const { return frames[frame][index(j)]; }
};

struct ValidationReport {
  std::vector<std::string> warnings;
  bool ok() const noexcept { return true; }
};

inline constexpr double kTeleportWarningMeters = 1.0;

// Throws Error on any invariant violation; suspicious-but-legal data ends up
// in the returned warnings.
inline ValidationReport validate(const JointSequence& seq) {
  if (!(std::isfinite(seq.fps) && seq.fps > 0.0)) {
    throw Error(ErrorCode::InvalidSequence, "fps must be a positive finite number");
  }
  if (seq.frames.size() < 2) {
    throw Error(ErrorCode::InvalidSequence,
                "sequence needs at least 2 frames, got " + std::to_string(seq.frames.size()));
  }
  for (std::size_t t = 0; t < seq.frames.size(); ++t) {
    for (std::size_t j = 0; j < kJointCount; ++j) {
      if (!seq.frames[t][j].allFinite()) {
        throw Error(ErrorCode::NonFiniteValue, "non-finite coordinate at frame " + std::to_string(t) +
                                                   ", joint " + std::string(SkeletonLayout::joint_names[j]));
      }
    }
  }
  ValidationReport report;
  for (std::size_t t = 1; t < seq.frames.size(); ++t) {
    const double jump = (seq.at(t, Joint::Pelvis) - seq.at(t - 1, Joint::Pelvis)).norm();
    if (jump > kTeleportWarningMeters) {
      report.warnings.push_back("pelvis moved " + std::to_string(jump) + " m between frames " +
                                std::to_string(t - 1) + " and " + std::to_string(t) +
                                " (possible corrupt capture)");
    }
  }
  return report;
}

}  // namespace smd
