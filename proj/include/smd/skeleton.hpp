#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace smd {

inline constexpr std::size_t kJointCount = 22;

// SMPL body joint order (first 22 joints of the SMPL kinematic tree).
enum class Joint : std::size_t {
  Pelvis = 0,
  LeftHip,
  RightHip,
  Spine1,
  LeftKnee,
  RightKnee,
  Spine2,
  LeftAnkle,
  RightAnkle,
  Spine3,
  LeftFoot,
  RightFoot,
  Neck,
  LeftCollar,
  RightCollar,
  Head,
  LeftShoulder,
  RightShoulder,
  LeftElbow,
  RightElbow,
  LeftWrist,
  RightWrist,
};

constexpr std::size_t index(Joint j) noexcept { return static_cast<std::size_t>(j); }

class SkeletonLayout {
 public:
  static constexpr std::string_view name() noexcept { return "smpl22"; }

  static constexpr std::array<std::string_view, kJointCount> joint_names{
      "pelvis",      "left_hip",       "right_hip",      "spine1",     "left_knee",   "right_knee",
      "spine2",      "left_ankle",     "right_ankle",    "spine3",     "left_foot",   "right_foot",
      "neck",        "left_collar",    "right_collar",   "head",       "left_shoulder",
      "right_shoulder", "left_elbow",  "right_elbow",    "left_wrist", "right_wrist",
  };

  static constexpr std::optional<std::size_t> index_of(std::string_view joint_name) noexcept {
    for (std::size_t i = 0; i < joint_names.size(); ++i) {
      if (joint_names[i] == joint_name) return i;
    }
    return std::nullopt;
  }

  static constexpr std::string_view name_of(Joint j) noexcept { return joint_names[index(j)]; }

  // Left/right counterpart; midline joints map to themselves.
  static constexpr Joint mirror(Joint j) noexcept {
    switch (j) {
      case Joint::LeftHip: return Joint::RightHip;
      case Joint::RightHip: return Joint::LeftHip;
      case Joint::LeftKnee: return Joint::RightKnee;
      case Joint::RightKnee: return Joint::LeftKnee;
      case Joint::LeftAnkle: return Joint::RightAnkle;
      case Joint::RightAnkle: return Joint::LeftAnkle;
      case Joint::LeftFoot: return Joint::RightFoot;
      case Joint::RightFoot: return Joint::LeftFoot;
      case Joint::LeftCollar: return Joint::RightCollar;
      case Joint::RightCollar: return Joint::LeftCollar;
      case Joint::LeftShoulder: return Joint::RightShoulder;
      case Joint::RightShoulder: return Joint::LeftShoulder;
      case Joint::LeftElbow: return Joint::RightElbow;
      case Joint::RightElbow: return Joint::LeftElbow;
      case Joint::LeftWrist: return Joint::RightWrist;
      case Joint::RightWrist: return Joint::LeftWrist;
      default: return j;
    }
  }
};

}  // namespace smd
