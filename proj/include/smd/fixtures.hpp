#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "smd/error.hpp"
#include "smd/motion.hpp"
#include "smd/skeleton.hpp"

// Deterministic synthetic motions built from a simple parametric rig. Used by
// the CLI `synth` command and by the test suites.
namespace smd::fixtures {

inline constexpr double kDegToRad = std::numbers::pi / 180.0;

// Joint-space description of one pose; angles in degrees, body coordinates
// are x = subject's left, y = up, z = forward.
struct RigPose {
  Vec3 root{0.0, 0.93, 0.0};  // pelvis as (lateral, height, forward) in meters
  double yaw = 0.0;           // turn about the vertical axis, positive = left
  double spine_flexion = 0.0;
  std::array<double, 2> hip_flexion{};  // {left, right}
  std::array<double, 2> knee_flexion{};
  std::array<double, 2> ankle_dorsiflexion{};
  std::array<double, 2> shoulder_flexion{};
  std::array<double, 2> shoulder_abduction{};
  std::array<double, 2> elbow_flexion{};
};

struct RigDimensions {
  double hip_half_width = 0.09;
  double hip_drop = 0.09;
  double femur = 0.40;
  double tibia = 0.42;
  double foot = 0.13;
  double upper_arm = 0.28;
  double forearm = 0.25;
};

namespace detail {

// Direction in the sagittal plane at `deg` from straight down, toward forward,
// optionally tilted sideways by `side_deg` (positive = subject's left).
inline Vec3 limb_direction(double deg, double side_deg = 0.0) {
  const double a = deg * kDegToRad;
  const double b = side_deg * kDegToRad;
  return {std::sin(b), -std::cos(b) * std::cos(a), std::cos(b) * std::sin(a)};
}

inline Vec3 rotate_forward(const Vec3& v, const Vec3& pivot, double deg) {
  const double a = deg * kDegToRad;
  const Vec3 d = v - pivot;
  return pivot + Vec3(d.x(), d.y() * std::cos(a) - d.z() * std::sin(a), d.y() * std::sin(a) + d.z() * std::cos(a));
}

}  // namespace detail

inline Pose pose_from_rig(const RigPose& rig, UpAxis up = UpAxis::Y, const RigDimensions& dim = {}) {
  using detail::limb_direction;
  Pose body{};
  auto at = [&](Joint j) -> Vec3& { return body[index(j)]; };
  at(Joint::Pelvis) = Vec3::Zero();
  at(Joint::Spine1) = {0.0, 0.10, 0.0};
  at(Joint::Spine2) = {0.0, 0.23, 0.0};
  at(Joint::Spine3) = {0.0, 0.29, 0.0};
  at(Joint::Neck) = {0.0, 0.52, 0.0};
  at(Joint::Head) = {0.0, 0.67, 0.0};

  const std::array<double, 2> side{1.0, -1.0};
  const Joint hips[2] = {Joint::LeftHip, Joint::RightHip};
  const Joint knees[2] = {Joint::LeftKnee, Joint::RightKnee};
  const Joint ankles[2] = {Joint::LeftAnkle, Joint::RightAnkle};
  const Joint feet[2] = {Joint::LeftFoot, Joint::RightFoot};
  const Joint collars[2] = {Joint::LeftCollar, Joint::RightCollar};
  const Joint shoulders[2] = {Joint::LeftShoulder, Joint::RightShoulder};
  const Joint elbows[2] = {Joint::LeftElbow, Joint::RightElbow};
  const Joint wrists[2] = {Joint::LeftWrist, Joint::RightWrist};

  for (int s = 0; s < 2; ++s) {
    at(hips[s]) = {side[s] * dim.hip_half_width, -dim.hip_drop, 0.0};
    const double shank = rig.hip_flexion[s] - rig.knee_flexion[s];
    at(knees[s]) = at(hips[s]) + dim.femur * limb_direction(rig.hip_flexion[s]);
    at(ankles[s]) = at(knees[s]) + dim.tibia * limb_direction(shank);
    at(feet[s]) = at(ankles[s]) + dim.foot * limb_direction(shank + 90.0 + rig.ankle_dorsiflexion[s]);

    at(collars[s]) = {side[s] * 0.07, 0.43, 0.0};
    at(shoulders[s]) = {side[s] * 0.17, 0.45, 0.0};
    const double abduction = side[s] * rig.shoulder_abduction[s];
    at(elbows[s]) = at(shoulders[s]) + dim.upper_arm * limb_direction(rig.shoulder_flexion[s], abduction);
    at(wrists[s]) = at(elbows[s]) +
                    dim.forearm * limb_direction(rig.shoulder_flexion[s] + rig.elbow_flexion[s], abduction);
  }

  if (rig.spine_flexion != 0.0) {
    const Vec3 pivot = at(Joint::Spine1);
    for (Joint j : {Joint::Spine2, Joint::Spine3, Joint::Neck, Joint::Head, Joint::LeftCollar, Joint::RightCollar,
                    Joint::LeftShoulder, Joint::RightShoulder, Joint::LeftElbow, Joint::RightElbow,
                    Joint::LeftWrist, Joint::RightWrist}) {
      at(j) = detail::rotate_forward(at(j), pivot, rig.spine_flexion);
    }
  }

  const double yaw = rig.yaw * kDegToRad;
  const double c = std::cos(yaw), sn = std::sin(yaw);
  const WorldAxes world = world_axes(up);
  // Root is given as (lateral, height, forward).
  const Vec3 root = rig.root.x() * world.lateral + rig.root.y() * world.up + rig.root.z() * world.forward;
  Pose out{};
  for (std::size_t j = 0; j < kJointCount; ++j) {
    const Vec3& b = body[j];
    const double x = b.x() * c + b.z() * sn;
    const double z = -b.x() * sn + b.z() * c;
    out[j] = root + x * world.lateral + b.y() * world.up + z * world.forward;
  }
  return out;
}

inline double smoothstep(double edge0, double edge1, double x) {
  if (x <= edge0) return 0.0;
  if (x >= edge1) return 1.0;
  const double t = (x - edge0) / (edge1 - edge0);
  return t * t * (3.0 - 2.0 * t);
}

// Tiny deterministic postural sway so that holds are not perfectly flat.
inline double sway(double t, double phase, double amplitude = 0.4) {
  return amplitude * std::sin(2.0 * std::numbers::pi * 0.37 * t + phase);
}

template <class Fn>
JointSequence sequence_from(std::size_t frames, double fps, UpAxis up, Fn&& rig_at) {
  JointSequence seq;
  seq.fps = fps;
  seq.up_axis = up;
  seq.frames.reserve(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    seq.frames.push_back(pose_from_rig(rig_at(static_cast<double>(i) / fps, i), up));
  }
  return seq;
}

// Arms and legs extended sideways and down; nothing moves.
inline JointSequence static_pose(std::size_t frames = 100, double fps = 20.0, UpAxis up = UpAxis::Y) {
  return sequence_from(frames, fps, up, [](double, std::size_t) {
    RigPose r;
    r.shoulder_abduction = {90.0, 90.0};
    return r;
  });
}

// Left-leg kick: the thigh rises from 3 to 81 degrees, holds briefly, drops
// to about 7 by 2 s, then settles near 3 degrees.
inline JointSequence kick(std::size_t frames = 116, double fps = 20.0, UpAxis up = UpAxis::Y) {
  return sequence_from(frames, fps, up, [](double t, std::size_t) {
    RigPose r;
    r.hip_flexion[0] = 3.0 + 78.0 * smoothstep(0.15, 0.75, t) - 75.0 * smoothstep(1.05, 1.9, t) +
                       1.5 * smoothstep(1.9, 2.15, t) - 5.5 * smoothstep(2.15, 2.8, t);
    r.knee_flexion[0] = 8.0 + 52.0 * smoothstep(0.0, 0.4, t) - 52.0 * smoothstep(0.4, 0.9, t) +
                        30.0 * smoothstep(0.9, 1.3, t) - 30.0 * smoothstep(1.3, 2.4, t) + sway(t, 1.0, 0.3);
    r.hip_flexion[1] = 2.0 + sway(t, 2.0, 0.3);
    r.knee_flexion[1] = 4.0 + sway(t, 3.0, 0.3);
    r.shoulder_flexion[1] = 5.0 + 30.0 * smoothstep(0.0, 0.9, t) - 30.0 * smoothstep(0.9, 2.0, t);
    r.shoulder_abduction = {12.0, 12.0};
    r.elbow_flexion = {15.0, 20.0};
    r.root = {0.0, 0.93 + 0.005 * std::sin(t), 0.27 * smoothstep(0.0, 1.4, t) - 0.01};
    return r;
  });
}

// Forward walk with a 1 s gait cycle; hips, knees and arms oscillate
// sinusoidally for exactly `cycles` periods.
inline JointSequence gait(int cycles = 4, double fps = 20.0, UpAxis up = UpAxis::Y, double period = 1.0) {
  const auto frames = static_cast<std::size_t>(std::lround(cycles * period * fps)) + 1;
  return sequence_from(frames, fps, up, [period](double t, std::size_t) {
    const double w = 2.0 * std::numbers::pi * t / period;
    RigPose r;
    r.hip_flexion = {10.0 + 25.0 * std::sin(w), 10.0 - 25.0 * std::sin(w)};
    r.knee_flexion = {30.0 - 25.0 * std::cos(w), 30.0 + 25.0 * std::cos(w)};
    r.ankle_dorsiflexion = {2.0 * std::sin(w), -2.0 * std::sin(w)};
    r.shoulder_flexion = {-18.0 * std::sin(w), 18.0 * std::sin(w)};
    r.shoulder_abduction = {8.0, 8.0};
    r.elbow_flexion = {20.0, 20.0};
    r.yaw = 1.5 * std::sin(w);
    r.root = {0.008 * std::sin(w), 0.93 + 0.008 * std::cos(2.0 * w), 1.2 * t};
    return r;
  });
}

// In-place left turn of 90 degrees between 0.5 s and 2.5 s.
inline JointSequence turn(std::size_t frames = 100, double fps = 20.0, UpAxis up = UpAxis::Y) {
  return sequence_from(frames, fps, up, [](double t, std::size_t) {
    RigPose r;
    r.yaw = 90.0 * smoothstep(0.5, 2.5, t) + sway(t, 0.5);
    r.hip_flexion = {3.0 + sway(t, 1.0), 3.0 + sway(t, 2.0)};
    r.knee_flexion = {5.0 + sway(t, 3.0), 5.0 + sway(t, 4.0)};
    r.shoulder_abduction = {10.0, 10.0};
    r.elbow_flexion = {15.0 + sway(t, 5.0), 15.0 + sway(t, 6.0)};
    return r;
  });
}

// Left elbow flexion following offset + amplitude * sin over `cycles` periods.
inline JointSequence sine_joint(int cycles = 4, double amplitude = 40.0, double offset = 45.0, double period = 1.0,
                                double fps = 20.0, UpAxis up = UpAxis::Y) {
  const auto frames = static_cast<std::size_t>(std::lround(cycles * period * fps)) + 1;
  return sequence_from(frames, fps, up, [=](double t, std::size_t) {
    RigPose r;
    r.shoulder_abduction = {10.0, 10.0};
    r.elbow_flexion = {offset + amplitude * std::sin(2.0 * std::numbers::pi * t / period), 15.0};
    return r;
  });
}

inline constexpr std::array<std::string_view, 5> kFixtureNames{"kick", "gait", "turn", "static", "sine"};

struct FixtureParams {
  int cycles = 4;
  double amplitude = 40.0;
  double fps = 20.0;
  std::size_t frames = 0;  // 0 = fixture default
  UpAxis up = UpAxis::Y;
};

inline JointSequence make_fixture(std::string_view name, const FixtureParams& p = {}) {
  auto frames_or = [&](std::size_t fallback) { return p.frames ? p.frames : fallback; };
  if (name == "kick") return kick(frames_or(116), p.fps, p.up);
  if (name == "gait") return gait(p.cycles, p.fps, p.up);
  if (name == "turn") return turn(frames_or(100), p.fps, p.up);
  if (name == "static") return static_pose(frames_or(100), p.fps, p.up);
  if (name == "sine") return sine_joint(p.cycles, p.amplitude, p.amplitude + 5.0, 1.0, p.fps, p.up);
  throw Error(ErrorCode::UnknownFixture, "unknown fixture \"" + std::string(name) + "\"");
}

// Random but anatomically plausible motion: every rig angle follows a sum of
// random sinusoids, the root wanders and turns, and each joint gets a small
// fixed offset so poses are not perfectly planar.
inline JointSequence random_motion(std::uint64_t seed, std::size_t frames = 120, double fps = 20.0,
                                   UpAxis up = UpAxis::Y) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  struct Wave {
    double base, amp[3], freq[3], phase[3];
    double at(double t) const {
      double v = base;
      for (int k = 0; k < 3; ++k) v += amp[k] * std::sin(2.0 * std::numbers::pi * freq[k] * t + phase[k]);
      return v;
    }
  };
  auto wave = [&](double base_lo, double base_hi, double amp_max) {
    Wave w{};
    w.base = uniform(base_lo, base_hi);
    for (int k = 0; k < 3; ++k) {
      w.amp[k] = uniform(0.0, amp_max) / (k + 1);
      w.freq[k] = uniform(0.1, 1.5);
      w.phase[k] = uniform(0.0, 2.0 * std::numbers::pi);
    }
    return w;
  };

  const Wave spine = wave(-5, 15, 10);
  const Wave hip[2] = {wave(0, 30, 30), wave(0, 30, 30)};
  const Wave knee[2] = {wave(20, 50, 20), wave(20, 50, 20)};
  const Wave ankle[2] = {wave(-5, 5, 10), wave(-5, 5, 10)};
  const Wave sh_flex[2] = {wave(-10, 40, 40), wave(-10, 40, 40)};
  const Wave sh_abd[2] = {wave(10, 40, 20), wave(10, 40, 20)};
  const Wave elbow[2] = {wave(30, 70, 25), wave(30, 70, 25)};
  const Wave yaw = wave(-90, 90, 60);
  const Wave root_x = wave(-1, 1, 0.6), root_z = wave(-1, 1, 0.6), height = wave(0.85, 0.95, 0.05);

  std::array<Vec3, kJointCount> jitter;
  for (auto& j : jitter) j = Vec3(uniform(-0.02, 0.02), uniform(-0.02, 0.02), uniform(-0.02, 0.02));
  // Pelvis and hips stay on the rig so the root triangle keeps its shape.
  jitter[index(Joint::Pelvis)].setZero();

  JointSequence seq = sequence_from(frames, fps, up, [&](double t, std::size_t) {
    RigPose r;
    r.spine_flexion = spine.at(t);
    for (int s = 0; s < 2; ++s) {
      r.hip_flexion[s] = hip[s].at(t);
      r.knee_flexion[s] = std::abs(knee[s].at(t));
      r.ankle_dorsiflexion[s] = ankle[s].at(t);
      r.shoulder_flexion[s] = sh_flex[s].at(t);
      r.shoulder_abduction[s] = sh_abd[s].at(t);
      r.elbow_flexion[s] = std::abs(elbow[s].at(t));
    }
    r.yaw = yaw.at(t);
    r.root = {root_x.at(t), height.at(t), root_z.at(t)};
    return r;
  });
  for (auto& pose : seq.frames) {
    for (std::size_t j = 0; j < kJointCount; ++j) pose[j] += jitter[j];
  }
  return seq;
}

}  // namespace smd::fixtures
