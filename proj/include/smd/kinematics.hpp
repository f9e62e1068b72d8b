#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Geometry>
#include <nlohmann/json.hpp>

#include "smd/config.hpp"
#include "smd/error.hpp"
#include "smd/motion.hpp"
#include "smd/skeleton.hpp"

namespace smd {

inline constexpr double kRadToDeg = 180.0 / std::numbers::pi;
inline constexpr double kMinLandmarkArea = 1e-9;  // m^2

// Orthonormal right-handed frame: e_x lateral (subject's left), e_y up,
// e_z forward, with e_x x e_y = e_z.
struct CoordinateFrame {
  Vec3 origin = Vec3::Zero();
  Vec3 e_x = Vec3::UnitX();
  Vec3 e_y = Vec3::UnitY();
  Vec3 e_z = Vec3::UnitZ();

  Vec3 local(const Vec3& direction) const { return {direction.dot(e_x), direction.dot(e_y), direction.dot(e_z)}; }
};

// Root frame from pelvis and both hips. e_x runs from the right hip to the
// left hip, e_z is the normal of the landmark triangle, and its sign is
// picked so that e_y = e_z x e_x points along up_hint.
inline CoordinateFrame body_local_frame(const Vec3& pelvis, const Vec3& left_hip, const Vec3& right_hip,
                                        const Vec3& up_hint) {
  const Vec3 normal = (left_hip - pelvis).cross(right_hip - pelvis);
  if (0.5 * normal.norm() <= kMinLandmarkArea) {
    throw Error(ErrorCode::DegenerateLandmarks, "pelvis and hips are collinear or coincident");
  }
  CoordinateFrame f;
  f.origin = pelvis;
  f.e_x = (left_hip - right_hip).normalized();
  f.e_z = normal.normalized();
  f.e_y = f.e_z.cross(f.e_x);
  if (f.e_y.dot(up_hint) < 0.0) {
    f.e_z = -f.e_z;
    f.e_y = -f.e_y;
  }
  return f;
}

inline CoordinateFrame body_local_frame(const Vec3& pelvis, const Vec3& left_hip, const Vec3& right_hip,
                                        UpAxis up) {
  return body_local_frame(pelvis, left_hip, right_hip, world_axes(up).up);
}

// ---------------------------------------------------------------------------
// Angle table

enum class AngleId : std::size_t {
  PelvisTilt,
  PelvisList,
  PelvisRotation,
  LumbarExtension,
  LumbarLateralBending,
  LumbarRotation,
  NeckFlexion,
  NeckLateralTilt,
  RightHipFlexion,
  RightHipAdduction,
  RightHipRotation,
  RightKneeAngle,
  RightAnkleAngle,
  LeftHipFlexion,
  LeftHipAdduction,
  LeftHipRotation,
  LeftKneeAngle,
  LeftAnkleAngle,
  RightShoulderFlexion,
  RightShoulderAdduction,
  RightShoulderRotation,
  RightElbowFlexion,
  LeftShoulderFlexion,
  LeftShoulderAdduction,
  LeftShoulderRotation,
  LeftElbowFlexion,
};

constexpr std::size_t index(AngleId id) noexcept { return static_cast<std::size_t>(id); }

enum class BodyGroup : std::size_t {
  Pelvis,
  LumbarSpine,
  Neck,
  RightHip,
  RightKnee,
  RightAnkle,
  LeftHip,
  LeftKnee,
  LeftAnkle,
  RightShoulder,
  RightElbow,
  LeftShoulder,
  LeftElbow,
};

inline constexpr std::size_t kGroupCount = 13;

constexpr std::string_view group_name(BodyGroup g) noexcept {
  constexpr std::array<std::string_view, kGroupCount> names{
      "Pelvis",    "Lumbar Spine", "Neck",          "Right Hip",  "Right Knee",    "Right Ankle", "Left Hip",
      "Left Knee", "Left Ankle",   "Right Shoulder", "Right Elbow", "Left Shoulder", "Left Elbow",
  };
  return names[static_cast<std::size_t>(g)];
}

enum class ParentFrame { Global, Pelvis, LumbarSpine, Hip, Knee, Shoulder };
enum class Plane { Sagittal, Coronal, Transverse, None };

struct AngleDefinition {
  AngleId id;
  std::string_view key;
  BodyGroup group;
  std::string_view display_phrase;
  ParentFrame parent_frame;
  Joint bone_from;
  Joint bone_to;
  Plane plane;
  bool is_signed;
  bool wrappable;
};

inline constexpr std::array<AngleDefinition, kAngleCount> kAngleTable{{
    {AngleId::PelvisTilt, "pelvis_tilt", BodyGroup::Pelvis, "Pelvis Tilt (forward/backward lean)",
     ParentFrame::Global, Joint::Pelvis, Joint::Neck, Plane::Sagittal, true, false},
    {AngleId::PelvisList, "pelvis_list", BodyGroup::Pelvis, "Pelvis List (lateral tilt)", ParentFrame::Global,
     Joint::Pelvis, Joint::Neck, Plane::Coronal, true, false},
    {AngleId::PelvisRotation, "pelvis_rotation", BodyGroup::Pelvis, "Pelvis Rotation (turning)",
     ParentFrame::Global, Joint::RightHip, Joint::LeftHip, Plane::Transverse, true, true},
    {AngleId::LumbarExtension, "lumbar_extension", BodyGroup::LumbarSpine,
     "Lumbar Extension (bending forward/backward)", ParentFrame::Pelvis, Joint::Spine1, Joint::Spine3,
     Plane::Sagittal, true, false},
    {AngleId::LumbarLateralBending, "lumbar_lateral_bending", BodyGroup::LumbarSpine,
     "Lumbar Lateral Bending (side bend)", ParentFrame::Pelvis, Joint::Spine1, Joint::Spine3, Plane::Coronal, true,
     false},
    {AngleId::LumbarRotation, "lumbar_rotation", BodyGroup::LumbarSpine, "Lumbar Rotation (twisting)",
     ParentFrame::Pelvis, Joint::RightCollar, Joint::LeftCollar, Plane::Transverse, true, false},
    {AngleId::NeckFlexion, "neck_flexion", BodyGroup::Neck, "Neck Flexion (nodding)", ParentFrame::LumbarSpine,
     Joint::Neck, Joint::Head, Plane::Sagittal, true, false},
    {AngleId::NeckLateralTilt, "neck_lateral_tilt", BodyGroup::Neck, "Neck Lateral Tilt (tilting head sideways)",
     ParentFrame::LumbarSpine, Joint::Neck, Joint::Head, Plane::Coronal, true, false},
    {AngleId::RightHipFlexion, "right_hip_flexion", BodyGroup::RightHip, "Right Hip Flexion (raising thigh)",
     ParentFrame::Pelvis, Joint::RightHip, Joint::RightKnee, Plane::Sagittal, true, false},
    {AngleId::RightHipAdduction, "right_hip_adduction", BodyGroup::RightHip,
     "Right Hip Adduction (moving leg inward)", ParentFrame::Pelvis, Joint::RightHip, Joint::RightKnee,
     Plane::Coronal, true, false},
    {AngleId::RightHipRotation, "right_hip_rotation", BodyGroup::RightHip, "Right Hip Rotation", ParentFrame::Pelvis,
     Joint::RightHip, Joint::RightKnee, Plane::Transverse, true, true},
    {AngleId::RightKneeAngle, "right_knee_angle", BodyGroup::RightKnee, "Right Knee Angle (bending)",
     ParentFrame::Hip, Joint::RightKnee, Joint::RightAnkle, Plane::None, false, false},
    {AngleId::RightAnkleAngle, "right_ankle_angle", BodyGroup::RightAnkle, "Right Ankle Angle (dorsi/plantarflexion)",
     ParentFrame::Knee, Joint::RightAnkle, Joint::RightFoot, Plane::None, true, false},
    {AngleId::LeftHipFlexion, "left_hip_flexion", BodyGroup::LeftHip, "Left Hip Flexion (raising thigh)",
     ParentFrame::Pelvis, Joint::LeftHip, Joint::LeftKnee, Plane::Sagittal, true, false},
    {AngleId::LeftHipAdduction, "left_hip_adduction", BodyGroup::LeftHip, "Left Hip Adduction (moving leg inward)",
     ParentFrame::Pelvis, Joint::LeftHip, Joint::LeftKnee, Plane::Coronal, true, false},
    {AngleId::LeftHipRotation, "left_hip_rotation", BodyGroup::LeftHip, "Left Hip Rotation", ParentFrame::Pelvis,
     Joint::LeftHip, Joint::LeftKnee, Plane::Transverse, true, true},
    {AngleId::LeftKneeAngle, "left_knee_angle", BodyGroup::LeftKnee, "Left Knee Angle (bending)", ParentFrame::Hip,
     Joint::LeftKnee, Joint::LeftAnkle, Plane::None, false, false},
    {AngleId::LeftAnkleAngle, "left_ankle_angle", BodyGroup::LeftAnkle, "Left Ankle Angle (dorsi/plantarflexion)",
     ParentFrame::Knee, Joint::LeftAnkle, Joint::LeftFoot, Plane::None, true, false},
    {AngleId::RightShoulderFlexion, "right_shoulder_flexion", BodyGroup::RightShoulder,
     "Right Shoulder Flexion (raising arm forward)", ParentFrame::LumbarSpine, Joint::RightShoulder,
     Joint::RightElbow, Plane::Sagittal, true, false},
    {AngleId::RightShoulderAdduction, "right_shoulder_adduction", BodyGroup::RightShoulder,
     "Right Shoulder Adduction (moving arm inward)", ParentFrame::LumbarSpine, Joint::RightShoulder,
     Joint::RightElbow, Plane::Coronal, true, false},
    {AngleId::RightShoulderRotation, "right_shoulder_rotation", BodyGroup::RightShoulder, "Right Shoulder Rotation",
     ParentFrame::LumbarSpine, Joint::RightShoulder, Joint::RightElbow, Plane::Transverse, true, true},
    {AngleId::RightElbowFlexion, "right_elbow_flexion", BodyGroup::RightElbow, "Right Elbow Flexion (bending arm)",
     ParentFrame::Shoulder, Joint::RightElbow, Joint::RightWrist, Plane::None, false, false},
    {AngleId::LeftShoulderFlexion, "left_shoulder_flexion", BodyGroup::LeftShoulder,
     "Left Shoulder Flexion (raising arm forward)", ParentFrame::LumbarSpine, Joint::LeftShoulder, Joint::LeftElbow,
     Plane::Sagittal, true, false},
    {AngleId::LeftShoulderAdduction, "left_shoulder_adduction", BodyGroup::LeftShoulder,
     "Left Shoulder Adduction (moving arm inward)", ParentFrame::LumbarSpine, Joint::LeftShoulder, Joint::LeftElbow,
     Plane::Coronal, true, false},
    {AngleId::LeftShoulderRotation, "left_shoulder_rotation", BodyGroup::LeftShoulder, "Left Shoulder Rotation",
     ParentFrame::LumbarSpine, Joint::LeftShoulder, Joint::LeftElbow, Plane::Transverse, true, true},
    {AngleId::LeftElbowFlexion, "left_elbow_flexion", BodyGroup::LeftElbow, "Left Elbow Flexion (bending arm)",
     ParentFrame::Shoulder, Joint::LeftElbow, Joint::LeftWrist, Plane::None, false, false},
}};

constexpr const AngleDefinition& definition(AngleId id) noexcept { return kAngleTable[index(id)]; }

// Left/right counterpart of an angle; midline angles map to themselves.
constexpr AngleId mirror(AngleId id) noexcept {
  const auto i = index(id);
  if (i >= index(AngleId::RightHipFlexion) && i <= index(AngleId::RightAnkleAngle)) return AngleId(i + 5);
  if (i >= index(AngleId::LeftHipFlexion) && i <= index(AngleId::LeftAnkleAngle)) return AngleId(i - 5);
  if (i >= index(AngleId::RightShoulderFlexion) && i <= index(AngleId::RightElbowFlexion)) return AngleId(i + 4);
  if (i >= index(AngleId::LeftShoulderFlexion) && i <= index(AngleId::LeftElbowFlexion)) return AngleId(i - 4);
  return id;
}

struct AngleSeries {
  AngleId id;
  std::vector<double> values;  // degrees
  double fps = 20.0;

  const AngleDefinition& def() const noexcept { return definition(id); }
};

// ---------------------------------------------------------------------------
// Per-frame kinematic chain

namespace detail {

inline double deg_atan2(double y, double x) { return std::atan2(y, x) * kRadToDeg; }

// Unsigned angle between two vectors; atan2 form stays accurate near 0 and 180.
inline double angle_between(const Vec3& a, const Vec3& b) {
  return deg_atan2(a.cross(b).norm(), a.dot(b));
}

inline constexpr double kSeedTolerance = 0.1;

// Frame whose e_y follows `axis`. The lateral seed is orthogonalized against
// the axis; if it is nearly parallel, the forward fallback defines e_z
// instead. Throws if both are degenerate.
inline CoordinateFrame frame_along(const Vec3& origin, const Vec3& axis, const Vec3& lateral_seed,
                                   const Vec3& forward_fallback) {
  const double length = axis.norm();
  if (length <= 1e-12) throw Error(ErrorCode::DegenerateLandmarks, "zero-length bone");
  CoordinateFrame f;
  f.origin = origin;
  f.e_y = axis / length;
  const Vec3 x = lateral_seed - lateral_seed.dot(f.e_y) * f.e_y;
  if (x.norm() >= kSeedTolerance * lateral_seed.norm() && x.norm() > 1e-12) {
    f.e_x = x.normalized();
    f.e_z = f.e_x.cross(f.e_y);
    return f;
  }
  const Vec3 z = forward_fallback - forward_fallback.dot(f.e_y) * f.e_y;
  if (z.norm() <= 1e-12) throw Error(ErrorCode::DegenerateLandmarks, "cannot orient joint frame");
  f.e_z = z.normalized();
  f.e_x = f.e_y.cross(f.e_z);
  return f;
}

// Twist of a distal reference about a frame's e_y, measured from e_z toward
// the medial side. Positive means internal rotation for both limbs. Returns
// NaN when the reference is too close to the bone axis to carry a direction.
inline double limb_twist(const CoordinateFrame& bone_frame, const Vec3& reference, bool left_side) {
  const Vec3 r = bone_frame.local(reference);
  const double planar = std::hypot(r.x(), r.z());
  if (!(planar >= kSeedTolerance * r.norm()) || planar <= 1e-12) return std::numeric_limits<double>::quiet_NaN();
  return deg_atan2(left_side ? -r.x() : r.x(), r.z());
}

inline Vec3 safe_normalized(const Vec3& v) {
  const double n = v.norm();
  return n > 1e-12 ? Vec3(v / n) : Vec3::Zero();
}

}  // namespace detail

struct KinematicChain {
  CoordinateFrame pelvis;
  CoordinateFrame lumbar;
  CoordinateFrame left_hip, right_hip;
  CoordinateFrame left_knee, right_knee;
  CoordinateFrame left_shoulder, right_shoulder;
};

inline KinematicChain build_chain(const Pose& pose) {
  auto p = [&](Joint j) -> const Vec3& { return pose[index(j)]; };
  KinematicChain c;
  // Up hint from the torso keeps the root frame intrinsic to the body.
  c.pelvis = body_local_frame(p(Joint::Pelvis), p(Joint::LeftHip), p(Joint::RightHip),
                              Vec3(p(Joint::Neck) - p(Joint::Pelvis)));
  c.lumbar = detail::frame_along(p(Joint::Spine3), p(Joint::Spine3) - p(Joint::Spine1),
                                 p(Joint::LeftCollar) - p(Joint::RightCollar), c.pelvis.e_z);
  c.left_hip = detail::frame_along(p(Joint::LeftHip), p(Joint::LeftHip) - p(Joint::LeftKnee), c.pelvis.e_x,
                                   c.pelvis.e_z);
  c.right_hip = detail::frame_along(p(Joint::RightHip), p(Joint::RightHip) - p(Joint::RightKnee), c.pelvis.e_x,
                                    c.pelvis.e_z);
  c.left_knee = detail::frame_along(p(Joint::LeftKnee), p(Joint::LeftKnee) - p(Joint::LeftAnkle), c.left_hip.e_x,
                                    c.left_hip.e_z);
  c.right_knee = detail::frame_along(p(Joint::RightKnee), p(Joint::RightKnee) - p(Joint::RightAnkle),
                                     c.right_hip.e_x, c.right_hip.e_z);
  c.left_shoulder = detail::frame_along(p(Joint::LeftShoulder), p(Joint::LeftShoulder) - p(Joint::LeftElbow),
                                        c.lumbar.e_x, c.lumbar.e_z);
  c.right_shoulder = detail::frame_along(p(Joint::RightShoulder), p(Joint::RightShoulder) - p(Joint::RightElbow),
                                         c.lumbar.e_x, c.lumbar.e_z);
  return c;
}

// Yaw of the body forward axis about the world up axis, relative to world
// forward; positive turns toward the subject's left.
inline double heading_yaw(const CoordinateFrame& body, const WorldAxes& world) {
  Vec3 heading = body.e_z - body.e_z.dot(world.up) * world.up;
  if (heading.norm() <= 1e-12) heading = world.forward;
  return detail::deg_atan2(world.forward.cross(heading).dot(world.up), world.forward.dot(heading));
}

// Raw angles for one pose. Twist angles are NaN where undefined; the
// sequence-level routine fills them.
inline std::array<double, kAngleCount> compute_pose_angles(const Pose& pose, const WorldAxes& world) {
  using detail::deg_atan2;
  auto p = [&](Joint j) -> const Vec3& { return pose[index(j)]; };
  const KinematicChain c = build_chain(pose);
  std::array<double, kAngleCount> out{};
  auto set = [&](AngleId id, double v) { out[index(id)] = v; };

  // Pelvis, in the global frame via the heading-aligned vertical plane.
  Vec3 heading = c.pelvis.e_z - c.pelvis.e_z.dot(world.up) * world.up;
  heading = heading.norm() > 1e-12 ? Vec3(heading.normalized()) : world.forward;
  const Vec3 across = world.up.cross(heading);
  set(AngleId::PelvisTilt, deg_atan2(c.pelvis.e_y.dot(heading), c.pelvis.e_y.dot(world.up)));
  set(AngleId::PelvisList, deg_atan2(c.pelvis.e_y.dot(across), c.pelvis.e_y.dot(world.up)));
  set(AngleId::PelvisRotation, heading_yaw(c.pelvis, world));

  // Lumbar spine, in the pelvis frame.
  const Vec3 spine = c.pelvis.local(p(Joint::Spine3) - p(Joint::Spine1));
  set(AngleId::LumbarExtension, deg_atan2(spine.z(), spine.y()));
  set(AngleId::LumbarLateralBending, deg_atan2(spine.x(), spine.y()));
  {
    const Vec3& axis = c.lumbar.e_y;
    const Vec3 from = detail::safe_normalized(c.pelvis.e_x - c.pelvis.e_x.dot(axis) * axis);
    const Vec3& to = c.lumbar.e_x;
    set(AngleId::LumbarRotation, deg_atan2(from.cross(to).dot(axis), from.dot(to)));
  }

  // Neck, in the lumbar-spine frame.
  const Vec3 neck = c.lumbar.local(p(Joint::Head) - p(Joint::Neck));
  set(AngleId::NeckFlexion, deg_atan2(neck.z(), neck.y()));
  set(AngleId::NeckLateralTilt, deg_atan2(neck.x(), neck.y()));

  struct Leg {
    Joint hip, knee, ankle, foot;
    const CoordinateFrame& hip_frame;
    bool left;
    AngleId flexion, adduction, rotation, knee_angle, ankle_angle;
  };
  const std::array<Leg, 2> legs{{
      {Joint::RightHip, Joint::RightKnee, Joint::RightAnkle, Joint::RightFoot, c.right_hip, false,
       AngleId::RightHipFlexion, AngleId::RightHipAdduction, AngleId::RightHipRotation, AngleId::RightKneeAngle,
       AngleId::RightAnkleAngle},
      {Joint::LeftHip, Joint::LeftKnee, Joint::LeftAnkle, Joint::LeftFoot, c.left_hip, true, AngleId::LeftHipFlexion,
       AngleId::LeftHipAdduction, AngleId::LeftHipRotation, AngleId::LeftKneeAngle, AngleId::LeftAnkleAngle},
  }};
  for (const auto& leg : legs) {
    const Vec3 femur_world = p(leg.knee) - p(leg.hip);
    const Vec3 tibia_world = p(leg.ankle) - p(leg.knee);
    const Vec3 foot_world = p(leg.foot) - p(leg.ankle);
    const Vec3 femur = c.pelvis.local(femur_world);
    // Flexion is measured from the downward axis so that standing reads 0.
    set(leg.flexion, deg_atan2(femur.z(), -femur.y()));
    set(leg.adduction, deg_atan2(leg.left ? -femur.x() : femur.x(), -femur.y()));
    const Vec3 reference = detail::safe_normalized(foot_world) - detail::safe_normalized(tibia_world);
    set(leg.rotation, detail::limb_twist(leg.hip_frame, reference, leg.left));
    set(leg.knee_angle, detail::angle_between(femur_world, tibia_world));
    set(leg.ankle_angle, 90.0 - detail::angle_between(-tibia_world, foot_world));
  }

  struct Arm {
    Joint shoulder, elbow, wrist;
    const CoordinateFrame& shoulder_frame;
    bool left;
    AngleId flexion, adduction, rotation, elbow_angle;
  };
  const std::array<Arm, 2> arms{{
      {Joint::RightShoulder, Joint::RightElbow, Joint::RightWrist, c.right_shoulder, false,
       AngleId::RightShoulderFlexion, AngleId::RightShoulderAdduction, AngleId::RightShoulderRotation,
       AngleId::RightElbowFlexion},
      {Joint::LeftShoulder, Joint::LeftElbow, Joint::LeftWrist, c.left_shoulder, true, AngleId::LeftShoulderFlexion,
       AngleId::LeftShoulderAdduction, AngleId::LeftShoulderRotation, AngleId::LeftElbowFlexion},
  }};
  for (const auto& arm : arms) {
    const Vec3 upper_world = p(arm.elbow) - p(arm.shoulder);
    const Vec3 fore_world = p(arm.wrist) - p(arm.elbow);
    const Vec3 upper = c.lumbar.local(upper_world);
    set(arm.flexion, deg_atan2(upper.z(), -upper.y()));
    set(arm.adduction, deg_atan2(arm.left ? -upper.x() : upper.x(), -upper.y()));
    set(arm.rotation, detail::limb_twist(arm.shoulder_frame, fore_world, arm.left));
    set(arm.elbow_angle, detail::angle_between(upper_world, fore_world));
  }
  return out;
}

// Phase unwrap: keeps the first sample and adds the multiple of 360 that
// brings each step into [-180, 180).
inline std::vector<double> unwrap_degrees(const std::vector<double>& values) {
  std::vector<double> out(values.size());
  if (values.empty()) return out;
  out[0] = values[0];
  for (std::size_t i = 1; i < values.size(); ++i) {
    double step = std::fmod(values[i] - values[i - 1], 360.0);
    if (step >= 180.0) step -= 360.0;
    if (step < -180.0) step += 360.0;
    out[i] = out[i - 1] + step;
  }
  return out;
}

inline AngleSeries unwrap(const AngleSeries& series) {
  AngleSeries out = series;
  out.values = unwrap_degrees(series.values);
  return out;
}

namespace detail {

// Carry the last defined value forward; leading gaps take the first defined
// value and an all-undefined series reads 0.
inline void fill_undefined(std::vector<double>& values) {
  std::optional<double> first;
  for (double v : values) {
    if (!std::isnan(v)) {
      first = v;
      break;
    }
  }
  double last = first.value_or(0.0);
  for (double& v : values) {
    if (std::isnan(v)) {
      v = last;
    } else {
      last = v;
    }
  }
}

}  // namespace detail

inline std::vector<AngleSeries> compute_joint_angles(const JointSequence& seq) {
  const WorldAxes world = world_axes(seq.up_axis);
  std::vector<AngleSeries> series(kAngleCount);
  for (std::size_t k = 0; k < kAngleCount; ++k) {
    series[k].id = AngleId(k);
    series[k].fps = seq.fps;
    series[k].values.resize(seq.frames.size());
  }
  for (std::size_t t = 0; t < seq.frames.size(); ++t) {
    std::array<double, kAngleCount> angles;
    try {
      angles = compute_pose_angles(seq.frames[t], world);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " at frame " + std::to_string(t));
    }
    for (std::size_t k = 0; k < kAngleCount; ++k) series[k].values[t] = angles[k];
  }
  for (auto& s : series) {
    detail::fill_undefined(s.values);
    if (s.def().wrappable) s.values = unwrap_degrees(s.values);
  }
  return series;
}

inline std::string_view to_string(ParentFrame f) noexcept {
  switch (f) {
    case ParentFrame::Global: return "global";
    case ParentFrame::Pelvis: return "pelvis";
    case ParentFrame::LumbarSpine: return "lumbar_spine";
    case ParentFrame::Hip: return "hip";
    case ParentFrame::Knee: return "knee";
    case ParentFrame::Shoulder: return "shoulder";
  }
  return "global";
}

inline std::string_view to_string(Plane p) noexcept {
  switch (p) {
    case Plane::Sagittal: return "sagittal";
    case Plane::Coronal: return "coronal";
    case Plane::Transverse: return "transverse";
    case Plane::None: return "none";
  }
  return "none";
}

// Machine-readable dump of the angle table.
inline nlohmann::json angle_definitions_json() {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& d : kAngleTable) {
    out.push_back({{"id", std::string(d.key)},
                   {"group", std::string(group_name(d.group))},
                   {"display_phrase", std::string(d.display_phrase)},
                   {"parent_frame", std::string(to_string(d.parent_frame))},
                   {"bone", {std::string(SkeletonLayout::name_of(d.bone_from)),
                             std::string(SkeletonLayout::name_of(d.bone_to))}},
                   {"plane", std::string(to_string(d.plane))},
                   {"signed", d.is_signed},
                   {"wrappable", d.wrappable}});
  }
  return out;
}

}  // namespace smd
