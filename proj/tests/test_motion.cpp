#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "smd/fixtures.hpp"
#include "smd/motion_io.hpp"

namespace {

using smd::ErrorCode;

template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const smd::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no smd::Error thrown";
  return ErrorCode::IoError;
}

std::string two_frame_json(const std::string& first_coord = "0", const std::string& layout = "smpl22") {
  std::string frame = "[";
  for (int j = 0; j < 22; ++j) frame += std::string(j ? "," : "") + "[" + std::to_string(j) + ",1,2]";
  frame += "]";
  std::string first = frame;
  first.replace(2, 1, first_coord);
  return R"({"fps": 20, "up_axis": "y", "layout": ")" + layout + R"(", "frames": [)" + first + "," + frame + "]}";
}

}  // namespace

TEST(Skeleton, MirrorIsAnInvolution) {
  for (std::size_t j = 0; j < smd::kJointCount; ++j) {
    const auto joint = static_cast<smd::Joint>(j);
    EXPECT_EQ(smd::SkeletonLayout::mirror(smd::SkeletonLayout::mirror(joint)), joint);
  }
  EXPECT_EQ(smd::SkeletonLayout::mirror(smd::Joint::LeftHip), smd::Joint::RightHip);
  EXPECT_EQ(smd::SkeletonLayout::mirror(smd::Joint::Head), smd::Joint::Head);
}

TEST(Validate, RejectsShortSequencesAndBadRates) {
  smd::JointSequence seq = smd::fixtures::static_pose(1);
  EXPECT_EQ(code_of([&] { smd::validate(seq); }), ErrorCode::InvalidSequence);
  seq = smd::fixtures::static_pose(5);
  seq.fps = 0.0;
  EXPECT_EQ(code_of([&] { smd::validate(seq); }), ErrorCode::InvalidSequence);
}

TEST(Validate, RejectsNonFiniteCoordinates) {
  smd::JointSequence seq = smd::fixtures::static_pose(5);
  seq.frames[3][7].y() = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(code_of([&] { smd::validate(seq); }), ErrorCode::NonFiniteValue);
}

TEST(Validate, WarnsOnPelvisTeleport) {
  smd::JointSequence seq = smd::fixtures::static_pose(5);
  for (auto& p : seq.frames[4]) p.z() += 3.0;
  const auto report = smd::validate(seq);
  ASSERT_EQ(report.warnings.size(), 1u);
}

TEST(MotionJson, ParsesMinimalDocument) {
  const auto seq = smd::parse_motion_json(two_frame_json());
  EXPECT_EQ(seq.frame_count(), 2u);
  EXPECT_DOUBLE_EQ(seq.fps, 20.0);
  EXPECT_EQ(seq.up_axis, smd::UpAxis::Y);
  EXPECT_DOUBLE_EQ(seq.at(1, smd::Joint::RightWrist).x(), 21.0);
}

TEST(MotionJson, ErrorKinds) {
  EXPECT_EQ(code_of([] { smd::parse_motion_json("{not json"); }), ErrorCode::MalformedInput);
  EXPECT_EQ(code_of([] { smd::parse_motion_json(two_frame_json("NaN")); }), ErrorCode::NonFiniteValue);
  EXPECT_EQ(code_of([] { smd::parse_motion_json(two_frame_json("null")); }), ErrorCode::NonFiniteValue);
  EXPECT_EQ(code_of([] { smd::parse_motion_json(two_frame_json("0", "smplx")); }), ErrorCode::UnsupportedLayout);
  EXPECT_EQ(code_of([] { smd::parse_motion_json(R"({"fps":20,"frames":[[[0,0,0]]]})"); }),
            ErrorCode::MalformedInput);
}

TEST(MotionBinary, DetectsTruncationAndTrailingBytes) {
  std::ostringstream out;
  smd::write_motion_binary(out, smd::fixtures::static_pose(4));
  const std::string bytes = out.str();
  EXPECT_EQ(bytes.size(), smd::kBinaryHeaderBytes + 4 * 22 * 3 * 4);
  EXPECT_EQ(code_of([&] { smd::parse_motion_binary(bytes.substr(0, bytes.size() - 1)); }), ErrorCode::MalformedInput);
  EXPECT_EQ(code_of([&] { smd::parse_motion_binary(bytes + "x"); }), ErrorCode::MalformedInput);
  EXPECT_EQ(code_of([&] { smd::parse_motion_binary("SMD2" + bytes.substr(4)); }), ErrorCode::MalformedInput);
}

TEST(MotionFormat, SniffsByMagic) {
  std::ostringstream bin, json;
  const auto seq = smd::fixtures::static_pose(3);
  smd::write_motion_binary(bin, seq);
  smd::write_motion_json(json, seq);
  EXPECT_EQ(smd::sniff_format(bin.str()), smd::MotionFormat::Binary);
  EXPECT_EQ(smd::sniff_format(json.str()), smd::MotionFormat::Json);
}

// Property: writing then reading preserves every coordinate (exactly for
// JSON, to float precision for the binary format) on random motions.
TEST(MotionRoundTrip, RandomMotionsBothFormats) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto up = seed % 2 ? smd::UpAxis::Y : smd::UpAxis::Z;
    const auto seq = smd::fixtures::random_motion(seed, 30, 20.0, up);
    for (auto format : {smd::MotionFormat::Json, smd::MotionFormat::Binary}) {
      std::stringstream buffer;
      smd::write_joint_sequence(buffer, seq, format);
      const auto back = smd::load_joint_sequence(buffer, format);
      ASSERT_EQ(back.frame_count(), seq.frame_count());
      EXPECT_EQ(back.up_axis, seq.up_axis);
      EXPECT_DOUBLE_EQ(back.fps, seq.fps);
      const double tol = format == smd::MotionFormat::Json ? 0.0 : 1e-6;
      for (std::size_t t = 0; t < seq.frame_count(); ++t) {
        for (std::size_t j = 0; j < smd::kJointCount; ++j) {
          ASSERT_LE((back.frames[t][j] - seq.frames[t][j]).cwiseAbs().maxCoeff(), tol) << "seed " << seed;
        }
      }
    }
  }
}
