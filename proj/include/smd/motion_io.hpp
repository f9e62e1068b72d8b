#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "smd/error.hpp"
#include "smd/motion.hpp"

namespace smd {

enum class MotionFormat { Json, Binary };

inline constexpr std::array<char, 4> kBinaryMagic{'S', 'M', 'D', '1'};
inline constexpr std::uint32_t kBinaryVersion = 1;
inline constexpr std::size_t kBinaryHeaderBytes = 4 + 4 + 4 + 4 + 1 + 4;

namespace detail {

// nlohmann::json rejects the NaN/Infinity literals that Python's json module
// emits; rewrite them (outside of strings) into sentinel strings so they can
// be reported as non-finite values instead of syntax errors.
inline std::string quote_nonfinite_literals(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool in_string = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      out.push_back(c);
      if (c == '\\' && i + 1 < text.size()) {
        out.push_back(text[++i]);
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
      out.push_back(c);
      continue;
    }
    auto starts = [&](std::string_view token) { return text.substr(i, token.size()) == token; };
    if (starts("NaN")) {
      out += "\"__nonfinite__\"";
      i += 2;
    } else if (starts("-Infinity")) {
      out += "\"__nonfinite__\"";
      i += 8;
    } else if (starts("Infinity")) {
      out += "\"__nonfinite__\"";
      i += 7;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

inline double json_coordinate(const nlohmann::json& value, std::size_t frame) {
  if (value.is_number()) return value.get<double>();
  if (value.is_null() || (value.is_string() && value.get<std::string>() == "__nonfinite__")) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  throw Error(ErrorCode::MalformedInput, "coordinate at frame " + std::to_string(frame) + " is not a number");
}

inline void put_u32(std::ostream& out, std::uint32_t v) {
  const unsigned char bytes[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                                  static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(bytes), 4);
}

inline void put_f32(std::ostream& out, float f) { put_u32(out, std::bit_cast<std::uint32_t>(f)); }

inline std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

inline float get_f32(const unsigned char* p) { return std::bit_cast<float>(get_u32(p)); }

}  // namespace detail

inline JointSequence parse_motion_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(detail::quote_nonfinite_literals(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedInput, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::MalformedInput, "top-level JSON value must be an object");

  JointSequence seq;
  if (doc.contains("layout")) {
    if (!doc["layout"].is_string()) throw Error(ErrorCode::MalformedInput, "\"layout\" must be a string");
    const auto layout = doc["layout"].get<std::string>();
    if (layout != SkeletonLayout::name()) throw Error(ErrorCode::UnsupportedLayout, "layout \"" + layout + "\"");
  }
  if (doc.contains("fps")) {
    if (!doc["fps"].is_number()) throw Error(ErrorCode::MalformedInput, "\"fps\" must be a number");
    seq.fps = doc["fps"].get<double>();
  }
  if (doc.contains("up_axis")) {
    const auto& up = doc["up_axis"];
    if (up == "y" || up == "Y") {
      seq.up_axis = UpAxis::Y;
    } else if (up == "z" || up == "Z") {
      seq.up_axis = UpAxis::Z;
    } else {
      throw Error(ErrorCode::MalformedInput, "\"up_axis\" must be \"y\" or \"z\"");
    }
  }
  if (!doc.contains("frames") || !doc["frames"].is_array()) {
    throw Error(ErrorCode::MalformedInput, "missing \"frames\" array");
  }
  const auto& frames = doc["frames"];
  seq.frames.reserve(frames.size());
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const auto& frame = frames[t];
    if (!frame.is_array() || frame.size() != kJointCount) {
      throw Error(ErrorCode::MalformedInput,
                  "frame " + std::to_string(t) + " must hold exactly " + std::to_string(kJointCount) + " joints");
    }
    Pose pose;
    for (std::size_t j = 0; j < kJointCount; ++j) {
      const auto& p = frame[j];
      if (!p.is_array() || p.size() != 3) {
        throw Error(ErrorCode::MalformedInput, "joint " + std::to_string(j) + " of frame " + std::to_string(t) +
                                                   " must be an [x, y, z] triple");
      }
      pose[j] = Vec3(detail::json_coordinate(p[0], t), detail::json_coordinate(p[1], t),
                     detail::json_coordinate(p[2], t));
    }
    seq.frames.push_back(pose);
  }
  validate(seq);
  return seq;
}

inline JointSequence parse_motion_binary(std::string_view bytes) {
  const auto* data = reinterpret_cast<const unsigned char*>(bytes.data());
  if (bytes.size() < kBinaryHeaderBytes) throw Error(ErrorCode::MalformedInput, "truncated header");
  if (std::memcmp(data, kBinaryMagic.data(), kBinaryMagic.size()) != 0) {
    throw Error(ErrorCode::MalformedInput, "bad magic bytes");
  }
  const std::uint32_t version = detail::get_u32(data + 4);
  if (version != kBinaryVersion) throw Error(ErrorCode::MalformedInput, "unsupported version " + std::to_string(version));
  const std::uint32_t frame_count = detail::get_u32(data + 8);
  const std::uint32_t joint_count = detail::get_u32(data + 12);
  if (joint_count != kJointCount) throw Error(ErrorCode::UnsupportedLayout, std::to_string(joint_count) + " joints");
  const std::uint8_t up = data[16];
  if (up > 1) throw Error(ErrorCode::MalformedInput, "bad up_axis byte");

  JointSequence seq;
  seq.up_axis = up == 0 ? UpAxis::Y : UpAxis::Z;
  seq.fps = detail::get_f32(data + 17);

  const std::size_t expected = kBinaryHeaderBytes + std::size_t{frame_count} * kJointCount * 3 * sizeof(float);
  if (bytes.size() < expected) {
    throw Error(ErrorCode::MalformedInput, "truncated data: header declares " + std::to_string(frame_count) +
                                               " frames, file holds " +
                                               std::to_string((bytes.size() - kBinaryHeaderBytes) /
                                                              (kJointCount * 3 * sizeof(float))));
  }
  if (bytes.size() > expected) throw Error(ErrorCode::MalformedInput, "trailing bytes after frame data");

  seq.frames.resize(frame_count);
  const unsigned char* p = data + kBinaryHeaderBytes;
  for (auto& pose : seq.frames) {
    for (auto& joint : pose) {
      joint = Vec3(detail::get_f32(p), detail::get_f32(p + 4), detail::get_f32(p + 8));
      p += 12;
    }
  }
  validate(seq);
  return seq;
}

inline JointSequence load_joint_sequence(std::istream& in, MotionFormat format) {
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw Error(ErrorCode::IoError, "failed to read motion stream");
  return format == MotionFormat::Json ? parse_motion_json(bytes) : parse_motion_binary(bytes);
}

inline MotionFormat sniff_format(std::string_view bytes) {
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kBinaryMagic.data(), 4) == 0) return MotionFormat::Binary;
  return MotionFormat::Json;
}

inline nlohmann::json motion_to_json(const JointSequence& seq) {
  nlohmann::json frames = nlohmann::json::array();
  for (const auto& pose : seq.frames) {
    nlohmann::json frame = nlohmann::json::array();
    for (const auto& p : pose) frame.push_back({p.x(), p.y(), p.z()});
    frames.push_back(std::move(frame));
  }
  return {{"fps", seq.fps},
          {"layout", std::string(SkeletonLayout::name())},
          {"up_axis", seq.up_axis == UpAxis::Y ? "y" : "z"},
          {"frames", std::move(frames)}};
}

inline void write_motion_json(std::ostream& out, const JointSequence& seq) {
  out << motion_to_json(seq).dump() << '\n';
  if (!out) throw Error(ErrorCode::IoError, "failed to write motion JSON");
}

// Coordinates and fps are narrowed to f32.
inline void write_motion_binary(std::ostream& out, const JointSequence& seq) {
  out.write(kBinaryMagic.data(), kBinaryMagic.size());
  detail::put_u32(out, kBinaryVersion);
  detail::put_u32(out, static_cast<std::uint32_t>(seq.frames.size()));
  detail::put_u32(out, static_cast<std::uint32_t>(kJointCount));
  const char up = seq.up_axis == UpAxis::Y ? 0 : 1;
  out.write(&up, 1);
  detail::put_f32(out, static_cast<float>(seq.fps));
  for (const auto& pose : seq.frames) {
    for (const auto& p : pose) {
      detail::put_f32(out, static_cast<float>(p.x()));
      detail::put_f32(out, static_cast<float>(p.y()));
      detail::put_f32(out, static_cast<float>(p.z()));
    }
  }
  if (!out) throw Error(ErrorCode::IoError, "failed to write motion binary");
}

inline void write_joint_sequence(std::ostream& out, const JointSequence& seq, MotionFormat format) {
  if (format == MotionFormat::Json) {
    write_motion_json(out, seq);
  } else {
    write_motion_binary(out, seq);
  }
}

}  // namespace smd
