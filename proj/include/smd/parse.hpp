#pragma once

#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "smd/error.hpp"
#include "smd/tempseg.hpp"

// Reader for rendered SMD text, recovering segment kinds, values and times at
// render precision.
namespace smd {

struct ParsedSegment {
  SegmentKind kind = SegmentKind::Holds;
  std::string verb;
  double v_start = 0.0;
  double v_end = 0.0;
  int cycles = 0;
  double t_start = 0.0;
  double t_end = 0.0;
};

struct ParsedLine {
  std::string label;
  std::vector<ParsedSegment> segments;
};

struct ParsedGroup {
  std::string name;
  std::vector<ParsedLine> lines;
};

struct ParsedSmd {
  double duration_s = 0.0;
  std::size_t frame_count = 0;
  double fps = 0.0;
  bool has_trajectory = false;
  std::string summary;
  std::vector<ParsedLine> trajectory;
  std::vector<ParsedGroup> joints;
};

namespace detail {

inline const std::regex& segment_regex() {
  static const std::regex re(
      R"(^(increases|decreases|rises|lowers|moves forward|moves backward|moves left|moves right|turns left|turns right) )"
      R"((-?\d+(?:\.\d+)?)(?:°|m) → (-?\d+(?:\.\d+)?)(?:°|m) \[(\d+\.\d)s–(\d+\.\d)s\]$)");
  return re;
}

inline const std::regex& hold_regex() {
  static const std::regex re(R"(^holds at (-?\d+(?:\.\d+)?)(?:°|m) \[(\d+\.\d)s–(\d+\.\d)s\]$)");
  return re;
}

inline const std::regex& repeat_regex() {
  static const std::regex re(R"(^repeats (\d+) cycles (-?\d+)°–(-?\d+)° \[(\d+\.\d)s–(\d+\.\d)s\]$)");
  return re;
}

inline bool positive_verb(std::string_view verb) {
  return verb == "increases" || verb == "rises" || verb == "moves forward" || verb == "moves left" ||
         verb == "turns left";
}

}  // namespace detail

inline ParsedSegment parse_segment(const std::string& text) {
  std::smatch m;
  ParsedSegment s;
  if (std::regex_match(text, m, detail::segment_regex())) {
    s.verb = m[1];
    s.kind = detail::positive_verb(s.verb) ? SegmentKind::Increases : SegmentKind::Decreases;
    s.v_start = std::stod(m[2]);
    s.v_end = std::stod(m[3]);
    s.t_start = std::stod(m[4]);
    s.t_end = std::stod(m[5]);
  } else if (std::regex_match(text, m, detail::hold_regex())) {
    s.verb = "holds at";
    s.kind = SegmentKind::Holds;
    s.v_start = s.v_end = std::stod(m[1]);
    s.t_start = std::stod(m[2]);
    s.t_end = std::stod(m[3]);
  } else if (std::regex_match(text, m, detail::repeat_regex())) {
    s.verb = "repeats";
    s.kind = SegmentKind::Repeats;
    s.cycles = std::stoi(m[1]);
    s.v_start = std::stod(m[2]);
    s.v_end = std::stod(m[3]);
    s.t_start = std::stod(m[4]);
    s.t_end = std::stod(m[5]);
  } else {
    throw Error(ErrorCode::MalformedInput, "unrecognized segment \"" + text + "\"");
  }
  return s;
}

// "Label: seg, seg, ..." -> label plus parsed segments.
inline ParsedLine parse_segment_line(const std::string& line) {
  const auto colon = line.find(": ");
  if (colon == std::string::npos) throw Error(ErrorCode::MalformedInput, "missing ': ' in \"" + line + "\"");
  ParsedLine out;
  out.label = line.substr(0, colon);
  std::size_t pos = colon + 2;
  while (pos <= line.size()) {
    const auto comma = line.find(", ", pos);
    const auto end = comma == std::string::npos ? line.size() : comma;
    out.segments.push_back(parse_segment(line.substr(pos, end - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 2;
  }
  return out;
}

inline ParsedSmd parse_smd(std::string_view text) {
  static const std::regex meta(R"(^Motion: (\d+\.\d)s \((\d+) frames at (\d+(?:\.\d+)?) FPS\)$)");
  std::istringstream in{std::string(text)};
  std::string line;
  ParsedSmd out;
  if (!std::getline(in, line)) throw Error(ErrorCode::MalformedInput, "empty SMD");
  std::smatch m;
  if (!std::regex_match(line, m, meta)) throw Error(ErrorCode::MalformedInput, "bad meta line \"" + line + "\"");
  out.duration_s = std::stod(m[1]);
  out.frame_count = std::stoul(m[2]);
  out.fps = std::stod(m[3]);

  enum class Block { None, Trajectory, Joints } block = Block::None;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line == "Global Trajectory:") {
      block = Block::Trajectory;
      out.has_trajectory = true;
    } else if (line == "Joint Angles:") {
      block = Block::Joints;
    } else if (block == Block::Trajectory) {
      if (line.rfind("Summary: ", 0) == 0) {
        out.summary = line;
      } else {
        out.trajectory.push_back(parse_segment_line(line));
      }
    } else if (block == Block::Joints) {
      if (line.front() == '[' && line.back() == ']') {
        out.joints.push_back({line.substr(1, line.size() - 2), {}});
      } else {
        if (out.joints.empty()) throw Error(ErrorCode::MalformedInput, "angle line before any group header");
        out.joints.back().lines.push_back(parse_segment_line(line));
      }
    } else {
      throw Error(ErrorCode::MalformedInput, "unexpected line \"" + line + "\"");
    }
  }
  return out;
}

}  // namespace smd
