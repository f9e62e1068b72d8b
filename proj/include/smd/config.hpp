#pragma once

#include <cmath>
#include <string>

#include "smd/error.hpp"

namespace smd {

inline constexpr int kAngleCount = 26;

enum class TrajectoryMode { None, Egocentric, Absolute };

struct JointSelection {
  // 0 means all 26 angles; otherwise keep the k most active ones.
  int top_k = 0;

  static JointSelection all() { return {}; }
  static JointSelection top(int k) { return {k}; }
  bool is_all() const noexcept { return top_k == 0 || top_k == kAngleCount; }
  int count() const noexcept { return is_all() ? kAngleCount : top_k; }
  friend bool operator==(const JointSelection&, const JointSelection&) = default;
};

struct SmdConfig {
  double delta_deg = 5.0;          // minimum angular change for joint segments
  int smooth_window = 7;           // moving-average window in frames (odd)
  double pos_threshold_m = 0.03;   // minimum translation change for trajectory segments
  double yaw_threshold_deg = 15.0; // minimum body-yaw change for trajectory segments
  double cycle_consistency = 0.6;  // autocorrelation / amplitude-consistency threshold
  JointSelection joint_selection = JointSelection::all();
  TrajectoryMode trajectory_mode = TrajectoryMode::Absolute;

  // Cycle-train realization constants; not swept by the CLI.
  int min_cycle_segments = 4;

  friend bool operator==(const SmdConfig&, const SmdConfig&) = default;
};

inline void validate(const SmdConfig& cfg) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (!(std::isfinite(cfg.delta_deg) && cfg.delta_deg > 0)) fail("delta_deg must be > 0");
  if (cfg.smooth_window < 1 || cfg.smooth_window % 2 == 0) fail("smooth_window must be odd and >= 1");
  if (!(std::isfinite(cfg.pos_threshold_m) && cfg.pos_threshold_m > 0)) fail("pos_threshold_m must be > 0");
  if (!(std::isfinite(cfg.yaw_threshold_deg) && cfg.yaw_threshold_deg > 0)) fail("yaw_threshold_deg must be > 0");
  if (!(cfg.cycle_consistency > 0 && cfg.cycle_consistency <= 1)) fail("cycle_consistency must be in (0, 1]");
  if (cfg.joint_selection.top_k < 0 || cfg.joint_selection.top_k > kAngleCount) fail("top-k must be in [1, 26]");
  if (cfg.min_cycle_segments < 3) fail("min_cycle_segments must be >= 3");
}

inline std::string to_string(TrajectoryMode mode) {
  switch (mode) {
    case TrajectoryMode::None: return "none";
    case TrajectoryMode::Egocentric: return "egocentric";
    case TrajectoryMode::Absolute: return "absolute";
  }
  return "absolute";
}

}  // namespace smd
