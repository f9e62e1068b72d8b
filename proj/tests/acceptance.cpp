// Acceptance checks for the conversion pipeline. One PASS/FAIL line per
// criterion; the exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "smd/fixtures.hpp"
#include "smd/parse.hpp"
#include "smd/prompting.hpp"
#include "smd/smd.hpp"

namespace {

using Clock = std::chrono::steady_clock;
using smd::AngleId;
using smd::SegmentKind;

struct Result {
  bool pass = true;
  std::string detail;
};

std::string printf_string(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

smd::SmdConfig top(int k) {
  smd::SmdConfig cfg;
  cfg.joint_selection = k == 26 ? smd::JointSelection::all() : smd::JointSelection::top(k);
  return cfg;
}

Result determinism() {
  std::vector<smd::JointSequence> motions;
  for (std::uint64_t seed = 0; seed < 100; ++seed) motions.push_back(smd::fixtures::random_motion(seed, 60 + seed % 141));
  const auto start = Clock::now();
  std::size_t mismatches = 0;
  for (const auto& m : motions) mismatches += smd::convert(m) != smd::convert(m);
  const double elapsed = seconds_since(start);
  return {mismatches == 0 && elapsed < 1.0,
          printf_string("%zu/100 differ, both passes %.3f s (limit 1 s)", mismatches, elapsed)};
}

Result se3_invariance() {
  constexpr double kTol = 1e-6;
  std::mt19937_64 rng(7001);
  std::uniform_real_distribution<double> offset(-5.0, 5.0), yaw(-180.0, 180.0);
  double worst_body = 0.0, worst_yaw = 0.0, worst_tilt = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto seq = smd::fixtures::random_motion(5000 + seed, 80, 20.0, seed % 2 ? smd::UpAxis::Z : smd::UpAxis::Y);
    const auto base = smd::compute_joint_angles(seq);

    const auto moved = oracle::transformed(seq, oracle::random_rotation(rng), smd::Vec3(offset(rng), offset(rng), offset(rng)));
    const auto rigid = smd::compute_joint_angles(moved);
    for (std::size_t k = smd::index(AngleId::LumbarExtension); k < smd::kAngleCount; ++k) {
      for (std::size_t t = 0; t < base[k].values.size(); ++t) {
        worst_body = std::max(worst_body, std::abs(base[k].values[t] - rigid[k].values[t]));
      }
    }

    const double phi = yaw(rng);
    const smd::Vec3 up = smd::world_axes(seq.up_axis).up;
    const Eigen::Matrix3d r = Eigen::AngleAxisd(phi * std::numbers::pi / 180.0, up).toRotationMatrix();
    const auto turned = smd::compute_joint_angles(oracle::transformed(seq, r, smd::Vec3(offset(rng), 0.0, offset(rng))));
    const auto at = [](const std::vector<smd::AngleSeries>& a, AngleId id) -> const std::vector<double>& {
      return a[smd::index(id)].values;
    };
    for (std::size_t t = 0; t < base[0].values.size(); ++t) {
      const double shift = at(turned, AngleId::PelvisRotation)[t] - at(base, AngleId::PelvisRotation)[t];
      worst_yaw = std::max(worst_yaw, std::abs(std::remainder(shift - phi, 360.0)));
      worst_tilt = std::max({worst_tilt, std::abs(at(turned, AngleId::PelvisTilt)[t] - at(base, AngleId::PelvisTilt)[t]),
                             std::abs(at(turned, AngleId::PelvisList)[t] - at(base, AngleId::PelvisList)[t])});
    }
  }
  return {worst_body <= kTol && worst_yaw <= kTol && worst_tilt <= kTol,
          printf_string("max deviation: 23 body series %.2e deg, pelvis rotation shift %.2e deg, tilt/list %.2e deg",
                        worst_body, worst_yaw, worst_tilt)};
}

Result oracle_equivalence() {
  std::mt19937_64 rng(9400);
  std::uniform_int_distribution<std::size_t> length(3, 64);
  std::uniform_real_distribution<double> threshold(1.0, 20.0);
  int mismatches = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto v = oracle::piecewise_linear(rng, length(rng));
    const double thr = threshold(rng);
    const auto got = smd::segment_extrema(v, 20.0, thr);
    const auto want = oracle::segments(v, thr);
    bool same = smd::extrema_breakpoints(v, thr) == oracle::breakpoints(v, thr) && got.size() == want.size();
    for (std::size_t i = 0; same && i < got.size(); ++i) {
      same = got[i].kind == want[i].kind && got[i].first_frame == want[i].first && got[i].last_frame == want[i].last;
    }
    mismatches += !same;
  }
  return {mismatches == 0, printf_string("%d/500 signals disagree with the brute-force segmenter", mismatches)};
}

std::vector<smd::Segment> describe(const std::vector<double>& raw, const smd::SmdConfig& cfg = {}) {
  const auto s = smd::smooth(raw, smd::effective_window(cfg.smooth_window, raw.size()));
  return smd::segment_angle(s, 20.0, cfg);
}

Result cycle_detection() {
  int bank = 0, correct = 0;
  for (double amp = 20.0; amp <= 60.0; amp += 5.0) {
    for (int n = 2; n <= 8; ++n) {
      for (double period : {1.0, 1.5, 2.0}) {
        for (double offset : {-20.0, 0.0, 35.0}) {
          const auto samples = static_cast<std::size_t>(std::lround(n * period * 20.0)) + 1;
          std::vector<double> v(samples);
          for (std::size_t i = 0; i < samples; ++i) {
            v[i] = offset + amp * std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / (period * 20.0));
          }
          const auto segs = describe(v);
          ++bank;
          correct += segs.size() == 1 && segs[0].kind == SegmentKind::Repeats && segs[0].cycles == n &&
                     oracle::zero_crossing_cycles(v) == n;
        }
      }
    }
  }
  int ramps = 0, ramp_repeats = 0;
  for (double slope : {-3.0, -1.0, -0.3, 0.3, 1.0, 3.0}) {
    for (std::size_t frames : {20u, 60u, 120u, 240u}) {
      std::vector<double> v(frames);
      for (std::size_t i = 0; i < frames; ++i) v[i] = 10.0 + slope * static_cast<double>(i);
      for (const auto& s : describe(v)) ramp_repeats += s.kind == SegmentKind::Repeats;
      ++ramps;
    }
  }
  return {correct == bank && ramp_repeats == 0,
          printf_string("sine bank %d/%d correct Repeats(N); %d Repeats over %d ramps", correct, bank, ramp_repeats, ramps)};
}

// Counts signals whose segment count rises somewhere along an increasing
// threshold sweep.
template <class Count>
int monotonicity_violations(std::size_t signals, const std::vector<double>& thresholds, Count count, int& total) {
  int violations = 0;
  for (std::size_t i = 0; i < signals; ++i) {
    std::size_t prev = std::numeric_limits<std::size_t>::max();
    bool bad = false;
    for (double thr : thresholds) {
      const std::size_t n = count(i, thr);
      bad |= n > prev;
      prev = n;
    }
    violations += bad;
    ++total;
  }
  return violations;
}

Result threshold_monotonicity() {
  std::vector<std::vector<double>> angle_bank;
  std::vector<smd::TrajectorySeries> trajectory_bank;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto seq = smd::fixtures::random_motion(8000 + seed, 120 + 10 * (seed % 9));
    for (const auto& a : smd::compute_joint_angles(seq)) angle_bank.push_back(smd::smooth(a.values, 7));
    for (const auto& t : smd::extract_trajectory(seq, smd::TrajectoryMode::Absolute)) {
      if (t.axis != smd::TrajectoryAxis::Yaw) trajectory_bank.push_back(t);
    }
  }
  std::mt19937_64 rng(8800);
  for (int i = 0; i < 400; ++i) angle_bank.push_back(smd::smooth(oracle::piecewise_linear(rng, 100), 7));

  int angle_total = 0, trajectory_total = 0;
  const int angle_bad = monotonicity_violations(angle_bank.size(), {3.0, 5.0, 10.0, 15.0}, [&](std::size_t i, double d) {
    smd::SmdConfig cfg;
    cfg.delta_deg = d;
    return smd::segment_angle(angle_bank[i], 20.0, cfg).size();
  }, angle_total);
  const int trajectory_bad = monotonicity_violations(trajectory_bank.size(), {0.01, 0.03, 0.05, 0.10},
                                                     [&](std::size_t i, double p) {
    smd::SmdConfig cfg;
    cfg.pos_threshold_m = p;
    return smd::segment_trajectory(trajectory_bank[i], cfg).size();
  }, trajectory_total);
  // Same sweep before cycle merging, to show where the violations come from.
  int unused = 0;
  const int extrema_bad = monotonicity_violations(angle_bank.size(), {3.0, 5.0, 10.0, 15.0}, [&](std::size_t i, double d) {
    return smd::segment_extrema(angle_bank[i], 20.0, d).size();
  }, unused);
  return {angle_bad == 0 && trajectory_bad == 0,
          printf_string("delta: %d/%d angle signals violate (%d before cycle merging); pos threshold: %d/%d "
                        "trajectory signals violate",
                        angle_bad, angle_total, extrema_bad, trajectory_bad, trajectory_total)};
}

// Structure lines and closed vocabulary; returns the first offending line.
std::string vocabulary_violation(const std::string& text) {
  std::set<std::string> phrases, groups;
  for (const auto& d : smd::kAngleTable) phrases.insert(std::string(d.display_phrase));
  for (std::size_t g = 0; g < smd::kGroupCount; ++g) groups.insert(std::string(smd::group_name(smd::BodyGroup(g))));
  const auto parsed = smd::parse_smd(text);
  for (const auto& line : parsed.trajectory) {
    bool known = false;
    for (auto axis : smd::kTrajectoryAxes) {
      const auto words = smd::vocab::axis(axis);
      if (line.label != words.label) continue;
      known = true;
      for (const auto& s : line.segments) {
        if (s.verb != words.positive && s.verb != words.negative && s.verb != "holds at") return line.label + ": " + s.verb;
      }
    }
    if (!known) return line.label;
  }
  for (const auto& group : parsed.joints) {
    if (!groups.count(group.name)) return group.name;
    for (const auto& line : group.lines) {
      if (!phrases.count(line.label)) return line.label;
      for (const auto& s : line.segments) {
        if (s.verb != "increases" && s.verb != "decreases" && s.verb != "holds at" && s.verb != "repeats") {
          return line.label + ": " + s.verb;
        }
      }
    }
  }
  return {};
}

Result format_goldens() {
  static const std::regex meta(R"(^Motion: \d+\.\ds \(\d+ frames at 20 FPS\)$)");
  static const std::regex header(R"(^\[[A-Z][a-z]+( [A-Z][a-z]+)*\]$)");
  std::string failures;
  for (const char* name : {"kick", "gait", "turn", "static"}) {
    const std::string want = read_file(std::string(SMD_GOLDEN_DIR) + "/" + name + ".smd");
    const std::string got = smd::convert(smd::fixtures::make_fixture(name));
    std::string why;
    if (want.empty()) why = "missing golden";
    else if (got != want) why = "bytes differ";
    else {
      std::istringstream in(got);
      std::string line;
      std::getline(in, line);
      if (!std::regex_match(line, meta)) why = "meta line";
      if (got.find("\n\nGlobal Trajectory:\nSummary: ") == std::string::npos) why = "trajectory block";
      if (got.find("\n\nJoint Angles:\n[") == std::string::npos) why = "joint block";
      std::size_t headers = 0;
      while (std::getline(in, line)) {
        if (line.starts_with("[")) {
          ++headers;
          if (!std::regex_match(line, header)) why = "header " + line;
        }
      }
      if (headers == 0) why = "no group headers";
      if (const auto bad = vocabulary_violation(got); !bad.empty()) why = "vocabulary " + bad;
    }
    if (!why.empty()) failures += std::string(failures.empty() ? "" : "; ") + name + ": " + why;
  }
  return {failures.empty(), failures.empty() ? "kick, gait, turn, static byte-equal, structure and vocabulary ok" : failures};
}

Result top_k_ordering() {
  std::string failures;
  int checks = 0;
  for (const auto& name : smd::fixtures::kFixtureNames) {
    const auto seq = smd::fixtures::make_fixture(name);
    const auto angles = smd::compute_joint_angles(seq);
    std::size_t active = 0;
    for (const auto& a : angles) active += smd::activity_score(smd::smooth(a.values, 7)) > 0.0;
    std::size_t prev_len = 0, prev_tokens = 0;
    int prev_k = 0;
    for (int k : {3, 5, 10, 20, 26}) {
      const auto text = smd::convert(seq, top(k));
      const auto tokens = smd::estimate_tokens(text);
      if (prev_k) {
        ++checks;
        const bool strict = active > static_cast<std::size_t>(prev_k);
        const bool ok = strict ? (text.size() > prev_len && tokens > prev_tokens)
                               : (text.size() >= prev_len && tokens >= prev_tokens);
        if (!ok) failures += printf_string("%s top%d->top%d; ", std::string(name).c_str(), prev_k, k);
      }
      prev_len = text.size();
      prev_tokens = tokens;
      prev_k = k;
    }
  }
  return {failures.empty(), failures.empty() ? printf_string("%d steps ordered over %zu fixtures", checks,
                                                             smd::fixtures::kFixtureNames.size())
                                             : failures};
}

Result performance() {
  const auto single = smd::fixtures::random_motion(31, 200);
  std::vector<double> times;
  for (int i = 0; i < 21; ++i) {
    const auto start = Clock::now();
    volatile auto n = smd::convert(single).size();
    (void)n;
    times.push_back(seconds_since(start));
  }
  std::sort(times.begin(), times.end());
  const double median_ms = times[times.size() / 2] * 1e3;

  // Motions are generated in chunks outside the timed region.
  double batch_s = 0.0;
  std::size_t bytes = 0;
  for (std::uint64_t chunk = 0; chunk < 100; ++chunk) {
    std::vector<smd::JointSequence> motions;
    for (std::uint64_t i = 0; i < 100; ++i) motions.push_back(smd::fixtures::random_motion(chunk * 100 + i, 200));
    const auto start = Clock::now();
    for (const auto& m : motions) bytes += smd::convert(m).size();
    batch_s += seconds_since(start);
  }
  return {median_ms < 10.0 && batch_s < 60.0,
          printf_string("200-frame motion %.2f ms median (limit 10); 10000 x 200-frame batch %.1f s single-threaded (limit 60)",
                        median_ms, batch_s)};
}

Result prompt_contract() {
  std::mt19937_64 rng(4242);
  const std::vector<std::string> pool{"walking", "running", "jumping", "kicking", "waving",  "sitting",
                                      "turning", "bending",  "dancing", "crawling", "throwing", "squatting"};
  std::vector<smd::PromptRecord> records;
  int bad = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto text = smd::convert(smd::fixtures::random_motion(12000 + i, 60));
    std::vector<std::string> options = pool;
    std::shuffle(options.begin(), options.end(), rng);
    options.resize(2 + i % 9);
    const std::string answer = options[i % options.size()];
    auto rec = smd::make_qa_record(text, "What is the person doing? (" + std::to_string(i) + ")", options, answer);
    if (i % 3 == 0) rec.seed = i;
    bad += rec.mask_boundary != smd::utf8_length(rec.prompt_text);
    bad += rec.prompt_text.find("\n- " + rec.target_text + "\n") == std::string::npos;
    records.push_back(std::move(rec));
  }
  std::stringstream buf;
  smd::export_records(records, buf);
  const bool round_trip = smd::read_records(buf) == records;
  return {bad == 0 && round_trip,
          printf_string("%d contract violations over %zu records; JSONL round trip %s", bad, records.size(),
                        round_trip ? "lossless" : "lossy")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria{
      {"determinism", determinism},
      {"se3-invariance", se3_invariance},
      {"segmentation-oracle", oracle_equivalence},
      {"cycle-detection", cycle_detection},
      {"threshold-monotonicity", threshold_monotonicity},
      {"format-goldens", format_goldens},
      {"topk-ordering", top_k_ordering},
      {"performance", performance},
      {"prompt-export", prompt_contract},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Result r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s  %-24s %s\n", r.pass ? "PASS" : "FAIL", name, r.detail.c_str());
    std::fflush(stdout);
    failed += !r.pass;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
