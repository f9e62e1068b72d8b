#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "smd_cli.hpp"

namespace {

void add_motion_options(CLI::App& cmd, smd::cli::RunConfig& run, std::string& format, std::string& joints,
                        std::string& trajectory) {
  cmd.add_option("-i,--input", run.inputs, "Motion files, directories or glob patterns")->required();
  cmd.add_option("-o,--output", run.output, "Output path (default: stdout)");
  cmd.add_option("--format", format, "Input format; sniffed from the bytes when omitted")
      ->check(CLI::IsMember({"json", "binary"}));
  cmd.add_option("--joints", joints, "Joint selection: all26 or topK (joint_selection)")->capture_default_str();
  cmd.add_option("--trajectory", trajectory, "Trajectory mode: none|egocentric|absolute (trajectory_mode)")
      ->capture_default_str();
  cmd.add_option("--delta", run.smd.delta_deg, "Minimum angle change in degrees (delta_deg)")->capture_default_str();
  cmd.add_option("--window", run.smd.smooth_window, "Smoothing window in frames, odd (smooth_window)")
      ->capture_default_str();
  cmd.add_option("--pos-threshold", run.smd.pos_threshold_m, "Minimum translation change in meters (pos_threshold_m)")
      ->capture_default_str();
  cmd.add_option("--yaw-threshold", run.smd.yaw_threshold_deg, "Minimum yaw change in degrees (yaw_threshold_deg)")
      ->capture_default_str();
  cmd.add_option("--consistency", run.smd.cycle_consistency, "Cycle consistency threshold (cycle_consistency)")
      ->capture_default_str();
  cmd.add_option("--min-cycle-segments", run.smd.min_cycle_segments,
                 "Shortest alternating run reported as repeats (min_cycle_segments)")
      ->capture_default_str();
  cmd.add_option("-j,--jobs", run.jobs, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
  cmd.add_flag("--strict", run.strict, "Stop at the first failing motion");
}

void apply_motion_options(smd::cli::RunConfig& run, const std::string& format, const std::string& joints,
                          const std::string& trajectory) {
  if (!format.empty()) run.format = format == "json" ? smd::MotionFormat::Json : smd::MotionFormat::Binary;
  run.smd.joint_selection = smd::cli::parse_joint_selection(joints);
  run.smd.trajectory_mode = smd::cli::parse_trajectory_mode(trajectory);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convert joint-position motion into structured motion descriptions"};
  app.require_subcommand(1);

  smd::cli::RunConfig run;
  std::string format, joints = "all26", trajectory = "absolute";

  auto* convert = app.add_subcommand("convert", "Motion file(s) to SMD text; several inputs give JSONL");
  add_motion_options(*convert, run, format, joints, trajectory);
  convert->add_flag("--jsonl", run.jsonl, "Emit JSONL even for a single input");

  auto* prompts = app.add_subcommand("prompts", "Build QA or caption training records as JSONL");
  add_motion_options(*prompts, run, format, joints, trajectory);
  std::string task = "qa";
  prompts->add_option("--task", task, "qa or caption")->check(CLI::IsMember({"qa", "caption"}))->capture_default_str();
  prompts->add_option("--questions", run.questions, "JSONL rows {motion_id, question, options?, answer}");
  prompts->add_option("--captions", run.captions, "JSONL rows {motion_id, caption}");
  prompts->add_option("--max-options", run.max_options, "Subsample multiple-choice options to this many (0 = all)")
      ->capture_default_str();
  prompts->add_option("--seed", run.seed, "Base seed for option subsampling")->capture_default_str();

  smd::cli::SynthConfig synth;
  std::string synth_format = "json", up = "y";
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic motion fixture");
  synth_cmd->add_option("name", synth.name, "kick|gait|turn|static|sine")->required()->check(
      CLI::IsMember({"kick", "gait", "turn", "static", "sine"}));
  synth_cmd->add_option("-o,--output", synth.output, "Output path (default: stdout)");
  synth_cmd->add_option("--format", synth_format, "json or binary")->check(CLI::IsMember({"json", "binary"}));
  synth_cmd->add_option("--cycles", synth.params.cycles, "Cycles for gait/sine")->capture_default_str();
  synth_cmd->add_option("--amplitude", synth.params.amplitude, "Amplitude in degrees for sine")->capture_default_str();
  synth_cmd->add_option("--frames", synth.params.frames, "Frame count (0 = fixture default)")->capture_default_str();
  synth_cmd->add_option("--fps", synth.params.fps, "Frame rate")->capture_default_str();
  synth_cmd->add_option("--up", up, "World up axis: y or z")->check(CLI::IsMember({"y", "z"}));

  std::string angles_out;
  auto* angles = app.add_subcommand("angles", "Print the joint-angle definition table as JSON");
  angles->add_option("-o,--output", angles_out, "Output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*convert || *prompts) apply_motion_options(run, format, joints, trajectory);
    if (*convert) return smd::cli::cmd_convert(run, std::cout, std::cerr);
    if (*prompts) {
      run.task = task == "qa" ? smd::PromptTask::QA : smd::PromptTask::Caption;
      return smd::cli::cmd_prompts(run, std::cout, std::cerr);
    }
    if (*synth_cmd) {
      synth.format = synth_format == "json" ? smd::MotionFormat::Json : smd::MotionFormat::Binary;
      synth.params.up = up == "z" ? smd::UpAxis::Z : smd::UpAxis::Y;
      return smd::cli::cmd_synth(synth, std::cout, std::cerr);
    }
    if (*angles) return smd::cli::cmd_angles(angles_out, std::cout);
  } catch (const smd::Error& e) {
    std::cerr << "smd: error: " << e.what() << '\n';
    return e.code() == smd::ErrorCode::InvalidConfig ? 2 : 1;
  }
  return 0;
}
