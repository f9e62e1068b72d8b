#pragma once

#include <glob.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "smd/batch.hpp"
#include "smd/fixtures.hpp"
#include "smd/kinematics.hpp"
#include "smd/motion_io.hpp"
#include "smd/prompting.hpp"
#include "smd/smd.hpp"

namespace smd::cli {

enum class LogLevel { Quiet = 0, Error = 1, Warn = 2, Info = 3, Debug = 4 };

// SMD_LOG = quiet|error|warn|info|debug (default warn).
inline LogLevel log_level_from_env() {
  const char* raw = std::getenv("SMD_LOG");
  if (!raw) return LogLevel::Warn;
  const std::string_view v(raw);
  if (v == "quiet" || v == "0") return LogLevel::Quiet;
  if (v == "error" || v == "1") return LogLevel::Error;
  if (v == "info" || v == "3") return LogLevel::Info;
  if (v == "debug" || v == "4") return LogLevel::Debug;
  return LogLevel::Warn;
}

class Log {
 public:
  Log(std::ostream& sink, LogLevel level) : sink_(sink), level_(level) {}
  void error(const std::string& m) const { emit(LogLevel::Error, "error", m); }
  void warn(const std::string& m) const { emit(LogLevel::Warn, "warning", m); }
  void info(const std::string& m) const { emit(LogLevel::Info, "info", m); }

 private:
  void emit(LogLevel at, std::string_view tag, const std::string& m) const {
    if (static_cast<int>(level_) >= static_cast<int>(at)) sink_ << "smd: " << tag << ": " << m << '\n';
  }
  std::ostream& sink_;
  LogLevel level_;
};

struct RunConfig {
  std::vector<std::string> inputs;
  std::string output;  // empty = stdout
  std::optional<MotionFormat> format;
  SmdConfig smd;
  bool jsonl = false;
  unsigned jobs = 1;
  bool strict = false;
  std::uint64_t seed = 0;

  PromptTask task = PromptTask::QA;
  std::string questions;
  std::string captions;
  std::size_t max_options = 0;  // 0 = keep every option
};

// "all26" or "topK" with 1 <= K <= 26.
inline JointSelection parse_joint_selection(std::string_view text) {
  if (text == "all26" || text == "all") return JointSelection::all();
  if (text.substr(0, 3) == "top") {
    const std::string digits(text.substr(3));
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      const int k = std::stoi(digits);
      if (k >= 1 && k <= kAngleCount) return k == kAngleCount ? JointSelection::all() : JointSelection::top(k);
    }
  }
  throw Error(ErrorCode::InvalidConfig, "--joints expects all26 or topK (1..26), got \"" + std::string(text) + "\"");
}

inline TrajectoryMode parse_trajectory_mode(std::string_view text) {
  if (text == "none") return TrajectoryMode::None;
  if (text == "egocentric") return TrajectoryMode::Egocentric;
  if (text == "absolute") return TrajectoryMode::Absolute;
  throw Error(ErrorCode::InvalidConfig, "--trajectory expects none|egocentric|absolute");
}

// Expands directories (their .json/.bin/.smd files, sorted) and glob
// patterns; plain paths pass through unchanged.
inline std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs) {
  namespace fs = std::filesystem;
  std::vector<std::string> out;
  for (const auto& in : inputs) {
    std::error_code ec;
    if (fs::is_directory(in, ec)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(in)) {
        const auto ext = entry.path().extension().string();
        if (entry.is_regular_file() && (ext == ".json" || ext == ".bin" || ext == ".smd")) {
          found.push_back(entry.path().string());
        }
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else if (in.find_first_of("*?[") != std::string::npos) {
      glob_t g{};
      if (::glob(in.c_str(), 0, nullptr, &g) == 0) {
        for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
      }
      ::globfree(&g);
    } else {
      out.push_back(in);
    }
  }
  return out;
}

inline std::string motion_id(const std::string& path) { return std::filesystem::path(path).stem().string(); }

inline JointSequence load_motion_file(const std::string& path, std::optional<MotionFormat> format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const MotionFormat fmt = format.value_or(sniff_format(bytes));
  return fmt == MotionFormat::Json ? parse_motion_json(bytes) : parse_motion_binary(bytes);
}

struct LoadedMotion {
  std::string id;
  std::string path;
  JointSequence motion;
};

// Writes to the file named by `path`, or to `fallback` when it is empty.
class OutputSink {
 public:
  OutputSink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error(ErrorCode::IoError, "cannot open output " + path);
    }
    out_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_ = nullptr;
};

inline int cmd_convert(const RunConfig& run, std::ostream& out, std::ostream& err) {
  const Log log(err, log_level_from_env());
  validate(run.smd);
  const auto paths = expand_inputs(run.inputs);
  if (paths.empty()) {
    log.error("no input motions");
    return 2;
  }
  auto outcomes = parallel_map<std::string>(paths.size(), run.jobs, [&](std::size_t i) {
    const JointSequence seq = load_motion_file(paths[i], run.format);
    return convert(seq, run.smd);
  });

  bool failed = false;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].ok()) {
      log.error(paths[i] + ": " + outcomes[i].error->what());
      failed = true;
      if (run.strict) return 1;
    }
  }

  OutputSink sink(run.output, out);
  if (paths.size() == 1 && !run.jsonl) {
    if (outcomes[0].ok()) sink.stream() << *outcomes[0].value;
  } else {
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      if (!outcomes[i].ok()) continue;
      const std::string& text = *outcomes[i].value;
      nlohmann::json line = {{"id", motion_id(paths[i])}, {"smd", text}, {"token_estimate", estimate_tokens(text)}};
      sink.stream() << line.dump() << '\n';
    }
  }
  sink.stream().flush();
  log.info("converted " + std::to_string(paths.size()) + " motion(s)");
  return failed ? 1 : 0;
}

struct QuestionRow {
  std::string motion_id;
  std::string question;
  std::optional<std::vector<std::string>> options;
  std::string answer;
};

inline std::vector<nlohmann::json> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::vector<nlohmann::json> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      rows.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::MalformedInput, path + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return rows;
}

inline int cmd_prompts(const RunConfig& run, std::ostream& out, std::ostream& err) {
  const Log log(err, log_level_from_env());
  validate(run.smd);
  const auto paths = expand_inputs(run.inputs);
  auto smds = parallel_map<std::string>(paths.size(), run.jobs, [&](std::size_t i) {
    return convert(load_motion_file(paths[i], run.format), run.smd);
  });
  std::map<std::string, std::string> by_id;
  std::vector<std::string> order;
  bool failed = false;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (!smds[i].ok()) {
      log.error(paths[i] + ": " + smds[i].error->what());
      failed = true;
      if (run.strict) return 1;
      continue;
    }
    const auto id = motion_id(paths[i]);
    if (by_id.emplace(id, *smds[i].value).second) order.push_back(id);
  }

  std::vector<PromptRecord> records;
  std::vector<std::string> missing;
  auto lookup = [&](const std::string& id) -> const std::string* {
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      if (std::find(missing.begin(), missing.end(), id) == missing.end()) missing.push_back(id);
      return nullptr;
    }
    return &it->second;
  };

  try {
    if (run.task == PromptTask::QA) {
      if (run.questions.empty()) throw Error(ErrorCode::MalformedInput, "qa prompts need --questions");
      const auto rows = read_jsonl(run.questions);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        QuestionRow q;
        q.motion_id = row.at("motion_id").get<std::string>();
        q.question = row.at("question").get<std::string>();
        q.answer = row.at("answer").get<std::string>();
        if (row.contains("options") && !row["options"].is_null()) {
          q.options = row["options"].get<std::vector<std::string>>();
        }
        const std::string* smd = lookup(q.motion_id);
        if (!smd) continue;
        std::optional<std::uint64_t> seed;
        if (q.options && run.max_options > 0 && q.options->size() > run.max_options) {
          seed = run.seed + r;
          q.options = subsample_options(*q.options, q.answer, run.max_options, *seed).options;
        }
        PromptRecord rec = make_qa_record(*smd, q.question, q.options, q.answer);
        rec.seed = seed;
        records.push_back(std::move(rec));
      }
    } else if (!run.captions.empty()) {
      for (const auto& row : read_jsonl(run.captions)) {
        const auto id = row.at("motion_id").get<std::string>();
        const std::string* smd = lookup(id);
        if (smd) records.push_back(make_caption_record(*smd, row.at("caption").get<std::string>()));
      }
    } else {
      for (const auto& id : order) records.push_back(make_caption_record(by_id.at(id), ""));
    }
  } catch (const nlohmann::json::exception& e) {
    log.error(std::string("bad questions/captions row: ") + e.what());
    return 2;
  }

  if (!missing.empty()) {
    std::string list;
    for (const auto& id : missing) list += (list.empty() ? "" : ", ") + id;
    log.error(Error(ErrorCode::MissingMotion, "no motion for id(s): " + list).what());
    return 1;
  }
  OutputSink sink(run.output, out);
  export_records(records, sink.stream());
  return failed ? 1 : 0;
}

struct SynthConfig {
  std::string name;
  fixtures::FixtureParams params;
  std::string output;
  MotionFormat format = MotionFormat::Json;
};

inline int cmd_synth(const SynthConfig& cfg, std::ostream& out, std::ostream& err) {
  const Log log(err, log_level_from_env());
  const JointSequence seq = fixtures::make_fixture(cfg.name, cfg.params);
  OutputSink sink(cfg.output, out);
  write_joint_sequence(sink.stream(), seq, cfg.format);
  log.info("wrote fixture " + cfg.name + " (" + std::to_string(seq.frames.size()) + " frames)");
  return 0;
}

inline int cmd_angles(const std::string& output, std::ostream& out) {
  OutputSink sink(output, out);
  sink.stream() << angle_definitions_json().dump(2) << '\n';
  return 0;
}

}  // namespace smd::cli
