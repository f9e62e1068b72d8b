#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "smd/error.hpp"

namespace smd {

inline constexpr std::string_view kQaInstruction =
    "You are a motion analysis assistant. The following Structured Motion Description lists a human motion's "
    "global trajectory and joint angles over time. Answer the question about the motion.";

inline constexpr std::string_view kCaptionInstruction =
    "You are a motion analysis assistant. The following Structured Motion Description lists a human motion's "
    "global trajectory and joint angles over time. Describe the motion in one short sentence.";

inline constexpr std::size_t kMinOptions = 2;
inline constexpr std::size_t kMaxOptions = 20;

enum class PromptTask { QA, Caption };

inline std::string_view to_string(PromptTask task) noexcept { return task == PromptTask::QA ? "qa" : "caption"; }

struct PromptRecord {
  PromptTask task = PromptTask::QA;
  std::string prompt_text;
  std::string target_text;
  std::size_t mask_boundary = 0;       // code points of prompt_text
  std::optional<std::uint64_t> seed;   // set when options were subsampled

  friend bool operator==(const PromptRecord&, const PromptRecord&) = default;
};

// Number of Unicode code points in a UTF-8 string (continuation bytes are
// not counted).
inline std::size_t utf8_length(std::string_view text) noexcept {
  std::size_t n = 0;
  for (unsigned char c : text) n += (c & 0xC0) != 0x80;
  return n;
}

inline void check_options(const std::vector<std::string>& options) {
  if (options.size() < kMinOptions || options.size() > kMaxOptions) {
    throw Error(ErrorCode::BadOptions, "expected between 2 and 20 options, got " + std::to_string(options.size()));
  }
  std::set<std::string_view> seen;
  for (const auto& o : options) {
    if (o.empty()) throw Error(ErrorCode::BadOptions, "empty option");
    if (!seen.insert(o).second) throw Error(ErrorCode::BadOptions, "duplicate option \"" + o + "\"");
  }
}

// Instruction, SMD, question and (unless open-ended) the options, one per
// line with a "- " prefix.
inline std::string build_qa_prompt(std::string_view smd, std::string_view question,
                                   const std::optional<std::vector<std::string>>& options) {
  if (smd.empty()) throw Error(ErrorCode::EmptyInput, "empty SMD");
  if (question.empty()) throw Error(ErrorCode::BadOptions, "empty question");
  if (options) check_options(*options);
  std::string out(kQaInstruction);
  out += "\n\n";
  out += smd;
  if (out.back() != '\n') out += '\n';
  out += "\nQuestion: ";
  out += question;
  out += '\n';
  if (options) {
    out += "Options:\n";
    for (const auto& o : *options) out += "- " + o + "\n";
  }
  return out;
}

inline std::string build_caption_prompt(std::string_view smd) {
  if (smd.empty()) throw Error(ErrorCode::EmptyInput, "empty SMD");
  std::string out(kCaptionInstruction);
  out += "\n\n";
  out += smd;
  return out;
}

inline PromptRecord make_qa_record(std::string_view smd, std::string_view question,
                                   const std::optional<std::vector<std::string>>& options, std::string answer) {
  if (options && std::find(options->begin(), options->end(), answer) == options->end()) {
    throw Error(ErrorCode::BadOptions, "answer \"" + answer + "\" is not among the options");
  }
  PromptRecord r;
  r.task = PromptTask::QA;
  r.prompt_text = build_qa_prompt(smd, question, options);
  r.target_text = std::move(answer);
  r.mask_boundary = utf8_length(r.prompt_text);
  return r;
}

inline PromptRecord make_caption_record(std::string_view smd, std::string caption) {
  PromptRecord r;
  r.task = PromptTask::Caption;
  r.prompt_text = build_caption_prompt(smd);
  r.target_text = std::move(caption);
  r.mask_boundary = utf8_length(r.prompt_text);
  return r;
}

struct SubsampledOptions {
  std::vector<std::string> options;
  std::uint64_t seed = 0;
};

// Keeps the answer plus max_options - 1 distractors drawn with mt19937_64
// (raw engine output, so results do not depend on the standard library's
// distribution implementations). Original relative order is preserved.
inline SubsampledOptions subsample_options(const std::vector<std::string>& options, const std::string& answer,
                                           std::size_t max_options, std::uint64_t seed) {
  const auto answer_it = std::find(options.begin(), options.end(), answer);
  if (answer_it == options.end()) throw Error(ErrorCode::BadOptions, "answer \"" + answer + "\" not among options");
  if (max_options < 1) throw Error(ErrorCode::BadOptions, "max_options must be >= 1");
  if (options.size() <= max_options) return {options, seed};

  std::vector<std::size_t> distractors;
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (options[i] != answer) distractors.push_back(i);
  }
  std::mt19937_64 engine(seed);
  for (std::size_t i = 0; i + 1 < distractors.size(); ++i) {
    const std::size_t j = i + static_cast<std::size_t>(engine() % (distractors.size() - i));
    std::swap(distractors[i], distractors[j]);
  }
  distractors.resize(max_options - 1);
  distractors.push_back(static_cast<std::size_t>(answer_it - options.begin()));
  std::sort(distractors.begin(), distractors.end());
  SubsampledOptions out{{}, seed};
  for (std::size_t i : distractors) out.options.push_back(options[i]);
  return out;
}

inline nlohmann::json record_to_json(const PromptRecord& r) {
  nlohmann::json j = {{"task", std::string(to_string(r.task))},
                      {"prompt", r.prompt_text},
                      {"target", r.target_text},
                      {"mask_boundary", r.mask_boundary}};
  if (r.seed) j["seed"] = *r.seed;
  return j;
}

inline PromptRecord record_from_json(const nlohmann::json& j) {
  try {
    PromptRecord r;
    const auto task = j.at("task").get<std::string>();
    if (task == "qa") {
      r.task = PromptTask::QA;
    } else if (task == "caption") {
      r.task = PromptTask::Caption;
    } else {
      throw Error(ErrorCode::MalformedInput, "unknown task \"" + task + "\"");
    }
    r.prompt_text = j.at("prompt").get<std::string>();
    r.target_text = j.at("target").get<std::string>();
    r.mask_boundary = j.at("mask_boundary").get<std::size_t>();
    if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedInput, std::string("bad record: ") + e.what());
  }
}

// One JSON object per line, in input order.
inline void export_records(const std::vector<PromptRecord>& records, std::ostream& sink) {
  for (const auto& r : records) sink << record_to_json(r).dump() << '\n';
  sink.flush();
  if (!sink) throw Error(ErrorCode::IoError, "failed to write records");
}

inline std::vector<PromptRecord> read_records(std::istream& in) {
  std::vector<PromptRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      out.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::MalformedInput, std::string("bad JSONL line: ") + e.what());
    }
  }
  return out;
}

}  // namespace smd
