#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "smd/fixtures.hpp"
#include "smd_cli.hpp"

namespace fs = std::filesystem;
using namespace smd;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("smd_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write_motion(const std::string& name, const JointSequence& seq, MotionFormat fmt = MotionFormat::Json) {
    const auto path = (dir_ / name).string();
    std::ofstream out(path, std::ios::binary);
    write_joint_sequence(out, seq, fmt);
    return path;
  }
  std::string write_text(const std::string& name, const std::string& text) {
    const auto path = (dir_ / name).string();
    std::ofstream(path, std::ios::binary) << text;
    return path;
  }
  std::vector<std::string> corpus(std::size_t n) {
    std::vector<std::string> paths;
    for (std::size_t i = 0; i < n; ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "m%02zu.json", i);
      paths.push_back(write_motion(name, fixtures::random_motion(100 + i, 60)));
    }
    return paths;
  }

  fs::path dir_;
};

std::vector<nlohmann::json> parse_lines(const std::string& text) {
  std::vector<nlohmann::json> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) rows.push_back(nlohmann::json::parse(line));
  return rows;
}

std::size_t segment_count(const std::string& smd_text) {
  std::size_t n = 0;
  for (const auto& group : parse_smd(smd_text).joints)
    for (const auto& line : group.lines) n += line.segments.size();
  return n;
}

}  // namespace

TEST(CliParsing, JointSelection) {
  EXPECT_EQ(cli::parse_joint_selection("all26"), JointSelection::all());
  EXPECT_EQ(cli::parse_joint_selection("top5"), JointSelection::top(5));
  for (const char* bad : {"top0", "top27", "top", "first3", ""}) {
    EXPECT_THROW(cli::parse_joint_selection(bad), Error) << bad;
  }
  EXPECT_EQ(cli::parse_trajectory_mode("egocentric"), TrajectoryMode::Egocentric);
  EXPECT_THROW(cli::parse_trajectory_mode("relative"), Error);
}

TEST_F(CliTest, SingleInputGivesPlainText) {
  cli::RunConfig run;
  run.inputs = {write_motion("kick.bin", fixtures::kick(), MotionFormat::Binary)};
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_convert(run, out, err), 0) << err.str();
  EXPECT_EQ(out.str(), convert(cli::load_motion_file(run.inputs[0], std::nullopt)));
  EXPECT_TRUE(out.str().starts_with("Motion: 5.8s"));
}

TEST_F(CliTest, DirectoryGivesOrderedJsonl) {
  const auto paths = corpus(6);
  cli::RunConfig run;
  run.inputs = {dir_.string()};
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_convert(run, out, err), 0) << err.str();
  const auto rows = parse_lines(out.str());
  ASSERT_EQ(rows.size(), 6u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i]["id"], cli::motion_id(paths[i]));
    const auto text = rows[i]["smd"].get<std::string>();
    EXPECT_EQ(rows[i]["token_estimate"].get<std::size_t>(), estimate_tokens(text));
  }
}

TEST_F(CliTest, ParallelMatchesSerial) {
  corpus(8);
  cli::RunConfig run;
  run.inputs = {(dir_ / "*.json").string()};
  std::ostringstream serial, parallel, err;
  ASSERT_EQ(cli::cmd_convert(run, serial, err), 0);
  run.jobs = 4;
  ASSERT_EQ(cli::cmd_convert(run, parallel, err), 0);
  EXPECT_EQ(serial.str(), parallel.str());
  EXPECT_EQ(parse_lines(serial.str()).size(), 8u);
}

TEST_F(CliTest, BadFileIsCollected) {
  corpus(3);
  write_text("m01b.json", "{\"fps\": 20, \"joints\": [[[0,0]]]}");
  cli::RunConfig run;
  run.inputs = {dir_.string()};
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_convert(run, out, err), 1);
  EXPECT_EQ(parse_lines(out.str()).size(), 3u);
  EXPECT_NE(err.str().find("m01b.json"), std::string::npos);

  run.strict = true;
  std::ostringstream strict_out, strict_err;
  EXPECT_EQ(cli::cmd_convert(run, strict_out, strict_err), 1);
  EXPECT_TRUE(strict_out.str().empty());
}

TEST_F(CliTest, NoInputs) {
  cli::RunConfig run;
  run.inputs = {(dir_ / "*.json").string()};
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_convert(run, out, err), 2);
}

TEST_F(CliTest, OutputFile) {
  cli::RunConfig run;
  run.inputs = {write_motion("gait.json", fixtures::gait())};
  run.output = (dir_ / "gait.smd").string();
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_convert(run, out, err), 0);
  EXPECT_TRUE(out.str().empty());
  std::ifstream in(run.output);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), convert(fixtures::gait()));
}

TEST_F(CliTest, ConfigFlagsChangeOutput) {
  const auto path = write_motion("r.json", fixtures::random_motion(7, 160));
  cli::RunConfig run;
  run.inputs = {path};
  std::ostringstream all, err;
  ASSERT_EQ(cli::cmd_convert(run, all, err), 0);
  run.smd.joint_selection = cli::parse_joint_selection("top3");
  std::ostringstream top3;
  ASSERT_EQ(cli::cmd_convert(run, top3, err), 0);
  EXPECT_LT(top3.str().size(), all.str().size());

  run.smd.joint_selection = JointSelection::all();
  run.smd.delta_deg = 10.0;
  std::ostringstream coarse;
  ASSERT_EQ(cli::cmd_convert(run, coarse, err), 0);
  EXPECT_LE(segment_count(coarse.str()), segment_count(all.str()));

  run.smd.smooth_window = 4;
  std::ostringstream bad;
  EXPECT_THROW(cli::cmd_convert(run, bad, err), Error);
}

TEST_F(CliTest, QaPrompts) {
  std::string questions;
  std::vector<std::string> ids;
  for (int i = 0; i < 3; ++i) {
    const auto p = write_motion("q" + std::to_string(i) + ".json", fixtures::random_motion(40 + i, 50));
    ids.push_back(cli::motion_id(p));
    questions += nlohmann::json{{"motion_id", ids.back()}, {"question", "Which arm moves?"},
                                {"options", {"left", "right", "both", "neither"}}, {"answer", "left"}}
                     .dump() +
                 "\n";
    questions += nlohmann::json{{"motion_id", ids.back()}, {"question", "Describe it."}, {"answer", "walking"}}.dump() +
                 "\n";
  }
  cli::RunConfig run;
  run.inputs = {(dir_ / "q*.json").string()};
  run.questions = write_text("questions.jsonl", questions);
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_prompts(run, out, err), 0) << err.str();
  std::istringstream in(out.str());
  const auto records = read_records(in);
  ASSERT_EQ(records.size(), 6u);
  for (const auto& r : records) {
    EXPECT_EQ(r.task, PromptTask::QA);
    EXPECT_EQ(r.mask_boundary, utf8_length(r.prompt_text));
    EXPECT_FALSE(r.seed.has_value());
  }
  EXPECT_NE(records[0].prompt_text.find("Options:"), std::string::npos);
  EXPECT_EQ(records[1].prompt_text.find("Options:"), std::string::npos);

  run.max_options = 2;
  run.seed = 10;
  std::ostringstream sub;
  ASSERT_EQ(cli::cmd_prompts(run, sub, err), 0);
  std::istringstream sub_in(sub.str());
  const auto subbed = read_records(sub_in);
  ASSERT_EQ(subbed.size(), 6u);
  EXPECT_EQ(subbed[0].seed, std::optional<std::uint64_t>(10));
  EXPECT_EQ(subbed[2].seed, std::optional<std::uint64_t>(12));
  EXPECT_FALSE(subbed[1].seed.has_value());
  EXPECT_NE(subbed[0].prompt_text.find("- left\n"), std::string::npos);
}

TEST_F(CliTest, UnknownMotionId) {
  write_motion("a.json", fixtures::static_pose(20));
  cli::RunConfig run;
  run.inputs = {dir_.string()};
  run.questions = write_text("q.jsonl", R"({"motion_id":"nope","question":"q?","answer":"x"})"
                                        "\n");
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_prompts(run, out, err), 1);
  EXPECT_NE(err.str().find("MissingMotion"), std::string::npos) << err.str();
  EXPECT_NE(err.str().find("nope"), std::string::npos);
}

TEST_F(CliTest, CaptionPrompts) {
  corpus(4);
  cli::RunConfig run;
  run.inputs = {dir_.string()};
  run.task = PromptTask::Caption;
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_prompts(run, out, err), 0);
  std::istringstream in(out.str());
  const auto records = read_records(in);
  ASSERT_EQ(records.size(), 4u);
  for (const auto& r : records) {
    EXPECT_EQ(r.task, PromptTask::Caption);
    EXPECT_TRUE(r.prompt_text.starts_with(kCaptionInstruction));
  }

  run.captions = write_text("c.jsonl", R"({"motion_id":"m02","caption":"a person moves"})"
                                       "\n");
  std::ostringstream one;
  ASSERT_EQ(cli::cmd_prompts(run, one, err), 0);
  std::istringstream one_in(one.str());
  const auto captioned = read_records(one_in);
  ASSERT_EQ(captioned.size(), 1u);
  EXPECT_EQ(captioned[0].target_text, "a person moves");
}

TEST_F(CliTest, SynthThenConvert) {
  cli::SynthConfig synth;
  synth.name = "gait";
  synth.params.cycles = 7;
  synth.output = (dir_ / "gait7.bin").string();
  synth.format = MotionFormat::Binary;
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_synth(synth, out, err), 0);

  cli::RunConfig run;
  run.inputs = {synth.output};
  ASSERT_EQ(cli::cmd_convert(run, out, err), 0);
  EXPECT_NE(out.str().find("repeats 7 cycles"), std::string::npos);

  synth.name = "moonwalk";
  EXPECT_THROW(cli::cmd_synth(synth, out, err), Error);
}

TEST(Cli, AnglesTable) {
  std::ostringstream out;
  ASSERT_EQ(cli::cmd_angles("", out), 0);
  const auto j = nlohmann::json::parse(out.str());
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), 26u);
}
