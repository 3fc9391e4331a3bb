// Copyright 2026 The evrecon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "synthetic.hpp"

namespace evrecon
{
namespace
{
namespace fs = std::filesystem;
using testing::read_file;
using testing::TempDir;

struct Result
{
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args)
{
  args.insert(args.begin(), "evrecon");
  std::vector<const char *> argv;
  for (const auto & a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path write_text(const fs::path & p, const std::string & text)
{
  std::ofstream(p) << text;
  return p;
}

const char * kFourEvents = "0.1 0 0 1\n0.2 1 0 1\n0.3 0 0 0\n0.4 0 0 1\n";

TEST(Cli, MissingRequiredOption)
{
  const auto r = run({"reconstruct", "--width", "2", "--height", "1", "--k", "2", "--out", "x"});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("--input"), std::string::npos);
}

TEST(Cli, UnknownFlagAndBadChoice)
{
  EXPECT_EQ(run({"info", "--bogus"}).code, cli::kUsage);
  EXPECT_EQ(run({}).code, cli::kUsage);
  TempDir dir("cli");
  const auto in = write_text(dir / "ev.txt", kFourEvents);
  EXPECT_EQ(
    run({"reconstruct", "--input", in.string(), "--width", "2", "--height", "1", "--k", "2",
         "--lambda", "cubic", "--out", (dir / "o").string()})
      .code,
    cli::kUsage);
}

TEST(Cli, InfoReportsStatistics)
{
  TempDir dir("cli");
  const auto in = write_text(dir / "ev.txt", kFourEvents);
  const auto r = run({"info", "--input", in.string(), "--width", "2", "--height", "1"});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("count: 4\n"), std::string::npos);
  EXPECT_NE(r.out.find("time_span: [0.1, 0.4]\n"), std::string::npos);
  EXPECT_NE(r.out.find("positive: 3\n"), std::string::npos);
  EXPECT_NE(r.out.find("negative: 1\n"), std::string::npos);
  EXPECT_NE(r.out.find("violations: 0\n"), std::string::npos);
}

TEST(Cli, InfoFlagsOrderViolations)
{
  TempDir dir("cli");
  const auto in = write_text(dir / "ev.txt", "0.2 0 0 1\n0.1 0 0 1\n");
  const auto r = run({"info", "--input", in.string(), "--width", "1", "--height", "1"});
  EXPECT_EQ(r.code, cli::kData);
  EXPECT_NE(r.out.find("violations: 1\n"), std::string::npos);
}

TEST(Cli, DataAndIoErrors)
{
  TempDir dir("cli");
  const auto bad = write_text(dir / "bad.txt", "0.1 0 0 1\n0.2 5 0 1\n");
  const auto r = run({"info", "--input", bad.string(), "--width", "2", "--height", "1"});
  EXPECT_EQ(r.code, cli::kData);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  EXPECT_EQ(
    run({"info", "--input", (dir / "missing.txt").string(), "--width", "2", "--height", "1"}).code,
    cli::kIo);
  const auto in = write_text(dir / "ev.txt", kFourEvents);
  // more events per window than the stream holds
  EXPECT_EQ(
    run({"reconstruct", "--input", in.string(), "--width", "2", "--height", "1", "--k", "9",
         "--out", (dir / "o").string()})
      .code,
    cli::kData);
  EXPECT_FALSE(fs::exists(dir / "o"));
}

TEST(Cli, ReconstructWritesGoldenFrames)
{
  TempDir dir("cli");
  const auto in = write_text(dir / "ev.txt", kFourEvents);
  const auto r = run(
    {"reconstruct", "--input", in.string(), "--width", "2", "--height", "1", "--k", "2", "--out",
     (dir / "o").string()});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("n_frames: 3\n"), std::string::npos);
  EXPECT_EQ(read_file(dir / "o" / "frame_000002.pgm"), std::string("P5\n2 1\n255\n\xe3\xe3"));
}

TEST(Cli, ReconstructUnsortedNeedsSortFlag)
{
  TempDir dir("cli");
  const auto in = write_text(dir / "ev.txt", "0.2 0 0 1\n0.1 0 0 1\n0.3 0 0 1\n0.4 0 0 1\n");
  const std::vector<std::string> base{
    "reconstruct", "--input", in.string(), "--width", "1", "--height", "1", "--k", "2", "--out",
    (dir / "o").string()};
  EXPECT_EQ(run(base).code, cli::kData);
  auto sorted = base;
  sorted.push_back("--sort");
  EXPECT_EQ(run(sorted).code, cli::kOk);
}

TEST(Cli, SimulateThenReconstruct)
{
  TempDir dir("cli");
  const auto s = run(
    {"simulate", "--scene", "sine", "--width", "4", "--height", "3", "--threshold", "0.2",
     "--samples", "500", "--out", (dir / "sim").string()});
  ASSERT_EQ(s.code, cli::kOk) << s.err;
  EXPECT_TRUE(fs::exists(dir / "sim" / "events.txt"));
  EXPECT_TRUE(fs::exists(dir / "sim" / "ground_truth.txt"));
  const auto r = run(
    {"reconstruct", "--input", (dir / "sim" / "events.txt").string(), "--width", "4", "--height",
     "3", "--k", "10", "--polarity", "signed", "--color", "map", "--norm", "perframe", "--out",
     (dir / "rec").string()});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(fs::exists(dir / "rec" / "frame_000000.ppm"));
  EXPECT_EQ(run({"simulate", "--scene", "sine", "--width", "4", "--height", "3", "--threshold",
                 "-1", "--out", (dir / "sim2").string()})
              .code,
            cli::kUsage);
}

TEST(Cli, BinaryExitCodes)
{
  TempDir dir("cli");
  const std::string tool = EVRECON_TOOL_PATH;
  const auto quiet = " >" + (dir / "log").string() + " 2>&1";
  EXPECT_EQ(std::system((tool + " --help" + quiet).c_str()), 0);
  const int rc = std::system((tool + " info" + quiet).c_str());
  ASSERT_TRUE(WIFEXITED(rc));
  EXPECT_EQ(WEXITSTATUS(rc), cli::kUsage);
}

}  // namespace
}  // namespace evrecon
