#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "pse/error.hpp"
#include "pse/image_io.hpp"
#include "synthetic.hpp"

namespace fs = std::filesystem;

namespace pse {
namespace {

struct AppRun {
  int status = 0;
  std::string out;
  std::string err;
};

AppRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "pse");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int status = cli::run_app(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> cells;
  std::stringstream ss(s);
  for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
  return cells;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = testing::make_temp_dir("pse_cli"); }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CliTest, UniformImageWritesAllZeroPng) {
  write_png(dir_ / "gray.png", RgbImage(64, 64, Rgb8{128, 128, 128}));
  const AppRun r = run({"run", (dir_ / "gray.png").string(), "--out", (dir_ / "map.png").string()});
  ASSERT_EQ(r.status, 0) << r.err;
  const GrayImage map = load_gray(dir_ / "map.png");
  ASSERT_EQ(map.width(), 64);
  ASSERT_EQ(map.height(), 64);
  for (const auto v : map.data()) ASSERT_EQ(v, 0);
}

TEST_F(CliTest, RedSquareIsSalient) {
  RgbImage img(128, 128, Rgb8{128, 128, 128});
  for (int y = 48; y < 80; ++y) {
    for (int x = 48; x < 80; ++x) img(x, y) = {220, 30, 30};
  }
  write_png(dir_ / "square.png", img);
  const AppRun r = run({"run", (dir_ / "square.png").string(), "--out",
                        (dir_ / "map.png").string(), "--threads", "1"});
  ASSERT_EQ(r.status, 0) << r.err;
  const GrayImage map = load_gray(dir_ / "map.png");
  double in = 0, out = 0;
  for (int y = 0; y < 128; ++y) {
    for (int x = 0; x < 128; ++x) {
      const bool inside = x >= 48 && x < 80 && y >= 48 && y < 80;
      (inside ? in : out) += map(x, y);
    }
  }
  in /= 32.0 * 32.0;
  out /= 128.0 * 128.0 - 32.0 * 32.0;
  EXPECT_GE(in, 4.0 * out);
}

TEST_F(CliTest, ExitCodes) {
  const AppRun missing =
      run({"run", (dir_ / "nope.png").string(), "--out", (dir_ / "map.png").string()});
  EXPECT_EQ(missing.status, 2);
  EXPECT_NE(missing.err.find("FileNotFound"), std::string::npos);

  EXPECT_EQ(run({}).status, 2);
  EXPECT_EQ(run({"run"}).status, 2);
  EXPECT_EQ(run({"frobnicate"}).status, 2);
  EXPECT_EQ(run({"--help"}).status, 0);

  write_png(dir_ / "gray.png", RgbImage(16, 16, Rgb8{1, 2, 3}));
  const AppRun bad_q =
      run({"run", (dir_ / "gray.png").string(), "--out", (dir_ / "m.png").string(), "--q", "0"});
  EXPECT_EQ(bad_q.status, 2);
  EXPECT_NE(bad_q.err.find("NonPositiveQ"), std::string::npos);

  // A granularity of one region cannot be segmented: pipeline error.
  const AppRun bad_level = run({"run", (dir_ / "gray.png").string(), "--out",
                                (dir_ / "m.png").string(), "--levels", "1"});
  EXPECT_EQ(bad_level.status, 1);
}

TEST_F(CliTest, BatchOnSyntheticSquares) {
  testing::write_suite(testing::make_synthetic_suite(5, 128, 3), dir_ / "data");
  const AppRun r = run({"batch", (dir_ / "data/images").string(), (dir_ / "data/gt").string(),
                        "--out", (dir_ / "out").string(), "--threads", "2"});
  ASSERT_EQ(r.status, 0) << r.err;

  const auto summary = read_lines(dir_ / "out/summary.csv");
  ASSERT_EQ(summary.size(), 1u + 5u + 2u);
  EXPECT_EQ(summary[0], "image,max_f_beta,auc,mse");
  EXPECT_EQ(split(summary[1])[0], "synth_00");
  const auto agg = split(summary[6]);
  ASSERT_EQ(agg[0], "aggregate");
  EXPECT_GE(std::stod(agg[1]), 0.95);
  EXPECT_GE(std::stod(agg[2]), 0.99);
  EXPECT_EQ(split(summary[7])[0], "per_image_mean");

  const auto curves = read_lines(dir_ / "out/curves.csv");
  ASSERT_EQ(curves.size(), 257u);
  EXPECT_EQ(curves[0], "threshold,precision,recall,fpr");
  EXPECT_EQ(split(curves[256])[0], "255");

  for (int i = 0; i < 5; ++i) {
    const fs::path map = dir_ / "out/maps" / ("synth_0" + std::to_string(i) + ".png");
    ASSERT_TRUE(fs::exists(map));
    const GrayImage g = load_gray(map);
    int lo = 255, hi = 0;
    for (const auto v : g.data()) {
      lo = std::min<int>(lo, v);
      hi = std::max<int>(hi, v);
    }
    EXPECT_TRUE((lo == 0 && hi == 255) || hi == 0);
  }
}

TEST_F(CliTest, BatchSkipsImagesWithoutGroundTruth) {
  testing::write_suite(testing::make_synthetic_suite(3, 64, 8), dir_ / "data");
  fs::remove(dir_ / "data/gt/synth_01.png");
  const AppRun r = run({"batch", (dir_ / "data/images").string(), (dir_ / "data/gt").string(),
                        "--out", (dir_ / "out").string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.err.find("MissingGroundTruth"), std::string::npos);
  EXPECT_EQ(read_lines(dir_ / "out/summary.csv").size(), 1u + 2u + 2u);
}

TEST_F(CliTest, EmptyDataset) {
  fs::create_directories(dir_ / "images");
  fs::create_directories(dir_ / "gt");
  try {
    cli::scan_dataset(dir_ / "images", dir_ / "gt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyDataset);
  }
  const AppRun r = run({"batch", (dir_ / "images").string(), (dir_ / "gt").string(), "--out",
                        (dir_ / "out").string()});
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("EmptyDataset"), std::string::npos);
}

TEST_F(CliTest, SweepWritesOneRowPerQ) {
  testing::write_suite(testing::make_synthetic_suite(2, 64, 9), dir_ / "data");
  const AppRun r = run({"sweep-q", (dir_ / "data/images").string(), (dir_ / "data/gt").string(),
                        "--out", (dir_ / "sweep.csv").string(), "--levels", "100,200"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto lines = read_lines(dir_ / "sweep.csv");
  ASSERT_EQ(lines.size(), 6u);
  EXPECT_EQ(lines[0], "q,max_f_beta,auc,mse");
  EXPECT_EQ(split(lines[1])[0], "0.001");
  EXPECT_EQ(split(lines[5])[0], "10");

  const AppRun custom =
      run({"sweep-q", (dir_ / "data/images").string(), (dir_ / "data/gt").string(), "--out",
           (dir_ / "s2.csv").string(), "--grid", "0.5,2", "--levels", "100"});
  ASSERT_EQ(custom.status, 0) << custom.err;
  EXPECT_EQ(read_lines(dir_ / "s2.csv").size(), 3u);

  const AppRun bad = run({"sweep-q", (dir_ / "data/images").string(),
                          (dir_ / "data/gt").string(), "--out", (dir_ / "s3.csv").string(),
                          "--grid", "0.1,-1"});
  EXPECT_EQ(bad.status, 2);
}

TEST_F(CliTest, ConfigFileAndFlagPrecedence) {
  testing::write_suite(testing::make_synthetic_suite(1, 64, 2), dir_ / "data");
  {
    std::ofstream cfg(dir_ / "exp.toml");
    cfg << "# experiment\n"
           "method = \"qcut\"\n"
           "q = 0.25\n"
           "levels = [60, 120]\n"
           "beta_sq = 0.3\n"
           "threads = 2\n";
  }
  const std::string img = (dir_ / "data/images/synth_00.png").string();
  const AppRun from_file =
      run({"run", img, "--out", (dir_ / "a.png").string(), "--config", (dir_ / "exp.toml").string()});
  ASSERT_EQ(from_file.status, 0) << from_file.err;

  const AppRun explicit_flags = run({"run", img, "--out", (dir_ / "b.png").string(), "--method",
                                     "qcut", "--q", "0.25", "--levels", "60,120"});
  ASSERT_EQ(explicit_flags.status, 0) << explicit_flags.err;
  EXPECT_EQ(load_gray(dir_ / "a.png"), load_gray(dir_ / "b.png"));

  // A flag beats the file.
  const AppRun overridden = run({"run", img, "--out", (dir_ / "c.png").string(), "--config",
                                 (dir_ / "exp.toml").string(), "--method", "pse"});
  ASSERT_EQ(overridden.status, 0) << overridden.err;
  const AppRun pse_flags = run({"run", img, "--out", (dir_ / "d.png").string(), "--q", "0.25",
                                "--levels", "60,120"});
  ASSERT_EQ(pse_flags.status, 0);
  EXPECT_EQ(load_gray(dir_ / "c.png"), load_gray(dir_ / "d.png"));

  {
    std::ofstream cfg(dir_ / "bad.toml");
    cfg << "method = \"gp\"\n";
  }
  EXPECT_EQ(run({"run", img, "--out", (dir_ / "e.png").string(), "--config",
                 (dir_ / "bad.toml").string()})
                .status,
            2);
  EXPECT_EQ(run({"run", img, "--out", (dir_ / "e.png").string(), "--config",
                 (dir_ / "missing.toml").string()})
                .status,
            2);
}

TEST_F(CliTest, NumbersUseTwelveSignificantDigits) {
  EXPECT_EQ(cli::format_number(1.0), "1");
  EXPECT_EQ(cli::format_number(0.1), "0.1");
  EXPECT_EQ(cli::format_number(2.0 / 3.0), "0.666666666667");
  EXPECT_EQ(cli::format_number(1e-20), "1e-20");
}

TEST_F(CliTest, InstalledBinaryRuns) {
  write_png(dir_ / "gray.png", RgbImage(32, 32, Rgb8{9, 9, 9}));
  const std::string tool = PSE_TOOL_PATH;
  const std::string ok = "\"" + tool + "\" run \"" + (dir_ / "gray.png").string() + "\" --out \"" +
                         (dir_ / "m.png").string() + "\"";
  EXPECT_EQ(std::system(ok.c_str()), 0);
  EXPECT_TRUE(fs::exists(dir_ / "m.png"));
  const std::string missing = "\"" + tool + "\" run \"" + (dir_ / "x.png").string() +
                              "\" --out \"" + (dir_ / "m.png").string() + "\" 2>/dev/null";
  const int status = std::system(missing.c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 2);
}

}  // namespace
}  // namespace pse
