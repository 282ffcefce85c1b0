#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include <unistd.h>

#include "seistex/metrics.hpp"
#include "synthetic.hpp"

namespace seistex {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("seistex_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    const auto train = testing::make_mosaic(160, {0, 1, 2, 3}, 1);
    const auto test = testing::make_mosaic(160, {3, 1, 0, 2}, 2);
    write_sgrid(dir_ / "train.sgrid", train.section);
    write_sgrid(dir_ / "s.sgrid", test.section);
    write_sgrid(dir_ / "truth.sgrid", to_section_grid(test.truth));
    std::ofstream(dir_ / "exemplars.txt") << "chaotic train.sgrid 40 40\n"
                                             "faults train.sgrid 40 120\n"
                                             "salt_dome train.sgrid 120 40\n"
                                             "other train.sgrid 120 120\n";
    std::ofstream(dir_ / "c.cfg") << "descriptor = lbp\n"
                                     "patch_size = 25\n"
                                     "stride = 8\n"
                                     "per_class = 25\n"
                                     "slic_region_size = 12\n"
                                     "sections = train.sgrid\n"
                                     "exemplars = exemplars.txt\n"
                                     "model = m.model\n";
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) {
    const std::string cmd = std::string(SEISTEX_CLI) + " " + args + " > " +
                            (dir_ / "stdout.txt").string() + " 2> " +
                            (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string cfg() const { return "--config " + (dir_ / "c.cfg").string(); }
  std::string out() const { return slurp(dir_ / "stdout.txt"); }
  std::string err() const { return slurp(dir_ / "stderr.txt"); }

  fs::path dir_;
};

TEST_F(CliTest, TrainLabelEvaluateRender) {
  ASSERT_EQ(run("train " + cfg() + " --workers 2"), 0) << err();
  ASSERT_TRUE(fs::exists(dir_ / "m.model"));
  const std::string model = slurp(dir_ / "m.model");
  EXPECT_EQ(model.rfind("OVAMODEL 1 4 18 lbp\n", 0), 0u);

  const std::string section = (dir_ / "s.sgrid").string();
  ASSERT_EQ(run("label " + cfg() + " --section " + section), 0) << err();
  ASSERT_TRUE(fs::exists(dir_ / "s.labels.sgrid"));
  ASSERT_TRUE(fs::exists(dir_ / "s.labels.ppm"));
  const std::string labels = slurp(dir_ / "s.labels.sgrid");
  const std::string ppm = slurp(dir_ / "s.labels.ppm");
  EXPECT_EQ(ppm.rfind("P6\n160 160\n255\n", 0), 0u);

  // Reruns are byte-identical, whatever the worker count.
  ASSERT_EQ(run("train " + cfg() + " --workers 1"), 0);
  EXPECT_EQ(slurp(dir_ / "m.model"), model);
  ASSERT_EQ(run("label " + cfg() + " --workers 3 --section " + section), 0);
  EXPECT_EQ(slurp(dir_ / "s.labels.sgrid"), labels);
  EXPECT_EQ(slurp(dir_ / "s.labels.ppm"), ppm);

  const std::string truth = (dir_ / "truth.sgrid").string();
  ASSERT_EQ(run("evaluate --pred " + truth + " --truth " + truth), 0) << err();
  EXPECT_EQ(out(), "pa = 1.0000\nmca = 1.0000\nmiu = 1.0000\nfwiu = 1.0000\n");

  ASSERT_EQ(run("evaluate --pred " + (dir_ / "s.labels.sgrid").string() +
                " --truth " + truth),
            0);
  EXPECT_EQ(out().rfind("pa = ", 0), 0u);

  const std::string rendered = (dir_ / "r.ppm").string();
  ASSERT_EQ(run("render --labels " + truth + " --out " + rendered), 0) << err();
  EXPECT_EQ(slurp(rendered),
            [&] {
              const auto b = render_labels(to_label_grid(read_sgrid(truth)),
                                           ClassSet::structures);
              return std::string(b.begin(), b.end());
            }());
}

TEST_F(CliTest, HarvestManifest) {
  ASSERT_EQ(run("harvest " + cfg()), 0) << err();
  std::istringstream lines(out());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    std::istringstream row(line);
    std::string cls, section;
    int r = 0, c = 0;
    double score = 0;
    ASSERT_TRUE(row >> cls >> section >> r >> c >> score) << line;
    ++count;
  }
  EXPECT_EQ(count, 100);
}

TEST_F(CliTest, UsageAndConfigErrors) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("train"), 2);
  EXPECT_NE(err().find("--config"), std::string::npos);
  EXPECT_EQ(run("train --config " + (dir_ / "missing.cfg").string()), 2);
  EXPECT_EQ(run("train " + cfg() + " --descriptor sift"), 2);
  EXPECT_EQ(run("train " + cfg() + " --patch-size 24"), 2);
  EXPECT_EQ(run("label " + cfg() + " --section " + (dir_ / "s.sgrid").string()),
            2);  // no model trained yet
  std::ofstream(dir_ / "c.cfg", std::ios::app) << "mystery = 1\n";
  EXPECT_EQ(run("train " + cfg()), 2);
  EXPECT_FALSE(fs::exists(dir_ / "m.model"));
}

TEST_F(CliTest, RuntimeErrorOnCorruptInput) {
  std::ofstream(dir_ / "bad.sgrid") << "SGRID 1 4 4\nxx";
  const std::string bad = (dir_ / "bad.sgrid").string();
  EXPECT_EQ(run("evaluate --pred " + bad + " --truth " + bad), 1);
}

}  // namespace
}  // namespace seistex
