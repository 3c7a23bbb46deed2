#include <gtest/gtest.h>

#include <sstream>

#include "support/golden.hpp"

namespace rfm {
namespace {

int run(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

std::string at(const std::string& name) { return std::string(RFM_SAMPLES_DIR) + "/" + name; }

class Golden : public ::testing::TestWithParam<testing::GoldenCase> {};

TEST_P(Golden, MatchesFileAcrossRepeatedRuns) {
  const auto& c = GetParam();
  const auto expected = testing::read_text(std::string(RFM_GOLDEN_DIR) + "/" + c.name + ".golden");
  ASSERT_FALSE(expected.empty()) << "missing golden file for " << c.name;
  for (int run = 0; run < 3; ++run) EXPECT_EQ(testing::run_golden_case(c, RFM_SAMPLES_DIR), expected) << c.name;
}

INSTANTIATE_TEST_SUITE_P(Cli, Golden, ::testing::ValuesIn(testing::load_golden_cases(RFM_GOLDEN_DIR)),
                         [](const ::testing::TestParamInfo<testing::GoldenCase>& info) { return info.param.name; });

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"homology", at("lens5.gm")}), 0);
  EXPECT_EQ(run({"verify", at("bad.rfd")}), 1);
  EXPECT_EQ(run({"construct-directed", at("theta.gm")}), 1);
  EXPECT_EQ(run({"parse", at("bad_syntax.gm")}), 2);
  EXPECT_EQ(run({}), 2);
  EXPECT_EQ(run({"homology"}), 2);
  EXPECT_EQ(run({"render", at("g1.mf"), "--format", "png"}), 2);
  EXPECT_EQ(run({"admits-directed", "--torus-bundle", "1", "2"}), 2);
  EXPECT_EQ(run({"--help"}), 0);
}

TEST(Cli, VerifyConstructedOutput) {
  std::string rfd;
  ASSERT_EQ(run({"construct-directed", at("bundle4.gm")}, &rfd), 0);
  const auto path = std::filesystem::temp_directory_path() / "rfm_cli_test.rfd";
  {
    std::ofstream f(path);
    f << rfd;
  }
  std::string out;
  EXPECT_EQ(run({"verify", path.string()}, &out), 0);
  EXPECT_EQ(out, "valid\ndirected: true\n");
  std::filesystem::remove(path);
}

TEST(Cli, OutputFlagWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "rfm_cli_test.txt";
  std::string out;
  EXPECT_EQ(run({"homology", at("lens5.gm"), "-o", path.string()}, &out), 0);
  EXPECT_TRUE(out.empty());
  EXPECT_EQ(testing::read_text(path.string()), "H1 = Z/5\n");
  std::filesystem::remove(path);
}

TEST(Cli, MorseDirections) {
  std::string out;
  EXPECT_EQ(run({"directions", at("g1.mf")}, &out), 0);
  EXPECT_EQ(out, "outward inward inward\n");
}

}  // namespace
}  // namespace rfm
