#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  Run r;
  const std::string cmd = std::string(CBG_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, SolveEdgeGame) {
  const auto r = cli("solve --n 4 --H K2 --F S2");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["value"], 1);
}

TEST(Cli, SolveTriangleGameOnThreeVertices) {
  const auto r = cli("solve --n 3 --H K3 --F P5");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(nlohmann::json::parse(r.out)["value"], 0);
}

TEST(Cli, SolveIsDeterministicWithoutTiming) {
  const auto a = cli("solve --n 5 --H P3 --F P4 --canonical");
  const auto b = cli("solve --n 5 --H P3 --F P4 --canonical");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, BadPatternIsUsageError) {
  EXPECT_EQ(cli("solve --n 4 --H Q7 --F S2").code, 2);
  EXPECT_EQ(cli("play --c nope --b random --game p3p4 --n 10").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
}

TEST(Cli, PlayWritesOrderedJsonLines) {
  const auto dir = std::filesystem::temp_directory_path() / "cbgame_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "games.jsonl").string();
  const auto r = cli("play --game p3p4 --n 20 --c p3p4-c --b random --reps 4 --seed 3 --out " + path);
  ASSERT_EQ(r.code, 0) << r.out;
  std::ifstream in(path);
  std::string line;
  std::vector<nlohmann::json> rows;
  while (std::getline(in, line))
    if (!line.empty()) rows.push_back(nlohmann::json::parse(line));
  ASSERT_EQ(rows.size(), 5u);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(rows[static_cast<std::size_t>(i)]["audit"], "ok") << rows[i].dump();
  EXPECT_TRUE(rows.back().contains("summary"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, ListsStrategies) {
  const auto r = cli("strategies");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("star-builder"), std::string::npos);
}

TEST(Cli, VerifyCountingOnly) {
  const auto r = cli("verify --only counting --csv -");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.rfind("PASS", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("counting-oracle"), std::string::npos) << r.out;
}
