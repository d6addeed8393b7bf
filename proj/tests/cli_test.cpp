// End-to-end checks of the command-line tool: exit codes, JSON payloads, and
// determinism of the result objects.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "test_util.hpp"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(DG_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  CliResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    result.output.append(buf.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string fixture(const std::string& name) { return dgtest::fixture_path(name); }

TEST(Cli, ApproxUniversalJson) {
  const CliResult r = run_cli("approx " + fixture("d_univ.json") + " --json");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.output);
  EXPECT_EQ(j["result"]["outcome"], "win");
  EXPECT_EQ(j["result"]["reported"], 1);
  EXPECT_TRUE(j.contains("meta"));
}

TEST(Cli, ExactPred1Json) {
  const CliResult r =
      run_cli("exact " + fixture("d_pred1.json") + " --max-k 3 --json");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.output);
  EXPECT_EQ(j["result"]["outcome"], "exact");
  EXPECT_EQ(j["result"]["k_opt"], 1);
}

TEST(Cli, CompareJson) {
  const CliResult r =
      run_cli("compare " + fixture("d_pred2.json") + " --max-k 3 --json");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.output);
  EXPECT_EQ(j["result"]["k_opt"], 2);
  EXPECT_EQ(j["result"]["reported"], 3);
  EXPECT_EQ(j["result"]["sandwich_holds"], true);
}

TEST(Cli, SolveSubcommands) {
  const CliResult gk = run_cli("solve-gk " + fixture("d_pred1.json") + " --k 1 --json");
  ASSERT_EQ(gk.exit_code, 0);
  EXPECT_EQ(nlohmann::json::parse(gk.output)["result"]["winner"], "O");

  const CliResult queue =
      run_cli("solve-queue " + fixture("d_pred1.json") + " --k 0 --json");
  ASSERT_EQ(queue.exit_code, 0);
  const auto j = nlohmann::json::parse(queue.output);
  EXPECT_EQ(j["result"]["winner"], "I");
  EXPECT_TRUE(j["result"]["game"].contains("vertex_count"));
}

TEST(Cli, GenPredictionMatchesLibrary) {
  const CliResult r = run_cli("gen prediction --d 1");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(delaygames::parse_dpa(r.output), delaygames::prediction_family(1));
}

TEST(Cli, GenRandomDeterministic) {
  const std::string args = "gen random --states 3 --colors 2 --in 2 --out 2 --seed 9";
  const CliResult a = run_cli(args);
  const CliResult b = run_cli(args);
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.output, b.output);
  EXPECT_NO_THROW(delaygames::parse_dpa(a.output).validate());
}

TEST(Cli, ExportPgWritesInterchangeFormat) {
  const std::string out =
      (std::filesystem::temp_directory_path() / "dg_export_test.pg").string();
  const CliResult r =
      run_cli("export-pg " + fixture("d_univ.json") + " --gk 1 --out " + out);
  ASSERT_EQ(r.exit_code, 0);
  const std::string text = dgtest::read_file(out);
  EXPECT_EQ(text.substr(0, text.find('\n')), "parity 2;");
  std::filesystem::remove(out);
}

TEST(Cli, MissingFileIsExitTwo) {
  EXPECT_EQ(run_cli("approx /nonexistent/missing.json").exit_code, 2);
}

TEST(Cli, MalformedInstanceIsExitTwo) {
  const std::string path =
      (std::filesystem::temp_directory_path() / "dg_bad_instance.json").string();
  {
    std::ofstream bad(path);
    bad << "{ not json";
  }
  EXPECT_EQ(run_cli("approx " + path).exit_code, 2);
  std::filesystem::remove(path);
}

TEST(Cli, UsageErrorsAreExitOne) {
  EXPECT_EQ(run_cli("approx").exit_code, 1);              // missing file argument
  EXPECT_EQ(run_cli("frobnicate x.json").exit_code, 1);   // unknown subcommand
  EXPECT_EQ(run_cli("exact " + fixture("d_univ.json") + " --max-k 2 --what").exit_code,
            1);  // unknown flag
}

TEST(Cli, ResourceLimitIsExitThree) {
  EXPECT_EQ(
      run_cli("solve-queue " + fixture("d_pred1.json") + " --k 12 --vertex-budget 500")
          .exit_code,
      3);
  EXPECT_EQ(run_cli("approx " + fixture("d_pred1.json") + " --layer-cap 1").exit_code,
            3);
}

TEST(Cli, ApproxCapTruncatesScan) {
  const CliResult r =
      run_cli("approx " + fixture("d_pred2.json") + " --cap 1 --json");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.output);
  EXPECT_EQ(j["result"]["outcome"], "no_win");
  EXPECT_EQ(j["result"]["bound_reason"], "cap");
}

TEST(Cli, ResultPayloadIsByteStable) {
  const std::string args = "compare " + fixture("d_pred2.json") + " --max-k 3 --json";
  const auto a = nlohmann::ordered_json::parse(run_cli(args).output);
  const auto b = nlohmann::ordered_json::parse(run_cli(args).output);
  EXPECT_EQ(a["result"].dump(), b["result"].dump());
}

}  // namespace
