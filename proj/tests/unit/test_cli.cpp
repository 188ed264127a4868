#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "k3sc/decision.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(K3SC_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  EXPECT_NE(pipe, nullptr);
  while (fgets(buf.data(), buf.size(), pipe) != nullptr) out += buf.data();
  int status = pclose(pipe);
  return RunResult{WEXITSTATUS(status), out};
}

}  // namespace

TEST(Cli, Invariants) {
  RunResult r = run_cli("invariants --r 4 --s 9 --d 6");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("c 1"), std::string::npos);
  EXPECT_NE(r.out.find("a1 1"), std::string::npos);
  EXPECT_NE(r.out.find("b1 1"), std::string::npos);

  r = run_cli("invariants --r 2 --s 4 --d 2");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.out.find("gcd(c,d)=2"), std::string::npos);

  r = run_cli("invariants --r 2 --s 2 --d 1 --gamma 2");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("gamma2 2"), std::string::npos);
}

TEST(Cli, DecideExitCodes) {
  RunResult r = run_cli("decide --r 2 --s 2 --d 1 --gamma 1 --delta 17 --mu 1");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("YES"), std::string::npos);
  EXPECT_NE(r.out.find("p1 5  q1 1"), std::string::npos);

  r = run_cli("decide --r 2 --s 2 --d 1 --gamma 1 --delta 25 --mu 3");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("NO"), std::string::npos);

  // malformed mu (not a unit mod n)
  r = run_cli("decide --r 2 --s 2 --d 1 --gamma 1 --delta 17 --mu 2");
  EXPECT_EQ(r.exit_code, 2);
}

TEST(Cli, DecideWithOracle) {
  RunResult r = run_cli(
      "decide --r 2 --s 2 --d 1 --gamma 1 --delta 17 --mu 1 --oracle-bound 200 "
      "--format jsonl");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("\"agreement\":true"), std::string::npos);
}

TEST(Cli, EnumerateJsonl) {
  RunResult r = run_cli(
      "enumerate --r 2 --s 2 --d 1 --gamma 1 --delta-max 40 --format jsonl");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("\"delta\":17"), std::string::npos);
  EXPECT_NE(r.out.find("\"mu\":1"), std::string::npos);

  // empty output is still exit 0
  r = run_cli(
      "enumerate --r 2 --s 2 --d 1 --gamma 1 --mu 3 --series A --eps +1 "
      "--delta-max 8 --format jsonl");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "");

  // invalid context
  r = run_cli("enumerate --r 3 --s 3 --d 1 --gamma 3 --delta-max 40");
  EXPECT_EQ(r.exit_code, 2);
}

TEST(Cli, CheckElement) {
  RunResult r = run_cli(
      "check-element --r 1 --s 1 --d 1 --gamma 1 --delta 5 --mu 1 --x 3 --y 1 "
      "--series A --eps +1");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_NE(r.out.find("nef (7, 3)"), std::string::npos);

  // member that fails a clause
  r = run_cli(
      "check-element --r 1 --s 1 --d 1 --gamma 1 --delta 5 --mu 1 --x 5 --y 1 "
      "--series A --eps +1");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("E.sq"), std::string::npos);

  // non-member coordinates
  r = run_cli(
      "check-element --r 1 --s 1 --d 1 --gamma 1 --delta 5 --mu 1 --x 2 --y 1 "
      "--series A --eps +1");
  EXPECT_EQ(r.exit_code, 2);
}

TEST(Cli, CrossvalSmall) {
  for (const char* suite : {"bijection", "reduction", "specialization", "pell"}) {
    RunResult r = run_cli(std::string("crossval --suite ") + suite +
                          " --seed 1 --scale small");
    EXPECT_EQ(r.exit_code, 0) << suite << "\n" << r.out;
    EXPECT_NE(r.out.find("ok"), std::string::npos);
  }
}

TEST(Cli, BatchDecideIsOrderedAndComplete) {
  std::string path = testing::TempDir() + "/k3sc_batch.jsonl";
  {
    std::ofstream f(path);
    f << R"({"r":2,"s":2,"d":1,"gamma":1,"delta":17,"mu":1})" << "\n";
    f << R"({"r":2,"s":2,"d":1,"gamma":1,"delta":25,"mu":3})" << "\n";
    f << R"({"r":1,"s":2,"d":1,"gamma":1,"delta":9,"mu":1})" << "\n";
  }
  RunResult r = run_cli("decide --batch " + path);
  EXPECT_EQ(r.exit_code, 0);
  size_t yes1 = r.out.find("\"verdict\":\"YES\"");
  size_t no = r.out.find("\"verdict\":\"NO\"");
  ASSERT_NE(yes1, std::string::npos);
  ASSERT_NE(no, std::string::npos);
  EXPECT_LT(yes1, no);
  // three lines out
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
}

TEST(Cli, OutFileAndFamily) {
  std::string path = testing::TempDir() + "/k3sc_out.txt";
  RunResult r = run_cli("--out " + path +
                        " family --r 2 --s 2 --d 1 --gamma 1 --delta 17 --mu 1 "
                        "--series A --eps +1 --count 3");
  EXPECT_EQ(r.exit_code, 0);
  std::ifstream f(path);
  std::string contents((std::istreambuf_iterator<char>(f)),
                       std::istreambuf_iterator<char>());
  EXPECT_NE(contents.find("17"), std::string::npos);
  EXPECT_NE(contents.find("1361"), std::string::npos);
}

TEST(Cli, NonEmptySearch) {
  RunResult r = run_cli("nonempty --r 2 --s 2 --d 1 --delta-max 40");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("member found"), std::string::npos);
  EXPECT_NE(r.out.find("family"), std::string::npos);
}

// every emitted record parses back and its witness re-verifies
TEST(Cli, JsonlRoundTrip) {
  using namespace k3sc;
  RunResult r = run_cli(
      "enumerate --r 2 --s 2 --d 1 --gamma 1 --delta-max 60 --format jsonl");
  ASSERT_EQ(r.exit_code, 0);
  std::istringstream lines(r.out);
  int records = 0;
  for (std::string line; std::getline(lines, line);) {
    nlohmann::json rec = nlohmann::json::parse(line);
    Context ctx = make_context(2, 2, 1, 1, Int(rec["delta"].get<int64_t>()),
                               Int(rec["mu"].get<int64_t>()));
    Series series = rec["series"] == "A" ? Series::A : Series::B;
    int eps = rec["eps"].get<int>();
    Int p1 = rec["p1"].get<int64_t>(), q1 = rec["q1"].get<int64_t>();
    ASSERT_EQ(ctx.split.gamma * p1 * p1 - ctx.delta * q1 * q1,
              rhs(ctx, SeriesChoice{series, eps}));
    ASSERT_TRUE(branch_clauses_pass(ctx, series, p1, q1));
    ++records;
  }
  EXPECT_GT(records, 0);
}

// witnesses beyond 64 bits serialize as decimal strings and round-trip
TEST(Cli, JsonlBigIntegersAreDecimalStrings) {
  using namespace k3sc;
  RunResult r = run_cli(
      "decide --r 2 --s 2 --d 1 --gamma 1 --delta 1321 --mu 3 --format jsonl");
  ASSERT_EQ(r.exit_code, 0);
  nlohmann::json v = nlohmann::json::parse(r.out);
  ASSERT_EQ(v["verdict"], "YES");
  ASSERT_TRUE(v["p1"].is_string());
  Int p1(v["p1"].get<std::string>());
  Int q1 = v["q1"].is_string() ? Int(v["q1"].get<std::string>())
                               : Int(v["q1"].get<int64_t>());
  Context ctx = make_context(2, 2, 1, 1, 1321, 3);
  EXPECT_EQ(ctx.split.gamma * p1 * p1 - ctx.delta * q1 * q1,
            rhs(ctx, SeriesChoice{v["series"] == "A" ? Series::A : Series::B,
                                  v["eps"].get<int>()}));
}

TEST(Cli, ThreadCountDoesNotChangeBatchOutput) {
  std::string path = testing::TempDir() + "/k3sc_batch2.jsonl";
  {
    std::ofstream f(path);
    for (int k = 0; k < 8; ++k)
      f << R"({"r":2,"s":2,"d":1,"gamma":1,"delta":)" << (17 + 16 * k)
        << R"(,"mu":1})" << "\n";
  }
  RunResult serial = run_cli("decide --batch " + path);
  setenv("K3SC_THREADS", "4", 1);
  RunResult parallel = run_cli("decide --batch " + path);
  unsetenv("K3SC_THREADS");
  EXPECT_EQ(serial.exit_code, 0);
  EXPECT_EQ(parallel.exit_code, 0);
  EXPECT_EQ(serial.out, parallel.out);
}
