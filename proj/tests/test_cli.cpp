#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "gmorita/report.hpp"

using gmorita::json;

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(const std::string& args) {
  const std::string cmd = std::string(GMORITA_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fx(const std::string& name) { return std::string(GMORITA_FIXTURES) + "/" + name; }

json cli_json(const std::string& args, int expected_code) {
  const CliRun r = cli("--json " + args);
  EXPECT_EQ(r.code, expected_code) << args << "\n" << r.out;
  return json::parse(r.out);
}

const json* check(const json& report, const std::string& name) {
  for (const auto& c : report["checks"])
    if (c["name"] == name) return &c;
  return nullptr;
}

}  // namespace

TEST(Cli, ValidateAlgebraPasses) {
  const json r = cli_json("validate " + fx("e1.json") + " algebra:A", 0);
  EXPECT_EQ(r["summary"]["status"], "pass");
  EXPECT_EQ(r["checks"].size(), 4u);
}

TEST(Cli, ChecksAreSortedByName) {
  const json r = cli_json("morita " + fx("e1-ctx.json") + " ctx morita2", 0);
  std::string prev;
  for (const auto& c : r["checks"]) {
    EXPECT_LE(prev, c["name"].get<std::string>());
    prev = c["name"];
    EXPECT_TRUE(c.contains("law"));
    EXPECT_TRUE(c.contains("witness"));
  }
}

TEST(Cli, MalformedJsonExits2) {
  const std::string path = testing::TempDir() + "malformed.json";
  std::ofstream(path) << "{\"field\": ";
  EXPECT_EQ(cli("validate " + path + " algebra:A").code, 2);
  const json r = cli_json("validate " + path + " algebra:A", 2);
  EXPECT_EQ(r["error"]["code"], "ParseError");
}

TEST(Cli, UnknownKeyAndKindMismatchExit3) {
  EXPECT_EQ(cli("validate " + fx("e1.json") + " algebra:Nope").code, 3);
  EXPECT_EQ(cli("validate " + fx("e1.json") + " context:A").code, 3);
  EXPECT_EQ(cli("analyze " + fx("e1.json") + " regular centralizer").code, 3);
}

TEST(Cli, BadArgumentsExit2) { EXPECT_EQ(cli("validate").code, 2); }

TEST(Cli, BrokenAssociativityContext) {
  const json r = cli_json("validate " + fx("broken-assoc.json") + " context:ctx", 1);
  const json* c = check(r, "AssociativityM");
  ASSERT_TRUE(c);
  EXPECT_EQ((*c)["status"], "fail");
  EXPECT_EQ((*c)["law"], "(m m') n = m (m' n)");
  EXPECT_TRUE((*c)["witness"].contains("m"));
  const json a = cli_json("validate " + fx("broken-assoc.json") + " bad", 1);
  EXPECT_EQ((*check(a, "Associativity"))["witness"]["triple"], json::array({"E12", "E21", "E12"}));
}

TEST(Cli, AnalyzeCentralizer) {
  const json r = cli_json("analyze " + fx("e2.json") + " A centralizer", 0);
  EXPECT_EQ(r["result"]["dims"], json({{"1", 2}, {"s", 0}}));
  const json r3 = cli_json("analyze " + fx("e3.json") + " A centralizer", 0);
  EXPECT_EQ(r3["result"]["dims"], json({{"1", 3}, {"s", 1}}));
}

TEST(Cli, AnalyzeStabilizer) {
  EXPECT_EQ(cli_json("analyze " + fx("e3.json") + " P3 stabilizer", 0)["result"]["stabilizer"], json::array({"1"}));
  EXPECT_EQ(cli_json("analyze " + fx("e1.json") + " A stabilizer", 0)["result"]["stabilizer"], json::array({"1", "s"}));
}

TEST(Cli, AnalyzeHomEndopDual) {
  const json h = cli_json("analyze " + fx("e1.json") + " P hom", 0);
  EXPECT_EQ(h["result"]["dim"], 8);
  EXPECT_EQ(cli_json("analyze " + fx("e1.json") + " P endop", 0)["result"]["dims"], json({{"1", 4}, {"s", 4}}));
  EXPECT_EQ(cli_json("analyze " + fx("e1.json") + " P dual", 0)["result"]["dims"], json({{"1", 2}, {"s", 2}}));
}

TEST(Cli, AnalyzeContextWritesWorkspace) {
  const std::string out = testing::TempDir() + "ctx_out.json";
  const json r = cli_json("analyze " + fx("e2.json") + " P context --out " + out, 0);
  EXPECT_EQ(r["result"]["surjective"], true);
  EXPECT_EQ(r["result"]["over_c"], true);
  EXPECT_EQ(cli_json("morita " + out + " ctx morita2", 0)["summary"]["status"], "pass");
  const json p3 = cli_json("analyze " + fx("e3.json") + " P3 context", 0);
  EXPECT_EQ(p3["result"]["surjective"], false);
  EXPECT_EQ(p3["result"]["progenerator"], false);
}

TEST(Cli, MoritaLevels) {
  EXPECT_EQ(cli("morita " + fx("e1-ctx.json") + " ctx check").code, 0);
  EXPECT_EQ(cli("morita " + fx("e1-ctx.json") + " ctx morita1").code, 0);
  EXPECT_EQ(cli("morita " + fx("e2-ctx.json") + " ctx morita2").code, 0);
  const json s = cli_json("morita " + fx("zero-f.json") + " ctx surjective", 1);
  EXPECT_EQ(s["result"]["surjective"], false);
  EXPECT_EQ((*check(s, "Surjective"))["witness"]["code"], "NotSurjective");
  EXPECT_EQ(cli("morita " + fx("zero-f.json") + " ctx morita1").code, 1);
}

TEST(Cli, SamplesFlag) {
  const json r = cli_json("morita " + fx("e1-ctx.json") + " ctx morita1 --samples A,As,P", 0);
  EXPECT_TRUE(check(r, "Unit.As"));
  EXPECT_TRUE(check(r, "Suspension.P.s"));
  EXPECT_EQ(cli("morita " + fx("e1-ctx.json") + " ctx morita1 --samples A,nothing").code, 3);
}

TEST(Cli, TwistedContextFailsWithHomogeneousWitness) {
  const json r = cli_json("morita " + fx("e1-ctx.json") + " twisted morita2", 1);
  const json* c = check(r, "P.Condition3");
  ASSERT_TRUE(c);
  EXPECT_EQ((*c)["witness"]["m_degree"], "1");
  EXPECT_EQ((*c)["witness"]["c_degree"], "s");
}

TEST(Cli, FieldOverride) {
  EXPECT_EQ(cli("--field Fp:3 validate " + fx("e1.json") + " algebra:A").code, 0);
  EXPECT_EQ(cli("validate " + fx("e1.json") + " algebra:A --field Fp:5").code, 0);
  EXPECT_EQ(cli("--field Fp:4 validate " + fx("e1.json") + " algebra:A").code, 2);
}

TEST(Cli, ReportsAreByteIdentical) {
  for (const std::string& args : {"morita " + fx("e1-ctx.json") + " ctx morita1", "analyze " + fx("e3.json") + " P3 context",
                                 "validate " + fx("e1-ctx.json") + " twisted"}) {
    const CliRun a = cli("--json " + args);
    const CliRun b = cli("--json " + args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, b.code);
  }
}
