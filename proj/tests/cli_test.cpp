#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + QVSP_CLI_PATH + std::string(" ") + args + " 2>/dev/null";
  Outcome r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qvsp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, Version) {
  const Outcome r = run("--version");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0.1.0\n");
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("construct no-such").code, 2);
  EXPECT_EQ(run("bound m3").code, 2);
  EXPECT_EQ(run("bound m3 --m4 18").code, 2);
  EXPECT_EQ(run("bound fixture --v 9 --d 4 --k 3").code, 2);
  EXPECT_EQ(run("lp").code, 2);
  EXPECT_EQ(run("verify --file " + path("missing.json")).code, 2);
}

TEST_F(Cli, ConstructAndVerify) {
  const Outcome c = run("construct f27-a --out " + path("a.json"));
  ASSERT_EQ(c.code, 0);
  EXPECT_TRUE(c.out.empty());
  const Json file = Json::parse(slurp(path("a.json")));
  EXPECT_EQ(file["q"], 2);
  EXPECT_EQ(file["v"], 7);
  EXPECT_EQ(file["t"], 2);
  EXPECT_EQ(file["members"].size(), 17u + 240u + 392u);

  const Outcome v = run("verify --file " + path("a.json"));
  ASSERT_EQ(v.code, 0);
  const Json rep = Json::parse(v.out);
  EXPECT_EQ(rep["command"], "verify");
  EXPECT_EQ(rep["result"]["valid"], true);
  EXPECT_EQ(rep["result"]["type"], "4^17 3^240 2^392");

  Json broken = file;
  broken["members"].erase(broken["members"].begin() + 100);
  std::ofstream(path("broken.json")) << broken.dump();
  const Outcome b = run("verify --file " + path("broken.json"));
  EXPECT_EQ(b.code, 1);
  const Json brep = Json::parse(b.out);
  EXPECT_EQ(brep["result"]["valid"], false);
  EXPECT_EQ(brep["result"]["witness_cover_count"], 0);

  const Outcome low = run("verify --file " + path("a.json") + " --t 3");
  EXPECT_EQ(low.code, 1);
}

TEST_F(Cli, ConstructIsDeterministic) {
  const Outcome a = run("construct f27-b");
  const Outcome b = run("construct f27-b");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.back(), '\n');
  EXPECT_EQ(run("construct lifted-mrd --v 8 --k 4 --d 6").code, 0);
  EXPECT_EQ(run("construct mrd-partition").code, 0);
}

TEST_F(Cli, MalformedInput) {
  std::ofstream(path("bad.json")) << "{\"q\": 2, \"v\": 4";
  EXPECT_EQ(run("verify --file " + path("bad.json")).code, 2);
  std::ofstream(path("dep.json")) << R"({"q":2,"v":4,"t":2,"members":[["1000","1000"]]})";
  EXPECT_EQ(run("verify --file " + path("dep.json")).code, 2);
  std::ofstream(path("q6.json")) << R"({"q":6,"v":4,"t":2,"members":[]})";
  EXPECT_EQ(run("spectrum --file " + path("q6.json")).code, 2);
}

TEST_F(Cli, Spectrum) {
  ASSERT_EQ(run("construct spread --out " + path("s.json")).code, 0);
  const Outcome s = run("spectrum --file " + path("s.json") + " --pairs");
  ASSERT_EQ(s.code, 0);
  const Json r = Json::parse(s.out)["result"];
  EXPECT_EQ(r["n"], 5);
  EXPECT_EQ(r["a"], Json::parse(R"({"1": 15})"));
  EXPECT_EQ(r["r_star"], 2);
  EXPECT_EQ(r["pairs"]["b"], Json::parse(R"({"4": 20})"));

  ASSERT_EQ(run("construct f27-a --out " + path("a.json")).code, 0);
  EXPECT_EQ(run("spectrum --file " + path("a.json")).code, 2);
  const Outcome h = run("spectrum --file " + path("a.json") + " --holes");
  ASSERT_EQ(h.code, 0);
  const Json hr = Json::parse(h.out)["result"];
  EXPECT_EQ(hr["n"], 392);
  EXPECT_GE(hr["r_star"].get<int>(), 1);
}

TEST_F(Cli, Bounds) {
  const Json m3 = Json::parse(run("bound m3 --m4 16").out)["result"];
  EXPECT_EQ(m3["value"], 278);
  EXPECT_EQ(m3["method"], "closed-form");
  const Json m17 = Json::parse(run("bound m3 --m4 17").out)["result"];
  EXPECT_EQ(m17["value"], 240);
  EXPECT_EQ(m17["method"], "fixture");
  EXPECT_TRUE(m17.contains("citation"));
  const Json mc = Json::parse(run("bound min-card --t 2 --r 1").out)["result"]["value"];
  EXPECT_EQ(mc["divisible"], 4);
  EXPECT_EQ(mc["nondivisible"], 5);
  const Json ex = Json::parse(run("bound exclusion --r 1 --n 3").out)["result"]["value"];
  EXPECT_EQ(ex["excluded"], false);
  EXPECT_EQ(Json::parse(run("bound mrd-like --v 7 --k 3").out)["result"]["value"], 256);
  const Json fx = Json::parse(run("bound fixture --v 7 --d 4 --k 3").out)["result"];
  EXPECT_EQ(fx["value"]["lower"], 333);
  EXPECT_EQ(fx["value"]["upper"], 381);
  EXPECT_EQ(fx["method"], "fixture");
  const Json tl = Json::parse(run("bound tail --q 3 --k 2 --r 3").out)["result"];
  EXPECT_EQ(tl["parameters"]["q"], 3);
}

TEST_F(Cli, EnumerationBudget) {
  EXPECT_EQ(run("--budget 10 construct all-grid --v 6 --t 3").code, 3);
  EXPECT_EQ(run("construct all-grid --v 6 --t 3", "QVSP_BUDGET=10").code, 3);
  EXPECT_EQ(run("--budget 100000 construct all-grid --v 6 --t 3", "QVSP_BUDGET=10").code, 0);
  EXPECT_EQ(run("construct spread", "QVSP_BUDGET=abc").code, 2);
}

TEST_F(Cli, LpExportIsByteStable) {
  const Outcome a = run("lp --empty --export " + path("a.lp"));
  const Outcome b = run("lp --empty --export " + path("b.lp"));
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(slurp(path("a.lp")), slurp(path("b.lp")));
  const Json ra = Json::parse(a.out)["result"], rb = Json::parse(b.out)["result"];
  EXPECT_EQ(ra["variables"], 11811);
  EXPECT_EQ(ra["constraints"], 2794);
  EXPECT_EQ(ra["export"]["fnv1a64"], rb["export"]["fnv1a64"]);
  EXPECT_EQ(ra["export"]["bytes"].get<std::size_t>(), fs::file_size(path("a.lp")));
  EXPECT_EQ(run("lp --empty --solve relaxation").code, 3);
  EXPECT_EQ(run("lp --empty --solve sometimes").code, 2);
}

TEST_F(Cli, LpFromPartition) {
  ASSERT_EQ(run("construct f27-a --out " + path("a.json")).code, 0);
  const Outcome r = run("lp --from-partition " + path("a.json"));
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out)["result"];
  EXPECT_EQ(j["solids"], 17);
  EXPECT_EQ(j["tau_profile"], Json::parse(R"({"1": 7, "2": 112, "3": 8})"));
  EXPECT_EQ(j["point_count_bound"], 273);
  ASSERT_EQ(run("construct spread --out " + path("s.json")).code, 0);
  EXPECT_EQ(run("lp --from-partition " + path("s.json")).code, 2);
}

TEST_F(Cli, LpSmallSolve) {
  const Outcome r = run("lp --empty --v 4 --solve small");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out)["result"];
  EXPECT_EQ(j["ilp"]["status"], "optimal");
  EXPECT_EQ(j["ilp"]["optimum"], 1);
  const Outcome cut = run("lp --empty --v 5 --solve small --node-budget 1");
  EXPECT_EQ(cut.code, 3);
  EXPECT_EQ(Json::parse(cut.out)["result"]["ilp"]["status"], "budget-exhausted");
}

TEST_F(Cli, ReplayMatchesAndDetectsTampering) {
  ASSERT_EQ(run("bound m3 --m4 12 --out " + path("r.json")).code, 0);
  const Outcome ok = run("--replay " + path("r.json"));
  ASSERT_EQ(ok.code, 0);
  EXPECT_EQ(Json::parse(ok.out)["result"]["match"], true);

  Json rep = Json::parse(slurp(path("r.json")));
  rep["result"]["value"] = 999;
  std::ofstream(path("t.json")) << rep.dump();
  const Outcome bad = run("--replay " + path("t.json"));
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(Json::parse(bad.out)["result"]["match"], false);

  ASSERT_EQ(run("construct spread --out " + path("s.json")).code, 0);
  ASSERT_EQ(run("spectrum --pairs --file " + path("s.json") + " --out " + path("sp.json")).code, 0);
  EXPECT_EQ(run("--replay " + path("sp.json")).code, 0);
  EXPECT_EQ(run("--replay " + path("s.json")).code, 2);
}

TEST_F(Cli, OutReplacesFileAtomically) {
  std::ofstream(path("o.json")) << "old contents that are longer than the new report body, padding padding padding";
  ASSERT_EQ(run("bound mrd-like --v 7 --k 3 --out " + path("o.json")).code, 0);
  EXPECT_EQ(Json::parse(slurp(path("o.json")))["result"]["value"], 256);
  for (const auto& e : fs::directory_iterator(dir_)) EXPECT_EQ(e.path().string().find(".tmp"), std::string::npos);
}

}  // namespace
