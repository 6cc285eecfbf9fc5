#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun zipper_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = zipper::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("zipper_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string read(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  fs::path dir_;
  const std::string tmpl_ = zipper::test::data_path("gymlgs_template.pdb");
};

} // namespace

TEST_F(Cli, BuildWritesModelAndReport) {
  CliRun r = zipper_cli({"build", "--template", tmpl_, "--sequence", "AGAAAA", "--out",
                      path("m1.pdb"), "--seed", "42"});
  ASSERT_EQ(r.code, 0) << r.err;
  zipper::Structure m = zipper::read_pdb_file(path("m1.pdb"));
  EXPECT_EQ(m.chains.size(), 12u);
  json j = json::parse(read(path("m1.pdb.report.json")));
  EXPECT_EQ(j["seed"], 42u);
  EXPECT_EQ(j["model_name"], "m1");
  EXPECT_TRUE(j["clashes"].empty());
}

TEST_F(Cli, BuildSeedIsEchoedWhenGenerated) {
  CliRun r = zipper_cli({"build", "--template", tmpl_, "--sequence", "GAAAAG", "--out",
                      path("m.pdb")});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(read(path("m.pdb.report.json")));
  const auto seed = j["seed"].get<std::uint64_t>();
  CliRun again = zipper_cli({"build", "--template", tmpl_, "--sequence", "GAAAAG", "--out",
                          path("again.pdb"), "--seed", std::to_string(seed)});
  ASSERT_EQ(again.code, 0);
  EXPECT_EQ(read(path("m.pdb")), read(path("again.pdb")));
}

TEST_F(Cli, BadSequenceIsUsageErrorAndWritesNothing) {
  CliRun r = zipper_cli({"build", "--template", tmpl_, "--sequence", "GAAAXG", "--out",
                      path("bad.pdb")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("X"), std::string::npos);
  EXPECT_TRUE(fs::is_empty(dir_));
}

TEST_F(Cli, SpecFileAndFlagOverride) {
  std::ofstream(path("spec.json")) << R"({"sequence": "AAAAGA", "sigma": 5.4, "model_name": "s"})";
  CliRun r = zipper_cli({"build", "--template", tmpl_, "--spec", path("spec.json"), "--out",
                      path("s.pdb"), "--seed", "1", "--sequence", "AGAAAA"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(read(path("s.pdb.report.json")));
  EXPECT_EQ(j["sequence"], "AGAAAA");
  EXPECT_EQ(j["model_name"], "s");
  std::ofstream(path("bad.json")) << R"({"sequence": "AAAAGA", "bogus": 1})";
  EXPECT_EQ(zipper_cli({"build", "--template", tmpl_, "--spec", path("bad.json"), "--out",
                        path("b.pdb")}).code, 2);
}

TEST_F(Cli, MissingTemplateIsFailure) {
  CliRun r = zipper_cli({"build", "--template", path("none.pdb"), "--sequence", "AGAAAA", "--out",
                      path("x.pdb")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("zipper:"), std::string::npos);
}

TEST_F(Cli, MutateAndTransform) {
  ASSERT_EQ(zipper_cli({"mutate", "--in", tmpl_, "--sequence", "GGGGGG", "--out",
                        path("g.pdb"), "--chain", "A"}).code, 0);
  zipper::Structure g = zipper::read_pdb_file(path("g.pdb"));
  for (const auto& r : g.find_chain('A')->residues)
    EXPECT_EQ(r.name, "GLY");
  EXPECT_NE(g.find_chain('B')->residues[1].name, "GLY");

  ASSERT_EQ(zipper_cli({"transform", "--in", tmpl_, "--chain", "A", "--sheet2", "--new-chain",
                        "G", "--out", path("t.pdb")}).code, 0);
  EXPECT_EQ(zipper::read_pdb_file(path("t.pdb")).chains.size(), 3u);

  ASSERT_EQ(zipper_cli({"transform", "--in", tmpl_, "--chain", "B", "--matrix", "1", "0", "0",
                        "0", "1", "0", "0", "0", "1", "--translate", "1", "0", "0", "--out",
                        path("u.pdb")}).code, 0);
  zipper::Structure t = zipper::read_pdb_file(path("u.pdb"));
  zipper::Structure s = zipper::read_pdb_file(tmpl_);
  EXPECT_EQ(t.chains.size(), 2u);
  EXPECT_NEAR(t.find_chain('B')->residues[0].atoms[0].pos.x -
                  s.find_chain('B')->residues[0].atoms[0].pos.x,
              1.0, 1e-9);

  EXPECT_EQ(zipper_cli({"transform", "--in", tmpl_, "--chain", "A", "--matrix", "2", "0", "0",
                        "0", "1", "0", "0", "0", "1", "--out", path("v.pdb")}).code, 2);
  EXPECT_FALSE(fs::exists(path("v.pdb")));
}

TEST_F(Cli, EnergyReportsHydrogenBonds) {
  ASSERT_EQ(zipper_cli({"energy", "--in", tmpl_, "--report", path("e.json")}).code, 0);
  json j = json::parse(read(path("e.json")));
  EXPECT_GT(j["hbond_count"].get<int>(), 0);
  EXPECT_EQ(j["unresolved_contacts"].size(), 2u);
}

TEST_F(Cli, EnergyParseErrorNamesLine) {
  std::ofstream(path("broken.pdb")) << "REMARK x\nATOM      1  N   GLY A   1       1.000\n";
  CliRun r = zipper_cli({"energy", "--in", path("broken.pdb"), "--report", path("e.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
}

TEST_F(Cli, EmptyStructureEnergyIsZero) {
  std::ofstream(path("empty.pdb")) << "END\n";
  ASSERT_EQ(zipper_cli({"energy", "--in", path("empty.pdb"), "--report", path("e.json")}).code,
            0);
  json j = json::parse(read(path("e.json")));
  EXPECT_EQ(j["hbond_count"], 0);
  EXPECT_EQ(j["contact_energy"], 0.0);
}

TEST_F(Cli, Bench) {
  CliRun r = zipper_cli({"bench", "--suite", "classic", "--dims", "2", "--runs", "3", "--problems",
                      "sphere,rastrigin", "--seed", "4", "--report", path("b.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(read(path("b.json")));
  EXPECT_EQ(j["cells"].size(), 2u);
  EXPECT_EQ(zipper_cli({"bench", "--suite", "nope", "--report", path("c.json")}).code, 2);
  EXPECT_EQ(zipper_cli({"bench", "--runs", "0", "--report", path("c.json")}).code, 2);
  EXPECT_FALSE(fs::exists(path("c.json")));
}

TEST_F(Cli, UsageAndHelp) {
  EXPECT_EQ(zipper_cli({}).code, 2);
  EXPECT_EQ(zipper_cli({"frobnicate"}).code, 2);
  CliRun h = zipper_cli({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("build"), std::string::npos);
}
