#include <gtest/gtest.h>

#include <json.hpp>

#include "support.hpp"
#include "zipper/error.hpp"
#include "zipper/report.hpp"

using namespace zipper;
using nlohmann::json;

TEST(Report, BuildReportFields) {
  FibrilSpec spec;
  spec.sequence = parse_sequence("AAAAGA");
  spec.optimizer.seed = 3;
  spec.model_name = "m3";
  BuildResult b = build_fibril_model(test::load_template(), spec);
  json j = json::parse(to_json(b.report));
  EXPECT_EQ(j["model_name"], "m3");
  EXPECT_EQ(j["sequence"], "AAAAGA");
  EXPECT_EQ(j["seed"], 3u);
  EXPECT_EQ(j["contacts"].size(), 2u);
  EXPECT_EQ(j["transform"]["rotation"][1][1], -1.0);
  EXPECT_TRUE(j["clashes"].is_array());
  EXPECT_TRUE(j["optimizer"]["rigid"].is_object());
  EXPECT_EQ(j["status"], to_string(b.report.status));
}

TEST(Report, BenchmarkReport) {
  OptimizerConfig cfg = benchmark_config();
  cfg.seed = 9;
  json j = json::parse(to_json(run_benchmark("classic", {2}, 2, cfg, {"sphere"})));
  EXPECT_EQ(j["module"], "optimizer");
  EXPECT_EQ(j["seed"], 9u);
  EXPECT_EQ(j["cells"][0]["problem"], "sphere");
  EXPECT_EQ(j["cells"][0]["runs"], 2u);
  EXPECT_TRUE(j["all_passed"].get<bool>());
}

TEST(SpecJson, OverridesBase) {
  FibrilSpec s = fibril_spec_from_json(R"({
    "model_name": "x", "sequence": "GAAAAG", "sigma": 4.0, "epsilon": 2.0,
    "anchors": ["A.ALA2.CB", "B.ALA3.CB"], "free_atoms": ["G.ALA3.CB", "H.ALA2.CB"],
    "rigid_stage": false, "sheet2_transform": "1 0 0 0 -1 0 0 0 -1 9 4 0",
    "optimizer": {"population_size": 30, "seed": 77}
  })");
  EXPECT_EQ(s.model_name, "x");
  EXPECT_EQ(sequence_string(s.sequence), "GAAAAG");
  EXPECT_DOUBLE_EQ(s.lj.sigma, 4.0);
  EXPECT_DOUBLE_EQ(s.lj.epsilon, 2.0);
  EXPECT_EQ(s.anchors[0].str(), "A.ALA2.CB");
  EXPECT_FALSE(s.rigid_stage);
  EXPECT_DOUBLE_EQ(s.lattice.sheet2_transform.translation.x, 9.0);
  EXPECT_EQ(s.optimizer.population_size, 30u);
  EXPECT_EQ(s.optimizer.seed, 77u);
  EXPECT_EQ(s.optimizer.offspring_per_parent, OptimizerConfig{}.offspring_per_parent);
}

TEST(SpecJson, StrictErrors) {
  EXPECT_THROW(fibril_spec_from_json("{\"sigmaa\": 1}"), ConfigError);
  EXPECT_THROW(fibril_spec_from_json("[1]"), ConfigError);
  EXPECT_THROW(fibril_spec_from_json("{"), ConfigError);
  EXPECT_THROW(fibril_spec_from_json("{\"sigma\": \"big\"}"), ConfigError);
  EXPECT_THROW(fibril_spec_from_json("{\"sigma\": -1}"), ConfigError);
  EXPECT_THROW(fibril_spec_from_json("{\"anchors\": [\"bad\"]}"), ConfigError);
  EXPECT_THROW(fibril_spec_from_json("{\"optimizer\": {\"pop\": 1}}"), ConfigError);
  EXPECT_THROW(optimizer_config_from_json("{\"seed\": -1}"), ConfigError);
}
