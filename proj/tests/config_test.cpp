#include <cmath>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "regen/config.hpp"
#include "regen/experiment.hpp"

namespace {

using regen::ConfigError;
using regen::json;

json base() {
  return json::parse(R"({"model": {"family": "gamma", "params": {"rate": 1}}, "statistic": "Kn",
                         "grid": [100, 1000], "replicates": 200, "master_seed": 7})");
}

TEST(ModelSpec, CompactForms) {
  const auto a = regen::parse_model_spec("atomic:x=0.5,w=1,x=2,w=3");
  ASSERT_EQ(a.atoms().size(), 2u);
  EXPECT_DOUBLE_EQ(a.atoms()[1].w, 0.75);
  EXPECT_EQ(regen::parse_model_spec("gamma:rate=2").param("rate"), 2.0);
  EXPECT_EQ(regen::parse_model_spec("gamma").family(), regen::Family::Gamma);
  EXPECT_EQ(regen::parse_model_spec(R"({"family":"log_power","params":{"beta":2}})").condition().beta, 2.0);
  EXPECT_THROW(regen::parse_model_spec("gamma:rate"), ConfigError);
  EXPECT_THROW(regen::parse_model_spec("gamma:rate=abc"), ConfigError);
  EXPECT_THROW(regen::parse_model_spec("weibull:k=1"), ConfigError);
  EXPECT_THROW(regen::parse_model_spec("gamma:rate=-1"), ConfigError);
  EXPECT_THROW(regen::parse_model_spec("gamma:shape=1"), ConfigError);
}

TEST(ModelJson, RoundTrip) {
  for (const auto& spec : {"atomic:x=0.5,w=1,x=2,w=3", "exponential:rate=3", "dehaan_exp:gamma=1,delta=0.8",
                           "log_power:beta=0.5"}) {
    const auto m = regen::parse_model_spec(spec);
    const auto j = regen::model_to_json(m);
    EXPECT_EQ(regen::model_to_json(regen::model_from_json(j)), j) << spec;
  }
  const auto h = regen::LevyModel::heavy_composite(regen::LevyModel::log_power(1.0), 1.5, 2.0);
  EXPECT_EQ(regen::model_to_json(regen::model_from_json(regen::model_to_json(h))), regen::model_to_json(h));
}

TEST(ModelJson, DeclaredConditionChecked) {
  auto j = json::parse(R"j({"family":"gamma","declared_condition":"A(1)"})j");
  EXPECT_NO_THROW(regen::model_from_json(j));
  j["declared_condition"] = "B";
  EXPECT_THROW(regen::model_from_json(j), ConfigError);
}

TEST(ExperimentConfig, ValidatesFields) {
  EXPECT_NO_THROW(regen::config_from_json(base()));
  auto bad = [](auto edit) {
    json j = base();
    edit(j);
    return j;
  };
  EXPECT_THROW(regen::config_from_json(bad([](json& j) { j["grid"] = json::array(); })), ConfigError);
  EXPECT_THROW(regen::config_from_json(bad([](json& j) { j["grid"] = {1000, 100}; })), ConfigError);
  EXPECT_THROW(regen::config_from_json(bad([](json& j) { j["replicates"] = 50; })), ConfigError);
  EXPECT_THROW(regen::config_from_json(bad([](json& j) { j["colour"] = "red"; })), ConfigError);
  EXPECT_THROW(regen::config_from_json(bad([](json& j) { j["statistic"] = "Kn2"; })), ConfigError);
  EXPECT_THROW(regen::config_from_json(bad([](json& j) { j["statistic"] = "B"; })), ConfigError);
  EXPECT_THROW(regen::config_from_json(bad([](json& j) {
                 j["sampler"] = "decrement";
                 j["statistic"] = "A";
               })),
               ConfigError);
  EXPECT_THROW(regen::config_from_json(bad([](json& j) {
                 j["sampler"] = "decrement";
                 j["grid"] = {1e3, 1e5};
               })),
               ConfigError);
  EXPECT_THROW(regen::config_from_json(bad([](json& j) { j["output"] = {{"pdf", "x"}}; })), ConfigError);
  EXPECT_THROW(regen::config_from_json(bad([](json& j) { j["replicates"] = "many"; })), ConfigError);
}

TEST(ExperimentConfig, DefaultGrids) {
  json j = base();
  j.erase("grid");
  EXPECT_EQ(regen::config_from_json(j).grid.back(), 1e6);
  j["model"] = {{"family", "dehaan_exp"}, {"params", {{"gamma", 1}, {"delta", 0.8}}}};
  EXPECT_EQ(regen::config_from_json(j).grid.back(), 1e5);
}

TEST(ExperimentConfig, HashTracksContent) {
  const auto a = regen::config_from_json(base());
  const auto b = regen::config_from_json(base());
  EXPECT_EQ(a.hash(), b.hash());
  json j = base();
  j["master_seed"] = 8;
  EXPECT_NE(regen::config_from_json(j).hash(), a.hash());
  json k = base();
  k["output"] = {{"csv", "elsewhere.csv"}};
  EXPECT_EQ(regen::config_from_json(k).hash(), a.hash());
}

TEST(ExperimentConfig, ReadsFile) {
  const std::string path = testing::TempDir() + "/cfg.json";
  std::ofstream(path) << base().dump();
  EXPECT_EQ(regen::load_config(path).master_seed, 7u);
  EXPECT_THROW(regen::load_config(path + ".missing"), ConfigError);
  std::ofstream(path) << "{ not json";
  EXPECT_THROW(regen::load_config(path), ConfigError);
}

TEST(Hash, Fnv1a) {
  EXPECT_EQ(regen::fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(regen::hex64(regen::fnv1a("a")), "af63dc4c8601ec8c");
}

}  // namespace
