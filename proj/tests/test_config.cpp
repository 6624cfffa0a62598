#include <gtest/gtest.h>

#include "gnmetric_cli/config.hpp"
#include "support/test_util.hpp"

using namespace gnmetric;
using namespace gnmetric::cli;
using testutil::TempDir;
using testutil::write_file;

namespace {

const char* kMinimalConfig = R"({
  "space": {"kind": "real_vector", "dim": 1, "base_norm": "absolute_difference"},
  "metric": {"kind": "max_pairwise", "arity": 3}
})";

void expect_load_error(const std::string& body, const std::string& needle) {
  TempDir dir("cfg_err");
  const auto path = dir.file("config.json");
  write_file(path, body);
  try {
    load_config(path);
    FAIL() << "expected validation_error mentioning: " << needle;
  } catch (const validation_error& e) {
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos)
        << "actual message: " << e.what();
  }
}

}  // namespace

TEST(LoadConfig, MinimalConfigIsValid) {
  TempDir dir("cfg_min");
  const auto path = dir.file("config.json");
  write_file(path, kMinimalConfig);
  const RunConfig cfg = load_config(path);
  EXPECT_EQ(cfg.require_metric().kind(), MetricKind::max_pairwise);
  EXPECT_EQ(cfg.require_metric().arity(), 3u);
  EXPECT_EQ(cfg.space().kind(), Space::Kind::real_vector);
  EXPECT_FALSE(cfg.output.has_value());
}

TEST(LoadConfig, FullConfigRoundTrip) {
  TempDir dir("cfg_full");
  write_file(dir.file("seq.json"), R"({"points": [1.0, 0.5, 0.25, 0.125]})");
  write_file(dir.file("config.json"), R"({
    "space": {"kind": "real_vector", "dim": 1, "base_norm": "absolute_difference"},
    "metric": {"kind": "sum_pairwise", "arity": 4},
    "plan": {"mode": "random", "tuple_count": 100, "seed": 7, "point_pool": [0, 1, 2, 3.5]},
    "radii": [0.5, 1.0],
    "maps": {
      "f": {"kind": "affine", "scale": 0.5, "offset": 1.0},
      "g": {"kind": "affine", "scale": 1.0, "offset": 0.0,
            "preimage": {"kind": "affine", "scale": 1.0, "offset": 0.0}}
    },
    "sequences": {"inline": {"points": [0, 1]}, "fromfile": {"file": "seq.json"}},
    "solver": {"f": "f", "g": "g", "x0": 0.0, "q": 0.5, "eps": 1e-6, "max_iter": 500,
               "seeds": [-1.0, 0.0, 1.0]},
    "analysis": {"sequence": "fromfile", "limit": 0.0, "tail_start": 1, "tol": 0.25,
                 "cauchy_start": 0},
    "pairs": [[0.0, 3.0]],
    "output": "out.json"
  })");
  const RunConfig cfg = load_config(dir.file("config.json"));
  EXPECT_EQ(cfg.plan.mode, SamplePlan::Mode::random);
  EXPECT_EQ(cfg.plan.seed, 7u);
  ASSERT_TRUE(cfg.plan.point_pool.has_value());
  EXPECT_EQ(cfg.plan.point_pool->size(), 4u);
  EXPECT_EQ(cfg.radii.size(), 2u);
  EXPECT_TRUE(cfg.maps.count("f"));
  EXPECT_TRUE(cfg.require_map("g").has_preimage());
  EXPECT_EQ(cfg.require_sequence("fromfile").points.size(), 4u);
  EXPECT_EQ(cfg.solver.seeds.size(), 3u);
  EXPECT_DOUBLE_EQ(*cfg.solver.q, 0.5);
  EXPECT_EQ(*cfg.analysis.tail_start, 1u);
  EXPECT_EQ(cfg.pairs.size(), 1u);
  EXPECT_EQ(*cfg.output, "out.json");
}

TEST(LoadConfig, ExplicitTableFromFile) {
  TempDir dir("cfg_table");
  std::string vals = "[";
  for (int i = 0; i < 27; ++i) vals += (i ? ", 1.0" : "1.0");
  vals += "]";
  write_file(dir.file("table.json"), R"({"arity": 3, "values": )" + vals + "}");
  write_file(dir.file("config.json"), R"({
    "space": {"kind": "finite_table", "base": [[0,1,2],[1,0,1],[2,1,0]]},
    "metric": {"kind": "explicit_table", "arity": 3, "table": "table.json"}
  })");
  const RunConfig cfg = load_config(dir.file("config.json"));
  EXPECT_EQ(cfg.require_metric().kind(), MetricKind::explicit_table);
  EXPECT_EQ(cfg.require_metric().table_values().size(), 27u);
}

TEST(LoadConfig, ErrorsNameTheField) {
  expect_load_error(R"({"metric": {"kind": "max_pairwise", "arity": 3}})", "space");

  expect_load_error(R"({
    "space": {"kind": "finite_table", "base": [[0, 1], [2, 0]]},
    "metric": {"kind": "max_pairwise", "arity": 3}
  })", "base[0][1]");

  expect_load_error(R"({
    "space": {"kind": "real_vector", "dim": 1, "base_norm": "absolute_difference"},
    "metric": {"kind": "max_pairwise", "arity": 2}
  })", "arity >= 3");

  expect_load_error(R"({
    "space": {"kind": "real_vector", "dim": 1, "base_norm": "absolute_difference"},
    "metric": {"kind": "max_pairwise", "arity": 3},
    "plan": {"mode": "random", "tuple_count": 10, "point_pool": [0, 1]}
  })", "plan.seed");

  expect_load_error(R"({
    "space": {"kind": "real_vector", "dim": 1, "base_norm": "absolute_difference"},
    "metric": {"kind": "max_pairwise", "arity": 3},
    "plan": {"mode": "random", "tuple_count": 10, "seed": 1}
  })", "plan.point_pool");

  expect_load_error(R"({
    "space": {"kind": "real_vector", "dim": 1, "base_norm": "absolute_difference"},
    "metric": {"kind": "max_pairwise", "arity": 3},
    "maps": {"f": {"kind": "affine", "scale": 1.0, "offset": 0.0}},
    "solver": {"f": "f", "g": "missing"}
  })", "undefined map");

  expect_load_error(R"({
    "space": {"kind": "real_vector", "dim": 1, "base_norm": "absolute_difference"},
    "metric": {"kind": "max_pairwise", "arity": 3},
    "solver": {"q": 1.5}
  })", "solver.q");

  expect_load_error(R"({
    "space": {"kind": "real_vector", "dim": 1, "base_norm": "absolute_difference"},
    "metric": {"kind": "max_pairwise", "arity": 3},
    "radii": [0.5, -1]
  })", "radii[1]");

  expect_load_error("{ not json", "parse error");

  expect_load_error(R"({
    "space": {"kind": "real_vector", "dim": 1, "base_norm": "absolute_difference"},
    "metric": {"kind": "explicit_table", "arity": 3, "values": [1, 2]}
  })", "metric");
}

TEST(LoadConfig, MissingFileIsAnError) {
  EXPECT_THROW(load_config("/nonexistent/config.json"), validation_error);
}
