#include <gtest/gtest.h>

#include <json.hpp>

#include "gnmetric_cli/report.hpp"
#include "support/test_util.hpp"

using nlohmann::json;
using testutil::CommandResult;
using testutil::TempDir;
using testutil::run_command;
using testutil::write_file;

namespace {

const std::string kBin = GNMETRIC_CLI_BIN;

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

const char* kPoolConfig = R"({
  "space": {"kind": "real_vector", "dim": 1, "base_norm": "absolute_difference"},
  "metric": {"kind": "max_pairwise", "arity": 3},
  "plan": {"mode": "random", "tuple_count": 500, "seed": 42,
           "point_pool": [-3, -1, 0, 0.5, 1, 2, 3, 5]},
  "radii": [0.5, 1.0, 3.0],
  "pairs": [[0.0, 3.0], [1.0, 1.0]]
})";

const char* kPerimeterConfig = R"({
  "space": {"kind": "real_vector", "dim": 1, "base_norm": "absolute_difference"},
  "metric": {"kind": "cyclic_perimeter_avg", "arity": 4},
  "plan": {"mode": "exhaustive", "point_pool": [0, 1, 2, 3]}
})";

json payload_of(const std::filesystem::path& report) {
  return json::parse(testutil::read_file(report)).at("payload");
}

}  // namespace

TEST(Cli, CheckAxiomsPassesOnSymmetricConstruction) {
  TempDir dir("cli_pass");
  write_file(dir.file("config.json"), kPoolConfig);
  const auto out = dir.file("report.json");
  const CommandResult res = run_command(kBin + " check-axioms --config " +
                                        q(dir.file("config.json")) + " --which all --out " +
                                        q(out));
  EXPECT_EQ(res.exit_code, 0) << res.output;
  const json payload = payload_of(out);
  EXPECT_TRUE(payload.at("all_pass").get<bool>());
  EXPECT_EQ(payload.at("suites").size(), 5u);
}

TEST(Cli, CheckAxiomsFindsSymmetryViolation) {
  TempDir dir("cli_fail");
  write_file(dir.file("config.json"), kPerimeterConfig);
  const auto out = dir.file("report.json");
  const CommandResult res = run_command(kBin + " check-axioms --config " +
                                        q(dir.file("config.json")) + " --which g --out " + q(out));
  EXPECT_EQ(res.exit_code, 1) << res.output;
  const json payload = payload_of(out);
  bool found_g4 = false;
  for (const auto& a : payload.at("suites")[0].at("axioms")) {
    if (a.at("id") == "G4") {
      EXPECT_EQ(a.at("verdict"), "fail");
      EXPECT_TRUE(a.contains("witness"));
      found_g4 = true;
    }
  }
  EXPECT_TRUE(found_g4);

  // The same metric passes its own (cyclic) suite.
  const CommandResult kres = run_command(kBin + " check-axioms --config " +
                                         q(dir.file("config.json")) + " --which k");
  EXPECT_EQ(kres.exit_code, 0) << kres.output;
}

TEST(Cli, SolveTheorem1WritesCertifiedTrace) {
  TempDir dir("cli_solve");
  write_file(dir.file("config.json"), R"({
    "space": {"kind": "real_vector", "dim": 1, "base_norm": "absolute_difference"},
    "metric": {"kind": "max_pairwise", "arity": 3},
    "maps": {
      "f": {"kind": "affine", "scale": 0.5, "offset": 1.0},
      "g": {"kind": "identity", "preimage": {"kind": "identity"}}
    },
    "solver": {"f": "f", "g": "g", "x0": 0.0, "q": 0.5, "eps": 1e-6, "max_iter": 10000,
               "seeds": [-10.0, 0.0, 7.0]}
  })");
  const auto out = dir.file("trace.json");
  const CommandResult res = run_command(kBin + " solve --theorem 1 --config " +
                                        q(dir.file("config.json")) + " --out " + q(out));
  EXPECT_EQ(res.exit_code, 0) << res.output;
  const json payload = payload_of(out);
  EXPECT_EQ(payload.at("trace").at("termination"), "certified");
  EXPECT_NEAR(payload.at("trace").at("fixed_point").get<double>(), 2.0, 1e-5);
  EXPECT_EQ(payload.at("trace").at("certified_at").get<int>(), 20);
  EXPECT_TRUE(payload.at("residual_ok").get<bool>());
  EXPECT_TRUE(payload.at("uniqueness").at("agree").get<bool>());
  EXPECT_EQ(payload.at("uniqueness").at("fixed_points").size(), 3u);
}

TEST(Cli, SolveNonCommutingPairExitsThree) {
  TempDir dir("cli_noncommute");
  write_file(dir.file("config.json"), R"({
    "space": {"kind": "real_vector", "dim": 1, "base_norm": "absolute_difference"},
    "metric": {"kind": "max_pairwise", "arity": 3},
    "maps": {
      "f": {"kind": "affine", "scale": 1.0, "offset": 1.0},
      "g": {"kind": "affine", "scale": 2.0, "offset": 0.0,
            "preimage": {"kind": "affine", "scale": 0.5, "offset": 0.0}}
    },
    "solver": {"f": "f", "g": "g", "x0": 0.0, "q": 0.5, "eps": 1e-6}
  })");
  const CommandResult res =
      run_command(kBin + " solve --theorem 1 --config " + q(dir.file("config.json")));
  EXPECT_EQ(res.exit_code, 3) << res.output;
  EXPECT_NE(res.output.find("commutation-violated"), std::string::npos);
}

TEST(Cli, SolveTheorem2AndMaxIter) {
  TempDir dir("cli_t2");
  write_file(dir.file("config.json"), R"({
    "space": {"kind": "real_vector", "dim": 1, "base_norm": "absolute_difference"},
    "metric": {"kind": "max_pairwise", "arity": 3},
    "maps": {"f": {"kind": "affine", "scale": 0.3333333333333333, "offset": 0.0}},
    "solver": {"f": "f", "x0": 1.0, "k": 0.3333333333333333, "eps": 1e-8, "max_iter": 10000}
  })");
  const auto out = dir.file("trace.json");
  const CommandResult res = run_command(kBin + " solve --theorem 2 --config " +
                                        q(dir.file("config.json")) + " --out " + q(out));
  EXPECT_EQ(res.exit_code, 0) << res.output;
  EXPECT_NEAR(payload_of(out).at("trace").at("fixed_point").get<double>(), 0.0, 1e-7);

  write_file(dir.file("short.json"), R"({
    "space": {"kind": "real_vector", "dim": 1, "base_norm": "absolute_difference"},
    "metric": {"kind": "max_pairwise", "arity": 3},
    "maps": {"f": {"kind": "affine", "scale": 0.3333333333333333, "offset": 0.0}},
    "solver": {"f": "f", "x0": 1.0, "k": 0.3333333333333333, "eps": 1e-8, "max_iter": 3}
  })");
  const CommandResult capped =
      run_command(kBin + " solve --theorem 2 --config " + q(dir.file("short.json")));
  EXPECT_EQ(capped.exit_code, 3) << capped.output;
}

TEST(Cli, AnalyzeConvergenceAndCauchy) {
  TempDir dir("cli_analyze");
  std::string points = "[";
  for (int m = 0; m <= 30; ++m) {
    if (m) points += ", ";
    points += std::to_string(std::ldexp(1.0, -m));
  }
  points += "]";
  write_file(dir.file("config.json"), R"({
    "space": {"kind": "real_vector", "dim": 1, "base_norm": "absolute_difference"},
    "metric": {"kind": "max_pairwise", "arity": 3},
    "sequences": {"s": {"points": )" + points + R"(}},
    "analysis": {"sequence": "s", "limit": 0.0, "tail_start": 20, "tol": 1e-3,
                 "cauchy_start": 10}
  })");
  const CommandResult conv = run_command(kBin + " analyze --analysis convergence --config " +
                                         q(dir.file("config.json")));
  EXPECT_EQ(conv.exit_code, 0) << conv.output;

  const CommandResult cauchy =
      run_command(kBin + " analyze --analysis cauchy --config " + q(dir.file("config.json")));
  EXPECT_EQ(cauchy.exit_code, 0) << cauchy.output;

  // A drifting sequence has non-shrinking gaps: verdict is exit 1.
  write_file(dir.file("drift.json"), R"({
    "space": {"kind": "real_vector", "dim": 1, "base_norm": "absolute_difference"},
    "metric": {"kind": "max_pairwise", "arity": 3},
    "sequences": {"s": {"points": [0, 1, 2, 3, 4, 5, 6, 7, 8, 9]}},
    "analysis": {"sequence": "s", "limit": 0.0, "tail_start": 0, "tol": 0.5, "cauchy_start": 0}
  })");
  const CommandResult drift =
      run_command(kBin + " analyze --analysis cauchy --config " + q(dir.file("drift.json")));
  EXPECT_EQ(drift.exit_code, 1) << drift.output;
}

TEST(Cli, AnalyzeContinuityOnConstantSequences) {
  TempDir dir("cli_cont");
  write_file(dir.file("config.json"), R"({
    "space": {"kind": "real_vector", "dim": 1, "base_norm": "absolute_difference"},
    "metric": {"kind": "max_pairwise", "arity": 3},
    "sequences": {
      "a": {"points": [0, 0, 0]},
      "b": {"points": [1, 1, 1]},
      "c": {"points": [3, 3, 3]}
    },
    "analysis": {"continuity": {"sequences": ["a", "b", "c"], "limits": [0, 1, 3],
                                "tail_start": 0}}
  })");
  const CommandResult res = run_command(kBin + " analyze --analysis continuity --config " +
                                        q(dir.file("config.json")));
  EXPECT_EQ(res.exit_code, 0) << res.output;
}

TEST(Cli, DeriveMetricPrintsValues) {
  TempDir dir("cli_derive");
  write_file(dir.file("config.json"), kPoolConfig);
  const CommandResult res =
      run_command(kBin + " derive-metric --config " + q(dir.file("config.json")));
  EXPECT_EQ(res.exit_code, 0) << res.output;
  EXPECT_NE(res.output.find("d_G(0, 3) = 6"), std::string::npos) << res.output;
  EXPECT_NE(res.output.find("d_G(1, 1) = 0"), std::string::npos) << res.output;
}

TEST(Cli, ConfigAndUsageErrorsExitTwo) {
  TempDir dir("cli_err");
  const CommandResult missing =
      run_command(kBin + " check-axioms --config " + q(dir.file("nope.json")));
  EXPECT_EQ(missing.exit_code, 2);

  write_file(dir.file("bad.json"), R"({
    "space": {"kind": "real_vector", "dim": 1, "base_norm": "absolute_difference"},
    "metric": {"kind": "max_pairwise", "arity": 2}
  })");
  const CommandResult arity =
      run_command(kBin + " check-axioms --config " + q(dir.file("bad.json")));
  EXPECT_EQ(arity.exit_code, 2);
  EXPECT_NE(arity.output.find("arity >= 3"), std::string::npos);

  const CommandResult usage = run_command(kBin + " frobnicate");
  EXPECT_EQ(usage.exit_code, 2);

  write_file(dir.file("ok.json"), kPoolConfig);
  const CommandResult badwhich = run_command(kBin + " check-axioms --config " +
                                             q(dir.file("ok.json")) + " --which nonsense");
  EXPECT_EQ(badwhich.exit_code, 2);
}

TEST(Cli, SeedOverrideIsEchoedInPayload) {
  TempDir dir("cli_seed");
  write_file(dir.file("config.json"), kPoolConfig);
  const auto out1 = dir.file("r1.json");
  const auto out2 = dir.file("r2.json");
  ASSERT_EQ(run_command(kBin + " check-axioms --config " + q(dir.file("config.json")) +
                        " --which g --out " + q(out1))
                .exit_code,
            0);
  ASSERT_EQ(run_command(kBin + " check-axioms --config " + q(dir.file("config.json")) +
                        " --which g --seed 777 --out " + q(out2))
                .exit_code,
            0);
  EXPECT_EQ(payload_of(out1).at("seed").get<std::uint64_t>(), 42u);
  EXPECT_EQ(payload_of(out2).at("seed").get<std::uint64_t>(), 777u);
}

TEST(Cli, ReportPayloadIsByteIdenticalAcrossRuns) {
  TempDir dir("cli_det");
  write_file(dir.file("config.json"), kPoolConfig);
  const auto out1 = dir.file("r1.json");
  const auto out2 = dir.file("r2.json");
  const std::string cmd = kBin + " check-axioms --config " + q(dir.file("config.json")) +
                          " --which all --out ";
  ASSERT_EQ(run_command(cmd + q(out1)).exit_code, 0);
  ASSERT_EQ(run_command(cmd + q(out2)).exit_code, 0);
  const json d1 = json::parse(testutil::read_file(out1));
  const json d2 = json::parse(testutil::read_file(out2));
  EXPECT_EQ(d1.at("payload").dump(), d2.at("payload").dump());
}

TEST(Report, S17DigitNumbersRoundTrip) {
  using gnmetric::cli::dump_report;
  using gnmetric::cli::ojson;
  ojson doc;
  doc["a"] = 0.1;
  doc["b"] = 1.0 / 3.0;
  doc["c"] = 2.0;
  doc["n"] = 42;
  const std::string text = dump_report(doc);
  const json parsed = json::parse(text);
  EXPECT_EQ(parsed.at("a").get<double>(), 0.1);
  EXPECT_EQ(parsed.at("b").get<double>(), 1.0 / 3.0);
  EXPECT_EQ(parsed.at("c").get<double>(), 2.0);
  EXPECT_TRUE(parsed.at("c").is_number_float());
  EXPECT_TRUE(parsed.at("n").is_number_integer());
}
