#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gnmetric/gnmetric.hpp"

namespace gnmetric::cli {

struct SolverSection {
  std::optional<std::string> f_name;
  std::optional<std::string> g_name;
  std::optional<Point> start;  // x0 ("x0" in the config file)
  std::optional<double> q;
  std::optional<double> k;
  std::optional<double> eps;
  std::optional<std::size_t> max_iter;
  std::vector<Point> seeds;
};

struct ContinuitySection {
  std::vector<std::string> sequence_names;
  std::vector<Point> limits;
  std::size_t tail_start = 0;
};

struct AnalysisSection {
  std::optional<std::string> sequence_name;
  std::optional<Point> limit;
  std::optional<std::size_t> tail_start;
  std::optional<double> tol;
  std::optional<std::size_t> cauchy_start;
  std::size_t exhaustive_cap = kCauchyExhaustiveCap;
  std::optional<ContinuitySection> continuity;
};

/// A fully validated run configuration. Loading performs every structural
/// check up front (matrix axioms, arity bounds, referenced names/files), so
/// command code can assume the pieces fit together.
struct RunConfig {
  std::optional<GnMetric> metric;
  std::map<std::string, SelfMap> maps;
  std::map<std::string, SequencePrefix> sequences;
  SamplePlan plan;
  std::vector<double> radii;
  SolverSection solver;
  AnalysisSection analysis;
  std::vector<std::pair<Point, Point>> pairs;
  std::optional<std::string> output;

  const GnMetric& require_metric() const;
  const Space& space() const { return require_metric().space(); }
  const SelfMap& require_map(const std::string& name) const;
  const SequencePrefix& require_sequence(const std::string& name) const;
};

/// Parse and validate a config file. Throws validation_error with the
/// offending field path in the message.
RunConfig load_config(const std::filesystem::path& path);

}  // namespace gnmetric::cli
