#include "gnmetric_cli/commands.hpp"

#include <cstdio>
#include <iostream>

#include "gnmetric_cli/config.hpp"
#include "gnmetric_cli/report.hpp"

namespace gnmetric::cli {

namespace {

RunConfig load_with_overrides(const CommonOpts& opts) {
  RunConfig cfg = load_config(opts.config_path);
  if (opts.seed_override) cfg.plan.seed = *opts.seed_override;
  return cfg;
}

/// Route the finished report: --out wins, then the config's output path,
/// otherwise the document goes to stdout.
void emit_report(const CommonOpts& opts, const RunConfig& cfg, const std::string& command,
                 ojson payload) {
  const ojson doc = make_report(command, std::move(payload));
  const std::string text = dump_report(doc);
  std::optional<std::string> target = opts.out_path;
  if (!target && cfg.output) target = cfg.output;
  if (target)
    write_text_atomic(*target, text);
  else
    std::cout << text;
}

double require_param(const std::optional<double>& v, const char* name) {
  if (!v) throw validation_error(std::string("solver.") + name + ": required field is missing");
  return *v;
}

}  // namespace

int cmd_check_axioms(const CommonOpts& opts, const std::string& which) {
  const RunConfig cfg = load_with_overrides(opts);
  const GnMetric& metric = cfg.require_metric();

  const bool all = which == "all";
  if (!all && which != "g" && which != "k" && which != "metric" && which != "prop" &&
      which != "ball")
    throw validation_error("--which must be one of g, k, metric, prop, ball, all");

  std::vector<AxiomReport> reports;
  if (all || which == "g") reports.push_back(check_g_axioms(metric, cfg.plan));
  if (all || which == "k") reports.push_back(check_k_axioms(metric, cfg.plan));
  if (all || which == "metric") reports.push_back(check_metric_axioms(metric, cfg.plan));
  if (all || which == "prop") reports.push_back(check_inequality_prop(metric, cfg.plan));
  if (all || which == "ball") {
    if (cfg.radii.empty())
      throw validation_error("radii: the ball suite needs a nonempty radii list");
    reports.push_back(check_ball_inclusion(metric, cfg.plan, cfg.radii));
  }

  bool all_pass = true;
  ojson suites = ojson::array();
  for (const auto& r : reports) {
    all_pass = all_pass && r.all_pass();
    suites.push_back(to_json(r));
  }

  ojson payload;
  payload["command"] = "check-axioms";
  payload["which"] = which;
  payload["metric"] = to_string(metric.kind());
  payload["arity"] = metric.arity();
  payload["seed"] = cfg.plan.seed;
  payload["suites"] = std::move(suites);
  payload["all_pass"] = all_pass;
  emit_report(opts, cfg, "check-axioms", std::move(payload));

  return all_pass ? kExitOk : kExitViolation;
}

int cmd_solve(const CommonOpts& opts, int theorem) {
  const RunConfig cfg = load_with_overrides(opts);
  const GnMetric& metric = cfg.require_metric();

  if (theorem != 1 && theorem != 2) throw validation_error("--theorem must be 1 or 2");
  if (!cfg.solver.f_name) throw validation_error("solver.f: required field is missing");
  if (!cfg.solver.start) throw validation_error("solver.x0: required field is missing");
  const double eps = require_param(cfg.solver.eps, "eps");
  const std::size_t max_iter = cfg.solver.max_iter.value_or(100000);
  const SelfMap& f = cfg.require_map(*cfg.solver.f_name);

  std::optional<SelfMap> gmap;
  if (cfg.solver.g_name) gmap = cfg.require_map(*cfg.solver.g_name);

  IterationTrace trace;
  double hypothesis = 0.0;
  if (theorem == 1) {
    if (!gmap) throw validation_error("solver.g: required field is missing");
    hypothesis = require_param(cfg.solver.q, "q");
    trace = solve_common_fixed_point(metric, f, *gmap, *cfg.solver.start, hypothesis, eps,
                                     max_iter);
  } else {
    hypothesis = require_param(cfg.solver.k, "k");
    trace = solve_quasi_contraction(metric, f, *cfg.solver.start, hypothesis, eps, max_iter);
  }

  ojson payload;
  payload["command"] = "solve";
  payload["theorem"] = theorem;
  payload["eps"] = eps;
  payload["max_iter"] = max_iter;
  payload["trace"] = to_json(trace);

  if (trace.termination == Termination::certified) {
    const double residual_tol = 2.0 * eps * static_cast<double>(metric.arity());
    payload["residual_tol"] = residual_tol;
    payload["residual_ok"] = verify_fixed_point(
        metric, f, theorem == 1 ? gmap : std::nullopt, trace.fixed_point, residual_tol);
  }

  // With two or more configured seeds, cross-check that every start point
  // reaches the same fixed point.
  if (cfg.solver.seeds.size() >= 2) {
    SolverConfig probe;
    probe.theorem = theorem;
    probe.f = f;
    probe.gmap = theorem == 1 ? gmap : std::nullopt;
    probe.q_or_k = hypothesis;
    probe.eps = eps;
    probe.max_iter = max_iter;
    const double tol = 2.0 * eps * static_cast<double>(metric.arity());
    const UniquenessResult uniq = uniqueness_probe(metric, probe, cfg.solver.seeds, tol);
    ojson u;
    u["seeds"] = cfg.solver.seeds.size();
    u["agree"] = uniq.agree;
    u["tol"] = tol;
    u["max_pairwise_dg"] = uniq.max_pairwise_dg;
    ojson fps = ojson::array();
    for (const Point& p : uniq.fixed_points) fps.push_back(to_json(p));
    u["fixed_points"] = std::move(fps);
    payload["uniqueness"] = std::move(u);
  }

  emit_report(opts, cfg, "solve", std::move(payload));

  return trace.termination == Termination::certified ? kExitOk : kExitNoConvergence;
}

int cmd_analyze(const CommonOpts& opts, const std::string& analysis) {
  const RunConfig cfg = load_with_overrides(opts);
  const GnMetric& metric = cfg.require_metric();

  ojson payload;
  payload["command"] = "analyze";
  payload["analysis"] = analysis;
  int rc = kExitOk;

  if (analysis == "convergence") {
    if (!cfg.analysis.sequence_name)
      throw validation_error("analysis.sequence: required field is missing");
    if (!cfg.analysis.limit) throw validation_error("analysis.limit: required field is missing");
    if (!cfg.analysis.tail_start)
      throw validation_error("analysis.tail_start: required field is missing");
    if (!cfg.analysis.tol) throw validation_error("analysis.tol: required field is missing");
    const ConvergenceReport rep =
        convergence_report(metric, cfg.require_sequence(*cfg.analysis.sequence_name),
                           *cfg.analysis.limit, *cfg.analysis.tail_start, *cfg.analysis.tol);
    payload["report"] = to_json(rep);
    rc = rep.converged ? kExitOk : kExitViolation;
  } else if (analysis == "cauchy") {
    if (!cfg.analysis.sequence_name)
      throw validation_error("analysis.sequence: required field is missing");
    std::optional<std::size_t> start = cfg.analysis.cauchy_start;
    if (!start) start = cfg.analysis.tail_start;
    if (!start)
      throw validation_error("analysis.cauchy_start: required field is missing");
    if (!cfg.analysis.tol) throw validation_error("analysis.tol: required field is missing");
    const CauchyReport rep = cauchy_report(metric, cfg.require_sequence(*cfg.analysis.sequence_name),
                                           *start, cfg.analysis.exhaustive_cap);
    payload["report"] = to_json(rep);
    const bool pass = rep.amplification_ok && rep.two_index_sup <= *cfg.analysis.tol;
    payload["report"]["within_tol"] = pass;
    rc = pass ? kExitOk : kExitViolation;
  } else if (analysis == "continuity") {
    if (!cfg.analysis.continuity)
      throw validation_error("analysis.continuity: required section is missing");
    const ContinuitySection& sec = *cfg.analysis.continuity;
    std::vector<SequencePrefix> seqs;
    for (const auto& name : sec.sequence_names) seqs.push_back(cfg.require_sequence(name));
    const ContinuityProbeResult rep =
        continuity_probe(metric, seqs, sec.limits, sec.tail_start);
    payload["report"] = to_json(rep);
    rc = rep.holds ? kExitOk : kExitViolation;
  } else {
    throw validation_error("--analysis must be one of convergence, cauchy, continuity");
  }

  emit_report(opts, cfg, "analyze", std::move(payload));
  return rc;
}

int cmd_derive_metric(const CommonOpts& opts) {
  const RunConfig cfg = load_with_overrides(opts);
  const GnMetric& metric = cfg.require_metric();
  if (cfg.pairs.empty())
    throw validation_error("pairs: derive-metric needs a nonempty list of point pairs");

  ojson values = ojson::array();
  for (const auto& [x, y] : cfg.pairs) {
    const double d = derived_metric(metric, x, y);
    ojson entry;
    entry["x"] = to_json(x);
    entry["y"] = to_json(y);
    entry["d_g"] = d;
    values.push_back(std::move(entry));
    std::printf("d_G(%s, %s) = %.17g\n", to_string(x).c_str(), to_string(y).c_str(), d);
  }

  ojson payload;
  payload["command"] = "derive-metric";
  payload["metric"] = to_string(metric.kind());
  payload["arity"] = metric.arity();
  payload["values"] = std::move(values);

  const bool has_sink = opts.out_path.has_value() || cfg.output.has_value();
  if (has_sink) emit_report(opts, cfg, "derive-metric", std::move(payload));
  return kExitOk;
}

}  // namespace gnmetric::cli
