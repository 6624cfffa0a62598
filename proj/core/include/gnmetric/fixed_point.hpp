#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gnmetric/axioms.hpp"
#include "gnmetric/metric.hpp"
#include "gnmetric/point.hpp"
#include "gnmetric/sequence.hpp"

namespace gnmetric {

/// An endo-map of the carrier: a finite index array, a componentwise affine
/// real map, or an arbitrary registered function. A map may carry a
/// preimage oracle (another SelfMap) used by the interleaved solver; the
/// oracle is trusted only up to a residual tolerance that is re-checked at
/// every use.
class SelfMap {
public:
  enum class Kind { finite_index_array, affine_real, registry_named };

  /// image[i] is the image of point i; every entry must be < image.size().
  static SelfMap finite(std::vector<std::size_t> image);

  /// x -> scale * x + offset, applied componentwise.
  static SelfMap affine(double scale, double offset);

  /// Per-component scale/offset; sizes must match the space dimension.
  static SelfMap affine(std::vector<double> scale, std::vector<double> offset);

  /// Arbitrary function registered under a display name.
  static SelfMap named(std::string name, std::function<Point(const Point&)> fn);

  static SelfMap identity();

  Point apply(const Space& space, const Point& p) const;

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  SelfMap with_preimage(SelfMap pre, double residual_tol = 1e-9) const;
  bool has_preimage() const { return preimage_ != nullptr; }
  const SelfMap& preimage() const;
  double preimage_residual_tol() const { return preimage_residual_tol_; }

private:
  SelfMap() = default;

  Kind kind_ = Kind::registry_named;
  std::string name_;
  std::vector<std::size_t> image_;              // finite_index_array
  std::vector<double> scale_, offset_;          // affine_real (size 1 = scalar broadcast)
  std::function<Point(const Point&)> fn_;       // registry_named
  std::shared_ptr<const SelfMap> preimage_;
  double preimage_residual_tol_ = 1e-9;
};

enum class Termination { certified, max_iter, stalled };
std::string to_string(Termination t);

/// Iterate history with per-step a-priori error certificates
/// B_t = q^t / (1-q) * G(y_0, y_1, ..., y_1). Certificates are accumulated
/// multiplicatively (B_{t+1} = q * B_t) so the geometric decrease is exact.
/// When a step value hits exactly zero the orbit is stationary from there
/// on and the trailing certificate is 0.
struct IterationTrace {
  std::vector<Point> iterates;       // y_0 .. y_T
  std::vector<double> step_values;   // G(y_t, y_{t+1}, ..., y_{t+1}), t = 0 .. T-1
  std::vector<double> certificates;  // B_0 .. B_T
  double q = 0.0;
  Termination termination = Termination::max_iter;
  std::string note;                  // detail on stalled/hypothesis issues
  Point fixed_point;                 // last accepted iterate
  std::size_t certified_at = 0;      // T when termination == certified
};

enum class EstimateMode { pair_ratio, quasi_max };
std::string to_string(EstimateMode m);
EstimateMode estimate_mode_from_string(const std::string& s);

struct ContractionEstimate {
  EstimateMode mode = EstimateMode::pair_ratio;
  double sup_ratio = 0.0;
  std::size_t samples = 0;        // ratios actually formed
  std::size_t skipped_zero = 0;   // tuples dropped for a zero denominator
  Tuple attained_at;              // tuple realizing sup_ratio
};

/// Empirically estimate a contraction constant over sampled tuples.
///   pair_ratio: sup of G(f x_1,...,f x_r) / G(g x_1,...,g x_r)
///               (gmap defaults to the identity);
///   quasi_max:  sup of G(f x_1,...,f x_r) / max{ G(x_1,...,x_r),
///               G(x_i, f x_i,...,f x_i) for each i,
///               G(x_i, f x_{i+1},...,f x_{i+1}) cyclically }.
/// Throws hypothesis_error when every sampled denominator is zero.
ContractionEstimate estimate_contraction_factor(const GnMetric& g, const SelfMap& f,
                                                const std::optional<SelfMap>& gmap,
                                                EstimateMode mode, const SamplePlan& plan);

/// Interleaved iteration y_t = f(x_t) = g(x_{t+1}) for a commuting pair
/// with contraction factor q in (0,1) against g. gmap must carry a
/// preimage oracle. Commutation is checked on sampled points up front;
/// the preimage residual is checked at every iterate. Terminates certified
/// when B_t <= eps, returning u = y_T.
IterationTrace solve_common_fixed_point(const GnMetric& g, const SelfMap& f, const SelfMap& gmap,
                                        const Point& x0, double q, double eps,
                                        std::size_t max_iter);

/// Direct iteration y_{t+1} = f(y_t) for a quasi-contraction with constant
/// k in [0, 1/2); internally q = k / (1-k). Same certificate scheme.
IterationTrace solve_quasi_contraction(const GnMetric& g, const SelfMap& f, const Point& y0,
                                       double k, double eps, std::size_t max_iter);

/// d_G(f(u), u) <= tol, and d_G(gmap(u), u) <= tol when gmap is given.
bool verify_fixed_point(const GnMetric& g, const SelfMap& f, const std::optional<SelfMap>& gmap,
                        const Point& u, double tol);

/// Which solver uniqueness_probe should run and with what hypothesis.
struct SolverConfig {
  int theorem = 1;  // 1 = commuting pair, 2 = quasi-contraction
  SelfMap f = SelfMap::identity();
  std::optional<SelfMap> gmap;
  double q_or_k = 0.5;
  double eps = 1e-9;
  std::size_t max_iter = 100000;
};

struct UniquenessResult {
  bool agree = false;
  double max_pairwise_dg = 0.0;
  std::vector<Point> fixed_points;  // one per seed, in seed order
};

/// Run the configured solver from every seed (>= 2 required) and measure
/// the pairwise d_G spread of the returned fixed points. Solver failures
/// propagate with the offending seed named in the message.
UniquenessResult uniqueness_probe(const GnMetric& g, const SolverConfig& config,
                                  std::span<const Point> seeds, double tol);

struct ContinuityAtFixedPointResult {
  bool applicable = false;  // requires (arity-1) * k < 1
  bool holds = false;
  double worst_margin = 0.0;
  double bound_factor = 0.0;  // k / (1 - (arity-1) * k)
};

/// For a sequence y_m -> u and a quasi-contraction f with constant k,
/// checks G(f(y_m), u, ..., u) <= k/(1-(r-1)k) * G(y_m, u, ..., u) on the
/// tail. Not applicable when (r-1)k >= 1.
ContinuityAtFixedPointResult continuity_at_fixed_point(const GnMetric& g, const SelfMap& f,
                                                       const SequencePrefix& seq, const Point& u,
                                                       double k, std::size_t tail_start);

}  // namespace gnmetric
