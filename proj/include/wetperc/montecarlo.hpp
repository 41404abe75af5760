#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "wetperc/analytics.hpp"
#include "wetperc/geometry.hpp"
#include "wetperc/graph.hpp"

namespace wetperc {

struct SimConfig {
  Region region{2000.0, 2000.0};
  std::size_t iterations = 200;
  std::uint64_t master_seed = 1;
  // Spanning rule; margin defaults to r_r when unset.
  std::optional<SpanningRule> rule;
  // 0 selects std::thread::hardware_concurrency().
  unsigned workers = 1;
  std::uint64_t station_cap = 1'000'000;
  bool keep_values = false;

  SpanningRule rule_for(double r_r) const {
    return rule ? *rule : SpanningRule{r_r, SpanDirection::kEither};
  }
};

enum class CiMethod { kNone, kNormal, kClopperPearson };

struct Interval {
  double low;
  double high;
};

struct EstimateResult {
  double mean = 0.0;
  double std_error = 0.0;
  std::optional<Interval> ci;  // 95%; empty with fewer than two samples
  CiMethod ci_method = CiMethod::kNone;
  std::size_t samples = 0;
  std::size_t censored = 0;
  std::vector<double> values;  // per-iteration values when requested
};

// Mean, standard error and normal 95% interval of a sample.
EstimateResult summarize(std::span<const double> values, bool keep_values = false);

// Proportion estimate; exact Clopper-Pearson interval when the proportion is
// below 0.05 or above 0.95, normal interval otherwise.
EstimateResult proportion_estimate(std::size_t successes, std::size_t trials);

// Thrown when more than 1% of realizations hit the insertion cap.
class CensoringError : public std::runtime_error {
 public:
  CensoringError(const std::string& what, EstimateResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const EstimateResult& partial() const noexcept { return partial_; }

 private:
  EstimateResult partial_;
};

// Fraction of independent realizations whose WC-RGG spans the window.
EstimateResult percolation_probability(const NetworkParams& params, const SimConfig& config);

// Spanning fraction on a grid of station densities with coupled realizations:
// per iteration the devices are shared and the station sets are nested
// thinnings of one process at the largest density, so every realization's
// spanning indicator is non-decreasing along the grid.
std::vector<EstimateResult> percolation_curve(const DeviceParams& params,
                                              std::span<const double> lambda_f_grid,
                                              const SimConfig& config);

struct CriticalSample {
  bool reached = false;
  std::uint64_t stations = 0;  // station count at which the graph first spans
  double density = 0.0;       // stations / area
};

// Inserts uniform stations one at a time until the WC-RGG spans.
CriticalSample critical_density_realization(const DeviceParams& params,
                                            std::uint64_t device_seed,
                                            std::uint64_t station_seed,
                                            const SimConfig& config);
// Same, on a caller-supplied device set.
CriticalSample critical_density_realization(const PointSet& devices, const DeviceParams& params,
                                            std::uint64_t station_seed,
                                            const SimConfig& config);

// Mean per-realization critical station density. Censored realizations are
// counted; throws CensoringError when they exceed 1%.
EstimateResult estimate_critical_density(const DeviceParams& params, const SimConfig& config);

// Per-realization critical device density of the all-active RGG, reported
// as the dimensionless lambda_r * r_r^2.
EstimateResult dense_es_critical(double r_r, const SimConfig& config);

struct SweepRow {
  DeviceParams params;
  EstimateResult simulated;
  BoundsReport bounds;
};

std::vector<SweepRow> sweep_lambda_r(std::span<const double> lambda_r_grid, double r_r, double r_f,
                                     const SimConfig& config, double lambda_c = lambda_c_unit());

// One row per (r_r, r_f) pair, r_r major.
std::vector<SweepRow> sweep_r_f(std::span<const double> r_f_grid, std::span<const double> r_r_values,
                                double lambda_r, const SimConfig& config,
                                double lambda_c = lambda_c_unit());

}  // namespace wetperc
