#pragma once

#include <optional>
#include <string>

#include "wetperc/geometry.hpp"

namespace wetperc {

// Device-side parameters plus WET radius; the station density is the unknown.
struct DeviceParams {
  double lambda_r = 0.0;  // devices per m^2
  double r_r = 0.0;       // D2D range, m
  double r_f = 0.0;       // WET radius, m
};

struct NetworkParams {
  double lambda_r = 0.0;  // devices per m^2
  double r_r = 0.0;       // m
  double lambda_f = 0.0;  // stations per m^2
  double r_f = 0.0;       // m

  DeviceParams devices() const { return {lambda_r, r_r, r_f}; }
};

// Throws ParameterError unless lambda_r > 0 and 0 < r_r <= r_f.
void validate(const DeviceParams& p);
// As above, plus lambda_f >= 0.
void validate(const NetworkParams& p);

// A closed-form station density that only exists above a device-density
// threshold. Below it `value` is empty and `lambda_r_threshold` says why.
struct ThresholdedDensity {
  std::optional<double> value;
  double lambda_r_threshold = 0.0;

  bool defined() const noexcept { return value.has_value(); }
  std::string note() const;
};

// Critical density of the unit-range Gilbert disk model, 4 ln 2 / pi.
double lambda_c_unit();

// Hexagon of side r_r dilated by r_f.
double outer_envelope_area(double r_r, double r_f);
// Hexagon of side r_r / sqrt(13) eroded to the set of station positions
// whose WET disk covers the whole hexagon.
double inner_envelope_area(double r_r, double r_f);

ThresholdedDensity lower_bound_density(double lambda_r, double r_r, double r_f);
ThresholdedDensity upper_bound_density(double lambda_r, double r_r, double r_f);

// Density of active devices under independent thinning by WET coverage.
double effective_active_density(double lambda_r, double lambda_f, double r_f);

ThresholdedDensity approx_inner_city(double lambda_r, double r_r, double r_f,
                                     double lambda_c = lambda_c_unit());
double approx_gilbert(double r_r, double r_f, double lambda_c = lambda_c_unit());
ThresholdedDensity approx_star(double lambda_r, double r_r, double r_f,
                               double lambda_c = lambda_c_unit());

// Envelope areas normalised by pi r_f^2 as functions of gamma = r_r / r_f.
struct GFunctions {
  double outer;  // g_L
  double inner;  // g_U
};
GFunctions g_functions(double gamma);

struct BoundsReport {
  DeviceParams params;
  double lambda_c = 0.0;
  ThresholdedDensity lower;
  ThresholdedDensity upper;
  ThresholdedDensity inner_city;
  double gilbert = 0.0;
  ThresholdedDensity star;
};

BoundsReport bounds_report(const DeviceParams& p, double lambda_c = lambda_c_unit());

// How the "planned" percolation-driven station density is chosen.
enum class PlanningMode {
  kApproxStar,       // combined approximation (default)
  kGilbert,          // lambda_c / (2 r_f + r_r)^2
  kConservative,     // lambda_c / (2 r_r + r_f)^2: radii swapped, denser plan
};

struct CapexReport {
  PlanningMode mode = PlanningMode::kApproxStar;
  double planned_density = 0.0;
  double full_coverage_density = 0.0;
  double density_ratio = 0.0;
  double stations_saved = 0.0;
  double uncovered_probability = 0.0;
};

// Percolation-driven deployment versus a square-lattice full-coverage deployment.
CapexReport capex_report(const DeviceParams& p, const Region& region,
                         PlanningMode mode = PlanningMode::kApproxStar,
                         double lambda_c = lambda_c_unit());

const char* to_string(PlanningMode mode);

}  // namespace wetperc
