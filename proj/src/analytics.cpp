#include "wetperc/analytics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace wetperc {

namespace {

using std::numbers::ln2;
using std::numbers::pi;

const double kSqrt3 = std::sqrt(3.0);
const double kHexArea = 1.5 * kSqrt3;  // area of the unit-side hexagon

// Smallest admissible value of 1/2 - exp(-a) before the log is declared singular.
constexpr double kDenominatorFloor = 1e-12;

// Above this value of lambda_r r_r^2 / lambda_c the combined approximation and
// the Gilbert form agree to far below double precision.
constexpr double kDenseFactor = 100.0;

void check_radii(double r_r, double r_f) {
  if (!(r_r > 0.0) || !std::isfinite(r_r)) throw ParameterError("r_r must be positive");
  if (!(r_f > 0.0) || !std::isfinite(r_f)) throw ParameterError("r_f must be positive");
  if (r_r > r_f) throw ParameterError("r_r must not exceed r_f");
}

void check_lambda_c(double lambda_c) {
  if (!(lambda_c > 0.0) || !std::isfinite(lambda_c)) {
    throw ParameterError("lambda_c must be positive");
  }
}

// ln[(1 - e^{-a}) / (1/2 - e^{-a})], or nothing when a <= ln 2 or the
// denominator is numerically zero.
std::optional<double> log_ratio(double a) {
  if (!(a > ln2)) return std::nullopt;
  // 1/2 - e^{-a} = -(1/2) expm1(ln2 - a), exact near the singularity.
  const double denom = -0.5 * std::expm1(ln2 - a);
  if (!(denom > kDenominatorFloor)) return std::nullopt;
  const double numer = -std::expm1(-a);
  return std::log(numer / denom);
}

}  // namespace

void validate(const DeviceParams& p) {
  if (!(p.lambda_r > 0.0) || !std::isfinite(p.lambda_r)) {
    throw ParameterError("lambda_r must be positive");
  }
  check_radii(p.r_r, p.r_f);
}

void validate(const NetworkParams& p) {
  validate(p.devices());
  if (!(p.lambda_f >= 0.0) || !std::isfinite(p.lambda_f)) {
    throw ParameterError("lambda_f must be non-negative");
  }
}

std::string ThresholdedDensity::note() const {
  if (defined()) return "defined";
  std::ostringstream os;
  os.precision(6);
  os << "undefined: requires lambda_r > " << lambda_r_threshold;
  return os.str();
}

double lambda_c_unit() { return 4.0 * ln2 / pi; }

double outer_envelope_area(double r_r, double r_f) {
  check_radii(r_r, r_f);
  return kHexArea * r_r * r_r + 6.0 * r_r * r_f + pi * r_f * r_f;
}

double inner_envelope_area(double r_r, double r_f) {
  check_radii(r_r, r_f);
  const double b = std::sqrt(r_f * r_f - r_r * r_r / 52.0) - std::sqrt(39.0) / 26.0 * r_r;
  const double alpha = std::asin(b / (2.0 * r_f));
  return kHexArea * b * b + 6.0 * alpha * r_f * r_f - 3.0 * r_f * r_f * std::sin(2.0 * alpha);
}

ThresholdedDensity lower_bound_density(double lambda_r, double r_r, double r_f) {
  const double s_out = outer_envelope_area(r_r, r_f);
  ThresholdedDensity out;
  out.lambda_r_threshold = 2.0 * ln2 / (3.0 * kSqrt3 * r_r * r_r);
  if (lambda_r > out.lambda_r_threshold) {
    if (auto l = log_ratio(kHexArea * lambda_r * r_r * r_r)) out.value = *l / s_out;
  }
  return out;
}

ThresholdedDensity upper_bound_density(double lambda_r, double r_r, double r_f) {
  const double s_in = inner_envelope_area(r_r, r_f);
  ThresholdedDensity out;
  out.lambda_r_threshold = 26.0 * ln2 / (3.0 * kSqrt3 * r_r * r_r);
  if (lambda_r > out.lambda_r_threshold) {
    // Hexagon side r_r / sqrt(13): area factor (3 sqrt3 / 2) / 13.
    if (auto l = log_ratio(kHexArea / 13.0 * lambda_r * r_r * r_r)) out.value = *l / s_in;
  }
  return out;
}

double effective_active_density(double lambda_r, double lambda_f, double r_f) {
  if (!(lambda_r >= 0.0) || !(lambda_f >= 0.0) || !(r_f >= 0.0)) {
    throw ParameterError("densities and r_f must be non-negative");
  }
  if (std::isinf(lambda_f)) return lambda_r;
  return -lambda_r * std::expm1(-lambda_f * pi * r_f * r_f);
}

ThresholdedDensity approx_inner_city(double lambda_r, double r_r, double r_f, double lambda_c) {
  check_radii(r_r, r_f);
  check_lambda_c(lambda_c);
  ThresholdedDensity out;
  out.lambda_r_threshold = lambda_c / (r_r * r_r);
  if (lambda_r > out.lambda_r_threshold) {
    const double ratio = lambda_c / (lambda_r * r_r * r_r);
    out.value = -std::log1p(-ratio) / (pi * r_f * r_f);
  }
  return out;
}

double approx_gilbert(double r_r, double r_f, double lambda_c) {
  check_radii(r_r, r_f);
  check_lambda_c(lambda_c);
  const double d = 2.0 * r_f + r_r;
  return lambda_c / (d * d);
}

ThresholdedDensity approx_star(double lambda_r, double r_r, double r_f, double lambda_c) {
  check_radii(r_r, r_f);
  check_lambda_c(lambda_c);
  ThresholdedDensity out;
  out.lambda_r_threshold = lambda_c / (r_r * r_r);
  if (lambda_r > out.lambda_r_threshold) {
    const double d = 2.0 * r_f + r_r;
    if (auto l = log_ratio(ln2 / lambda_c * lambda_r * r_r * r_r)) {
      out.value = (lambda_c / ln2) / (d * d) * *l;
    }
  }
  return out;
}

GFunctions g_functions(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ParameterError("gamma must lie in [0, 1]");
  const double c = std::sqrt(1.0 - gamma * gamma / 52.0) - std::sqrt(39.0) / 26.0 * gamma;
  const double alpha = std::asin(c / 2.0);
  return {
      (kHexArea * gamma * gamma + 6.0 * gamma + pi) / pi,
      (kHexArea * c * c + 6.0 * alpha - 3.0 * std::sin(2.0 * alpha)) / pi,
  };
}

BoundsReport bounds_report(const DeviceParams& p, double lambda_c) {
  validate(p);
  check_lambda_c(lambda_c);
  BoundsReport r;
  r.params = p;
  r.lambda_c = lambda_c;
  r.lower = lower_bound_density(p.lambda_r, p.r_r, p.r_f);
  r.upper = upper_bound_density(p.lambda_r, p.r_r, p.r_f);
  r.inner_city = approx_inner_city(p.lambda_r, p.r_r, p.r_f, lambda_c);
  r.gilbert = approx_gilbert(p.r_r, p.r_f, lambda_c);
  r.star = approx_star(p.lambda_r, p.r_r, p.r_f, lambda_c);
  return r;
}

CapexReport capex_report(const DeviceParams& p, const Region& region, PlanningMode mode,
                         double lambda_c) {
  validate(p);
  check_lambda_c(lambda_c);
  CapexReport r;
  r.mode = mode;
  switch (mode) {
    case PlanningMode::kApproxStar: {
      if (p.lambda_r * p.r_r * p.r_r >= kDenseFactor * lambda_c) {
        r.planned_density = approx_gilbert(p.r_r, p.r_f, lambda_c);
        break;
      }
      const auto star = approx_star(p.lambda_r, p.r_r, p.r_f, lambda_c);
      if (!star.defined()) {
        throw ParameterError("no percolation-driven density exists: " + star.note());
      }
      r.planned_density = *star.value;
      break;
    }
    case PlanningMode::kGilbert:
      r.planned_density = approx_gilbert(p.r_r, p.r_f, lambda_c);
      break;
    case PlanningMode::kConservative: {
      const double d = 2.0 * p.r_r + p.r_f;
      r.planned_density = lambda_c / (d * d);
      break;
    }
  }
  r.full_coverage_density = 1.0 / (2.0 * p.r_f * p.r_f);
  r.density_ratio = r.full_coverage_density / r.planned_density;
  r.stations_saved = (r.full_coverage_density - r.planned_density) * region.area();
  r.uncovered_probability = std::exp(-r.planned_density * pi * p.r_f * p.r_f);
  return r;
}

const char* to_string(PlanningMode mode) {
  switch (mode) {
    case PlanningMode::kApproxStar:
      return "star";
    case PlanningMode::kGilbert:
      return "gilbert";
    case PlanningMode::kConservative:
      return "conservative";
  }
  return "unknown";
}

}  // namespace wetperc
