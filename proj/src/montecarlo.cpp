#include "wetperc/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include <boost/math/special_functions/beta.hpp>

#include "wetperc/rng.hpp"

namespace wetperc {

namespace {

constexpr double kZ95 = 1.959963984540054;

void validate(const SimConfig& config) {
  if (config.iterations < 1) throw ParameterError("iterations must be at least 1");
  if (config.station_cap < 1) throw ParameterError("station cap must be at least 1");
}

// Evaluates fn(0..n-1) on a worker pool. Results land in index order, so the
// output does not depend on the number of workers.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, unsigned workers, Fn fn) {
  std::vector<T> out(n);
  unsigned w = workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers;
  w = static_cast<unsigned>(std::min<std::size_t>(w, n));
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (unsigned t = 0; t < w; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          out[i] = fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

bool realization_spans(const NetworkParams& p, const SimConfig& config, std::size_t i) {
  const std::uint64_t m = config.master_seed;
  PointSet devices = sample_ppp(p.lambda_r, config.region, derive_seed(m, i, Stream::kDevices));
  PointSet stations = sample_ppp(p.lambda_f, config.region, derive_seed(m, i, Stream::kStations));
  const WcRgg g = build_wc_rgg(std::move(devices), std::move(stations), p.r_r, p.r_f);
  return spans(connected_components(g), config.region, config.rule_for(p.r_r));
}

}  // namespace

EstimateResult summarize(std::span<const double> values, bool keep_values) {
  EstimateResult r;
  r.samples = values.size();
  if (values.empty()) return r;
  const double n = static_cast<double>(values.size());
  r.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - r.mean) * (v - r.mean);
    r.std_error = std::sqrt(ss / (n - 1.0) / n);
    r.ci = Interval{r.mean - kZ95 * r.std_error, r.mean + kZ95 * r.std_error};
    r.ci_method = CiMethod::kNormal;
  }
  if (keep_values) r.values.assign(values.begin(), values.end());
  return r;
}

EstimateResult proportion_estimate(std::size_t successes, std::size_t trials) {
  if (successes > trials) throw ParameterError("successes exceed trials");
  EstimateResult r;
  r.samples = trials;
  if (trials == 0) return r;
  const double n = static_cast<double>(trials);
  const double k = static_cast<double>(successes);
  r.mean = k / n;
  r.std_error = std::sqrt(r.mean * (1.0 - r.mean) / n);
  if (trials < 2) return r;
  if (r.mean < 0.05 || r.mean > 0.95) {
    const double lo = successes == 0 ? 0.0 : boost::math::ibeta_inv(k, n - k + 1.0, 0.025);
    const double hi = successes == trials ? 1.0 : boost::math::ibeta_inv(k + 1.0, n - k, 0.975);
    r.ci = Interval{lo, hi};
    r.ci_method = CiMethod::kClopperPearson;
  } else {
    r.ci = Interval{std::max(0.0, r.mean - kZ95 * r.std_error),
                    std::min(1.0, r.mean + kZ95 * r.std_error)};
    r.ci_method = CiMethod::kNormal;
  }
  return r;
}

EstimateResult percolation_probability(const NetworkParams& params, const SimConfig& config) {
  validate(params);
  validate(config);
  validate_rule(config.rule_for(params.r_r), config.region);
  const auto hits = parallel_map<char>(config.iterations, config.workers, [&](std::size_t i) {
    return static_cast<char>(realization_spans(params, config, i));
  });
  const auto successes = static_cast<std::size_t>(std::count(hits.begin(), hits.end(), 1));
  EstimateResult r = proportion_estimate(successes, config.iterations);
  if (config.keep_values) r.values.assign(hits.begin(), hits.end());
  return r;
}

std::vector<EstimateResult> percolation_curve(const DeviceParams& params,
                                              std::span<const double> lambda_f_grid,
                                              const SimConfig& config) {
  validate(params);
  validate(config);
  if (lambda_f_grid.empty()) throw ParameterError("lambda_f grid is empty");
  for (double l : lambda_f_grid) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw ParameterError("lambda_f must be non-negative");
  }
  const SpanningRule rule = config.rule_for(params.r_r);
  validate_rule(rule, config.region);
  const double lambda_max = *std::max_element(lambda_f_grid.begin(), lambda_f_grid.end());

  // Per iteration: the smallest thinning mark at which the graph spans, or +inf.
  const auto critical_marks =
      parallel_map<double>(config.iterations, config.workers, [&](std::size_t i) {
        const double never = std::numeric_limits<double>::infinity();
        if (lambda_max <= 0.0) return never;
        const std::uint64_t m = config.master_seed;
        PointSet devices =
            sample_ppp(params.lambda_r, config.region, derive_seed(m, i, Stream::kDevices));
        const PointSet stations =
            sample_ppp(lambda_max, config.region, derive_seed(m, i, Stream::kStations));
        Engine mark_rng = make_engine(derive_seed(m, i, Stream::kMarks));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<std::pair<double, std::size_t>> order(stations.size());
        for (std::size_t k = 0; k < stations.size(); ++k) order[k] = {unit(mark_rng), k};
        std::sort(order.begin(), order.end());

        IncrementalWcRgg graph(std::move(devices), params.r_r, params.r_f, config.region, rule);
        for (const auto& [mark, k] : order) {
          graph.add_station(stations[k]);
          if (graph.spans()) return mark;
        }
        return never;
      });

  std::vector<EstimateResult> out;
  out.reserve(lambda_f_grid.size());
  for (double l : lambda_f_grid) {
    const double keep = lambda_max > 0.0 ? l / lambda_max : 0.0;
    std::size_t hits = 0;
    std::vector<double> values;
    for (double mark : critical_marks) {
      const bool on = mark < keep;
      hits += on;
      if (config.keep_values) values.push_back(on ? 1.0 : 0.0);
    }
    EstimateResult r = proportion_estimate(hits, config.iterations);
    r.values = std::move(values);
    out.push_back(std::move(r));
  }
  return out;
}

CriticalSample critical_density_realization(const PointSet& devices, const DeviceParams& params,
                                            std::uint64_t station_seed,
                                            const SimConfig& config) {
  validate_ranges(params.r_r, params.r_f);
  validate(config);
  const Region& region = config.region;
  IncrementalWcRgg graph(devices, params.r_r, params.r_f, region, config.rule_for(params.r_r));
  Engine rng = make_engine(station_seed);
  std::uniform_real_distribution<double> ux(0.0, region.width());
  std::uniform_real_distribution<double> uy(0.0, region.height());

  CriticalSample out;
  std::size_t active = 0;
  for (std::uint64_t n = 1; n <= config.station_cap; ++n) {
    const double x = ux(rng);
    const double y = uy(rng);
    active += graph.add_station({x, y});
    if (graph.spans()) {
      out.reached = true;
      out.stations = n;
      out.density = static_cast<double>(n) / region.area();
      return out;
    }
    // Every device is on and still no spanning cluster: more stations cannot help.
    if (active == devices.size()) break;
  }
  return out;
}

CriticalSample critical_density_realization(const DeviceParams& params,
                                            std::uint64_t device_seed,
                                            std::uint64_t station_seed,
                                            const SimConfig& config) {
  validate(params);
  const PointSet devices = sample_ppp(params.lambda_r, config.region, device_seed);
  return critical_density_realization(devices, params, station_seed, config);
}

EstimateResult estimate_critical_density(const DeviceParams& params, const SimConfig& config) {
  validate(params);
  validate(config);
  validate_rule(config.rule_for(params.r_r), config.region);
  const auto samples =
      parallel_map<CriticalSample>(config.iterations, config.workers, [&](std::size_t i) {
        const std::uint64_t m = config.master_seed;
        return critical_density_realization(params, derive_seed(m, i, Stream::kDevices),
                                            derive_seed(m, i, Stream::kStations), config);
      });
  std::vector<double> values;
  std::size_t censored = 0;
  for (const auto& s : samples) {
    if (s.reached) {
      values.push_back(s.density);
    } else {
      ++censored;
    }
  }
  EstimateResult r = summarize(values, config.keep_values);
  r.censored = censored;
  if (censored * 100 > config.iterations) {
    throw CensoringError("more than 1% of realizations reached the station cap", std::move(r));
  }
  return r;
}

EstimateResult dense_es_critical(double r_r, const SimConfig& config) {
  if (!(r_r > 0.0)) throw ParameterError("r_r must be positive");
  validate(config);
  const SpanningRule rule = config.rule_for(r_r);
  validate_rule(rule, config.region);
  const Region& region = config.region;
  const auto samples =
      parallel_map<CriticalSample>(config.iterations, config.workers, [&](std::size_t i) {
        IncrementalRgg graph(r_r, region, rule);
        Engine rng = make_engine(derive_seed(config.master_seed, i, Stream::kDevices));
        std::uniform_real_distribution<double> ux(0.0, region.width());
        std::uniform_real_distribution<double> uy(0.0, region.height());
        CriticalSample out;
        for (std::uint64_t n = 1; n <= config.station_cap; ++n) {
          const double x = ux(rng);
          const double y = uy(rng);
          if (graph.add_device({x, y})) {
            out.reached = true;
            out.stations = n;
            out.density = static_cast<double>(n) / region.area();
            break;
          }
        }
        return out;
      });
  std::vector<double> values;
  std::size_t censored = 0;
  for (const auto& s : samples) {
    if (s.reached) {
      values.push_back(s.density * r_r * r_r);
    } else {
      ++censored;
    }
  }
  EstimateResult r = summarize(values, config.keep_values);
  r.censored = censored;
  if (censored * 100 > config.iterations) {
    throw CensoringError("more than 1% of realizations reached the device cap", std::move(r));
  }
  return r;
}

std::vector<SweepRow> sweep_lambda_r(std::span<const double> lambda_r_grid, double r_r, double r_f,
                                     const SimConfig& config, double lambda_c) {
  if (lambda_r_grid.empty()) throw ParameterError("lambda_r grid is empty");
  std::vector<SweepRow> rows;
  for (double lambda_r : lambda_r_grid) {
    const DeviceParams p{lambda_r, r_r, r_f};
    rows.push_back({p, estimate_critical_density(p, config), bounds_report(p, lambda_c)});
  }
  return rows;
}

std::vector<SweepRow> sweep_r_f(std::span<const double> r_f_grid, std::span<const double> r_r_values,
                                double lambda_r, const SimConfig& config, double lambda_c) {
  if (r_f_grid.empty() || r_r_values.empty()) throw ParameterError("r_f sweep grid is empty");
  std::vector<SweepRow> rows;
  for (double r_r : r_r_values) {
    for (double r_f : r_f_grid) {
      const DeviceParams p{lambda_r, r_r, r_f};
      rows.push_back({p, estimate_critical_density(p, config), bounds_report(p, lambda_c)});
    }
  }
  return rows;
}

}  // namespace wetperc
