#include "wetperc/hexlattice.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <random>

#include "wetperc/rng.hpp"

namespace wetperc {

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kSqrt13 = std::sqrt(13.0);

constexpr std::array<FaceCoord, 6> kDirections{{
    {1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}}};

FaceCoord cube_round(double qf, double rf) {
  const double sf = -qf - rf;
  double q = std::round(qf);
  double r = std::round(rf);
  const double s = std::round(sf);
  const double dq = std::abs(q - qf);
  const double dr = std::abs(r - rf);
  const double ds = std::abs(s - sf);
  if (dq > dr && dq > ds) {
    q = -r - s;
  } else if (dr > ds) {
    r = -q - s;
  }
  return {static_cast<int>(q), static_cast<int>(r)};
}

// Clips a convex polygon against the half-plane a*x + b*y <= c.
std::vector<Point> clip(const std::vector<Point>& poly, double a, double b, double c) {
  std::vector<Point> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % n];
    const double fp = a * p.x + b * p.y - c;
    const double fq = a * q.x + b * q.y - c;
    if (fp <= 0.0) out.push_back(p);
    if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
      const double t = fp / (fp - fq);
      out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
    }
  }
  return out;
}

double polygon_area(const std::vector<Point>& poly) {
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    twice += p.x * q.y - q.x * p.y;
  }
  return 0.5 * std::abs(twice);
}

FaceClassification classify(const HexLattice& lattice, const PointSet& devices,
                            const PointSet& stations, double r_f, FaceMode mode) {
  FaceClassification cls;
  cls.mode = mode;
  cls.devices.assign(lattice.face_count(), 0);
  cls.active_devices.assign(lattice.face_count(), 0);
  const ActivationFlags active = activate_devices(devices, stations, r_f);
  for (std::size_t i = 0; i < devices.size(); ++i) {
    const Point p = devices[i];
    if (!lattice.region().contains(p)) continue;
    const auto idx = lattice.index_of(lattice.locate_unchecked(p));
    if (!idx) continue;
    ++cls.devices[*idx];
    if (active[i]) ++cls.active_devices[*idx];
  }
  return cls;
}

}  // namespace

HexLattice::HexLattice(double side, Region region, Point origin)
    : side_(side), region_(region), origin_(origin) {
  if (!(side > 0.0) || !std::isfinite(side)) throw ParameterError("hexagon side must be positive");
  const double a = side_;
  const double h = 0.5 * kSqrt3 * a;
  // Faces whose bounding box overlaps the region with positive area.
  q_min_ = static_cast<int>(std::floor((-a - origin_.x) / (1.5 * a))) + 1;
  const int q_max = static_cast<int>(std::ceil((region_.width() + a - origin_.x) / (1.5 * a))) - 1;
  for (int q = q_min_; q <= q_max; ++q) {
    const double lo = (-h - origin_.y) / (kSqrt3 * a) - 0.5 * q;
    const double hi = (region_.height() + h - origin_.y) / (kSqrt3 * a) - 0.5 * q;
    const int r0 = static_cast<int>(std::floor(lo)) + 1;
    const int r1 = static_cast<int>(std::ceil(hi)) - 1;
    column_start_.push_back(faces_.size());
    r_min_.push_back(r0);
    r_count_.push_back(std::max(0, r1 - r0 + 1));
    for (int r = r0; r <= r1; ++r) {
      const FaceCoord f{q, r};
      faces_.push_back(f);
      bool inside = true;
      for (const Point& v : vertices(f)) inside = inside && region_.contains(v);
      interior_.push_back(inside);
    }
  }
}

HexLattice HexLattice::subcritical(double r_r, Region region) {
  return HexLattice(r_r, region);
}

HexLattice HexLattice::supercritical(double r_r, Region region) {
  return HexLattice(r_r / kSqrt13, region);
}

double HexLattice::face_area() const noexcept { return 1.5 * kSqrt3 * side_ * side_; }

Point HexLattice::center(FaceCoord f) const noexcept {
  return {origin_.x + 1.5 * side_ * f.q, origin_.y + kSqrt3 * side_ * (f.r + 0.5 * f.q)};
}

std::array<Point, 6> HexLattice::vertices(FaceCoord f) const noexcept {
  const Point c = center(f);
  std::array<Point, 6> v;
  for (int k = 0; k < 6; ++k) {
    const double angle = k * std::numbers::pi / 3.0;
    v[k] = {c.x + side_ * std::cos(angle), c.y + side_ * std::sin(angle)};
  }
  return v;
}

std::array<FaceCoord, 6> HexLattice::neighbors(FaceCoord f) noexcept {
  std::array<FaceCoord, 6> out;
  for (int k = 0; k < 6; ++k) out[k] = {f.q + kDirections[k].q, f.r + kDirections[k].r};
  return out;
}

bool HexLattice::contains(FaceCoord f, Point p) const noexcept {
  // A face is the Voronoi cell of its centre among all face centres.
  const double own = squared_distance(p, center(f));
  const double tol = 1e-12 * side_ * side_;
  for (const FaceCoord& n : neighbors(f)) {
    if (squared_distance(p, center(n)) < own - tol) return false;
  }
  return true;
}

FaceCoord HexLattice::locate_unchecked(Point p) const noexcept {
  const double x = (p.x - origin_.x) / side_;
  const double y = (p.y - origin_.y) / side_;
  const FaceCoord guess = cube_round(2.0 / 3.0 * x, -x / 3.0 + kSqrt3 / 3.0 * y);
  const double tol = 1e-12 * side_ * side_;
  FaceCoord best = guess;
  double best_d2 = squared_distance(p, center(guess));
  for (const FaceCoord& n : neighbors(guess)) {
    const double d2 = squared_distance(p, center(n));
    if (d2 < best_d2 - tol || (d2 <= best_d2 + tol && n < best)) {
      best = n;
      best_d2 = std::min(best_d2, d2);
    }
  }
  return best;
}

FaceCoord HexLattice::locate(Point p) const {
  if (!region_.contains(p)) throw ParameterError("point lies outside the lattice region");
  return locate_unchecked(p);
}

std::optional<std::size_t> HexLattice::index_of(FaceCoord f) const noexcept {
  const int col = f.q - q_min_;
  if (col < 0 || col >= static_cast<int>(r_min_.size())) return std::nullopt;
  const int off = f.r - r_min_[col];
  if (off < 0 || off >= r_count_[col]) return std::nullopt;
  return column_start_[col] + static_cast<std::size_t>(off);
}

double HexLattice::clipped_area(std::size_t idx) const {
  if (interior_[idx]) return face_area();
  const auto v = vertices(faces_[idx]);
  std::vector<Point> poly(v.begin(), v.end());
  poly = clip(poly, -1.0, 0.0, 0.0);
  poly = clip(poly, 1.0, 0.0, region_.width());
  poly = clip(poly, 0.0, -1.0, 0.0);
  poly = clip(poly, 0.0, 1.0, region_.height());
  return poly.size() < 3 ? 0.0 : polygon_area(poly);
}

FaceClassification classify_subcritical(const HexLattice& lattice, const PointSet& devices,
                                        const PointSet& stations, double r_r, double r_f) {
  validate_ranges(r_r, r_f);
  if (std::abs(lattice.side() - r_r) > 1e-9 * r_r) {
    throw ParameterError("sub-critical lattice side must equal r_r");
  }
  return classify(lattice, devices, stations, r_f, FaceMode::kSubcritical);
}

FaceClassification classify_supercritical(const HexLattice& lattice, const PointSet& devices,
                                          const PointSet& stations, double r_f) {
  if (!(r_f > 0.0)) throw ParameterError("r_f must be positive");
  return classify(lattice, devices, stations, r_f, FaceMode::kSupercritical);
}

FaceClassification random_classification(const HexLattice& lattice, FaceMode mode,
                                         double p_active, std::uint64_t seed) {
  if (!(p_active >= 0.0 && p_active <= 1.0)) {
    throw ParameterError("face probability must lie in [0, 1]");
  }
  Engine rng = make_engine(seed);
  std::bernoulli_distribution coin(p_active);
  FaceClassification cls;
  cls.mode = mode;
  cls.devices.resize(lattice.face_count());
  cls.active_devices.resize(lattice.face_count());
  for (std::size_t i = 0; i < lattice.face_count(); ++i) {
    const std::uint32_t on = coin(rng) ? 1 : 0;
    cls.devices[i] = on;
    cls.active_devices[i] = on;
  }
  return cls;
}

bool face_percolation(const HexLattice& lattice, const FaceClassification& cls,
                      const SpanningRule& rule) {
  const std::size_t n = lattice.face_count();
  if (cls.active_devices.size() != n) {
    throw ParameterError("classification does not match the lattice");
  }
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue;

  if (cls.mode == FaceMode::kSubcritical) {
    const auto start = lattice.index_of(lattice.center_face());
    if (!start || !cls.is_active(*start)) return false;
    queue.push_back(*start);
    seen[*start] = true;
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      if (!lattice.is_interior(cur)) return true;
      for (const FaceCoord& nb : HexLattice::neighbors(lattice.face(cur))) {
        const auto j = lattice.index_of(nb);
        if (j && !seen[*j] && cls.is_active(*j)) {
          seen[*j] = true;
          queue.push_back(*j);
        }
      }
    }
    return false;
  }

  validate_rule(rule, lattice.region());
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s] || !cls.is_active(s)) continue;
    const Point c0 = lattice.center(lattice.face(s));
    Extent e{c0.x, c0.x, c0.y, c0.y};
    seen[s] = true;
    queue.push_back(s);
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      const Point c = lattice.center(lattice.face(cur));
      e.min_x = std::min(e.min_x, c.x);
      e.max_x = std::max(e.max_x, c.x);
      e.min_y = std::min(e.min_y, c.y);
      e.max_y = std::max(e.max_y, c.y);
      for (const FaceCoord& nb : HexLattice::neighbors(lattice.face(cur))) {
        const auto j = lattice.index_of(nb);
        if (j && !seen[*j] && cls.is_active(*j)) {
          seen[*j] = true;
          queue.push_back(*j);
        }
      }
    }
    if (extent_spans(e, lattice.region(), rule)) return true;
  }
  return false;
}

AdjacencyDistanceCheck adjacent_connectivity_check(double side, int samples_per_edge) {
  if (!(side > 0.0)) throw ParameterError("hexagon side must be positive");
  if (samples_per_edge < 1) throw ParameterError("samples_per_edge must be positive");
  const Region scratch(10.0 * side, 10.0 * side);
  const HexLattice lattice(side, scratch, scratch.center());
  const FaceCoord a{0, 0};
  const FaceCoord b = HexLattice::neighbors(a)[0];

  auto boundary = [&](FaceCoord f) {
    const auto v = lattice.vertices(f);
    std::vector<Point> pts;
    for (int k = 0; k < 6; ++k) {
      const Point p = v[k];
      const Point q = v[(k + 1) % 6];
      for (int s = 0; s < samples_per_edge; ++s) {
        const double t = static_cast<double>(s) / samples_per_edge;
        pts.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
      }
    }
    return pts;
  };
  auto interior = [&](FaceCoord f, std::uint64_t seed) {
    Engine rng = make_engine(seed);
    const Point c = lattice.center(f);
    std::uniform_real_distribution<double> u(-side, side);
    std::vector<Point> pts;
    while (pts.size() < 256) {
      const Point p{c.x + u(rng), c.y + u(rng)};
      if (lattice.contains(f, p)) pts.push_back(p);
    }
    return pts;
  };

  std::vector<Point> pa = boundary(a);
  std::vector<Point> pb = boundary(b);
  const auto ia = interior(a, 11);
  const auto ib = interior(b, 12);
  pa.insert(pa.end(), ia.begin(), ia.end());
  pb.insert(pb.end(), ib.begin(), ib.end());

  double max_d2 = 0.0;
  for (const Point& p : pa) {
    for (const Point& q : pb) max_d2 = std::max(max_d2, squared_distance(p, q));
  }
  AdjacencyDistanceCheck out;
  out.sampled_max = std::sqrt(max_d2);
  out.expected = kSqrt13 * side;
  out.relative_error = std::abs(out.sampled_max - out.expected) / out.expected;
  out.ok = out.relative_error <= 1e-9;
  return out;
}

double subcritical_inactive_bound(const NetworkParams& p) {
  validate(p);
  const double empty = std::exp(-1.5 * kSqrt3 * p.lambda_r * p.r_r * p.r_r);
  return empty + (1.0 - empty) * std::exp(-p.lambda_f * outer_envelope_area(p.r_r, p.r_f));
}

double supercritical_active_bound(const NetworkParams& p) {
  validate(p);
  const double occupied = -std::expm1(-1.5 * kSqrt3 * p.lambda_r * p.r_r * p.r_r / 13.0);
  return occupied * -std::expm1(-p.lambda_f * inner_envelope_area(p.r_r, p.r_f));
}

FaceProbabilityEstimate estimate_face_probability(FaceMode mode, const NetworkParams& p,
                                                  std::size_t trials, std::uint64_t seed) {
  validate(p);
  if (trials == 0) throw ParameterError("trials must be positive");
  const double side = mode == FaceMode::kSubcritical ? p.r_r : p.r_r / kSqrt13;
  // Every station that can reach a point of the centre face lies in this window.
  const double half = side + p.r_f;
  const Region window(2.0 * half, 2.0 * half);
  const HexLattice lattice(side, window, window.center());
  const std::size_t target = *lattice.index_of({0, 0});

  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const PointSet devices =
        sample_ppp(p.lambda_r, window, derive_seed(seed, t, Stream::kDevices));
    const PointSet stations =
        sample_ppp(p.lambda_f, window, derive_seed(seed, t, Stream::kStations));
    const FaceClassification cls =
        mode == FaceMode::kSubcritical
            ? classify_subcritical(lattice, devices, stations, p.r_r, p.r_f)
            : classify_supercritical(lattice, devices, stations, p.r_f);
    if (cls.flag(target)) ++hits;
  }

  FaceProbabilityEstimate est;
  est.mode = mode;
  est.trials = trials;
  est.empirical = static_cast<double>(hits) / static_cast<double>(trials);
  est.std_error = std::sqrt(est.empirical * (1.0 - est.empirical) / static_cast<double>(trials));
  est.bound = mode == FaceMode::kSubcritical ? subcritical_inactive_bound(p)
                                             : supercritical_active_bound(p);
  const double diff = est.empirical - est.bound;
  est.z = est.std_error > 0.0 ? diff / est.std_error
                              : (diff >= 0.0 ? std::numeric_limits<double>::infinity()
                                             : -std::numeric_limits<double>::infinity());
  return est;
}

}  // namespace wetperc
