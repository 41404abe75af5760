#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "wetperc/analytics.hpp"
#include "wetperc/geometry.hpp"
#include "wetperc/graph.hpp"

namespace wetperc {

// Axial coordinate of a flat-top hexagonal face.
struct FaceCoord {
  int q = 0;
  int r = 0;

  friend auto operator<=>(const FaceCoord&, const FaceCoord&) = default;
};

// Flat-top hexagonal tiling of a region. Face (0, 0) is centred at `origin`;
// face (q, r) is centred at origin + side * (3/2 q, sqrt3 (r + q/2)).
// The lattice enumerates every face that overlaps the region.
class HexLattice {
 public:
  HexLattice(double side, Region region, Point origin = {0.0, 0.0});

  // Side r_r: devices in non-adjacent faces are farther than r_r apart.
  static HexLattice subcritical(double r_r, Region region);
  // Side r_r / sqrt(13): any two points of adjacent faces are within r_r.
  static HexLattice supercritical(double r_r, Region region);

  double side() const noexcept { return side_; }
  double face_area() const noexcept;
  const Region& region() const noexcept { return region_; }
  Point origin() const noexcept { return origin_; }

  Point center(FaceCoord f) const noexcept;
  std::array<Point, 6> vertices(FaceCoord f) const noexcept;
  static std::array<FaceCoord, 6> neighbors(FaceCoord f) noexcept;
  bool contains(FaceCoord f, Point p) const noexcept;

  // Face containing p; ties on shared edges go to the smaller (q, r).
  // Throws ParameterError if p is outside the region.
  FaceCoord locate(Point p) const;
  // Same, without the region check.
  FaceCoord locate_unchecked(Point p) const noexcept;

  std::size_t face_count() const noexcept { return faces_.size(); }
  FaceCoord face(std::size_t idx) const { return faces_[idx]; }
  std::optional<std::size_t> index_of(FaceCoord f) const noexcept;
  // True when the whole hexagon lies inside the region.
  bool is_interior(std::size_t idx) const { return interior_[idx]; }
  // Area of face idx clipped to the region.
  double clipped_area(std::size_t idx) const;
  FaceCoord center_face() const { return locate(region_.center()); }

 private:
  double side_;
  Region region_;
  Point origin_;
  int q_min_ = 0;
  std::vector<int> r_min_;    // per q column
  std::vector<int> r_count_;  // per q column
  std::vector<std::size_t> column_start_;
  std::vector<FaceCoord> faces_;
  std::vector<bool> interior_;
};

enum class FaceMode { kSubcritical, kSupercritical };

// Per-face device and active-device counts. A face is active when it holds at
// least one active device; in sub-critical mode the reported flag is
// "inactive" (no device, or none active), in super-critical mode "active".
struct FaceClassification {
  FaceMode mode = FaceMode::kSupercritical;
  std::vector<std::uint32_t> devices;
  std::vector<std::uint32_t> active_devices;

  bool is_active(std::size_t idx) const { return active_devices[idx] > 0; }
  bool flag(std::size_t idx) const {
    return mode == FaceMode::kSubcritical ? !is_active(idx) : is_active(idx);
  }
};

FaceClassification classify_subcritical(const HexLattice& lattice, const PointSet& devices,
                                        const PointSet& stations, double r_r, double r_f);
FaceClassification classify_supercritical(const HexLattice& lattice, const PointSet& devices,
                                          const PointSet& stations, double r_f);

// Each face independently active with probability p_active.
FaceClassification random_classification(const HexLattice& lattice, FaceMode mode,
                                         double p_active, std::uint64_t seed);

// Super-critical mode: some face-adjacent cluster of active faces spans the
// region under `rule` (extents taken over face centres). Sub-critical mode:
// the active cluster holding the centre face reaches a boundary face, i.e. no
// inactive circuit encloses the centre; `rule` is unused.
bool face_percolation(const HexLattice& lattice, const FaceClassification& cls,
                      const SpanningRule& rule);

struct AdjacencyDistanceCheck {
  double sampled_max = 0.0;
  double expected = 0.0;  // sqrt(13) * side
  double relative_error = 0.0;
  bool ok = false;
};

// Largest distance between points of two adjacent faces, by dense sampling of
// both boundaries (vertices included) plus random interior points.
AdjacencyDistanceCheck adjacent_connectivity_check(double side, int samples_per_edge = 64);

// Right-hand sides of the face-probability inequalities.
double subcritical_inactive_bound(const NetworkParams& p);
double supercritical_active_bound(const NetworkParams& p);

struct FaceProbabilityEstimate {
  FaceMode mode = FaceMode::kSupercritical;
  std::size_t trials = 0;
  double empirical = 0.0;  // P(inactive) or P(active), per mode
  double std_error = 0.0;
  double bound = 0.0;
  double z = 0.0;  // (empirical - bound) / std_error
  // empirical >= bound - 3 sigma
  bool dominates() const { return empirical >= bound - 3.0 * std_error; }
};

// Estimates the face probability from i.i.d. single-face experiments: each
// trial samples devices and stations in a window holding one lattice face and
// everything within r_f of it, then classifies that face.
FaceProbabilityEstimate estimate_face_probability(FaceMode mode, const NetworkParams& p,
                                                  std::size_t trials, std::uint64_t seed);

}  // namespace wetperc
