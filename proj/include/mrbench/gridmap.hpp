// Copyright 2026 The mrbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mrbench/common.hpp"

namespace mrbench {

enum class CellState : std::uint8_t { Free, Occupied, Unknown };

struct CellIndex {
  int i = 0;  // column, along x
  int j = 0;  // row, along y

  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// Metric layout shared by occupancy grids and distance fields. Cell (0, 0)
/// has its lower-left corner at `origin`; rows grow along +y.
struct GridGeometry {
  int width = 0;
  int height = 0;
  double resolution = 0.0;
  Point2 origin;

  std::size_t size() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  bool contains(CellIndex c) const {
    return c.i >= 0 && c.j >= 0 && c.i < width && c.j < height;
  }
  bool contains(Point2 p) const {
    const double u = (p.x - origin.x) / resolution;
    const double v = (p.y - origin.y) / resolution;
    return u >= 0.0 && v >= 0.0 && u < width && v < height;
  }
  std::size_t index(CellIndex c) const {
    return static_cast<std::size_t>(c.j) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(c.i);
  }
  CellIndex cell_of(std::size_t idx) const {
    return {static_cast<int>(idx % static_cast<std::size_t>(width)),
            static_cast<int>(idx / static_cast<std::size_t>(width))};
  }
  /// Cell containing `p`; the result may lie outside the grid.
  CellIndex cell_at(Point2 p) const {
    return {static_cast<int>(std::floor((p.x - origin.x) / resolution)),
            static_cast<int>(std::floor((p.y - origin.y) / resolution))};
  }
  Point2 center(CellIndex c) const {
    return {origin.x + (c.i + 0.5) * resolution,
            origin.y + (c.j + 0.5) * resolution};
  }
  double size_x() const { return width * resolution; }
  double size_y() const { return height * resolution; }

  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;
};

class OccupancyGrid {
 public:
  OccupancyGrid() = default;

  OccupancyGrid(int width, int height, double resolution, Point2 origin,
                CellState fill = CellState::Free)
      : OccupancyGrid(GridGeometry{width, height, resolution, origin}, fill) {}

  explicit OccupancyGrid(GridGeometry geometry,
                         CellState fill = CellState::Free)
      : geometry_(geometry) {
    check_geometry();
    cells_.assign(geometry_.size(), fill);
  }

  OccupancyGrid(GridGeometry geometry, std::vector<CellState> cells)
      : geometry_(geometry), cells_(std::move(cells)) {
    check_geometry();
    if (cells_.size() != geometry_.size()) {
      throw ValidationError("occupancy grid: cell count does not match width x height");
    }
  }

  const GridGeometry& geometry() const { return geometry_; }
  int width() const { return geometry_.width; }
  int height() const { return geometry_.height; }
  double resolution() const { return geometry_.resolution; }
  Point2 origin() const { return geometry_.origin; }

  CellState at(CellIndex c) const { return cells_[geometry_.index(c)]; }
  CellState at(int i, int j) const { return at(CellIndex{i, j}); }
  void set(CellIndex c, CellState s) { cells_[geometry_.index(c)] = s; }
  void set(int i, int j, CellState s) { set(CellIndex{i, j}, s); }

  std::span<const CellState> cells() const { return cells_; }
  std::span<CellState> cells() { return cells_; }

  std::size_t count(CellState s) const {
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), s));
  }

  /// State at a world point; points outside the grid read as Unknown.
  CellState state_at(Point2 p) const {
    const CellIndex c = geometry_.cell_at(p);
    return geometry_.contains(c) ? at(c) : CellState::Unknown;
  }

  /// Fills every cell whose center lies in the axis-aligned box.
  void fill_box(Point2 lo, Point2 hi, CellState s) {
    for (int j = 0; j < height(); ++j) {
      for (int i = 0; i < width(); ++i) {
        const Point2 c = geometry_.center({i, j});
        if (c.x >= lo.x && c.x <= hi.x && c.y >= lo.y && c.y <= hi.y) set(i, j, s);
      }
    }
  }

  friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

 private:
  void check_geometry() const {
    if (geometry_.width < 1 || geometry_.height < 1) {
      throw ValidationError("occupancy grid: width and height must be >= 1");
    }
    if (!(geometry_.resolution > 0.0) || !std::isfinite(geometry_.resolution)) {
      throw ValidationError("occupancy grid: resolution must be > 0");
    }
  }

  GridGeometry geometry_;
  std::vector<CellState> cells_;
};

// ---------------------------------------------------------------------------
// Distance field

/// Whether Unknown cells count as obstacles when building a distance field.
enum class UnknownPolicy { AsFree, AsOccupied };

/// Euclidean distance in meters from every cell center to the nearest
/// obstacle cell center. Cells with no obstacle anywhere hold +infinity.
class DistanceField {
 public:
  DistanceField() = default;
  DistanceField(GridGeometry geometry, std::vector<double> values)
      : geometry_(geometry), values_(std::move(values)) {}

  const GridGeometry& geometry() const { return geometry_; }
  double value(CellIndex c) const { return values_[geometry_.index(c)]; }
  double value(int i, int j) const { return value(CellIndex{i, j}); }
  std::span<const double> values() const { return values_; }

 private:
  GridGeometry geometry_;
  std::vector<double> values_;
};

/// Sentinel written to files in place of +infinity.
inline constexpr double kInfiniteDistanceSentinel = 1e9;

namespace detail {

// 1D squared Euclidean distance transform over sampled parabolas (lower
// envelope). Sites with infinite cost are skipped, so a line without any
// finite site stays infinite. `v` and `z` are caller-owned scratch.
inline void squared_edt_1d(std::span<const double> f, std::span<double> d,
                           std::vector<int>& v, std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  v.resize(static_cast<std::size_t>(n));
  z.resize(static_cast<std::size_t>(n) + 1);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (!std::isfinite(f[q])) continue;
    if (k < 0) {
      k = 0;
      v[0] = q;
      z[0] = -kInf;
      z[1] = kInf;
      continue;
    }
    auto intersect = [&](int p) {
      return ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * (q - p));
    };
    // z[0] is -inf, so the pop loop always stops at k == 0.
    double s = intersect(v[k]);
    while (s <= z[k]) {
      --k;
      s = intersect(v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  if (k < 0) {
    std::fill(d.begin(), d.end(), kInf);
    return;
  }
  int idx = 0;
  for (int q = 0; q < n; ++q) {
    while (z[idx + 1] < q) ++idx;
    const double dq = q - v[idx];
    d[q] = dq * dq + f[v[idx]];
  }
}

}  // namespace detail

/// Exact Euclidean distance transform (separable lower-envelope method).
inline DistanceField distance_transform(
    const OccupancyGrid& grid, UnknownPolicy unknown = UnknownPolicy::AsFree) {
  const GridGeometry& g = grid.geometry();
  const int w = g.width;
  const int h = g.height;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> sq(g.size(), kInf);
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const CellState s = grid.cells()[idx];
    if (s == CellState::Occupied ||
        (s == CellState::Unknown && unknown == UnknownPolicy::AsOccupied)) {
      sq[idx] = 0.0;
    }
  }
  std::vector<int> v;
  std::vector<double> z;
  std::vector<double> line_in(static_cast<std::size_t>(std::max(w, h)));
  std::vector<double> line_out(line_in.size());
  // Columns.
  for (int i = 0; i < w; ++i) {
    for (int j = 0; j < h; ++j) line_in[j] = sq[g.index({i, j})];
    detail::squared_edt_1d(std::span(line_in).first(h), std::span(line_out).first(h), v, z);
    for (int j = 0; j < h; ++j) sq[g.index({i, j})] = line_out[j];
  }
  // Rows.
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) line_in[i] = sq[g.index({i, j})];
    detail::squared_edt_1d(std::span(line_in).first(w), std::span(line_out).first(w), v, z);
    for (int i = 0; i < w; ++i) sq[g.index({i, j})] = line_out[i];
  }
  for (double& d : sq) d = std::isfinite(d) ? std::sqrt(d) * g.resolution : kInf;
  return DistanceField(g, std::move(sq));
}

struct DistanceSample {
  double value = 0.0;
  Point2 gradient;  // d value / d(x, y), meters per meter
};

namespace detail {

// Separable interpolation taps along one axis for continuous index `u`
// (cell-center coordinates). Up to four taps.
struct AxisTaps {
  int first = 0;
  int count = 0;
  double w[4] = {0, 0, 0, 0};
  double dw[4] = {0, 0, 0, 0};  // d w / d u
};

inline AxisTaps axis_taps(double u, int n) {
  AxisTaps taps;
  const double fl = std::floor(u);
  const int i0 = static_cast<int>(fl);
  const double t = u - fl;
  if (i0 >= 1 && i0 + 2 <= n - 1) {
    // Catmull-Rom.
    const double t2 = t * t;
    const double t3 = t2 * t;
    taps.first = i0 - 1;
    taps.count = 4;
    taps.w[0] = 0.5 * (-t3 + 2.0 * t2 - t);
    taps.w[1] = 0.5 * (3.0 * t3 - 5.0 * t2 + 2.0);
    taps.w[2] = 0.5 * (-3.0 * t3 + 4.0 * t2 + t);
    taps.w[3] = 0.5 * (t3 - t2);
    taps.dw[0] = 0.5 * (-3.0 * t2 + 4.0 * t - 1.0);
    taps.dw[1] = 0.5 * (9.0 * t2 - 10.0 * t);
    taps.dw[2] = 0.5 * (-9.0 * t2 + 8.0 * t + 1.0);
    taps.dw[3] = 0.5 * (3.0 * t2 - 2.0 * t);
  } else if (i0 >= 0 && i0 + 1 <= n - 1) {
    taps.first = i0;
    taps.count = 2;
    taps.w[0] = 1.0 - t;
    taps.w[1] = t;
    taps.dw[0] = -1.0;
    taps.dw[1] = 1.0;
  } else {
    // Half cell at the outer edge: hold the edge value.
    taps.first = std::clamp(i0 < 0 ? 0 : i0, 0, n - 1);
    taps.count = 1;
    taps.w[0] = 1.0;
  }
  return taps;
}

}  // namespace detail

/// Interpolated clearance and its spatial gradient at a world point.
/// Catmull-Rom bicubic where the 4x4 stencil fits, linear per axis near the
/// border, and edge-hold in the outermost half cell. Clamped below at 0.
inline DistanceSample distance_sample(const DistanceField& field, Point2 p) {
  const GridGeometry& g = field.geometry();
  if (!g.contains(p)) {
    throw OutOfBoundsError("distance query outside the field");
  }
  const double u = (p.x - g.origin.x) / g.resolution - 0.5;
  const double v = (p.y - g.origin.y) / g.resolution - 0.5;
  const detail::AxisTaps tx = detail::axis_taps(u, g.width);
  const detail::AxisTaps ty = detail::axis_taps(v, g.height);
  double value = 0.0;
  double du = 0.0;
  double dv = 0.0;
  for (int b = 0; b < ty.count; ++b) {
    double row = 0.0;
    double row_du = 0.0;
    for (int a = 0; a < tx.count; ++a) {
      const double f = field.value(tx.first + a, ty.first + b);
      if (!std::isfinite(f)) {
        return {std::numeric_limits<double>::infinity(), {}};
      }
      row += tx.w[a] * f;
      row_du += tx.dw[a] * f;
    }
    value += ty.w[b] * row;
    du += ty.w[b] * row_du;
    dv += ty.dw[b] * row;
  }
  if (value <= 0.0) return {0.0, {}};
  return {value, {du / g.resolution, dv / g.resolution}};
}

inline double distance_at(const DistanceField& field, double x, double y) {
  return distance_sample(field, {x, y}).value;
}

// ---------------------------------------------------------------------------
// Lidar

struct ScanSpec {
  double angle_min = deg_to_rad(-135.0);
  double angle_max = deg_to_rad(135.0);
  double angle_increment = deg_to_rad(0.25);
  double range_min = 0.1;
  double range_max = 30.0;

  std::size_t beam_count() const {
    return static_cast<std::size_t>(
               std::floor((angle_max - angle_min) / angle_increment + 1e-9)) +
           1;
  }
  friend bool operator==(const ScanSpec&, const ScanSpec&) = default;
};

inline void validate(const ScanSpec& s) {
  if (!(s.angle_increment > 0.0) || !(s.angle_max >= s.angle_min)) {
    throw ValidationError("scan spec: angle_increment must be > 0 and angle_max >= angle_min");
  }
  if (!(s.range_min >= 0.0) || !(s.range_max > s.range_min)) {
    throw ValidationError("scan spec: need 0 <= range_min < range_max");
  }
}

struct LaserScan {
  double angle_min = 0.0;
  double angle_max = 0.0;
  double angle_increment = 0.0;
  double range_min = 0.0;
  double range_max = 0.0;
  std::vector<double> ranges;  // range_max marks "no return"

  double beam_angle(std::size_t k) const {
    return angle_min + static_cast<double>(k) * angle_increment;
  }
  bool is_hit(std::size_t k) const { return ranges[k] < range_max; }
};

/// Visits the cells crossed by the ray p + t * dir, t in [0, t_max], in
/// order. `dir` must be a unit vector and `p` inside the grid. The visitor
/// receives (cell, t_enter, t_exit) and returns false to stop. Traversal also
/// stops when the ray leaves the grid.
template <typename Visitor>
void traverse_ray(const GridGeometry& g, Point2 p, Point2 dir, double t_max,
                  Visitor&& visit) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  CellIndex c = g.cell_at(p);
  if (!g.contains(c)) return;
  const int step_i = dir.x > 0.0 ? 1 : (dir.x < 0.0 ? -1 : 0);
  const int step_j = dir.y > 0.0 ? 1 : (dir.y < 0.0 ? -1 : 0);
  const double lx = (p.x - g.origin.x) / g.resolution;
  const double ly = (p.y - g.origin.y) / g.resolution;
  double t_next_x = kInf;
  double t_next_y = kInf;
  double t_delta_x = kInf;
  double t_delta_y = kInf;
  if (step_i != 0) {
    t_delta_x = g.resolution / std::abs(dir.x);
    const double boundary = step_i > 0 ? (c.i + 1) - lx : lx - c.i;
    t_next_x = boundary * t_delta_x;
  }
  if (step_j != 0) {
    t_delta_y = g.resolution / std::abs(dir.y);
    const double boundary = step_j > 0 ? (c.j + 1) - ly : ly - c.j;
    t_next_y = boundary * t_delta_y;
  }
  double t_enter = 0.0;
  while (t_enter <= t_max) {
    const double t_exit = std::min(t_next_x, t_next_y);
    if (!visit(c, t_enter, t_exit)) return;
    if (t_next_x < t_next_y) {
      c.i += step_i;
      t_enter = t_next_x;
      t_next_x += t_delta_x;
    } else {
      c.j += step_j;
      t_enter = t_next_y;
      t_next_y += t_delta_y;
    }
    if (!g.contains(c)) return;
  }
}

/// Simulates a planar lidar against `world`. Only Occupied cells return;
/// Unknown is transparent.
inline LaserScan raycast(const OccupancyGrid& world, const Pose2& pose,
                         const ScanSpec& spec = {}) {
  validate(spec);
  const GridGeometry& g = world.geometry();
  if (!g.contains(pose.position())) {
    throw OutOfBoundsError("raycast: pose outside the grid");
  }
  LaserScan scan{spec.angle_min, spec.angle_max, spec.angle_increment,
                 spec.range_min, spec.range_max, {}};
  const std::size_t n = spec.beam_count();
  scan.ranges.assign(n, spec.range_max);
  for (std::size_t k = 0; k < n; ++k) {
    const double a = pose.theta + scan.beam_angle(k);
    const Point2 dir{std::cos(a), std::sin(a)};
    double hit = spec.range_max;
    traverse_ray(g, pose.position(), dir, spec.range_max,
                 [&](CellIndex c, double t_enter, double t_exit) {
                   if (world.at(c) == CellState::Occupied && t_exit > spec.range_min) {
                     hit = std::max(t_enter, spec.range_min);
                     return false;
                   }
                   return true;
                 });
    scan.ranges[k] = std::min(hit, spec.range_max);
  }
  return scan;
}

/// Folds a scan into a map: cells before each return become Free, the return
/// cell becomes Occupied, no-return beams carve free space to range_max.
/// Cells that are Occupied in `protect` are never demoted to Free; when no
/// layer is given the input map itself is the protected layer.
inline OccupancyGrid integrate_scan(const OccupancyGrid& known, const Pose2& pose,
                                    const LaserScan& scan,
                                    const OccupancyGrid* protect = nullptr) {
  const OccupancyGrid& guard = protect ? *protect : known;
  if (guard.geometry() != known.geometry()) {
    throw InputError("integrate_scan: protected layer geometry differs");
  }
  OccupancyGrid out = known;
  const GridGeometry& g = known.geometry();
  if (!g.contains(pose.position())) return out;
  std::vector<CellIndex> hits;
  for (std::size_t k = 0; k < scan.ranges.size(); ++k) {
    const double a = pose.theta + scan.beam_angle(k);
    const Point2 dir{std::cos(a), std::sin(a)};
    const double r = scan.ranges[k];
    const bool hit = scan.is_hit(k);
    std::optional<CellIndex> hit_cell;
    if (hit) {
      const CellIndex hc = g.cell_at(pose.position() + (r + 1e-9) * dir);
      if (g.contains(hc)) hit_cell = hc;
    }
    const double limit = hit ? r + g.resolution : r;
    traverse_ray(g, pose.position(), dir, limit,
                 [&](CellIndex c, double t_enter, double) {
                   if (hit_cell && c == *hit_cell) return false;
                   if (hit && t_enter > r) return false;
                   if (guard.at(c) != CellState::Occupied) out.set(c, CellState::Free);
                   return true;
                 });
    if (hit_cell) hits.push_back(*hit_cell);
  }
  for (const CellIndex& c : hits) out.set(c, CellState::Occupied);
  return out;
}

/// Axis-aligned rectangle in meters: lower-left corner plus extents.
struct Rect {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  bool contains(Point2 p) const {
    return p.x >= x && p.x <= x + w && p.y >= y && p.y <= y + h;
  }
  static Rect centered(Point2 c, double w, double h) {
    return {c.x - 0.5 * w, c.y - 0.5 * h, w, h};
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Marks every cell whose center lies inside `rect` as Unknown.
inline OccupancyGrid mask_unknown_region(const OccupancyGrid& grid, const Rect& rect) {
  if (!(rect.w > 0.0) || !(rect.h > 0.0)) {
    throw InputError("mask_unknown_region: rectangle must have positive extent");
  }
  const GridGeometry& g = grid.geometry();
  if (rect.x >= g.origin.x + g.size_x() || rect.x + rect.w <= g.origin.x ||
      rect.y >= g.origin.y + g.size_y() || rect.y + rect.h <= g.origin.y) {
    throw InputError("mask_unknown_region: rectangle does not intersect the grid");
  }
  OccupancyGrid out = grid;
  for (int j = 0; j < g.height; ++j) {
    for (int i = 0; i < g.width; ++i) {
      if (rect.contains(g.center({i, j}))) out.set(i, j, CellState::Unknown);
    }
  }
  return out;
}

/// Square window of side `side` meters around `center`, aligned to parent
/// cells and truncated at the parent's borders.
inline OccupancyGrid crop_local(const OccupancyGrid& grid, Point2 center, double side) {
  if (!(side > 0.0)) throw InputError("crop_local: side must be > 0");
  const GridGeometry& g = grid.geometry();
  if (!g.contains(center)) throw OutOfBoundsError("crop_local: center outside the grid");
  const int n = std::max(1, static_cast<int>(std::lround(side / g.resolution)));
  const double ci = (center.x - g.origin.x) / g.resolution;
  const double cj = (center.y - g.origin.y) / g.resolution;
  const int i0 = static_cast<int>(std::lround(ci - 0.5 * n));
  const int j0 = static_cast<int>(std::lround(cj - 0.5 * n));
  const int lo_i = std::max(0, i0);
  const int lo_j = std::max(0, j0);
  const int hi_i = std::min(g.width, i0 + n);
  const int hi_j = std::min(g.height, j0 + n);
  GridGeometry sub{hi_i - lo_i, hi_j - lo_j, g.resolution,
                   {g.origin.x + lo_i * g.resolution, g.origin.y + lo_j * g.resolution}};
  std::vector<CellState> cells;
  cells.reserve(sub.size());
  for (int j = lo_j; j < hi_j; ++j) {
    for (int i = lo_i; i < hi_i; ++i) cells.push_back(grid.at(i, j));
  }
  return OccupancyGrid(sub, std::move(cells));
}

}  // namespace mrbench
