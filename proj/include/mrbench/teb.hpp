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

// Timed elastic band. The band holds n poses s_0..s_{n-1} and n-1 time
// intervals dT_0..dT_{n-2}. Pose 0 is pinned to the robot. The free
// variables are laid out in blocks [dT_{k-1}, x_k, y_k, theta_k] for
// k = 1..n-1, which keeps the normal equations banded.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "mrbench/local_planner.hpp"

namespace mrbench {

struct TebConfig {
  int n_poses = 30;      // upper bound; the band is sized from the reference
  double dt_init = 0.3;
  double dt_ref = 0.3;   // s, band spacing is v_max * dt_ref
  int outer_iterations = 4;
  int inner_iterations = 10;
  double w_time = 1.0;
  double w_obstacle = 50.0;
  double w_velocity = 2.0;
  double w_acceleration = 1.0;
  double w_nonholonomic = 1000.0;
  double w_goal = 100.0;
  double d_min = 0.34;
  double dt_floor = 0.01;
  double rel_tol = 1e-3;  // relative objective decrease that ends an outer loop
  int feasibility_poses = 5;  // leading poses that must be collision-free
};

inline void validate(const TebConfig& c, double robot_radius = 0.17) {
  if (c.n_poses < 3) throw ValidationError("teb: n_poses must be >= 3");
  if (!(c.dt_init > 0.0)) throw ValidationError("teb: dt_init must be > 0");
  if (!(c.dt_ref > 0.0)) throw ValidationError("teb: dt_ref must be > 0");
  if (c.outer_iterations < 1 || c.inner_iterations < 1) {
    throw ValidationError("teb: iteration counts must be >= 1");
  }
  if (c.w_time < 0 || c.w_obstacle < 0 || c.w_velocity < 0 || c.w_acceleration < 0 ||
      c.w_nonholonomic < 0 || c.w_goal < 0) {
    throw ValidationError("teb: weights must be >= 0");
  }
  if (c.d_min < robot_radius) throw ValidationError("teb: d_min must be >= robot radius");
  if (!(c.dt_floor > 0.0) || c.dt_floor > c.dt_init) {
    throw ValidationError("teb: need 0 < dt_floor <= dt_init");
  }
  if (!(c.rel_tol >= 0.0)) throw ValidationError("teb: rel_tol must be >= 0");
  if (c.feasibility_poses < 1) throw ValidationError("teb: feasibility_poses must be >= 1");
}

struct TebBand {
  std::vector<Pose2> poses;  // n poses
  std::vector<double> dt;    // n - 1 intervals

  std::size_t size() const { return poses.size(); }
  double total_time() const {
    double t = 0.0;
    for (double d : dt) t += d;
    return t;
  }
  std::vector<TimedPose> timed() const {
    std::vector<TimedPose> out;
    double t = 0.0;
    for (std::size_t k = 0; k < poses.size(); ++k) {
      if (k > 0) t += dt[k - 1];
      out.push_back({poses[k].x, poses[k].y, poses[k].theta, t});
    }
    return out;
  }
};

/// Fixed inputs of one optimization problem.
struct TebProblem {
  const DistanceField* field = nullptr;
  KinematicLimits limits;
  TebConfig cfg;
  VelocityCommand start_velocity;
  Pose2 goal;
  bool stop_at_goal = false;  // final goal: adds deceleration-to-rest terms

  int num_vars(const TebBand& b) const { return 4 * (static_cast<int>(b.size()) - 1); }
};

namespace detail {

inline int var_dt(int k) { return 4 * k; }          // dT_k
inline int var_x(int k) { return 4 * (k - 1) + 1; }  // pose k >= 1
inline int var_y(int k) { return 4 * (k - 1) + 2; }
inline int var_th(int k) { return 4 * (k - 1) + 3; }

// Sparse residual row: value and up to 12 Jacobian entries.
struct Row {
  double r = 0.0;
  int n = 0;
  std::array<int, 12> idx{};
  std::array<double, 12> val{};

  void add(int i, double v) {
    if (i < 0) return;  // pinned variable
    for (int e = 0; e < n; ++e) {
      if (idx[e] == i) {
        val[e] += v;
        return;
      }
    }
    idx[n] = i;
    val[n] = v;
    ++n;
  }
};

// Linear and angular segment velocity with derivatives. Entries refer to
// x_k, y_k, th_k, x_{k+1}, y_{k+1}, th_{k+1}, dT_k.
struct SegmentRate {
  double v = 0.0;
  double w = 0.0;
  std::array<int, 7> idx{};
  std::array<double, 7> dv{};
  std::array<double, 7> dw{};
};

// `cth`/`sth`, when given, hold the per-pose heading cosines and sines.
inline SegmentRate segment_rate(const TebBand& b, int k, const double* cth = nullptr,
                                const double* sth = nullptr) {
  const Pose2& a = b.poses[k];
  const Pose2& c = b.poses[k + 1];
  const double tau = b.dt[k];
  const double dx = c.x - a.x;
  const double dy = c.y - a.y;
  const double dth = wrap_angle(c.theta - a.theta);
  const double phi = a.theta + 0.5 * dth;
  double cp, sp;
  const double hx = cth ? cth[k] + cth[k + 1] : 0.0;
  const double hy = sth ? sth[k] + sth[k + 1] : 0.0;
  const double hn = std::hypot(hx, hy);
  if (hn > 1e-6) {
    cp = hx / hn;
    sp = hy / hn;
  } else {
    cp = std::cos(phi);
    sp = std::sin(phi);
  }
  const double proj = dx * cp + dy * sp;
  const double dproj_dth = 0.5 * (-dx * sp + dy * cp);
  SegmentRate s;
  s.v = proj / tau;
  s.w = dth / tau;
  const bool pinned = (k == 0);
  s.idx = {pinned ? -1 : var_x(k), pinned ? -1 : var_y(k), pinned ? -1 : var_th(k),
           var_x(k + 1),           var_y(k + 1),           var_th(k + 1), var_dt(k)};
  s.dv = {-cp / tau, -sp / tau, dproj_dth / tau, cp / tau, sp / tau, dproj_dth / tau,
          -proj / (tau * tau)};
  s.dw = {0.0, 0.0, -1.0 / tau, 0.0, 0.0, 1.0 / tau, -dth / (tau * tau)};
  return s;
}

// Two-sided hinge: distance of q outside [lo, hi], and its slope.
inline double hinge(double q, double lo, double hi, double* slope) {
  if (q > hi) {
    *slope = 1.0;
    return q - hi;
  }
  if (q < lo) {
    *slope = -1.0;
    return lo - q;
  }
  *slope = 0.0;
  return 0.0;
}

}  // namespace detail

/// Residual kinds, in evaluation order.
enum class TebTerm { Time, Obstacle, Velocity, AngularVelocity, Acceleration, AngularAcceleration,
                     Nonholonomic, Goal };

namespace detail {

template <bool kJacobian, typename Emit>
void residuals(const TebProblem& p, const TebBand& b, Emit&& emit) {
  const int n = static_cast<int>(b.size());
  const TebConfig& c = p.cfg;
  const KinematicLimits& l = p.limits;
  const double st = std::sqrt(c.w_time);
  const double so = std::sqrt(c.w_obstacle);
  const double sv = std::sqrt(c.w_velocity);
  const double sa = std::sqrt(c.w_acceleration);
  const double snh = std::sqrt(c.w_nonholonomic);
  const double sg = std::sqrt(c.w_goal);
  auto add = [](Row& r, int i, double v) {
    if constexpr (kJacobian) r.add(i, v);
  };
  // Per-pose heading cosines and sines, shared by the segment terms.
  std::vector<double> cth(n), sth(n);
  for (int k = 0; k < n; ++k) {
    cth[k] = std::cos(b.poses[k].theta);
    sth[k] = std::sin(b.poses[k].theta);
  }

  for (int k = 0; k + 1 < n; ++k) {
    Row r;
    r.r = st * b.dt[k];
    add(r, var_dt(k), st);
    emit(TebTerm::Time, r);
  }
  for (int k = 1; k < n; ++k) {
    Row r;
    const Point2 q = b.poses[k].position();
    if (p.field->geometry().contains(q)) {
      const DistanceSample ds = distance_sample(*p.field, q);
      if (ds.value < c.d_min) {
        r.r = so * (c.d_min - ds.value);
        add(r, var_x(k), -so * ds.gradient.x);
        add(r, var_y(k), -so * ds.gradient.y);
      }
    }
    emit(TebTerm::Obstacle, r);
  }
  std::vector<SegmentRate> rates;
  rates.reserve(n - 1);
  for (int k = 0; k + 1 < n; ++k) rates.push_back(segment_rate(b, k, cth.data(), sth.data()));
  for (int k = 0; k + 1 < n; ++k) {
    const SegmentRate& s = rates[k];
    double slope = 0.0;
    Row rv;
    rv.r = sv * hinge(s.v, l.v_min, l.v_max, &slope);
    if (slope != 0.0) {
      for (int e = 0; e < 7; ++e) add(rv, s.idx[e], sv * slope * s.dv[e]);
    }
    emit(TebTerm::Velocity, rv);
    Row rw;
    rw.r = sv * hinge(s.w, l.omega_min, l.omega_max, &slope);
    if (slope != 0.0) {
      for (int e = 0; e < 7; ++e) add(rw, s.idx[e], sv * slope * s.dw[e]);
    }
    emit(TebTerm::AngularVelocity, rw);
  }
  // Accelerations: from the robot's current velocity into segment 0,
  // between consecutive segments, and (final goal only) down to rest.
  auto accel = [&](bool angular, int k_from, int k_to) {
    // k_from = -1 means the robot's velocity, k_to = -1 means rest.
    Row r;
    const double lo = angular ? l.alpha_min : l.acc_min;
    const double hi = angular ? l.alpha_max : l.acc_max;
    double q = 0.0;
    double denom = 0.0;
    if (k_from < 0) {
      const SegmentRate& s = rates[k_to];
      const double u0 = angular ? p.start_velocity.omega : p.start_velocity.v;
      denom = b.dt[k_to];
      q = ((angular ? s.w : s.v) - u0) / denom;
      double slope = 0.0;
      r.r = sa * hinge(q, lo, hi, &slope);
      if (slope != 0.0) {
        const auto& d = angular ? s.dw : s.dv;
        for (int e = 0; e < 7; ++e) add(r, s.idx[e], sa * slope * d[e] / denom);
        add(r, var_dt(k_to), -sa * slope * q / denom);
      }
    } else if (k_to < 0) {
      const SegmentRate& s = rates[k_from];
      denom = b.dt[k_from];
      q = -(angular ? s.w : s.v) / denom;
      double slope = 0.0;
      r.r = sa * hinge(q, lo, hi, &slope);
      if (slope != 0.0) {
        const auto& d = angular ? s.dw : s.dv;
        for (int e = 0; e < 7; ++e) add(r, s.idx[e], -sa * slope * d[e] / denom);
        add(r, var_dt(k_from), -sa * slope * q / denom);
      }
    } else {
      const SegmentRate& s0 = rates[k_from];
      const SegmentRate& s1 = rates[k_to];
      denom = 0.5 * (b.dt[k_from] + b.dt[k_to]);
      const double u0 = angular ? s0.w : s0.v;
      const double u1 = angular ? s1.w : s1.v;
      q = (u1 - u0) / denom;
      double slope = 0.0;
      r.r = sa * hinge(q, lo, hi, &slope);
      if (slope != 0.0) {
        const auto& d0 = angular ? s0.dw : s0.dv;
        const auto& d1 = angular ? s1.dw : s1.dv;
        for (int e = 0; e < 7; ++e) {
          add(r, s0.idx[e], -sa * slope * d0[e] / denom);
          add(r, s1.idx[e], sa * slope * d1[e] / denom);
        }
        add(r, var_dt(k_from), -sa * slope * q * 0.5 / denom);
        add(r, var_dt(k_to), -sa * slope * q * 0.5 / denom);
      }
    }
    emit(angular ? TebTerm::AngularAcceleration : TebTerm::Acceleration, r);
  };
  for (int angular = 0; angular < 2; ++angular) {
    accel(angular, -1, 0);
    for (int k = 0; k + 2 < n; ++k) accel(angular, k, k + 1);
    if (p.stop_at_goal) accel(angular, n - 2, -1);
  }
  for (int k = 0; k + 1 < n; ++k) {
    const Pose2& a = b.poses[k];
    const Pose2& q = b.poses[k + 1];
    const double ca = cth[k], sa_ = sth[k];
    const double cq = cth[k + 1], sq = sth[k + 1];
    const double dx = q.x - a.x;
    const double dy = q.y - a.y;
    Row r;
    r.r = snh * ((ca + cq) * dy - (sa_ + sq) * dx);
    const bool pinned = (k == 0);
    if (!pinned) {
      add(r, var_x(k), snh * (sa_ + sq));
      add(r, var_y(k), -snh * (ca + cq));
      add(r, var_th(k), snh * (-sa_ * dy - ca * dx));
    }
    add(r, var_x(k + 1), -snh * (sa_ + sq));
    add(r, var_y(k + 1), snh * (ca + cq));
    add(r, var_th(k + 1), snh * (-sq * dy - cq * dx));
    emit(TebTerm::Nonholonomic, r);
  }
  const Pose2& e = b.poses[n - 1];
  Row gx, gy, gth;
  gx.r = sg * (e.x - p.goal.x);
  add(gx, var_x(n - 1), sg);
  gy.r = sg * (e.y - p.goal.y);
  add(gy, var_y(n - 1), sg);
  gth.r = sg * wrap_angle(e.theta - p.goal.theta);
  add(gth, var_th(n - 1), sg);
  emit(TebTerm::Goal, gx);
  emit(TebTerm::Goal, gy);
  emit(TebTerm::Goal, gth);
}

}  // namespace detail

/// Evaluates every residual of the band in a fixed order and hands each to
/// `emit(term, row)`. Inactive hinge residuals are emitted with value 0 and
/// no Jacobian entries. Residuals include the square-root weights, so the
/// objective is the plain sum of squares.
template <typename Emit>
void teb_residuals(const TebProblem& p, const TebBand& b, Emit&& emit) {
  detail::residuals<true>(p, b, std::forward<Emit>(emit));
}

inline double teb_objective(const TebProblem& p, const TebBand& b) {
  double f = 0.0;
  detail::residuals<false>(p, b, [&](TebTerm, const detail::Row& r) { f += r.r * r.r; });
  return f;
}

/// Free variables of a band as a flat vector, and back.
inline std::vector<double> teb_pack(const TebBand& b) {
  const int n = static_cast<int>(b.size());
  std::vector<double> x(4 * (n - 1));
  for (int k = 1; k < n; ++k) {
    x[detail::var_dt(k - 1)] = b.dt[k - 1];
    x[detail::var_x(k)] = b.poses[k].x;
    x[detail::var_y(k)] = b.poses[k].y;
    x[detail::var_th(k)] = b.poses[k].theta;
  }
  return x;
}

inline TebBand teb_unpack(const TebBand& like, const std::vector<double>& x) {
  TebBand b = like;
  const int n = static_cast<int>(b.size());
  for (int k = 1; k < n; ++k) {
    b.dt[k - 1] = x[detail::var_dt(k - 1)];
    b.poses[k] = {x[detail::var_x(k)], x[detail::var_y(k)], x[detail::var_th(k)]};
  }
  return b;
}

namespace detail {

inline constexpr int kBandwidth = 11;

// Symmetric banded matrix, lower band stored row-wise: row i holds
// columns i - kBandwidth .. i contiguously, so row(i)[j] is entry (i, j).
struct BandMatrix {
  int m = 0;
  std::vector<double> a;

  explicit BandMatrix(int size) : m(size), a(static_cast<std::size_t>(size) * (kBandwidth + 1), 0.0) {}
  double* row(int i) { return a.data() + static_cast<std::ptrdiff_t>(i) * kBandwidth; }
  const double* row(int i) const { return a.data() + static_cast<std::ptrdiff_t>(i) * kBandwidth; }
  double& at(int i, int j) { return row(i)[j]; }
  double at(int i, int j) const { return row(i)[j]; }
};

// In-place banded Cholesky; returns false when the matrix is not positive
// definite.
inline bool band_cholesky(BandMatrix& h) {
  for (int j = 0; j < h.m; ++j) {
    double* rj = h.row(j);
    const int k0 = std::max(0, j - kBandwidth);
    double d = rj[j];
    for (int k = k0; k < j; ++k) d -= rj[k] * rj[k];
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    const double ljj = std::sqrt(d);
    rj[j] = ljj;
    for (int i = j + 1; i <= std::min(h.m - 1, j + kBandwidth); ++i) {
      double* ri = h.row(i);
      double s = ri[j];
      for (int k = std::max(0, i - kBandwidth); k < j; ++k) s -= ri[k] * rj[k];
      ri[j] = s / ljj;
    }
  }
  return true;
}

inline void band_solve(const BandMatrix& l, std::vector<double>& x) {
  for (int i = 0; i < l.m; ++i) {
    const double* ri = l.row(i);
    double s = x[i];
    for (int k = std::max(0, i - kBandwidth); k < i; ++k) s -= ri[k] * x[k];
    x[i] = s / ri[i];
  }
  for (int i = l.m - 1; i >= 0; --i) {
    double s = x[i];
    for (int k = i + 1; k <= std::min(l.m - 1, i + kBandwidth); ++k) s -= l.at(k, i) * x[k];
    x[i] = s / l.at(i, i);
  }
}

}  // namespace detail

struct TebResult {
  TebBand initial;
  TebBand band;
  std::vector<double> objective_trace;  // initial value, then each accepted step
  long linear_solves = 0;
  bool finite = true;
};

/// Damped Gauss-Newton (Levenberg) over the band. A step is accepted only
/// if it does not increase the objective; otherwise damping grows and the
/// solve is retried, each retry consuming an inner iteration.
inline TebResult teb_optimize(const TebProblem& p, const TebBand& initial) {
  TebResult res;
  res.initial = initial;
  res.band = initial;
  const TebConfig& c = p.cfg;
  const int m = p.num_vars(initial);
  double f = teb_objective(p, res.band);
  res.objective_trace.push_back(f);
  if (!std::isfinite(f)) {
    res.finite = false;
    return res;
  }
  std::vector<double> grad(m), step(m);
  detail::BandMatrix h(m), l(m);
  for (int outer = 0; outer < c.outer_iterations; ++outer) {
    double lambda = 1e-3;
    int accepted = 0;
    bool stalled = false;
    for (int inner = 0; inner < c.inner_iterations; ++inner) {
      std::fill(grad.begin(), grad.end(), 0.0);
      std::fill(h.a.begin(), h.a.end(), 0.0);
      teb_residuals(p, res.band, [&](TebTerm, const detail::Row& r) {
        for (int e = 0; e < r.n; ++e) {
          const int i = r.idx[e];
          const double ve = r.val[e];
          grad[i] += ve * r.r;
          h.at(i, i) += ve * ve;
          for (int g = e + 1; g < r.n; ++g) {
            const int j = r.idx[g];
            h.at(std::max(i, j), std::min(i, j)) += ve * r.val[g];
          }
        }
      });
      bool done = false;
      while (inner < c.inner_iterations) {
        std::copy(h.a.begin(), h.a.end(), l.a.begin());
        for (int i = 0; i < m; ++i) l.at(i, i) += lambda;
        for (int i = 0; i < m; ++i) step[i] = -grad[i];
        ++res.linear_solves;
        if (!detail::band_cholesky(l)) {
          lambda *= 10.0;
          ++inner;
          continue;
        }
        detail::band_solve(l, step);
        std::vector<double> x = teb_pack(res.band);
        double max_step = 0.0;
        for (int i = 0; i < m; ++i) {
          x[i] += step[i];
          max_step = std::max(max_step, std::abs(step[i]));
        }
        TebBand trial = teb_unpack(res.band, x);
        for (double& d : trial.dt) d = std::max(d, c.dt_floor);
        for (std::size_t k = 1; k < trial.size(); ++k) {
          trial.poses[k].theta = wrap_angle(trial.poses[k].theta);
        }
        const double ft = teb_objective(p, trial);
        if (std::isfinite(ft) && ft <= f) {
          const double decrease = f - ft;
          res.band = std::move(trial);
          f = ft;
          res.objective_trace.push_back(f);
          ++accepted;
          lambda = std::max(lambda * 0.2, 1e-9);
          if (decrease <= c.rel_tol * std::max(1.0, f) || max_step < 1e-6) done = true;
          break;
        }
        lambda *= 10.0;
        if (lambda > 1e10) {
          done = true;
          stalled = true;
          break;
        }
        ++inner;
      }
      if (done) break;
    }
    if (stalled || accepted == 0) break;
  }
  res.finite = std::isfinite(f);
  return res;
}

/// Poses of a band covering `length` meters: one per v_max * dt_ref of
/// arc, within [3, n_poses].
inline int teb_band_size(double length, const KinematicLimits& l, const TebConfig& cfg) {
  const double spacing = l.v_max * cfg.dt_ref;
  const double n = std::ceil(length / spacing - 1e-9) + 1.0;
  return static_cast<int>(std::clamp(n, 3.0, static_cast<double>(cfg.n_poses)));
}

/// Initial band: the robot pose followed by arc-length-uniform samples of
/// the reference, headings along the chords, uniform time intervals.
inline TebBand teb_initial_band(const LocalPlanRequest& req, const TebConfig& cfg) {
  // Start from the robot's projection onto the reference, so vertices
  // already passed do not pull the band backwards.
  const Point2 r = req.robot.position();
  const auto& ref = req.reference.points;
  std::size_t next = ref.size() - 1;
  double best = distance(r, ref.back());
  for (std::size_t k = 0; k + 1 < ref.size(); ++k) {
    const Point2 e = ref[k + 1] - ref[k];
    const double len2 = e.x * e.x + e.y * e.y;
    const double u = len2 > 0.0 ? std::clamp(((r.x - ref[k].x) * e.x + (r.y - ref[k].y) * e.y) / len2, 0.0, 1.0) : 0.0;
    const double dist = distance(r, ref[k] + u * e);
    if (dist < best) {
      best = dist;
      next = k + 1;
    }
  }
  std::vector<Point2> pts;
  pts.push_back(r);
  for (std::size_t k = next; k < ref.size(); ++k) {
    if (distance(ref[k], pts.back()) > 1e-9) pts.push_back(ref[k]);
  }
  std::vector<double> cum(pts.size(), 0.0);
  for (std::size_t k = 1; k < pts.size(); ++k) cum[k] = cum[k - 1] + distance(pts[k - 1], pts[k]);
  const double total = cum.back();
  const int n = teb_band_size(total, req.limits, cfg);
  const bool final_goal = req.goal_in_reference();
  TebBand b;
  b.poses.resize(n);
  b.dt.assign(n - 1, cfg.dt_init);
  std::size_t seg = 1;
  for (int k = 0; k < n; ++k) {
    const double s = total * static_cast<double>(k) / (n - 1);
    while (seg + 1 < pts.size() && cum[seg] < s) ++seg;
    Point2 q = pts.back();
    if (pts.size() >= 2 && k < n - 1) {
      const double len = cum[seg] - cum[seg - 1];
      const double t = len > 0.0 ? std::clamp((s - cum[seg - 1]) / len, 0.0, 1.0) : 1.0;
      q = pts[seg - 1] + t * (pts[seg] - pts[seg - 1]);
    }
    b.poses[k] = {q.x, q.y, 0.0};
  }
  b.poses[0] = req.robot.pose();
  for (int k = 1; k < n; ++k) {
    if (k == n - 1) {
      if (final_goal) {
        b.poses[k].theta = req.goal.theta;
      } else {
        const Point2 d = b.poses[k].position() - b.poses[k - 1].position();
        b.poses[k].theta = norm(d) > 1e-9 ? std::atan2(d.y, d.x) : b.poses[k - 1].theta;
      }
    } else {
      const Point2 d = b.poses[k + 1].position() - b.poses[k].position();
      b.poses[k].theta = norm(d) > 1e-9 ? std::atan2(d.y, d.x) : b.poses[k - 1].theta;
    }
  }
  return b;
}

inline TebProblem teb_problem(const LocalPlanRequest& req, const TebConfig& cfg,
                              const TebBand& initial) {
  TebProblem p;
  p.field = &req.local_field;
  p.limits = req.limits;
  p.cfg = cfg;
  p.start_velocity = req.robot.velocity();
  p.stop_at_goal = req.goal_in_reference();
  p.goal = initial.poses.back();
  return p;
}

/// Full optimization for a request, exposed for inspection.
inline TebResult teb_solve(const LocalPlanRequest& req, const TebConfig& cfg = {}) {
  const TebBand init = teb_initial_band(req, cfg);
  return teb_optimize(teb_problem(req, cfg, init), init);
}

/// First command of an optimized band: signed chord speed and wrapped
/// heading rate over the first interval.
inline VelocityCommand teb_first_command(const TebBand& b) {
  const Pose2& a = b.poses[0];
  const Pose2& q = b.poses[1];
  const Point2 d = q.position() - a.position();
  const double proj = d.x * std::cos(a.theta) + d.y * std::sin(a.theta);
  const double chord = norm(d);
  return {(proj >= 0.0 ? chord : -chord) / b.dt[0], wrap_angle(q.theta - a.theta) / b.dt[0]};
}

inline PlannerOutput teb_plan(const LocalPlanRequest& req, const TebConfig& cfg = {}) {
  if (req.reference.empty()) throw InputError("teb_plan: empty reference path");
  if (auto aligned = goal_alignment_output(req)) return *aligned;
  const TebResult res = teb_solve(req, cfg);
  const long work = std::max(1L, res.linear_solves);
  bool ok = res.finite;
  const int check = std::min<int>(cfg.feasibility_poses, static_cast<int>(res.band.size()) - 1);
  for (int k = 0; ok && k <= check; ++k) {
    if (collision_check(res.band.poses[k].position(), req.local_field, req.limits.radius)) ok = false;
  }
  if (!ok) return recovery_output(req, 1.0, work);
  PlannerOutput out;
  out.iterations = work;
  out.trajectory = res.band.timed();
  out.cmd = clamp_command(teb_first_command(res.band), req.robot.velocity(), req.limits,
                          req.dt_control);
  return out;
}

/// Config in ".cfg" syntax.
inline std::string to_string(const TebConfig& c) {
  std::ostringstream os;
  auto n = [](double v) { return format_exact(v); };
  os << "planner teb\n"
     << "n_poses " << c.n_poses << "\ndt_init " << n(c.dt_init) << "\ndt_ref " << n(c.dt_ref)
     << "\nouter_iterations "
     << c.outer_iterations << "\ninner_iterations " << c.inner_iterations << "\nw_time "
     << n(c.w_time) << "\nw_obstacle " << n(c.w_obstacle) << "\nw_velocity " << n(c.w_velocity)
     << "\nw_acceleration " << n(c.w_acceleration) << "\nw_nonholonomic " << n(c.w_nonholonomic)
     << "\nw_goal " << n(c.w_goal) << "\nd_min " << n(c.d_min) << "\ndt_floor " << n(c.dt_floor)
     << "\nrel_tol " << n(c.rel_tol) << "\nfeasibility_poses " << c.feasibility_poses << '\n';
  return os.str();
}

class TebPlanner final : public LocalPlanner {
 public:
  explicit TebPlanner(TebConfig cfg = {}, double robot_radius = 0.17) : cfg_(cfg) {
    validate(cfg_, robot_radius);
  }
  std::string name() const override { return "teb"; }
  std::string describe() const override { return to_string(cfg_); }
  PlannerOutput plan(const LocalPlanRequest& req) const override { return teb_plan(req, cfg_); }
  const TebConfig& config() const { return cfg_; }

 private:
  TebConfig cfg_;
};

}  // namespace mrbench
