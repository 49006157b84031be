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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "mrbench/gridmap.hpp"
#include "oracles.hpp"

namespace mrbench {
namespace {

TEST(DistanceTransform, SingleObstacle) {
  OccupancyGrid g(5, 5, 1.0, {0, 0});
  g.set(2, 2, CellState::Occupied);
  const DistanceField f = distance_transform(g);
  EXPECT_EQ(f.value(2, 2), 0.0);
  EXPECT_DOUBLE_EQ(f.value(3, 2), 1.0);
  EXPECT_NEAR(f.value(4, 4), std::sqrt(8.0), 1e-12);
}

TEST(DistanceTransform, NoObstacleIsInfinite) {
  const OccupancyGrid g(3, 3, 0.1, {0, 0});
  const DistanceField f = distance_transform(g);
  for (double v : f.values()) EXPECT_TRUE(std::isinf(v));
}

TEST(DistanceTransform, MatchesBruteForce) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int w = 1 + static_cast<int>(rng() % 64);
    const int h = 1 + static_cast<int>(rng() % 64);
    const double density = oracle::uniform(rng, 0.0, 0.3);
    const OccupancyGrid g = oracle::random_grid(rng, w, h, 0.1, density);
    const DistanceField f = distance_transform(g);
    const std::vector<double> ref = oracle::brute_force_edt(g, UnknownPolicy::AsFree);
    for (std::size_t k = 0; k < ref.size(); ++k) {
      if (std::isinf(ref[k])) {
        EXPECT_TRUE(std::isinf(f.values()[k]));
      } else {
        ASSERT_NEAR(f.values()[k], ref[k], 1e-9) << "w=" << w << " h=" << h << " k=" << k;
      }
    }
  }
}

TEST(DistanceTransform, UnknownPolicy) {
  OccupancyGrid g(6, 1, 1.0, {0, 0});
  g.set(0, 0, CellState::Unknown);
  g.set(5, 0, CellState::Occupied);
  const DistanceField free = distance_transform(g, UnknownPolicy::AsFree);
  const DistanceField occ = distance_transform(g, UnknownPolicy::AsOccupied);
  EXPECT_DOUBLE_EQ(free.value(1, 0), 4.0);
  EXPECT_DOUBLE_EQ(occ.value(1, 0), 1.0);
}

TEST(DistanceTransform, LipschitzUnderGridMetric) {
  std::mt19937_64 rng(11);
  const OccupancyGrid g = oracle::random_grid(rng, 40, 30, 0.1, 0.05);
  const DistanceField f = distance_transform(g);
  for (int j = 0; j < 30; ++j) {
    for (int i = 0; i + 1 < 40; ++i) {
      EXPECT_LE(std::abs(f.value(i, j) - f.value(i + 1, j)), 0.1 + 1e-12);
      if (j + 1 < 30) {
        EXPECT_LE(std::abs(f.value(i, j) - f.value(i, j + 1)), 0.1 + 1e-12);
      }
    }
  }
}

TEST(DistanceAt, ReproducesNodes) {
  std::mt19937_64 rng(3);
  const OccupancyGrid g = oracle::random_grid(rng, 30, 20, 0.1, 0.1);
  const DistanceField f = distance_transform(g);
  for (int j = 0; j < 20; ++j) {
    for (int i = 0; i < 30; ++i) {
      const Point2 c = g.geometry().center({i, j});
      if (std::isinf(f.value(i, j))) continue;
      EXPECT_NEAR(distance_at(f, c.x, c.y), f.value(i, j), 1e-12);
    }
  }
}

TEST(DistanceAt, LinearRampIsExact) {
  const GridGeometry geo{12, 9, 0.1, {0, 0}};
  std::vector<double> values(geo.size());
  for (int j = 0; j < geo.height; ++j) {
    for (int i = 0; i < geo.width; ++i) values[geo.index({i, j})] = geo.center({i, j}).x;
  }
  const DistanceField f(geo, values);
  EXPECT_NEAR(distance_at(f, 0.15, 0.45), 0.15, 1e-12);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 1000; ++k) {
    const double x = oracle::uniform(rng, 0.05, 1.15);
    const double y = oracle::uniform(rng, 0.0, 0.9 - 1e-9);
    EXPECT_NEAR(distance_at(f, x, y), x, 1e-12);
  }
}

TEST(DistanceAt, OutsideThrows) {
  const OccupancyGrid g(10, 10, 0.1, {0, 0});
  const DistanceField f = distance_transform(g);
  EXPECT_THROW(distance_at(f, -0.1, -0.1), OutOfBoundsError);
  EXPECT_THROW(distance_at(f, 1.0, 0.5), OutOfBoundsError);
}

TEST(DistanceAt, Continuous) {
  std::mt19937_64 rng(9);
  const OccupancyGrid g = oracle::random_grid(rng, 25, 25, 0.1, 0.1);
  g.geometry();
  const DistanceField f = distance_transform(g);
  for (int k = 0; k < 2000; ++k) {
    const double x = oracle::uniform(rng, 0.0, 2.5 - 2e-6);
    const double y = oracle::uniform(rng, 0.0, 2.5 - 2e-6);
    const double a = distance_at(f, x, y);
    const double b = distance_at(f, x + 1e-6, y + 1e-6);
    if (std::isinf(a)) continue;
    EXPECT_LE(std::abs(a - b), 1e-3);
  }
}

TEST(DistanceSample, GradientMatchesFiniteDifference) {
  std::mt19937_64 rng(21);
  OccupancyGrid g(30, 30, 0.1, {0, 0});
  g.set(15, 15, CellState::Occupied);
  g.set(5, 22, CellState::Occupied);
  const DistanceField f = distance_transform(g);
  for (int k = 0; k < 500; ++k) {
    const Point2 p{oracle::uniform(rng, 0.3, 2.7), oracle::uniform(rng, 0.3, 2.7)};
    const double h = 1e-6;
    const DistanceSample s = distance_sample(f, p);
    if (s.value <= 0.0) continue;
    const double gx = (distance_at(f, p.x + h, p.y) - distance_at(f, p.x - h, p.y)) / (2 * h);
    const double gy = (distance_at(f, p.x, p.y + h) - distance_at(f, p.x, p.y - h)) / (2 * h);
    EXPECT_NEAR(s.gradient.x, gx, 1e-5);
    EXPECT_NEAR(s.gradient.y, gy, 1e-5);
  }
}

TEST(Raycast, PerpendicularWall) {
  OccupancyGrid g(50, 50, 0.1, {0, 0});
  for (int j = 0; j < 50; ++j) g.set(35, j, CellState::Occupied);
  // Wall face at x = 3.5, robot 1.0 m away.
  const LaserScan s = raycast(g, {2.5, 2.55, 0.0});
  const std::size_t center = s.ranges.size() / 2;
  EXPECT_NEAR(s.beam_angle(center), 0.0, 1e-12);
  EXPECT_NEAR(s.ranges[center], 1.0, 0.05);
}

TEST(Raycast, EmptyWorldAllMaxRange) {
  const OccupancyGrid g(100, 100, 0.1, {0, 0});
  const LaserScan s = raycast(g, {5.0, 5.0, 0.3});
  EXPECT_EQ(s.ranges.size(), 1081u);
  for (double r : s.ranges) EXPECT_EQ(r, 30.0);
}

TEST(Raycast, UnknownIsTransparent) {
  OccupancyGrid g(40, 10, 0.1, {0, 0});
  for (int j = 0; j < 10; ++j) g.set(20, j, CellState::Unknown);
  for (int j = 0; j < 10; ++j) g.set(30, j, CellState::Occupied);
  const LaserScan s = raycast(g, {0.55, 0.55, 0.0}, {0.0, 0.0, 1.0, 0.1, 30.0});
  ASSERT_EQ(s.ranges.size(), 1u);
  EXPECT_NEAR(s.ranges[0], 3.0 - 0.55, 1e-9);
}

TEST(Raycast, MatchesExactSlabOracle) {
  std::mt19937_64 rng(17);
  const OccupancyGrid g = oracle::random_grid(rng, 40, 40, 0.25, 0.08);
  const ScanSpec spec{-2.0, 2.0, 0.05, 0.1, 30.0};
  int poses = 0;
  while (poses < 100) {
    const Pose2 p{oracle::uniform(rng, 0.0, 10.0), oracle::uniform(rng, 0.0, 10.0),
                  oracle::uniform(rng, -3.1, 3.1)};
    if (g.state_at(p.position()) == CellState::Occupied) continue;
    ++poses;
    const LaserScan s = raycast(g, p, spec);
    for (std::size_t k = 0; k < s.ranges.size(); ++k) {
      const double ref = oracle::slab_ray(g, p, p.theta + s.beam_angle(k), spec);
      EXPECT_NEAR(s.ranges[k], ref, 1e-9) << "beam " << k;
    }
  }
}

// A fixed-step march skips cells whose chord is shorter than its step.
// Beams outside one diagonal of the coarse march must agree with a march
// 1000x finer, and the coarse march must be the one that overshot.
TEST(Raycast, MatchesDenseMarchOracle) {
  std::mt19937_64 rng(17);
  const OccupancyGrid g = oracle::random_grid(rng, 40, 40, 0.25, 0.08);
  const ScanSpec spec{-2.0, 2.0, 0.05, 0.1, 30.0};
  const double diag = std::sqrt(2.0) * g.resolution();
  int poses = 0;
  int grazing = 0;
  while (poses < 100) {
    const Pose2 p{oracle::uniform(rng, 0.0, 10.0), oracle::uniform(rng, 0.0, 10.0),
                  oracle::uniform(rng, -3.1, 3.1)};
    if (g.state_at(p.position()) == CellState::Occupied) continue;
    ++poses;
    const LaserScan s = raycast(g, p, spec);
    for (std::size_t k = 0; k < s.ranges.size(); ++k) {
      const double a = p.theta + s.beam_angle(k);
      const double ref = oracle::march_ray(g, p, a, spec, g.resolution() / 10);
      if (std::abs(s.ranges[k] - ref) <= diag) continue;
      ++grazing;
      EXPECT_GT(ref, s.ranges[k]) << "beam " << k;
      EXPECT_NEAR(s.ranges[k], oracle::march_ray(g, p, a, spec, g.resolution() / 1e4), diag)
          << "beam " << k;
    }
  }
  RecordProperty("grazing_beams", grazing);
}

TEST(Raycast, MonotoneUnderObstacleInsertion) {
  std::mt19937_64 rng(23);
  OccupancyGrid g = oracle::random_grid(rng, 40, 40, 0.1, 0.03);
  const Pose2 p{2.05, 2.05, 0.4};
  g.set(g.geometry().cell_at(p.position()), CellState::Free);
  LaserScan before = raycast(g, p);
  for (int k = 0; k < 30; ++k) {
    const CellIndex c{static_cast<int>(rng() % 40), static_cast<int>(rng() % 40)};
    if (c == g.geometry().cell_at(p.position())) continue;
    g.set(c, CellState::Occupied);
    const LaserScan after = raycast(g, p);
    for (std::size_t b = 0; b < after.ranges.size(); ++b) {
      ASSERT_LE(after.ranges[b], before.ranges[b]);
    }
    before = after;
  }
}

TEST(Raycast, PoseOutsideThrows) {
  const OccupancyGrid g(10, 10, 0.1, {0, 0});
  EXPECT_THROW(raycast(g, {-1.0, 0.5, 0.0}), OutOfBoundsError);
}

TEST(IntegrateScan, EndpointAndCarving) {
  OccupancyGrid truth(40, 10, 0.1, {0, 0});
  for (int j = 0; j < 10; ++j) truth.set(30, j, CellState::Occupied);
  const OccupancyGrid known(truth.geometry(), CellState::Unknown);
  const Pose2 p{0.55, 0.55, 0.0};
  const ScanSpec spec{0.0, 0.0, 1.0, 0.1, 30.0};
  const OccupancyGrid after = integrate_scan(known, p, raycast(truth, p, spec));
  EXPECT_EQ(after.at(30, 5), CellState::Occupied);
  for (int i = 5; i < 30; ++i) EXPECT_EQ(after.at(i, 5), CellState::Free) << i;
  EXPECT_EQ(after.at(31, 5), CellState::Unknown);
}

TEST(IntegrateScan, MaxRangeBeamCarvesWithoutEndpoint) {
  const OccupancyGrid truth(40, 10, 0.1, {0, 0});
  const OccupancyGrid known(truth.geometry(), CellState::Unknown);
  const Pose2 p{0.55, 0.55, 0.0};
  const ScanSpec spec{0.0, 0.0, 1.0, 0.1, 2.0};
  const OccupancyGrid after = integrate_scan(known, p, raycast(truth, p, spec));
  EXPECT_EQ(after.count(CellState::Occupied), 0u);
  EXPECT_EQ(after.at(20, 5), CellState::Free);
  EXPECT_EQ(after.at(30, 5), CellState::Unknown);
}

TEST(IntegrateScan, PriorObstaclesAreNeverDemoted) {
  OccupancyGrid truth(40, 10, 0.1, {0, 0});
  OccupancyGrid prior = truth;
  prior.set(10, 5, CellState::Occupied);  // stale wall the truth no longer has
  const Pose2 p{0.55, 0.55, 0.0};
  const ScanSpec spec{0.0, 0.0, 1.0, 0.1, 30.0};
  const OccupancyGrid after = integrate_scan(prior, p, raycast(truth, p, spec));
  EXPECT_EQ(after.at(10, 5), CellState::Occupied);
}

TEST(IntegrateScan, ProtectLayerAllowsClearingTransientHits) {
  const OccupancyGrid prior(40, 10, 0.1, {0, 0});
  OccupancyGrid sensed = prior;
  sensed.set(10, 5, CellState::Occupied);  // earlier return from a moving agent
  const Pose2 p{0.55, 0.55, 0.0};
  const ScanSpec spec{0.0, 0.0, 1.0, 0.1, 30.0};
  const OccupancyGrid after = integrate_scan(sensed, p, raycast(prior, p, spec), &prior);
  EXPECT_EQ(after.at(10, 5), CellState::Free);
}

TEST(IntegrateScan, IdempotentInStaticWorld) {
  std::mt19937_64 rng(29);
  const OccupancyGrid truth = oracle::random_grid(rng, 60, 60, 0.1, 0.02);
  const OccupancyGrid known = mask_unknown_region(truth, {1.0, 1.0, 4.0, 4.0});
  Pose2 p{3.05, 3.05, 0.2};
  OccupancyGrid world = truth;
  world.set(world.geometry().cell_at(p.position()), CellState::Free);
  const LaserScan s = raycast(world, p);
  const OccupancyGrid once = integrate_scan(known, p, s);
  const OccupancyGrid twice = integrate_scan(once, p, s);
  EXPECT_EQ(once, twice);
}

TEST(IntegrateScan, FullCoverageRestoresObservableCells) {
  OccupancyGrid truth(30, 30, 0.1, {0, 0});
  for (int k = 0; k < 30; ++k) {
    truth.set(k, 0, CellState::Occupied);
    truth.set(k, 29, CellState::Occupied);
    truth.set(0, k, CellState::Occupied);
    truth.set(29, k, CellState::Occupied);
  }
  truth.fill_box({1.2, 1.2}, {1.6, 1.6}, CellState::Occupied);
  OccupancyGrid known = mask_unknown_region(truth, {0.5, 0.5, 1.8, 1.8});
  for (int j = 1; j < 29; ++j) {
    for (int i = 1; i < 29; ++i) {
      if (truth.at(i, j) != CellState::Free) continue;
      const Pose2 p{truth.geometry().center({i, j}).x, truth.geometry().center({i, j}).y, 0.0};
      known = integrate_scan(known, p, raycast(truth, p, {-3.14159, 3.14159, 0.01, 0.0, 30.0}));
    }
  }
  // Only the interior of the solid box is never seen.
  for (int j = 0; j < 30; ++j) {
    for (int i = 0; i < 30; ++i) {
      const bool interior = i >= 13 && i <= 14 && j >= 13 && j <= 14;
      if (interior) {
        EXPECT_EQ(known.at(i, j), CellState::Unknown) << i << "," << j;
      } else {
        EXPECT_EQ(known.at(i, j), truth.at(i, j)) << i << "," << j;
      }
    }
  }
}

TEST(MaskUnknownRegion, OfficeRectangleCount) {
  const OccupancyGrid g(294, 219, 0.1, {0, 0});
  const Rect r = Rect::centered({14.7, 10.95}, 13.0, 7.7);
  const OccupancyGrid m = mask_unknown_region(g, r);
  const double expect = std::ceil(13.0 / 0.1) * std::ceil(7.7 / 0.1);
  EXPECT_NEAR(static_cast<double>(m.count(CellState::Unknown)), expect, 130 + 77 + 1);
}

TEST(MaskUnknownRegion, Errors) {
  const OccupancyGrid g(10, 10, 0.1, {0, 0});
  EXPECT_THROW(mask_unknown_region(g, {5.0, 5.0, 1.0, 1.0}), InputError);
  EXPECT_THROW(mask_unknown_region(g, {0.1, 0.1, 0.0, 1.0}), InputError);
  EXPECT_THROW(mask_unknown_region(g, {0.1, 0.1, 1.0, -1.0}), InputError);
}

TEST(MaskUnknownRegion, WholeGrid) {
  const OccupancyGrid g(10, 10, 0.1, {0, 0});
  const OccupancyGrid m = mask_unknown_region(g, {-1.0, -1.0, 3.0, 3.0});
  EXPECT_EQ(m.count(CellState::Unknown), 100u);
}

TEST(CropLocal, SideAndResolution) {
  const OccupancyGrid g(200, 200, 0.1, {0, 0});
  const OccupancyGrid c = crop_local(g, {10.0, 10.0}, 5.5);
  EXPECT_EQ(c.width(), 55);
  EXPECT_EQ(c.height(), 55);
  EXPECT_EQ(c.resolution(), 0.1);
}

TEST(CropLocal, ClampedAtCorner) {
  const OccupancyGrid g(100, 100, 0.1, {0, 0});
  const OccupancyGrid c = crop_local(g, {0.01, 0.01}, 5.5);
  EXPECT_LT(c.width(), 55);
  EXPECT_LT(c.height(), 55);
  EXPECT_GE(c.origin().x, 0.0);
  EXPECT_GE(c.origin().y, 0.0);
  EXPECT_THROW(crop_local(g, {-0.5, 1.0}, 5.5), OutOfBoundsError);
}

TEST(CropLocal, CellsMatchParent) {
  std::mt19937_64 rng(31);
  const OccupancyGrid g = oracle::random_grid(rng, 90, 70, 0.1, 0.3, {-2.0, 1.0});
  for (int k = 0; k < 50; ++k) {
    const Point2 center{oracle::uniform(rng, -2.0, 6.99), oracle::uniform(rng, 1.0, 7.99)};
    const OccupancyGrid c = crop_local(g, center, oracle::uniform(rng, 0.5, 6.0));
    for (int j = 0; j < c.height(); ++j) {
      for (int i = 0; i < c.width(); ++i) {
        const Point2 w = c.geometry().center({i, j});
        ASSERT_EQ(c.at(i, j), g.state_at(w));
      }
    }
  }
}

}  // namespace
}  // namespace mrbench
