// Copyright 2026 The evrecon Authors
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
#include <numbers>
#include <random>

#include "evrecon/simulator.hpp"

namespace evrecon
{
namespace
{
const double kLn2 = std::numbers::ln2;

LuminanceSignal signal_from_logs(
  SensorGeometry g, std::vector<double> times, const std::vector<double> & logs)
{
  LuminanceSignal s;
  s.geometry = g;
  s.sample_times = std::move(times);
  for (double l : logs) {
    s.samples.push_back(std::exp(l));
  }
  return s;
}

TEST(SimulatePixel, ConstantSignalIsSilent)
{
  const std::vector<double> t{0, 1, 2, 3};
  const std::vector<double> l(4, 0.7);
  EXPECT_TRUE(simulate_pixel(t, l, 0.1).events.empty());
}

TEST(SimulatePixel, DoublingAtThreshold)
{
  const std::vector<double> t{0, 1, 2};
  const std::vector<double> l{0, kLn2, 2 * kLn2};
  const auto sim = simulate_pixel(t, l, kLn2);
  ASSERT_EQ(sim.events.size(), 2u);
  EXPECT_EQ(sim.events[0], (PixelEvent{1.0, 1, 1, 1}));
  EXPECT_EQ(sim.events[1], (PixelEvent{2.0, 1, 1, 2}));
}

TEST(SimulatePixel, MultiCrossingStep)
{
  const std::vector<double> t{0, 1};
  const std::vector<double> l{0, 3.5 * kLn2};
  const auto sim = simulate_pixel(t, l, kLn2);
  ASSERT_EQ(sim.events.size(), 1u);
  EXPECT_EQ(sim.events[0].p, 1);
  EXPECT_EQ(sim.events[0].multiplicity, 3u);
  EXPECT_DOUBLE_EQ(sim.final_reference, 3 * kLn2);
}

TEST(SimulatePixel, NegativeSteps)
{
  const std::vector<double> t{0, 1, 2};
  const std::vector<double> l{0, -0.25, -1.05};
  const auto sim = simulate_pixel(t, l, 0.2);
  ASSERT_EQ(sim.events.size(), 2u);
  EXPECT_EQ(sim.events[0].p, -1);
  EXPECT_EQ(sim.events[0].multiplicity, 1u);
  EXPECT_EQ(sim.events[1].multiplicity, 4u);  // reference -0.2 -> -1.0
}

TEST(SimulatePixel, RejectsBadInput)
{
  EXPECT_THROW(simulate_pixel(std::vector<double>{0, 0}, std::vector<double>{0, 1}, 0.1), std::invalid_argument);
  EXPECT_THROW(simulate_pixel(std::vector<double>{0, 1}, std::vector<double>{0, NAN}, 0.1), std::invalid_argument);
  EXPECT_THROW(simulate_pixel(std::vector<double>{0, 1}, std::vector<double>{0, 1}, 0.0), std::invalid_argument);
}

// Random walks in log space: after every sample the reference sits within one
// threshold of the signal, so the signed count tracks the log change to < 1.
TEST(SimulatePixel, ResidualBelowOneThreshold)
{
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> step(-0.7, 0.7);
  for (int trial = 0; trial < 200; ++trial) {
    const double c = 0.05 + 0.01 * static_cast<double>(trial % 30);
    std::vector<double> t;
    std::vector<double> l;
    double level = step(rng);
    for (int i = 0; i < 300; ++i) {
      t.push_back(i);
      l.push_back(level);
      level += step(rng);
      const auto sim = simulate_pixel(t, l, c);
      long count = 0;
      for (const auto & e : sim.events) {
        count += e.p * static_cast<long>(e.multiplicity);
      }
      ASSERT_LT(std::fabs(l.back() - sim.final_reference), c);
      ASSERT_LT(std::fabs(static_cast<double>(count) - (l.back() - l.front()) / c), 1.0 + 1e-9);
    }
  }
}

TEST(SimulatePixel, DoublingThresholdNeverAddsEvents)
{
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> step(-0.5, 0.5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> t;
    std::vector<double> l;
    double level = 0;
    for (int i = 0; i < 500; ++i) {
      t.push_back(i);
      l.push_back(level);
      level += step(rng);
    }
    auto total = [&](double c) {
      std::size_t n = 0;
      for (const auto & e : simulate_pixel(t, l, c).events) {
        n += e.multiplicity;
      }
      return n;
    };
    const double c = 0.05 + 0.002 * trial;
    EXPECT_LE(total(2 * c), total(c));
  }
}

TEST(SimulateScene, ConstantGridIsEmpty)
{
  const SensorGeometry g{2, 2};
  const auto sig = signal_from_logs(g, {0, 1}, std::vector<double>(8, 0.3));
  EXPECT_TRUE(simulate_scene(sig, {0.1, g}).empty());
}

TEST(SimulateScene, SinglePixelPassthrough)
{
  const SensorGeometry g{1, 1};
  const auto sig = signal_from_logs(g, {0, 1, 2}, {0, kLn2, 2 * kLn2});
  const auto s = simulate_scene(sig, {kLn2, g});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.events[0], (Event{1.0, 0, 0, 1}));
  EXPECT_EQ(s.events[1], (Event{2.0, 0, 0, 1}));
}

TEST(SimulateScene, TieOrderIsRowMajor)
{
  const SensorGeometry g{2, 1};
  // sample-major: t=0 -> [0, 0], t=1 -> [ln2, -ln2]
  const auto sig = signal_from_logs(g, {0, 1}, {0, 0, kLn2, -kLn2});
  const auto s = simulate_scene(sig, {kLn2, g});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.events[0], (Event{1.0, 0, 0, 1}));
  EXPECT_EQ(s.events[1], (Event{1.0, 1, 0, -1}));
}

TEST(SimulateScene, TieOrderAcrossRows)
{
  const SensorGeometry g{2, 2};
  // pixels 1 (x=1,y=0) and 2 (x=0,y=1) fire together; (y, x) order puts pixel 1 first
  const auto sig = signal_from_logs(g, {0, 1}, {0, 0, 0, 0, 0, 1, -1, 0});
  const auto s = simulate_scene(sig, {0.5, g});
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s.events[0].y, 0u);
  EXPECT_EQ(s.events[1].y, 0u);
  EXPECT_EQ(s.events[2].y, 1u);
  EXPECT_EQ(s.events[3].y, 1u);
}

TEST(SimulateScene, OutputIsValid)
{
  SceneParams p;
  p.geometry = {5, 4};
  p.samples = 2000;
  p.amplitude = 1.5;
  const auto sig = make_scene(p);
  const auto s = simulate_scene(sig, {0.15, p.geometry});
  EXPECT_FALSE(s.empty());
  EXPECT_TRUE(validate_stream(s).ok());
}

TEST(SimulateScene, GeometryMismatch)
{
  const auto sig = signal_from_logs({1, 1}, {0, 1}, {0, 1});
  EXPECT_THROW(simulate_scene(sig, {0.1, {2, 1}}), std::invalid_argument);
}

TEST(OracleLogDifference, Values)
{
  const SensorGeometry g{1, 1};
  const auto sig = signal_from_logs(g, {0, 1, 2}, {0, kLn2, std::log(8.0)});
  EXPECT_DOUBLE_EQ(oracle_log_difference(sig, kLn2, 0, 0, 1, 1), 0.0);
  EXPECT_DOUBLE_EQ(oracle_log_difference(sig, kLn2, 0, 0, 0, 1), 1.0);
  EXPECT_NEAR(oracle_log_difference(sig, kLn2, 0, 0, 0, 2), 3.0, 1e-12);
  EXPECT_THROW(oracle_log_difference(sig, kLn2, 0, 0, 0, 1.5), std::invalid_argument);
  EXPECT_THROW(oracle_log_difference(sig, kLn2, 1, 0, 0, 1), std::invalid_argument);
}

TEST(MakeScene, Patterns)
{
  SceneParams p;
  p.geometry = {3, 1};
  p.samples = 5;
  p.duration = 2.0;
  p.kind = SceneKind::constant;
  p.base = 0.25;
  auto s = make_scene(p);
  ASSERT_EQ(s.sample_times.size(), 5u);
  EXPECT_DOUBLE_EQ(s.sample_times.back(), 2.0);
  for (double q : s.samples) {
    EXPECT_DOUBLE_EQ(std::log(q), 0.25);
  }
  p.kind = SceneKind::ramp;
  p.base = 0.0;
  p.amplitude = 2.0;
  p.period = 1.0;
  p.phase = 0.5;
  s = make_scene(p);
  // pixel 2 at t = 1.5: phi = 1.0, slope 2
  EXPECT_NEAR(std::log(s.at(3, 2)), 1.0 + 3.0, 1e-12);
  p.kind = SceneKind::sine;
  p.amplitude = 1.0;
  p.period = 2.0;
  p.phase = 0.0;
  s = make_scene(p);
  EXPECT_NEAR(std::log(s.at(1, 0)), std::sin(std::numbers::pi * 0.5), 1e-12);
  p.samples = 0;
  EXPECT_THROW(make_scene(p), std::invalid_argument);
}

}  // namespace
}  // namespace evrecon
