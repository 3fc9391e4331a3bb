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

#ifndef EVRECON_SIMULATOR_HPP
#define EVRECON_SIMULATOR_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "evrecon/event.hpp"

namespace evrecon
{
/// Positive luminance sampled on a grid of times. Samples are stored
/// sample-major: samples[s * pixel_count + pixel] with row-major pixels.
struct LuminanceSignal
{
  SensorGeometry geometry;
  std::vector<double> sample_times;
  std::vector<double> samples;

  std::size_t sample_count() const { return sample_times.size(); }
  double at(std::size_t sample, std::size_t pixel) const
  {
    return samples[sample * geometry.pixel_count() + pixel];
  }
};

/// Throws std::invalid_argument if sizes disagree, times are not strictly
/// increasing, or any sample is not a finite positive value.
void check_signal(const LuminanceSignal & signal);

struct SimulatorConfig
{
  double threshold{0.2};
  SensorGeometry geometry;
};

struct PixelEvent
{
  double t;
  int8_t p;
  uint32_t multiplicity;
  std::size_t sample;  ///< index of the sample that fired

  friend bool operator==(const PixelEvent &, const PixelEvent &) = default;
};

struct PixelSimulation
{
  std::vector<PixelEvent> events;
  double final_reference{0.0};  ///< reference log level after the last sample
};

/// Threshold-crossing model for one pixel. The reference level starts at the
/// first log sample; a step that moves the log level by m whole thresholds
/// away from the reference fires m events at that sample and advances the
/// reference by exactly m thresholds. Afterwards |log - reference| < threshold.
PixelSimulation simulate_pixel(
  std::span<const double> times, std::span<const double> log_samples, double threshold);

/// Runs simulate_pixel on log(q) for every pixel and merges the result into
/// one stream ordered by time, simultaneous events ordered by (y, x).
EventStream simulate_scene(const LuminanceSignal & signal, const SimulatorConfig & config);

/// (log q(t_b) - log q(t_a)) / threshold for one pixel, where t_a and t_b must
/// be exact sample times of the signal.
double oracle_log_difference(
  const LuminanceSignal & signal, double threshold, uint32_t x, uint32_t y, double t_a,
  double t_b);

enum class SceneKind { constant, ramp, sine };

/// Analytic log-luminance patterns. With pixel index i = y * width + x and
/// phi = phase * i:
///   constant: log q = base
///   ramp:     log q = base + phi + amplitude * t / period
///   sine:     log q = base + amplitude * sin(2 pi t / period + phi)
/// Samples are spaced evenly over [0, duration], endpoints included.
struct SceneParams
{
  SceneKind kind{SceneKind::sine};
  SensorGeometry geometry;
  std::size_t samples{1000};
  double duration{1.0};
  double amplitude{1.0};
  double period{1.0};
  double phase{0.1};
  double base{0.0};
};

LuminanceSignal make_scene(const SceneParams & params);

}  // namespace evrecon

#endif  // EVRECON_SIMULATOR_HPP
