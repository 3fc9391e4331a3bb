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

#include "evrecon/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace evrecon
{
void check_signal(const LuminanceSignal & signal)
{
  check_geometry(signal.geometry);
  const std::size_t n_pix = signal.geometry.pixel_count();
  if (signal.samples.size() != signal.sample_times.size() * n_pix) {
    throw std::invalid_argument("luminance signal: sample grid does not match geometry");
  }
  for (std::size_t s = 0; s < signal.sample_times.size(); ++s) {
    const double t = signal.sample_times[s];
    if (!std::isfinite(t)) {
      throw std::invalid_argument("luminance signal: non-finite sample time");
    }
    if (s > 0 && !(t > signal.sample_times[s - 1])) {
      throw std::invalid_argument(
        "luminance signal: sample times must be strictly increasing (index " + std::to_string(s) +
        ")");
    }
  }
  for (double q : signal.samples) {
    if (!std::isfinite(q) || !(q > 0.0)) {
      throw std::invalid_argument("luminance signal: samples must be finite and positive");
    }
  }
}

PixelSimulation simulate_pixel(
  std::span<const double> times, std::span<const double> log_samples, double threshold)
{
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw std::invalid_argument("simulate_pixel: threshold must be positive and finite");
  }
  if (times.size() != log_samples.size()) {
    throw std::invalid_argument("simulate_pixel: times and samples differ in length");
  }
  PixelSimulation out;
  if (times.empty()) {
    return out;
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !std::isfinite(log_samples[i])) {
      throw std::invalid_argument("simulate_pixel: non-finite input at index " + std::to_string(i));
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw std::invalid_argument(
        "simulate_pixel: times must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }

  double ref = log_samples[0];
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double level = log_samples[i];
    const double delta = level - ref;
    if (delta >= threshold) {
      auto m = static_cast<uint32_t>(std::max(1.0, std::floor(delta / threshold)));
      // the quotient can be off by one ulp either way; settle on the exact count
      while (level - (ref + m * threshold) >= threshold) {
        ++m;
      }
      while (m > 1 && level - (ref + (m - 1) * threshold) < threshold) {
        --m;
      }
      ref = ref + m * threshold;
      out.events.push_back({times[i], int8_t{1}, m, i});
    } else if (delta <= -threshold) {
      auto m = static_cast<uint32_t>(std::max(1.0, std::floor(-delta / threshold)));
      while (level - (ref - m * threshold) <= -threshold) {
        ++m;
      }
      while (m > 1 && level - (ref - (m - 1) * threshold) > -threshold) {
        --m;
      }
      ref = ref - m * threshold;
      out.events.push_back({times[i], int8_t{-1}, m, i});
    }
  }
  out.final_reference = ref;
  return out;
}

EventStream simulate_scene(const LuminanceSignal & signal, const SimulatorConfig & config)
{
  check_signal(signal);
  if (!(signal.geometry == config.geometry)) {
    throw std::invalid_argument("simulate_scene: signal grid does not match sensor geometry");
  }
  const std::size_t n_pix = signal.geometry.pixel_count();
  const std::size_t n_samples = signal.sample_count();

  struct Firing
  {
    std::size_t sample;
    std::size_t pixel;
    int8_t p;
    uint32_t m;
  };
  std::vector<Firing> firings;
  std::vector<double> column(n_samples);
  for (std::size_t pix = 0; pix < n_pix; ++pix) {
    for (std::size_t s = 0; s < n_samples; ++s) {
      column[s] = std::log(signal.at(s, pix));
    }
    const auto sim = simulate_pixel(signal.sample_times, column, config.threshold);
    for (const auto & e : sim.events) {
      firings.push_back({e.sample, pix, e.p, e.multiplicity});
    }
  }
  // pixels were visited in row-major order, so a stable sort on the sample
  // index leaves simultaneous firings in ascending (y, x)
  std::stable_sort(firings.begin(), firings.end(), [](const Firing & a, const Firing & b) {
    return a.sample < b.sample;
  });

  EventStream stream{signal.geometry, {}};
  std::size_t total = 0;
  for (const auto & f : firings) {
    total += f.m;
  }
  stream.events.reserve(total);
  const uint32_t width = signal.geometry.width;
  for (const auto & f : firings) {
    const Event ev{
      signal.sample_times[f.sample], static_cast<uint32_t>(f.pixel % width),
      static_cast<uint32_t>(f.pixel / width), f.p};
    stream.events.insert(stream.events.end(), f.m, ev);
  }
  return stream;
}

double oracle_log_difference(
  const LuminanceSignal & signal, double threshold, uint32_t x, uint32_t y, double t_a,
  double t_b)
{
  if (!(threshold > 0.0)) {
    throw std::invalid_argument("oracle_log_difference: threshold must be positive");
  }
  if (!signal.geometry.contains(x, y)) {
    throw std::invalid_argument("oracle_log_difference: pixel outside the signal grid");
  }
  auto find_sample = [&](double t) {
    const auto it = std::lower_bound(signal.sample_times.begin(), signal.sample_times.end(), t);
    if (it == signal.sample_times.end() || *it != t) {
      throw std::invalid_argument("oracle_log_difference: time is not a sample time of the signal");
    }
    return static_cast<std::size_t>(it - signal.sample_times.begin());
  };
  const std::size_t pix = signal.geometry.index(x, y);
  const double la = std::log(signal.at(find_sample(t_a), pix));
  const double lb = std::log(signal.at(find_sample(t_b), pix));
  return (lb - la) / threshold;
}

LuminanceSignal make_scene(const SceneParams & params)
{
  check_geometry(params.geometry);
  if (params.samples == 0) {
    throw std::invalid_argument("scene: at least one sample required");
  }
  if (!(params.duration > 0.0) || !std::isfinite(params.duration)) {
    throw std::invalid_argument("scene: duration must be positive");
  }
  if (params.kind != SceneKind::constant && !(params.period > 0.0)) {
    throw std::invalid_argument("scene: period must be positive");
  }
  if (!std::isfinite(params.amplitude) || !std::isfinite(params.phase) || !std::isfinite(params.base)) {
    throw std::invalid_argument("scene: parameters must be finite");
  }

  LuminanceSignal signal;
  signal.geometry = params.geometry;
  const std::size_t n_pix = params.geometry.pixel_count();
  const std::size_t n = params.samples;
  signal.sample_times.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    signal.sample_times[j] =
      (n == 1) ? 0.0 : params.duration * static_cast<double>(j) / static_cast<double>(n - 1);
  }
  signal.samples.resize(n * n_pix);
  const double omega = 2.0 * std::numbers::pi / params.period;
  for (std::size_t j = 0; j < n; ++j) {
    const double t = signal.sample_times[j];
    for (std::size_t i = 0; i < n_pix; ++i) {
      const double phi = params.phase * static_cast<double>(i);
      double level = params.base;
      switch (params.kind) {
        case SceneKind::constant:
          break;
        case SceneKind::ramp:
          level += phi + params.amplitude * t / params.period;
          break;
        case SceneKind::sine:
          level += params.amplitude * std::sin(omega * t + phi);
          break;
      }
      signal.samples[j * n_pix + i] = std::exp(level);
    }
  }
  check_signal(signal);
  return signal;
}

}  // namespace evrecon
