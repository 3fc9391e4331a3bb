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

#include "evrecon/regularization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace evrecon
{
namespace
{
void check_config(const LambdaConfig & config)
{
  if (config.mode == LambdaMode::max_abs &&
      (!(config.epsilon > 0.0) || !std::isfinite(config.epsilon))) {
    throw std::invalid_argument("lambda: epsilon must be positive and finite");
  }
}

double weight(int32_t d, const LambdaConfig & config)
{
  const double a = std::fabs(static_cast<double>(d));
  switch (config.mode) {
    case LambdaMode::sigmoid:
      return 1.0 / (1.0 + std::exp(-a));
    case LambdaMode::max_abs:
      return std::max(config.epsilon, a);
    case LambdaMode::exponential: {
      // capped so that lambda^2 in the normal equations stays finite
      static const double cap = std::sqrt(std::numeric_limits<double>::max());
      return std::min(std::exp(a), cap);
    }
  }
  return 1.0;
}

}  // namespace

double lambda_scalar(int32_t d, const LambdaConfig & config)
{
  check_config(config);
  return weight(d, config);
}

LambdaField LambdaField::uniform(SensorGeometry geometry, std::size_t n_frames, double value)
{
  check_geometry(geometry);
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument("lambda: weights must be positive and finite");
  }
  LambdaField f;
  f.geometry_ = geometry;
  f.n_frames_ = n_frames;
  f.fill_ = value;
  f.offsets_.assign(geometry.pixel_count() + 1, 0);
  return f;
}

LambdaField LambdaField::from_dense(
  SensorGeometry geometry, std::size_t n_frames, std::span<const double> values)
{
  check_geometry(geometry);
  const std::size_t n_pix = geometry.pixel_count();
  if (values.size() != n_pix * n_frames) {
    throw std::invalid_argument("lambda: dense field has the wrong size");
  }
  LambdaField f;
  f.geometry_ = geometry;
  f.n_frames_ = n_frames;
  f.offsets_.assign(n_pix + 1, 0);
  f.overrides_.reserve(values.size());
  for (std::size_t p = 0; p < n_pix; ++p) {
    for (std::size_t i = 0; i < n_frames; ++i) {
      const double v = values[p * n_frames + i];
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("lambda: weights must be positive and finite");
      }
      f.overrides_.push_back({static_cast<uint32_t>(i), v});
    }
    f.offsets_[p + 1] = f.overrides_.size();
  }
  return f;
}

void LambdaField::pixel_values(std::size_t pixel, std::span<double> out) const
{
  std::fill(out.begin(), out.end(), fill_);
  for (const auto & o : pixel_overrides(pixel)) {
    out[o.frame] = o.value;
  }
}

double LambdaField::at(std::size_t pixel, std::size_t frame) const
{
  if (pixel >= geometry_.pixel_count() || frame >= n_frames_) {
    throw std::out_of_range("LambdaField::at");
  }
  for (const auto & o : pixel_overrides(pixel)) {
    if (o.frame == frame) {
      return o.value;
    }
  }
  return fill_;
}

LambdaField compute_lambda(const DataCube & cube, const LambdaConfig & config)
{
  check_config(config);
  const std::size_t r = cube.slices();
  const std::size_t n_pix = cube.pixel_count();
  LambdaField f;
  f.geometry_ = cube.geometry();
  f.n_frames_ = r + 1;
  f.fill_ = weight(0, config);
  f.offsets_.assign(n_pix + 1, 0);
  f.overrides_.reserve(cube.nonzero_count() + n_pix / 8);
  for (std::size_t p = 0; p < n_pix; ++p) {
    const auto entries = cube.pixel_entries(p);
    for (const auto & e : entries) {
      f.overrides_.push_back({e.slice, weight(e.value, config)});
    }
    if (!entries.empty() && entries.back().slice + 1 == r) {
      f.overrides_.push_back({static_cast<uint32_t>(r), weight(entries.back().value, config)});
    }
    f.offsets_[p + 1] = f.overrides_.size();
  }
  return f;
}

}  // namespace evrecon
