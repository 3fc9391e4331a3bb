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

#ifndef EVRECON_REGULARIZATION_HPP
#define EVRECON_REGULARIZATION_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "evrecon/datacube.hpp"

namespace evrecon
{
enum class LambdaMode { sigmoid, max_abs, exponential };

struct LambdaConfig
{
  LambdaMode mode{LambdaMode::sigmoid};
  double epsilon{0.5};  ///< floor for max_abs, must be > 0
};

/// Weight for one cube entry d:
///   sigmoid      1 / (1 + exp(-|d|))
///   max_abs      max(epsilon, |d|)
///   exponential  exp(|d|), saturating at sqrt(DBL_MAX) so lambda^2 stays finite
double lambda_scalar(int32_t d, const LambdaConfig & config);

/// Per-pixel, per-frame regularization weights (n_frames per pixel, all > 0).
///
/// Weights computed from a cube are a function of the cube entry, so the field
/// is stored like the cube: a common fill value plus per-pixel overrides.
class LambdaField
{
public:
  struct Override
  {
    uint32_t frame;
    double value;
  };

  LambdaField() = default;

  /// Every weight equal to \p value.
  static LambdaField uniform(SensorGeometry geometry, std::size_t n_frames, double value);

  /// Arbitrary weights, pixel-major: values[pixel * n_frames + frame].
  static LambdaField from_dense(
    SensorGeometry geometry, std::size_t n_frames, std::span<const double> values);

  const SensorGeometry & geometry() const { return geometry_; }
  std::size_t n_frames() const { return n_frames_; }
  double fill() const { return fill_; }

  std::span<const Override> pixel_overrides(std::size_t pixel) const
  {
    return {overrides_.data() + offsets_[pixel], offsets_[pixel + 1] - offsets_[pixel]};
  }

  /// Writes the n_frames weights of one pixel into \p out.
  void pixel_values(std::size_t pixel, std::span<double> out) const;

  double at(std::size_t pixel, std::size_t frame) const;

private:
  friend LambdaField compute_lambda(const DataCube & cube, const LambdaConfig & config);

  SensorGeometry geometry_;
  std::size_t n_frames_{0};
  double fill_{1.0};
  std::vector<std::size_t> offsets_{0};
  std::vector<Override> overrides_;
};

/// Frame i (0-based, i < r) gets lambda_scalar of slice i; the extra frame r
/// repeats slice r-1, giving n_frames = r + 1.
LambdaField compute_lambda(const DataCube & cube, const LambdaConfig & config);

}  // namespace evrecon

#endif  // EVRECON_REGULARIZATION_HPP
