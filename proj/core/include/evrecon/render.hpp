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

#ifndef EVRECON_RENDER_HPP
#define EVRECON_RENDER_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "evrecon/solver.hpp"

namespace evrecon
{
enum class NormalizationMode { global, per_frame };

/// Affine map of x from [lo, hi] to [0, 1]; 0.5 when hi == lo.
inline double normalize_value(double x, double lo, double hi)
{
  return (hi == lo) ? 0.5 : (x - lo) / (hi - lo);
}

/// mat2gray-style rescale over the whole stack or each frame separately.
/// Throws DataError on non-finite input.
FrameStack normalize(const FrameStack & stack, NormalizationMode mode);

/// round(255 v), halves away from zero. v is clamped to [0, 1].
uint8_t to_gray_byte(double v);

using Rgb = std::array<uint8_t, 3>;

struct ColorAnchor
{
  double position;
  Rgb rgb;
};

/// Piecewise-linear false color map.
class ColorMap
{
public:
  /// Anchors must start at 0, end at 1 and be strictly increasing.
  explicit ColorMap(std::vector<ColorAnchor> anchors);

  /// blue (0) -> green (0.5) -> red (1)
  static ColorMap default_map();

  const std::vector<ColorAnchor> & anchors() const { return anchors_; }

private:
  std::vector<ColorAnchor> anchors_;
};

/// Interpolates each channel between the bracketing anchors and rounds half
/// away from zero. Throws std::invalid_argument for value outside [0, 1].
Rgb apply_colormap(double value, const ColorMap & map);

/// Binary netpbm P5, maxval 255, from bytes already quantized.
void write_pgm_bytes(
  uint32_t width, uint32_t height, std::span<const uint8_t> pixels, std::ostream & sink);
/// Binary netpbm P6, maxval 255, interleaved rgb bytes.
void write_ppm_bytes(
  uint32_t width, uint32_t height, std::span<const uint8_t> rgb, std::ostream & sink);

/// Normalized row-major frame in [0, 1] to P5.
void write_pgm(const SensorGeometry & geometry, std::span<const double> frame, std::ostream & sink);
/// Colored row-major frame to P6.
void write_ppm(const SensorGeometry & geometry, std::span<const Rgb> frame, std::ostream & sink);

/// frame_000012.pgm style names (zero-based index).
std::string frame_file_name(std::size_t index, bool color);

/// Writes an encoded file in one go; IoError on failure.
void write_binary_file(const std::filesystem::path & path, std::span<const char> bytes);

}  // namespace evrecon

#endif  // EVRECON_RENDER_HPP
