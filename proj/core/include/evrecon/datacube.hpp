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

#ifndef EVRECON_DATACUBE_HPP
#define EVRECON_DATACUBE_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "evrecon/event.hpp"

namespace evrecon
{
struct CubeConfig
{
  std::size_t k{150};                ///< events per window
  std::optional<std::size_t> nu;     ///< events to use; all when unset
};

/// One non-zero cube entry of a pixel: the window (0-based slice index) and
/// the polarity sum accumulated there.
struct CubeEntry
{
  uint32_t slice;
  int32_t value;

  friend bool operator==(const CubeEntry &, const CubeEntry &) = default;
};

/// r polarity-sum slices over the sensor grid. Slice s sums the polarities of
/// global events [s*k, (s+1)*k) per pixel.
///
/// Storage is sparse and pixel-major: a window of k events touches at most k
/// pixels, so a cube holds at most r*k non-zero entries however large r*W*H is.
class DataCube
{
public:
  DataCube() = default;

  /// Assembles a cube from per-pixel non-zero entries (each pixel's list
  /// sorted by slice, values non-zero). Used by build_cube and the text reader.
  DataCube(
    SensorGeometry geometry, std::size_t slices, std::size_t k, std::vector<double> boundary_times,
    std::vector<std::size_t> offsets, std::vector<CubeEntry> entries);

  const SensorGeometry & geometry() const { return geometry_; }
  std::size_t slices() const { return slices_; }
  std::size_t k() const { return k_; }
  std::size_t pixel_count() const { return geometry_.pixel_count(); }

  /// r+1 timestamps: first event of window 1, then the last event of each window.
  const std::vector<double> & boundary_times() const { return boundary_times_; }

  /// Non-zero entries of one pixel, ascending by slice.
  std::span<const CubeEntry> pixel_entries(std::size_t pixel) const
  {
    return {entries_.data() + offsets_[pixel], offsets_[pixel + 1] - offsets_[pixel]};
  }
  std::size_t nonzero_count() const { return entries_.size(); }

  int32_t at(std::size_t slice, uint32_t x, uint32_t y) const;

  /// Dense row-major copy of one slice.
  std::vector<int32_t> slice(std::size_t s) const;

  /// Writes this pixel's r slice values into \p out (size r), zeros included.
  void pixel_series(std::size_t pixel, std::span<double> out) const;

  int64_t grand_total() const;

  /// Set when the requested nu exceeded the stream and was clamped.
  bool nu_clamped() const { return nu_clamped_; }
  void set_nu_clamped(bool v) { nu_clamped_ = v; }

private:
  SensorGeometry geometry_;
  std::size_t slices_{0};
  std::size_t k_{0};
  std::vector<double> boundary_times_;
  std::vector<std::size_t> offsets_{0};
  std::vector<CubeEntry> entries_;
  bool nu_clamped_{false};
};

/// Bins the first r*k events, r = floor(min(nu, n) / k), into r slices.
/// Throws std::invalid_argument for k == 0 and DataError when r == 0 or an
/// event lies outside the stream geometry.
DataCube build_cube(const EventStream & stream, const CubeConfig & config);

struct SliceStats
{
  int32_t min{0};
  int32_t max{0};
  int64_t sum{0};
  double zero_fraction{1.0};
};

struct CubeStats
{
  std::vector<SliceStats> slices;
  int32_t min{0};
  int32_t max{0};
  int64_t total{0};
  double zero_fraction{1.0};
};

CubeStats cube_stats(const DataCube & cube);

/// Debug dump: header "width height r k", then one line per slice with the
/// row-major entries separated by spaces.
void write_cube_text(const DataCube & cube, std::ostream & sink);
void write_cube_file(const DataCube & cube, const std::filesystem::path & path);

/// Reads the dump format back. Boundary times are not part of the format and
/// come back as window indices 0..r.
DataCube read_cube_text(std::istream & source);

}  // namespace evrecon

#endif  // EVRECON_DATACUBE_HPP
