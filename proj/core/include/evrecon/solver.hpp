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

#ifndef EVRECON_SOLVER_HPP
#define EVRECON_SOLVER_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "evrecon/datacube.hpp"
#include "evrecon/regularization.hpp"

namespace evrecon
{
/// Symmetric tridiagonal matrix: diag has n entries, off the n-1 entries shared
/// by the sub- and super-diagonal.
struct TridiagonalSystem
{
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const { return diag.size(); }
};

/// K = A^T A + diag(lambda^2) for the first-difference operator A
/// ((n-1) x n, rows [.. -1 1 ..]). Throws std::invalid_argument if n < 2 or
/// any lambda is not positive.
TridiagonalSystem assemble_system(std::span<const double> lambda);

/// A^T E for the first-difference operator; result has accum.size() + 1 entries.
std::vector<double> rhs_from_accum(std::span<const double> accum);

/// Thomas elimination. Throws DataError on a zero or non-finite pivot.
std::vector<double> solve_tridiagonal(const TridiagonalSystem & system, std::span<const double> rhs);

/// Minimizer of 0.5 |A v - E|^2 + 0.5 |lambda . v|^2 for one pixel.
std::vector<double> solve_pixel(std::span<const double> accum, std::span<const double> lambda);

/// Allocation-free form of solve_pixel: \p out and \p scratch both hold
/// lambda.size() values. Every per-pixel solve in the library goes through
/// this kernel, so results are bitwise identical across entry points.
void solve_pixel_into(
  std::span<const double> accum, std::span<const double> lambda, std::span<double> out,
  std::span<double> scratch);

/// Reconstructed per-pixel trajectories, pixel-major: data[pixel * n_frames + frame].
struct FrameStack
{
  SensorGeometry geometry;
  std::size_t n_frames{0};
  std::vector<double> frame_times;
  std::vector<double> data;

  std::span<const double> pixel(std::size_t p) const { return {data.data() + p * n_frames, n_frames}; }
  std::span<double> pixel(std::size_t p) { return {data.data() + p * n_frames, n_frames}; }
  double at(std::size_t p, std::size_t frame) const { return data[p * n_frames + frame]; }
  /// Row-major copy of one frame.
  std::vector<double> frame(std::size_t f) const;
};

/// Called once per pixel with that pixel's N_t values. Invoked concurrently
/// from several lanes; each call covers a distinct pixel.
using PixelVisitor = std::function<void(unsigned lane, std::size_t pixel, std::span<const double> v)>;

/// Solves every pixel without materializing the stack. Throws
/// std::invalid_argument unless lambda.n_frames() == cube.slices() + 1 and the
/// geometries agree. \p lanes = 0 uses every hardware thread.
void solve_each(
  const DataCube & cube, const LambdaField & lambda, unsigned lanes, const PixelVisitor & visit);

/// Materializes the full stack; frame_times are the cube boundary times.
FrameStack solve_all(const DataCube & cube, const LambdaField & lambda, unsigned lanes = 0);

}  // namespace evrecon

#endif  // EVRECON_SOLVER_HPP
