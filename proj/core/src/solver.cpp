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

#include "evrecon/solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "evrecon/errors.hpp"
#include "evrecon/parallel.hpp"

namespace evrecon
{
namespace
{
// pixels per work block handed to a lane
constexpr std::size_t kPixelBlock = 64;

inline void check_pivot(double m, std::size_t i)
{
  if (!(std::fabs(m) > 0.0) || !std::isfinite(m)) {
    throw DataError("tridiagonal solve: bad pivot at row " + std::to_string(i));
  }
}

// Thomas elimination for a symmetric tridiagonal matrix given by accessors.
// cp receives the modified super-diagonal; out the solution.
template <typename Diag, typename Off, typename Rhs>
inline void thomas(
  std::size_t n, Diag && diag, Off && off, Rhs && rhs, double * out, double * cp)
{
  double m = diag(0);
  check_pivot(m, 0);
  cp[0] = off(0) / m;
  out[0] = rhs(0) / m;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double o = off(i - 1);
    m = diag(i) - o * cp[i - 1];
    check_pivot(m, i);
    cp[i] = off(i) / m;
    out[i] = (rhs(i) - o * out[i - 1]) / m;
  }
  const std::size_t last = n - 1;
  const double o = off(last - 1);
  m = diag(last) - o * cp[last - 1];
  check_pivot(m, last);
  out[last] = (rhs(last) - o * out[last - 1]) / m;
  for (std::size_t i = last; i-- > 0;) {
    out[i] = out[i] - cp[i] * out[i + 1];
  }
}

inline double difference_gram_diag(std::size_t i, std::size_t n)
{
  return (i == 0 || i + 1 == n) ? 1.0 : 2.0;
}

void check_lambda(std::span<const double> lambda)
{
  if (lambda.size() < 2) {
    throw std::invalid_argument("solver: need at least two frames");
  }
  for (double l : lambda) {
    if (!(l > 0.0) || std::isnan(l)) {
      throw std::invalid_argument("solver: lambda entries must be positive");
    }
  }
}

}  // namespace

TridiagonalSystem assemble_system(std::span<const double> lambda)
{
  check_lambda(lambda);
  const std::size_t n = lambda.size();
  TridiagonalSystem sys;
  sys.diag.resize(n);
  sys.off.assign(n - 1, -1.0);
  for (std::size_t i = 0; i < n; ++i) {
    sys.diag[i] = difference_gram_diag(i, n) + lambda[i] * lambda[i];
  }
  return sys;
}

std::vector<double> rhs_from_accum(std::span<const double> accum)
{
  if (accum.empty()) {
    throw std::invalid_argument("solver: accumulation vector is empty");
  }
  const std::size_t n = accum.size() + 1;
  std::vector<double> rhs(n);
  rhs[0] = -accum[0];
  for (std::size_t j = 1; j + 1 < n; ++j) {
    rhs[j] = accum[j - 1] - accum[j];
  }
  rhs[n - 1] = accum[n - 2];
  return rhs;
}

std::vector<double> solve_tridiagonal(const TridiagonalSystem & system, std::span<const double> rhs)
{
  const std::size_t n = system.size();
  if (n < 2 || system.off.size() != n - 1 || rhs.size() != n) {
    throw std::invalid_argument("solver: system and right-hand side sizes disagree");
  }
  std::vector<double> out(n);
  std::vector<double> cp(n);
  thomas(
    n, [&](std::size_t i) { return system.diag[i]; }, [&](std::size_t i) { return system.off[i]; },
    [&](std::size_t i) { return rhs[i]; }, out.data(), cp.data());
  return out;
}

void solve_pixel_into(
  std::span<const double> accum, std::span<const double> lambda, std::span<double> out,
  std::span<double> scratch)
{
  const std::size_t n = lambda.size();
  if (n < 2 || accum.size() + 1 != n || out.size() < n || scratch.size() < n) {
    throw std::invalid_argument("solver: accumulation/lambda/output sizes disagree");
  }
  // same expressions as assemble_system / rhs_from_accum, evaluated on the fly
  const double * a = accum.data();
  const double * l = lambda.data();
  thomas(
    n,
    [&](std::size_t i) {
      if (!(l[i] > 0.0)) {
        throw std::invalid_argument("solver: lambda entries must be positive");
      }
      return difference_gram_diag(i, n) + l[i] * l[i];
    },
    [](std::size_t) { return -1.0; },
    [&](std::size_t i) {
      if (i == 0) {
        return -a[0];
      }
      if (i + 1 == n) {
        return a[n - 2];
      }
      return a[i - 1] - a[i];
    },
    out.data(), scratch.data());
}

std::vector<double> solve_pixel(std::span<const double> accum, std::span<const double> lambda)
{
  check_lambda(lambda);
  std::vector<double> out(lambda.size());
  std::vector<double> scratch(lambda.size());
  solve_pixel_into(accum, lambda, out, scratch);
  return out;
}

std::vector<double> FrameStack::frame(std::size_t f) const
{
  if (f >= n_frames) {
    throw std::out_of_range("FrameStack::frame");
  }
  const std::size_t n_pix = geometry.pixel_count();
  std::vector<double> out(n_pix);
  for (std::size_t p = 0; p < n_pix; ++p) {
    out[p] = data[p * n_frames + f];
  }
  return out;
}

void solve_each(
  const DataCube & cube, const LambdaField & lambda, unsigned lanes, const PixelVisitor & visit)
{
  if (!(cube.geometry() == lambda.geometry())) {
    throw std::invalid_argument("solver: cube and lambda field geometries differ");
  }
  const std::size_t r = cube.slices();
  const std::size_t n = r + 1;
  if (r == 0 || lambda.n_frames() != n) {
    throw std::invalid_argument(
      "solver: lambda field has " + std::to_string(lambda.n_frames()) + " frames, cube needs " +
      std::to_string(n));
  }
  lanes = resolve_lanes(lanes);

  struct Scratch
  {
    std::vector<double> accum, lambda, out, cp;
  };
  std::vector<Scratch> scratch(lanes);
  parallel_blocks(
    cube.pixel_count(), kPixelBlock, lanes, [&](unsigned lane, std::size_t begin, std::size_t end) {
      auto & s = scratch[lane];
      if (s.out.size() != n) {
        s.accum.resize(r);
        s.lambda.resize(n);
        s.out.resize(n);
        s.cp.resize(n);
      }
      for (std::size_t p = begin; p < end; ++p) {
        cube.pixel_series(p, s.accum);
        lambda.pixel_values(p, s.lambda);
        solve_pixel_into(s.accum, s.lambda, s.out, s.cp);
        visit(lane, p, std::span<const double>(s.out));
      }
    });
}

FrameStack solve_all(const DataCube & cube, const LambdaField & lambda, unsigned lanes)
{
  FrameStack stack;
  stack.geometry = cube.geometry();
  stack.n_frames = cube.slices() + 1;
  stack.frame_times = cube.boundary_times();
  stack.data.assign(cube.pixel_count() * stack.n_frames, 0.0);
  solve_each(cube, lambda, lanes, [&](unsigned, std::size_t p, std::span<const double> v) {
    std::copy(v.begin(), v.end(), stack.pixel(p).begin());
  });
  return stack;
}

}  // namespace evrecon
