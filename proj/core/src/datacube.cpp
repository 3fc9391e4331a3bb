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

#include "evrecon/datacube.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "evrecon/errors.hpp"

namespace evrecon
{
DataCube::DataCube(
  SensorGeometry geometry, std::size_t slices, std::size_t k, std::vector<double> boundary_times,
  std::vector<std::size_t> offsets, std::vector<CubeEntry> entries)
: geometry_(geometry),
  slices_(slices),
  k_(k),
  boundary_times_(std::move(boundary_times)),
  offsets_(std::move(offsets)),
  entries_(std::move(entries))
{
  check_geometry(geometry_);
  if (offsets_.size() != geometry_.pixel_count() + 1 || offsets_.back() != entries_.size()) {
    throw std::invalid_argument("DataCube: offsets do not match geometry/entries");
  }
  if (boundary_times_.size() != slices_ + 1) {
    throw std::invalid_argument("DataCube: need r+1 boundary times");
  }
  for (std::size_t p = 0; p < geometry_.pixel_count(); ++p) {
    const auto e = pixel_entries(p);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i].slice >= slices_ || (i > 0 && e[i].slice <= e[i - 1].slice)) {
        throw std::invalid_argument("DataCube: pixel entries must be sorted and in range");
      }
    }
  }
}

int32_t DataCube::at(std::size_t slice, uint32_t x, uint32_t y) const
{
  if (slice >= slices_ || !geometry_.contains(x, y)) {
    throw std::out_of_range("DataCube::at");
  }
  const auto e = pixel_entries(geometry_.index(x, y));
  const auto it = std::lower_bound(
    e.begin(), e.end(), slice, [](const CubeEntry & c, std::size_t s) { return c.slice < s; });
  return (it != e.end() && it->slice == slice) ? it->value : 0;
}

std::vector<int32_t> DataCube::slice(std::size_t s) const
{
  if (s >= slices_) {
    throw std::out_of_range("DataCube::slice");
  }
  std::vector<int32_t> out(pixel_count(), 0);
  for (std::size_t p = 0; p < pixel_count(); ++p) {
    for (const auto & e : pixel_entries(p)) {
      if (e.slice == s) {
        out[p] = e.value;
        break;
      }
      if (e.slice > s) {
        break;
      }
    }
  }
  return out;
}

void DataCube::pixel_series(std::size_t pixel, std::span<double> out) const
{
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto & e : pixel_entries(pixel)) {
    out[e.slice] = static_cast<double>(e.value);
  }
}

int64_t DataCube::grand_total() const
{
  int64_t total = 0;
  for (const auto & e : entries_) {
    total += e.value;
  }
  return total;
}

DataCube build_cube(const EventStream & stream, const CubeConfig & config)
{
  check_geometry(stream.geometry);
  if (config.k == 0) {
    throw std::invalid_argument("cube: k must be at least 1");
  }
  const std::size_t available = stream.events.size();
  const std::size_t nu = config.nu.value_or(available);
  const std::size_t used_nu = std::min(nu, available);
  const std::size_t r = used_nu / config.k;
  if (r == 0) {
    throw DataError(
      "cube: r = floor(" + std::to_string(used_nu) + " / " + std::to_string(config.k) +
      ") = 0; not enough events for one window");
  }
  if (r > std::numeric_limits<uint32_t>::max()) {
    throw DataError("cube: too many windows");
  }
  const auto & g = stream.geometry;
  const std::size_t n_pix = g.pixel_count();
  const std::size_t k = config.k;

  struct Triplet
  {
    std::size_t pixel;
    CubeEntry entry;
  };
  std::vector<Triplet> triplets;
  std::vector<int64_t> acc(n_pix, 0);
  std::vector<std::size_t> touched;
  touched.reserve(std::min(k, n_pix));
  std::vector<double> boundary(r + 1);
  boundary[0] = stream.events[0].t;

  for (std::size_t s = 0; s < r; ++s) {
    touched.clear();
    const std::size_t begin = s * k;
    for (std::size_t i = begin; i < begin + k; ++i) {
      const auto & ev = stream.events[i];
      if (!g.contains(ev.x, ev.y)) {
        throw DataError("cube: event " + std::to_string(i) + " lies outside the sensor geometry");
      }
      if (ev.p != 1 && ev.p != -1) {
        throw DataError("cube: event " + std::to_string(i) + " has invalid polarity");
      }
      const std::size_t pix = g.index(ev.x, ev.y);
      if (acc[pix] == 0) {
        // may be pushed twice if the sum returns to zero mid-window; deduplicated below
        touched.push_back(pix);
      }
      acc[pix] += ev.p;
    }
    for (const std::size_t pix : touched) {
      if (acc[pix] != 0) {
        triplets.push_back({pix, {static_cast<uint32_t>(s), static_cast<int32_t>(acc[pix])}});
        acc[pix] = 0;
      }
    }
    boundary[s + 1] = stream.events[begin + k - 1].t;
  }

  // counting sort by pixel; triplets are already in slice order
  std::vector<std::size_t> offsets(n_pix + 1, 0);
  for (const auto & t : triplets) {
    ++offsets[t.pixel + 1];
  }
  for (std::size_t p = 0; p < n_pix; ++p) {
    offsets[p + 1] += offsets[p];
  }
  std::vector<CubeEntry> entries(triplets.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto & t : triplets) {
    entries[cursor[t.pixel]++] = t.entry;
  }

  DataCube cube(g, r, k, std::move(boundary), std::move(offsets), std::move(entries));
  cube.set_nu_clamped(nu > available);
  return cube;
}

CubeStats cube_stats(const DataCube & cube)
{
  CubeStats stats;
  const std::size_t r = cube.slices();
  const std::size_t n_pix = cube.pixel_count();
  stats.slices.assign(r, SliceStats{});
  std::vector<std::size_t> nonzero(r, 0);
  std::vector<bool> seen(r, false);
  for (std::size_t p = 0; p < n_pix; ++p) {
    for (const auto & e : cube.pixel_entries(p)) {
      auto & s = stats.slices[e.slice];
      if (!seen[e.slice]) {
        s.min = s.max = e.value;
        seen[e.slice] = true;
      } else {
        s.min = std::min(s.min, e.value);
        s.max = std::max(s.max, e.value);
      }
      s.sum += e.value;
      ++nonzero[e.slice];
    }
  }
  std::size_t total_nonzero = 0;
  for (std::size_t i = 0; i < r; ++i) {
    auto & s = stats.slices[i];
    if (nonzero[i] < n_pix) {
      // zeros are present in the slice
      s.min = std::min(s.min, 0);
      s.max = std::max(s.max, 0);
    }
    s.zero_fraction = static_cast<double>(n_pix - nonzero[i]) / static_cast<double>(n_pix);
    total_nonzero += nonzero[i];
    stats.total += s.sum;
    if (i == 0) {
      stats.min = s.min;
      stats.max = s.max;
    } else {
      stats.min = std::min(stats.min, s.min);
      stats.max = std::max(stats.max, s.max);
    }
  }
  const double cells = static_cast<double>(r) * static_cast<double>(n_pix);
  stats.zero_fraction = (r == 0) ? 1.0 : (cells - static_cast<double>(total_nonzero)) / cells;
  return stats;
}

void write_cube_text(const DataCube & cube, std::ostream & sink)
{
  const auto & g = cube.geometry();
  sink << g.width << ' ' << g.height << ' ' << cube.slices() << ' ' << cube.k() << '\n';
  for (std::size_t s = 0; s < cube.slices(); ++s) {
    const auto grid = cube.slice(s);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (i > 0) {
        sink << ' ';
      }
      sink << grid[i];
    }
    sink << '\n';
  }
  if (!sink) {
    throw IoError("cube dump: write failure");
  }
}

void write_cube_file(const DataCube & cube, const std::filesystem::path & path)
{
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot create " + path.string());
  }
  write_cube_text(cube, out);
}

DataCube read_cube_text(std::istream & source)
{
  SensorGeometry g;
  std::size_t r = 0;
  std::size_t k = 0;
  if (!(source >> g.width >> g.height >> r >> k) || g.width == 0 || g.height == 0 || r == 0) {
    throw DataError("cube dump: bad header");
  }
  const std::size_t n_pix = g.pixel_count();
  std::vector<std::vector<CubeEntry>> per_pixel(n_pix);
  for (std::size_t s = 0; s < r; ++s) {
    for (std::size_t p = 0; p < n_pix; ++p) {
      int32_t v = 0;
      if (!(source >> v)) {
        throw DataError("cube dump: truncated at slice " + std::to_string(s));
      }
      if (v != 0) {
        per_pixel[p].push_back({static_cast<uint32_t>(s), v});
      }
    }
  }
  std::vector<std::size_t> offsets(n_pix + 1, 0);
  std::vector<CubeEntry> entries;
  for (std::size_t p = 0; p < n_pix; ++p) {
    entries.insert(entries.end(), per_pixel[p].begin(), per_pixel[p].end());
    offsets[p + 1] = entries.size();
  }
  std::vector<double> boundary(r + 1);
  for (std::size_t i = 0; i <= r; ++i) {
    boundary[i] = static_cast<double>(i);
  }
  return DataCube(g, r, k, std::move(boundary), std::move(offsets), std::move(entries));
}

}  // namespace evrecon
