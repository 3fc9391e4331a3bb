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

#include "evrecon/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "evrecon/errors.hpp"

namespace evrecon
{
namespace
{
void check_finite(const FrameStack & stack)
{
  for (double v : stack.data) {
    if (!std::isfinite(v)) {
      throw DataError("normalize: frame stack contains non-finite values");
    }
  }
}

std::string netpbm_header(const char * magic, uint32_t width, uint32_t height)
{
  return std::string(magic) + "\n" + std::to_string(width) + " " + std::to_string(height) +
         "\n255\n";
}

}  // namespace

FrameStack normalize(const FrameStack & stack, NormalizationMode mode)
{
  check_finite(stack);
  FrameStack out = stack;
  const std::size_t n = stack.n_frames;
  const std::size_t n_pix = stack.geometry.pixel_count();
  if (stack.data.empty() || n == 0) {
    return out;
  }
  if (mode == NormalizationMode::global) {
    const auto [lo, hi] = std::minmax_element(stack.data.begin(), stack.data.end());
    for (auto & v : out.data) {
      v = normalize_value(v, *lo, *hi);
    }
    return out;
  }
  std::vector<double> lo(n, 0.0);
  std::vector<double> hi(n, 0.0);
  for (std::size_t f = 0; f < n; ++f) {
    lo[f] = hi[f] = stack.data[f];
  }
  for (std::size_t p = 1; p < n_pix; ++p) {
    for (std::size_t f = 0; f < n; ++f) {
      const double v = stack.data[p * n + f];
      lo[f] = std::min(lo[f], v);
      hi[f] = std::max(hi[f], v);
    }
  }
  for (std::size_t p = 0; p < n_pix; ++p) {
    for (std::size_t f = 0; f < n; ++f) {
      auto & v = out.data[p * n + f];
      v = normalize_value(v, lo[f], hi[f]);
    }
  }
  return out;
}

uint8_t to_gray_byte(double v)
{
  const double c = std::clamp(v, 0.0, 1.0);
  return static_cast<uint8_t>(std::round(255.0 * c));
}

ColorMap::ColorMap(std::vector<ColorAnchor> anchors)
: anchors_(std::move(anchors))
{
  if (anchors_.size() < 2 || anchors_.front().position != 0.0 || anchors_.back().position != 1.0) {
    throw std::invalid_argument("colormap: anchors must run from 0 to 1");
  }
  for (std::size_t i = 1; i < anchors_.size(); ++i) {
    if (!(anchors_[i].position > anchors_[i - 1].position)) {
      throw std::invalid_argument("colormap: anchor positions must be strictly increasing");
    }
  }
}

ColorMap ColorMap::default_map()
{
  return ColorMap({{0.0, {0, 0, 255}}, {0.5, {0, 255, 0}}, {1.0, {255, 0, 0}}});
}

Rgb apply_colormap(double value, const ColorMap & map)
{
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument("colormap: value outside [0, 1]");
  }
  const auto & a = map.anchors();
  std::size_t hi = 1;
  while (hi + 1 < a.size() && a[hi].position < value) {
    ++hi;
  }
  const auto & lo_anchor = a[hi - 1];
  const auto & hi_anchor = a[hi];
  if (value == lo_anchor.position) {
    return lo_anchor.rgb;
  }
  if (value == hi_anchor.position) {
    return hi_anchor.rgb;
  }
  const double t = (value - lo_anchor.position) / (hi_anchor.position - lo_anchor.position);
  Rgb out{};
  for (std::size_t c = 0; c < 3; ++c) {
    const double c0 = lo_anchor.rgb[c];
    const double c1 = hi_anchor.rgb[c];
    out[c] = static_cast<uint8_t>(std::clamp(std::round(c0 + (c1 - c0) * t), 0.0, 255.0));
  }
  return out;
}

void write_pgm_bytes(
  uint32_t width, uint32_t height, std::span<const uint8_t> pixels, std::ostream & sink)
{
  if (pixels.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("pgm: pixel count does not match dimensions");
  }
  const auto header = netpbm_header("P5", width, height);
  sink.write(header.data(), static_cast<std::streamsize>(header.size()));
  sink.write(
    reinterpret_cast<const char *>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
  if (!sink) {
    throw IoError("pgm: write failure");
  }
}

void write_ppm_bytes(
  uint32_t width, uint32_t height, std::span<const uint8_t> rgb, std::ostream & sink)
{
  if (rgb.size() != 3 * static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("ppm: pixel count does not match dimensions");
  }
  const auto header = netpbm_header("P6", width, height);
  sink.write(header.data(), static_cast<std::streamsize>(header.size()));
  sink.write(reinterpret_cast<const char *>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
  if (!sink) {
    throw IoError("ppm: write failure");
  }
}

void write_pgm(const SensorGeometry & geometry, std::span<const double> frame, std::ostream & sink)
{
  std::vector<uint8_t> bytes(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) {
    if (!(frame[i] >= 0.0 && frame[i] <= 1.0)) {
      throw std::invalid_argument("pgm: values must be normalized to [0, 1]");
    }
    bytes[i] = to_gray_byte(frame[i]);
  }
  write_pgm_bytes(geometry.width, geometry.height, bytes, sink);
}

void write_ppm(const SensorGeometry & geometry, std::span<const Rgb> frame, std::ostream & sink)
{
  std::vector<uint8_t> bytes;
  bytes.reserve(frame.size() * 3);
  for (const auto & px : frame) {
    bytes.insert(bytes.end(), px.begin(), px.end());
  }
  write_ppm_bytes(geometry.width, geometry.height, bytes, sink);
}

std::string frame_file_name(std::size_t index, bool color)
{
  char buf[48];
  std::snprintf(buf, sizeof(buf), "frame_%06zu.%s", index, color ? "ppm" : "pgm");
  return buf;
}

void write_binary_file(const std::filesystem::path & path, std::span<const char> bytes)
{
  std::FILE * f = std::fopen(path.c_str(), "wb");
  if (f == nullptr) {
    throw IoError("cannot create " + path.string());
  }
  const std::size_t written = std::fwrite(bytes.data(), 1, bytes.size(), f);
  const bool closed = std::fclose(f) == 0;
  const bool ok = written == bytes.size() && closed;
  if (!ok) {
    throw IoError("write failure on " + path.string());
  }
}

}  // namespace evrecon
