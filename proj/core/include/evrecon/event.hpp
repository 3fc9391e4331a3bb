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

#ifndef EVRECON_EVENT_HPP
#define EVRECON_EVENT_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace evrecon
{
/// One sensor firing. Timestamps are seconds; polarity is -1 or +1.
struct Event
{
  double t{0.0};
  uint32_t x{0};
  uint32_t y{0};
  int8_t p{1};

  friend bool operator==(const Event &, const Event &) = default;
};

struct SensorGeometry
{
  uint32_t width{1};
  uint32_t height{1};

  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
  bool contains(uint32_t x, uint32_t y) const { return x < width && y < height; }
  /// row-major pixel index
  std::size_t index(uint32_t x, uint32_t y) const
  {
    return static_cast<std::size_t>(y) * width + x;
  }

  friend bool operator==(const SensorGeometry &, const SensorGeometry &) = default;
};

/// Throws std::invalid_argument unless width and height are both positive.
void check_geometry(const SensorGeometry & geometry);

/// An ordered event sequence on a sensor. The container does not enforce its
/// invariants (in-bounds coordinates, non-decreasing timestamps, p in {-1,+1});
/// use validate_stream() to check them.
struct EventStream
{
  SensorGeometry geometry;
  std::vector<Event> events;

  std::size_t size() const { return events.size(); }
  bool empty() const { return events.empty(); }
};

enum class PolarityConvention { signed_unit, zero_one };

enum class OrderPolicy {
  reject,       ///< a decreasing timestamp is a parse error
  stable_sort,  ///< stable sort by timestamp after reading
  keep          ///< keep file order as-is (for inspection only)
};

struct ParseOptions
{
  PolarityConvention polarity{PolarityConvention::signed_unit};
  OrderPolicy order{OrderPolicy::reject};
};

/// Parses line-oriented "t x y p" text. Blank lines and lines whose first
/// non-blank character is '#' are skipped. Throws ParseError with the
/// offending line number.
EventStream parse_event_text(
  std::istream & source, const SensorGeometry & geometry, const ParseOptions & options = {});

/// Convenience wrapper: opens \p path (IoError on failure) and parses it.
EventStream read_event_file(
  const std::filesystem::path & path, const SensorGeometry & geometry,
  const ParseOptions & options = {});

/// Writes one "t x y p" line per event and returns the number of lines.
/// Timestamps use six decimals unless more digits are needed to read the
/// value back exactly.
std::size_t write_event_text(const EventStream & stream, std::ostream & sink);

std::size_t write_event_file(const EventStream & stream, const std::filesystem::path & path);

/// Formats a timestamp the way write_event_text does.
std::string format_timestamp(double t);

struct Violation
{
  std::size_t index;
  std::string message;
};

struct ValidationReport
{
  std::size_t count{0};
  double t_first{0.0};
  double t_last{0.0};
  std::size_t max_pixel_count{0};
  std::size_t positive{0};
  std::size_t negative{0};
  std::size_t active_pixels{0};
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks every EventStream invariant and records each violation with its
/// index. Never throws on bad data.
ValidationReport validate_stream(const EventStream & stream);

}  // namespace evrecon

#endif  // EVRECON_EVENT_HPP
