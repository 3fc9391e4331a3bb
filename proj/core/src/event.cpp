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

#include "evrecon/event.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string_view>

#include "evrecon/errors.hpp"

namespace evrecon
{
namespace
{
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

// splits on blanks; returns the number of fields found (stops collecting at max)
std::size_t split_fields(std::string_view line, std::string_view * out, std::size_t max)
{
  std::size_t n = 0;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) {
      ++i;
    }
    if (i == line.size()) {
      break;
    }
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) {
      ++i;
    }
    if (n < max) {
      out[n] = line.substr(start, i - start);
    }
    ++n;
  }
  return n;
}

template <typename T>
bool parse_number(std::string_view field, T & value)
{
  if (!field.empty() && field.front() == '+') {
    field.remove_prefix(1);
  }
  const auto * first = field.data();
  const auto * last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

}  // namespace

void check_geometry(const SensorGeometry & geometry)
{
  if (geometry.width == 0 || geometry.height == 0) {
    throw std::invalid_argument("sensor geometry must be at least 1x1");
  }
}

EventStream parse_event_text(
  std::istream & source, const SensorGeometry & geometry, const ParseOptions & options)
{
  check_geometry(geometry);
  EventStream stream{geometry, {}};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    std::string_view view(line);
    const auto first = view.find_first_not_of(" \t\r\v\f");
    if (first == std::string_view::npos || view[first] == '#') {
      continue;
    }
    std::string_view fields[4];
    const std::size_t n = split_fields(view, fields, 4);
    if (n != 4) {
      throw ParseError(line_no, "expected 4 fields \"t x y p\", found " + std::to_string(n));
    }
    Event ev;
    if (!parse_number(fields[0], ev.t)) {
      throw ParseError(line_no, "bad timestamp '" + std::string(fields[0]) + "'");
    }
    if (!std::isfinite(ev.t) || ev.t < 0.0) {
      throw ParseError(line_no, "timestamp must be finite and non-negative");
    }
    if (!parse_number(fields[1], ev.x) || !parse_number(fields[2], ev.y)) {
      throw ParseError(line_no, "bad pixel coordinates");
    }
    if (!geometry.contains(ev.x, ev.y)) {
      throw ParseError(
        line_no, "pixel (x=" + std::to_string(ev.x) + ", y=" + std::to_string(ev.y) +
                   ") out of bounds for " + std::to_string(geometry.width) + "x" +
                   std::to_string(geometry.height));
    }
    int p = 0;
    if (!parse_number(fields[3], p)) {
      throw ParseError(line_no, "bad polarity '" + std::string(fields[3]) + "'");
    }
    if (options.polarity == PolarityConvention::zero_one) {
      if (p != 0 && p != 1) {
        throw ParseError(line_no, "polarity must be 0 or 1, got " + std::to_string(p));
      }
      ev.p = (p == 1) ? 1 : -1;
    } else {
      if (p != -1 && p != 1) {
        throw ParseError(line_no, "polarity must be -1 or 1, got " + std::to_string(p));
      }
      ev.p = static_cast<int8_t>(p);
    }
    if (
      options.order == OrderPolicy::reject && !stream.events.empty() &&
      ev.t < stream.events.back().t) {
      throw ParseError(line_no, "decreasing timestamp (pass the sort option to reorder)");
    }
    stream.events.push_back(ev);
  }
  if (source.bad()) {
    throw IoError("read failure after line " + std::to_string(line_no));
  }
  if (options.order == OrderPolicy::stable_sort) {
    std::stable_sort(
      stream.events.begin(), stream.events.end(),
      [](const Event & a, const Event & b) { return a.t < b.t; });
  }
  return stream;
}

EventStream read_event_file(
  const std::filesystem::path & path, const SensorGeometry & geometry,
  const ParseOptions & options)
{
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  return parse_event_text(in, geometry, options);
}

std::string format_timestamp(double t)
{
  char buf[64];
  const int n = std::snprintf(buf, sizeof(buf), "%.6f", t);
  double back = 0.0;
  auto [ptr, ec] = std::from_chars(buf, buf + n, back);
  if (ec == std::errc() && back == t) {
    return std::string(buf, static_cast<std::size_t>(n));
  }
  auto res = std::to_chars(buf, buf + sizeof(buf), t);
  return std::string(buf, res.ptr);
}

std::size_t write_event_text(const EventStream & stream, std::ostream & sink)
{
  std::size_t lines = 0;
  std::string line;
  for (const auto & ev : stream.events) {
    line = format_timestamp(ev.t);
    line += ' ';
    line += std::to_string(ev.x);
    line += ' ';
    line += std::to_string(ev.y);
    line += ' ';
    line += std::to_string(static_cast<int>(ev.p));
    line += '\n';
    sink.write(line.data(), static_cast<std::streamsize>(line.size()));
    if (!sink) {
      throw IoError("event sink write failure at line " + std::to_string(lines + 1));
    }
    ++lines;
  }
  return lines;
}

std::size_t write_event_file(const EventStream & stream, const std::filesystem::path & path)
{
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot create " + path.string());
  }
  const auto n = write_event_text(stream, out);
  out.flush();
  if (!out) {
    throw IoError("write failure on " + path.string());
  }
  return n;
}

ValidationReport validate_stream(const EventStream & stream)
{
  ValidationReport report;
  report.count = stream.events.size();
  const auto & g = stream.geometry;
  if (g.width == 0 || g.height == 0) {
    report.violations.push_back({0, "empty sensor geometry"});
  }
  std::vector<std::size_t> per_pixel(g.pixel_count(), 0);
  bool have_time = false;
  for (std::size_t i = 0; i < stream.events.size(); ++i) {
    const auto & ev = stream.events[i];
    if (!std::isfinite(ev.t)) {
      report.violations.push_back({i, "non-finite timestamp at index " + std::to_string(i)});
    } else {
      if (ev.t < 0.0) {
        report.violations.push_back({i, "negative timestamp at index " + std::to_string(i)});
      }
      if (!have_time) {
        report.t_first = report.t_last = ev.t;
        have_time = true;
      } else {
        report.t_first = std::min(report.t_first, ev.t);
        report.t_last = std::max(report.t_last, ev.t);
      }
    }
    if (i > 0 && ev.t < stream.events[i - 1].t) {
      report.violations.push_back({i, "decreasing timestamp at index " + std::to_string(i)});
    }
    if (ev.p == 1) {
      ++report.positive;
    } else if (ev.p == -1) {
      ++report.negative;
    } else {
      report.violations.push_back(
        {i, "invalid polarity " + std::to_string(static_cast<int>(ev.p)) + " at index " +
              std::to_string(i)});
    }
    if (!g.contains(ev.x, ev.y)) {
      report.violations.push_back(
        {i, "pixel (" + std::to_string(ev.x) + ", " + std::to_string(ev.y) +
              ") out of bounds at index " + std::to_string(i)});
    } else {
      auto & c = per_pixel[g.index(ev.x, ev.y)];
      if (c++ == 0) {
        ++report.active_pixels;
      }
      report.max_pixel_count = std::max(report.max_pixel_count, c);
    }
  }
  return report;
}

}  // namespace evrecon
