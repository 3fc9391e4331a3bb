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

#include "evrecon/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <new>
#include <ostream>
#include <sstream>
#include <system_error>

#include "evrecon/errors.hpp"
#include "evrecon/parallel.hpp"
#include "evrecon/solver.hpp"

namespace evrecon
{
namespace
{
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

const char * mode_name(LambdaMode m)
{
  switch (m) {
    case LambdaMode::sigmoid:
      return "sigmoid";
    case LambdaMode::max_abs:
      return "maxabs";
    case LambdaMode::exponential:
      return "exp";
  }
  return "?";
}

// Removes everything this run created unless commit() is reached.
class OutputGuard
{
public:
  explicit OutputGuard(fs::path dir) : dir_(std::move(dir)) {}
  OutputGuard(const OutputGuard &) = delete;
  OutputGuard & operator=(const OutputGuard &) = delete;
  ~OutputGuard()
  {
    if (!committed_) {
      rollback();
    }
  }

  void open()
  {
    std::error_code ec;
    if (!fs::exists(dir_, ec)) {
      fs::create_directories(dir_);
      created_ = true;
    } else if (!fs::is_directory(dir_, ec)) {
      throw IoError(dir_.string() + " exists and is not a directory");
    }
  }
  void track(const fs::path & p) { files_.push_back(p); }
  void commit() { committed_ = true; }

  void rollback()
  {
    std::error_code ec;
    for (const auto & f : files_) {
      fs::remove(f, ec);
    }
    files_.clear();
    if (created_ && fs::is_empty(dir_, ec)) {
      fs::remove(dir_, ec);
    }
  }

private:
  fs::path dir_;
  std::vector<fs::path> files_;
  bool created_{false};
  bool committed_{false};
};

template <typename Fn>
void run_stage(const char * name, RunReport & report, OutputGuard & guard, Fn && fn)
{
  const auto t0 = Clock::now();
  try {
    fn();
  } catch (const StageError &) {
    guard.rollback();
    throw;
  } catch (const std::invalid_argument & e) {
    guard.rollback();
    throw StageError(name, StageError::Kind::config, e.what());
  } catch (const IoError & e) {
    guard.rollback();
    throw StageError(name, StageError::Kind::io, e.what());
  } catch (const fs::filesystem_error & e) {
    guard.rollback();
    throw StageError(name, StageError::Kind::io, e.what());
  } catch (const std::bad_alloc &) {
    guard.rollback();
    throw StageError(name, StageError::Kind::data, "out of memory");
  } catch (const std::exception & e) {
    guard.rollback();
    throw StageError(name, StageError::Kind::data, e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  for (auto & [stage, t] : report.stage_seconds) {
    if (stage == name) {
      t += secs;
      return;
    }
  }
  report.stage_seconds.emplace_back(name, secs);
}

struct Range
{
  std::vector<double> lo;
  std::vector<double> hi;
  double global_lo{std::numeric_limits<double>::infinity()};
  double global_hi{-std::numeric_limits<double>::infinity()};
  bool nonfinite{false};

  explicit Range(std::size_t n)
  : lo(n, std::numeric_limits<double>::infinity()), hi(n, -std::numeric_limits<double>::infinity())
  {
  }
};

}  // namespace

void write_report(const RunReport & report, std::ostream & sink)
{
  sink << "events_read: " << report.events_read << '\n'
       << "events_used: " << report.events_used << '\n'
       << "events_discarded: " << report.events_discarded << '\n'
       << "k: " << report.k << '\n'
       << "r: " << report.r << '\n'
       << "n_frames: " << report.n_frames << '\n'
       << "lambda: " << report.lambda_mode << '\n'
       << "nu_clamped: " << (report.nu_clamped ? "true" : "false") << '\n'
       << "cube_total: " << report.cube.total << '\n'
       << "cube_min: " << report.cube.min << '\n'
       << "cube_max: " << report.cube.max << '\n'
       << "cube_zero_fraction: " << report.cube.zero_fraction << '\n'
       << "value_min: " << report.value_min << '\n'
       << "value_max: " << report.value_max << '\n'
       << "encode_passes: " << report.encode_passes << '\n'
       << "files_written: " << report.files_written << '\n';
  for (const auto & [stage, secs] : report.stage_seconds) {
    sink << "time_" << stage << "_s: " << secs << '\n';
  }
  for (const auto & w : report.warnings) {
    sink << "warning: " << w << '\n';
  }
}

RunReport run_reconstruct(const EventStream & stream, const ReconstructionConfig & config)
{
  RunReport report;
  report.events_read = stream.size();
  report.lambda_mode = mode_name(config.lambda.mode);
  OutputGuard guard(config.output_dir);

  run_stage("validate", report, guard, [&] {
    if (config.output_dir.empty()) {
      throw std::invalid_argument("output directory not set");
    }
    const auto v = validate_stream(stream);
    if (!v.ok()) {
      throw DataError(
        "invalid event stream (" + std::to_string(v.violations.size()) +
        " violations): " + v.violations.front().message);
    }
  });

  DataCube cube;
  run_stage("cube", report, guard, [&] {
    cube = build_cube(stream, config.cube);
    report.k = cube.k();
    report.r = cube.slices();
    report.n_frames = report.r + 1;
    report.events_used = report.r * report.k;
    report.events_discarded =
      std::min(config.cube.nu.value_or(stream.size()), stream.size()) - report.events_used;
    report.nu_clamped = cube.nu_clamped();
    if (cube.nu_clamped()) {
      report.warnings.push_back(
        "nu=" + std::to_string(*config.cube.nu) + " exceeds the " + std::to_string(stream.size()) +
        " events available; using all of them");
    }
    report.cube = cube_stats(cube);
    report.cube.slices.clear();
  });

  run_stage("output", report, guard, [&] {
    guard.open();
    if (config.cube_dump) {
      guard.track(*config.cube_dump);
      write_cube_file(cube, *config.cube_dump);
    }
  });

  LambdaField lambda;
  run_stage("lambda", report, guard, [&] { lambda = compute_lambda(cube, config.lambda); });

  const std::size_t n = report.n_frames;
  const std::size_t n_pix = cube.pixel_count();
  const unsigned lanes = resolve_lanes(config.lanes);
  const bool per_frame = config.normalization == NormalizationMode::per_frame;

  // first pass: value range for normalization
  Range range(per_frame ? n : 1);
  run_stage("solve", report, guard, [&] {
    std::vector<Range> lane_range(lanes, Range(per_frame ? n : 1));
    solve_each(cube, lambda, lanes, [&](unsigned lane, std::size_t, std::span<const double> v) {
      auto & lr = lane_range[lane];
      double plo = lr.global_lo;
      double phi = lr.global_hi;
      for (std::size_t f = 0; f < v.size(); ++f) {
        const double x = v[f];
        if (!std::isfinite(x)) {
          lr.nonfinite = true;
          continue;
        }
        plo = std::min(plo, x);
        phi = std::max(phi, x);
        if (per_frame) {
          lr.lo[f] = std::min(lr.lo[f], x);
          lr.hi[f] = std::max(lr.hi[f], x);
        }
      }
      lr.global_lo = plo;
      lr.global_hi = phi;
    });
    for (const auto & lr : lane_range) {
      range.nonfinite = range.nonfinite || lr.nonfinite;
      range.global_lo = std::min(range.global_lo, lr.global_lo);
      range.global_hi = std::max(range.global_hi, lr.global_hi);
      for (std::size_t i = 0; i < range.lo.size(); ++i) {
        range.lo[i] = std::min(range.lo[i], lr.lo[i]);
        range.hi[i] = std::max(range.hi[i], lr.hi[i]);
      }
    }
    if (range.nonfinite) {
      throw DataError("solution contains non-finite values");
    }
    if (!per_frame) {
      range.lo[0] = range.global_lo;
      range.hi[0] = range.global_hi;
    }
    report.value_min = range.global_lo;
    report.value_max = range.global_hi;
  });

  // second pass(es): re-solve, normalize, quantize into frame-major staging, write
  const bool color = config.color == ColorMode::colormap;
  const std::size_t channels = color ? 3 : 1;
  const std::size_t frame_bytes = n_pix * channels;
  const std::size_t frames_per_pass =
    std::clamp<std::size_t>(config.frame_buffer_bytes / frame_bytes, 1, n);
  const ColorMap cmap = ColorMap::default_map();
  const auto & g = cube.geometry();
  std::vector<uint8_t> staging;

  for (std::size_t f0 = 0; f0 < n; f0 += frames_per_pass) {
    const std::size_t f1 = std::min(n, f0 + frames_per_pass);
    ++report.encode_passes;
    run_stage("normalize", report, guard, [&] {
      staging.assign((f1 - f0) * frame_bytes, 0);
      solve_each(cube, lambda, lanes, [&](unsigned, std::size_t p, std::span<const double> v) {
        for (std::size_t f = f0; f < f1; ++f) {
          const std::size_t ri = per_frame ? f : 0;
          const double u = normalize_value(v[f], range.lo[ri], range.hi[ri]);
          if (color) {
            const Rgb c = apply_colormap(u, cmap);
            uint8_t * dst = &staging[(f - f0) * frame_bytes + 3 * p];
            dst[0] = c[0];
            dst[1] = c[1];
            dst[2] = c[2];
          } else {
            staging[(f - f0) * frame_bytes + p] = to_gray_byte(u);
          }
        }
      });
    });
    run_stage("encode", report, guard, [&] {
      for (std::size_t f = f0; f < f1; ++f) {
        const fs::path path = config.output_dir / frame_file_name(f, color);
        guard.track(path);
        std::ofstream out(path, std::ios::binary);
        if (!out) {
          throw IoError("cannot create " + path.string());
        }
        const std::span<const uint8_t> bytes(&staging[(f - f0) * frame_bytes], frame_bytes);
        if (color) {
          write_ppm_bytes(g.width, g.height, bytes, out);
        } else {
          write_pgm_bytes(g.width, g.height, bytes, out);
        }
        out.close();
        if (!out) {
          throw IoError("write failure on " + path.string());
        }
        ++report.files_written;
      }
    });
  }

  run_stage("report", report, guard, [&] {
    const fs::path path = config.output_dir / "report.txt";
    guard.track(path);
    std::ofstream out(path);
    write_report(report, out);
    out.close();
    if (!out) {
      throw IoError("write failure on " + path.string());
    }
  });
  guard.commit();
  return report;
}

void write_ground_truth(const LuminanceSignal & signal, std::ostream & sink)
{
  const std::size_t n_pix = signal.geometry.pixel_count();
  char buf[32];
  for (std::size_t s = 0; s < signal.sample_count(); ++s) {
    sink << format_timestamp(signal.sample_times[s]);
    for (std::size_t p = 0; p < n_pix; ++p) {
      std::snprintf(buf, sizeof(buf), " %.17g", std::log(signal.at(s, p)));
      sink << buf;
    }
    sink << '\n';
  }
  if (!sink) {
    throw IoError("ground truth: write failure");
  }
}

GroundTruth read_ground_truth(std::istream & source, const SensorGeometry & geometry)
{
  check_geometry(geometry);
  GroundTruth gt;
  gt.geometry = geometry;
  const std::size_t n_pix = geometry.pixel_count();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::istringstream ls(line);
    double t = 0.0;
    if (!(ls >> t)) {
      throw ParseError(line_no, "bad timestamp");
    }
    gt.times.push_back(t);
    for (std::size_t p = 0; p < n_pix; ++p) {
      double v = 0.0;
      if (!(ls >> v)) {
        throw ParseError(line_no, "expected " + std::to_string(n_pix) + " log-luminance values");
      }
      gt.log_values.push_back(v);
    }
  }
  return gt;
}

SimulateReport run_simulate(
  const SceneParams & scene, const SimulatorConfig & config, const fs::path & output_dir)
{
  if (!(scene.geometry == config.geometry)) {
    throw std::invalid_argument("simulate: scene and sensor geometry differ");
  }
  const auto signal = make_scene(scene);
  const auto stream = simulate_scene(signal, config);

  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec) {
    throw IoError("cannot create " + output_dir.string() + ": " + ec.message());
  }
  SimulateReport report;
  report.samples = signal.sample_count();
  report.events_file = output_dir / "events.txt";
  report.ground_truth_file = output_dir / "ground_truth.txt";
  report.events = write_event_file(stream, report.events_file);
  std::ofstream gt(report.ground_truth_file);
  if (!gt) {
    throw IoError("cannot create " + report.ground_truth_file.string());
  }
  write_ground_truth(signal, gt);
  return report;
}

}  // namespace evrecon
