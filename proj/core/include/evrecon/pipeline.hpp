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

#ifndef EVRECON_PIPELINE_HPP
#define EVRECON_PIPELINE_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "evrecon/datacube.hpp"
#include "evrecon/event.hpp"
#include "evrecon/regularization.hpp"
#include "evrecon/render.hpp"
#include "evrecon/simulator.hpp"

namespace evrecon
{
enum class ColorMode { gray, colormap };

struct ReconstructionConfig
{
  CubeConfig cube;
  LambdaConfig lambda;
  NormalizationMode normalization{NormalizationMode::global};
  ColorMode color{ColorMode::gray};
  std::filesystem::path output_dir;
  /// 0 = all hardware threads. Output bytes do not depend on this.
  unsigned lanes{0};
  /// Upper bound on the encoded-frame staging buffer. Larger stacks are
  /// encoded in several passes, each re-solving every pixel.
  std::size_t frame_buffer_bytes{std::size_t{1} << 30};
  /// Optional text dump of the data cube.
  std::optional<std::filesystem::path> cube_dump;
};

struct RunReport
{
  std::size_t events_read{0};
  std::size_t events_used{0};
  std::size_t events_discarded{0};
  std::size_t k{0};
  std::size_t r{0};
  std::size_t n_frames{0};
  bool nu_clamped{false};
  std::string lambda_mode;
  CubeStats cube;
  double value_min{0.0};  ///< raw solution range before normalization
  double value_max{0.0};
  std::size_t encode_passes{0};
  std::size_t files_written{0};
  std::vector<std::pair<std::string, double>> stage_seconds;
  std::vector<std::string> warnings;
};

/// "key: value" lines.
void write_report(const RunReport & report, std::ostream & sink);

/// Failure of one pipeline stage. Partial outputs are removed before this is thrown.
class StageError : public std::runtime_error
{
public:
  enum class Kind { config, data, io };

  StageError(std::string stage, Kind kind, const std::string & cause)
  : std::runtime_error("stage " + stage + ": " + cause), stage_(std::move(stage)), kind_(kind)
  {
  }
  const std::string & stage() const { return stage_; }
  Kind kind() const { return kind_; }

private:
  std::string stage_;
  Kind kind_;
};

/// validate -> build_cube -> compute_lambda -> solve -> normalize -> encode.
/// Writes frame_%06d.pgm (or .ppm) and report.txt into config.output_dir.
RunReport run_reconstruct(const EventStream & stream, const ReconstructionConfig & config);

struct SimulateReport
{
  std::size_t events{0};
  std::size_t samples{0};
  std::filesystem::path events_file;
  std::filesystem::path ground_truth_file;
};

/// Simulates an analytic scene and writes events.txt plus ground_truth.txt
/// into \p output_dir.
SimulateReport run_simulate(
  const SceneParams & scene, const SimulatorConfig & config,
  const std::filesystem::path & output_dir);

/// One line per sample: timestamp, then the row-major log-luminance values.
void write_ground_truth(const LuminanceSignal & signal, std::ostream & sink);

struct GroundTruth
{
  SensorGeometry geometry;
  std::vector<double> times;
  std::vector<double> log_values;  ///< sample-major, like LuminanceSignal::samples
};

GroundTruth read_ground_truth(std::istream & source, const SensorGeometry & geometry);

}  // namespace evrecon

#endif  // EVRECON_PIPELINE_HPP
