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

#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "evrecon/errors.hpp"
#include "evrecon/event.hpp"
#include "evrecon/pipeline.hpp"

namespace evrecon::cli
{
namespace
{
const std::map<std::string, LambdaMode> kLambdaModes{
  {"sigmoid", LambdaMode::sigmoid}, {"maxabs", LambdaMode::max_abs}, {"exp", LambdaMode::exponential}};
const std::map<std::string, NormalizationMode> kNormModes{
  {"global", NormalizationMode::global}, {"perframe", NormalizationMode::per_frame}};
const std::map<std::string, ColorMode> kColorModes{
  {"gray", ColorMode::gray}, {"map", ColorMode::colormap}};
const std::map<std::string, PolarityConvention> kPolarity{
  {"signed", PolarityConvention::signed_unit}, {"zero01", PolarityConvention::zero_one}};
const std::map<std::string, SceneKind> kScenes{
  {"constant", SceneKind::constant}, {"ramp", SceneKind::ramp}, {"sine", SceneKind::sine}};

struct GeometryFlags
{
  uint32_t width{0};
  uint32_t height{0};
};

void add_geometry(CLI::App * cmd, GeometryFlags & g)
{
  cmd->add_option("--width", g.width, "Sensor width in pixels")
    ->required()
    ->check(CLI::PositiveNumber);
  cmd->add_option("--height", g.height, "Sensor height in pixels")
    ->required()
    ->check(CLI::PositiveNumber);
}

int report_failure(const std::exception & e, int code, std::ostream & err)
{
  err << "error: " << e.what() << '\n';
  return code;
}

}  // namespace

int run(int argc, const char * const * argv, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Event-camera frame reconstruction by per-pixel regularized least squares"};
  app.name("evrecon");
  app.require_subcommand(1);

  // reconstruct
  auto * rec = app.add_subcommand("reconstruct", "Reconstruct a frame stack from an event file");
  std::string rec_input;
  GeometryFlags rec_geom;
  std::size_t rec_k = 0;
  std::optional<std::size_t> rec_nu;
  std::string rec_lambda = "sigmoid";
  double rec_epsilon = 0.5;
  std::string rec_norm = "global";
  std::string rec_color = "gray";
  std::string rec_polarity = "zero01";
  bool rec_sort = false;
  std::string rec_out;
  unsigned rec_lanes = 0;
  std::string rec_dump;
  rec->add_option("--input", rec_input, "Event text file (t x y p per line)")->required();
  add_geometry(rec, rec_geom);
  rec->add_option("--k", rec_k, "Events per window")->required()->check(CLI::PositiveNumber);
  rec->add_option("--nu", rec_nu, "Total events to use (default: all)")
    ->check(CLI::PositiveNumber);
  rec->add_option("--lambda", rec_lambda, "Regularization weights")
    ->check(CLI::IsMember({"sigmoid", "maxabs", "exp"}));
  rec->add_option("--epsilon", rec_epsilon, "Floor for --lambda maxabs")
    ->check(CLI::PositiveNumber);
  rec->add_option("--norm", rec_norm, "Normalization scope")
    ->check(CLI::IsMember({"global", "perframe"}));
  rec->add_option("--color", rec_color, "Output encoding")->check(CLI::IsMember({"gray", "map"}));
  rec->add_option("--polarity", rec_polarity, "Polarity encoding of the input")
    ->check(CLI::IsMember({"signed", "zero01"}));
  rec->add_flag("--sort", rec_sort, "Stable-sort events by timestamp instead of rejecting");
  rec->add_option("--out", rec_out, "Output directory")->required();
  rec->add_option("--lanes", rec_lanes, "Worker threads (0 = all cores)");
  rec->add_option("--dump-cube", rec_dump, "Also write the data cube as text to this file");

  // simulate
  auto * sim = app.add_subcommand("simulate", "Simulate events from an analytic scene");
  std::string sim_scene;
  GeometryFlags sim_geom;
  double sim_threshold = 0.0;
  std::size_t sim_samples = 0;
  SceneParams scene;
  std::string sim_out;
  sim->add_option("--scene", sim_scene, "Scene pattern")
    ->required()
    ->check(CLI::IsMember({"constant", "ramp", "sine"}));
  add_geometry(sim, sim_geom);
  sim->add_option("--threshold", sim_threshold, "Contrast threshold c")
    ->required()
    ->check(CLI::PositiveNumber);
  sim->add_option("--samples", sim_samples, "Number of sample times")
    ->required()
    ->check(CLI::PositiveNumber);
  sim->add_option("--duration", scene.duration, "Seconds covered by the samples")->capture_default_str()
    ->check(CLI::PositiveNumber);
  sim->add_option("--amplitude", scene.amplitude, "Log-luminance amplitude (sine) or rise per period (ramp)")->capture_default_str();
  sim->add_option("--period", scene.period, "Period in seconds")->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--phase", scene.phase, "Phase step per row-major pixel index, radians")->capture_default_str();
  sim->add_option("--base", scene.base, "Base log-luminance")->capture_default_str();
  sim->add_option("--out", sim_out, "Output directory")->required();

  // info
  auto * info = app.add_subcommand("info", "Validate an event file and print statistics");
  std::string info_input;
  GeometryFlags info_geom;
  std::string info_polarity = "zero01";
  info->add_option("--input", info_input, "Event text file")->required();
  add_geometry(info, info_geom);
  info->add_option("--polarity", info_polarity, "Polarity encoding of the input")
    ->check(CLI::IsMember({"signed", "zero01"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError & e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App * shown = &app;
    for (const auto * sub : {rec, sim, info}) {
      if (sub->parsed()) {
        shown = sub;
      }
    }
    err << shown->help();
    return kUsage;
  }

  try {
    if (rec->parsed()) {
      ReconstructionConfig config;
      config.cube.k = rec_k;
      config.cube.nu = rec_nu;
      config.lambda.mode = kLambdaModes.at(rec_lambda);
      config.lambda.epsilon = rec_epsilon;
      config.normalization = kNormModes.at(rec_norm);
      config.color = kColorModes.at(rec_color);
      config.output_dir = rec_out;
      config.lanes = rec_lanes;
      if (!rec_dump.empty()) {
        config.cube_dump = rec_dump;
      }
      ParseOptions opts;
      opts.polarity = kPolarity.at(rec_polarity);
      opts.order = rec_sort ? OrderPolicy::stable_sort : OrderPolicy::reject;
      const auto stream = read_event_file(rec_input, {rec_geom.width, rec_geom.height}, opts);
      const auto report = run_reconstruct(stream, config);
      for (const auto & w : report.warnings) {
        err << "warning: " << w << '\n';
      }
      write_report(report, out);
      return kOk;
    }
    if (sim->parsed()) {
      scene.kind = kScenes.at(sim_scene);
      scene.geometry = {sim_geom.width, sim_geom.height};
      scene.samples = sim_samples;
      SimulatorConfig config{sim_threshold, scene.geometry};
      const auto report = run_simulate(scene, config, sim_out);
      out << "events: " << report.events << '\n'
          << "samples: " << report.samples << '\n'
          << "events_file: " << report.events_file.string() << '\n'
          << "ground_truth_file: " << report.ground_truth_file.string() << '\n';
      return kOk;
    }
    if (info->parsed()) {
      ParseOptions opts;
      opts.polarity = kPolarity.at(info_polarity);
      opts.order = OrderPolicy::keep;
      const auto stream = read_event_file(info_input, {info_geom.width, info_geom.height}, opts);
      const auto v = validate_stream(stream);
      out << "count: " << v.count << '\n'
          << "time_span: [" << v.t_first << ", " << v.t_last << "]\n"
          << "positive: " << v.positive << '\n'
          << "negative: " << v.negative << '\n'
          << "active_pixels: " << v.active_pixels << '\n'
          << "max_pixel_count: " << v.max_pixel_count << '\n'
          << "violations: " << v.violations.size() << '\n';
      for (const auto & viol : v.violations) {
        out << "violation: " << viol.message << '\n';
      }
      return v.ok() ? kOk : kData;
    }
  } catch (const StageError & e) {
    switch (e.kind()) {
      case StageError::Kind::config:
        return report_failure(e, kUsage, err);
      case StageError::Kind::io:
        return report_failure(e, kIo, err);
      case StageError::Kind::data:
        return report_failure(e, kData, err);
    }
  } catch (const IoError & e) {
    return report_failure(e, kIo, err);
  } catch (const std::filesystem::filesystem_error & e) {
    return report_failure(e, kIo, err);
  } catch (const DataError & e) {
    return report_failure(e, kData, err);
  } catch (const std::invalid_argument & e) {
    return report_failure(e, kUsage, err);
  } catch (const std::exception & e) {
    return report_failure(e, kData, err);
  }
  return kUsage;
}

}  // namespace evrecon::cli
