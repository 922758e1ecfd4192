#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "enex/entrance.hpp"
#include "enex/fusion.hpp"
#include "enex/synth.hpp"
#include "enex/tracker.hpp"

namespace enex {

/// Everything one `run` needs, read from a flat `key = value` config file
/// with [section] headers (schema in the README).
struct PipelineConfig {
  SceneRegion scene{1920.0, 1080.0};
  EntranceConfig entrance;
  TrackerConfig tracker;
  double fps = 20.0;

  bool fusion_enabled = false;
  std::optional<Homography> cam0_from_cam1;
  FusionConfig fusion;

  std::string detections_path;
  std::string ground_truth_path;  // empty = no evaluation
  std::string output_dir = "out";
};

PipelineConfig load_pipeline_config(const std::string& path);

/// Entrance must lie inside the scene; referenced input files must exist.
void validate_config(const PipelineConfig& cfg, bool check_paths = true);

/// Scenario scripts use the same `key = value` syntax with nested
/// `person { ... }` blocks.
ScenarioScript load_script(const std::string& path);
void write_script(std::ostream& os, const ScenarioScript& script);

}  // namespace enex
