#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "enex/homography.hpp"
#include "enex/types.hpp"

namespace enex {

/// One scripted walker. The box center follows the waypoint polyline at
/// `speed` px/frame; the person is on screen from t_start until the path
/// runs out.
struct PersonScript {
  int id = 0;
  EventKind kind = EventKind::JustAppeared;
  int t_start = 0;
  double speed = 5.0;
  double box_w = 60.0;
  double box_h = 120.0;
  std::vector<Point2> waypoints;
  /// Frames (inclusive range) where the entrance camera cannot see this
  /// person even though the opposite camera can.
  std::optional<std::pair<int, int>> hidden_cam0;
};

struct NoiseModel {
  double pos_sigma = 0.0;   // px, on the box center
  double miss_prob = 0.0;   // per person per frame per camera
  double fp_rate = 0.0;     // expected false positives per frame (camera 0)
};

struct ScenarioScript {
  SceneRegion scene{1920.0, 1080.0};
  EntranceRegion entrance;
  double fps = 20.0;
  int duration_frames = 0;
  int cameras = 1;  // 2 adds the opposite view
  std::vector<PersonScript> persons;
  NoiseModel noise;
  std::uint64_t seed = 0;
  Homography cam1_from_cam0;  // used only when cameras == 2
};

struct Simulation {
  std::vector<Detection> detections;  // sorted by (frame, camera), script order within
  std::vector<Track> gt_tracks;       // noise-free, camera-0 coordinates
  std::vector<EventRecord> gt_events;
};

/// Renders the script into detections plus ground truth. Deterministic for a
/// fixed script and seed. Throws InvalidScript when a path does not produce
/// its declared event kind under the strict containment rule, or when a
/// person outlives the scenario.
Simulation generate(const ScenarioScript& script);

}  // namespace enex
