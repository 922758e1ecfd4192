#pragma once

#include <map>
#include <optional>
#include <string>

#include "enex/geometry.hpp"

namespace enex {

/// Where a track first appeared: the open scene, or out of the private area.
enum class Origin { Scene, PrivateArea };

/// Where a track last appeared: back into the scene edge, or into the private area.
enum class Sink { Scene, PrivateArea };

enum class EventKind { Entry, Exit, JustAppeared, ReEntry };

enum class TrackState { Tentative, Confirmed, Missing, Terminated };

/// One detector output box for one frame of one camera.
/// Camera 0 faces the entrance; camera 1 is the opposite view.
struct Detection {
  int frame = 0;
  BoundingBox box;
  double score = 1.0;
  int camera = 0;
  bool synthesized = false;  // true when filled in from the opposite view
};

/// One individual's trajectory. `boxes` holds the observed box per assigned
/// frame; frames with no assignment have no entry.
struct Track {
  int id = 0;
  std::map<int, BoundingBox> boxes;
  TrackState state = TrackState::Tentative;
  int t_enter_scene = 0;                 // first frame in boxes
  std::optional<int> t_exit_scene;       // last assigned frame, set at termination
  std::optional<Origin> origin;
  std::optional<Sink> sink;

  bool empty() const { return boxes.empty(); }
  const BoundingBox& first_box() const { return boxes.begin()->second; }
  const BoundingBox& last_box() const { return boxes.rbegin()->second; }
  int first_frame() const { return boxes.begin()->first; }
  int last_frame() const { return boxes.rbegin()->first; }
};

/// Classified outcome of a finished track.
struct EventRecord {
  int track_id = 0;
  EventKind event = EventKind::JustAppeared;
  Origin origin = Origin::Scene;
  Sink sink = Sink::Scene;
  int t_enter_scene = 0;
  int t_exit_scene = 0;
  double enter_seconds = 0.0;  // t_enter_scene / fps
  double exit_seconds = 0.0;   // t_exit_scene / fps
};

std::string to_string(Origin o);
std::string to_string(Sink s);
std::string to_string(EventKind k);
std::string to_string(TrackState s);

std::optional<EventKind> parse_event_kind(const std::string& s);

}  // namespace enex
