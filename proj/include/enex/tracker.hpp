#pragma once

#include <utility>
#include <vector>

#include "enex/kalman.hpp"
#include "enex/types.hpp"

namespace enex {

struct TrackerConfig {
  int max_missing_frames = 20;  // 1 s at 20 fps
  int min_hits_to_confirm = 3;  // 1 recovers create-on-first-sight behaviour
  double gating_iou = 0.3;
  int recovery_window = 3;  // max frames unobserved for observation-anchored rematch
  KalmanNoise noise;
  double fps = 20.0;
};

/// Tracking by detection: constant-velocity prediction, IoU cost, globally
/// optimal assignment, and the tentative -> confirmed -> missing -> terminated
/// lifecycle. One instance per video sequence; single-owner mutable state.
class Tracker {
 public:
  explicit Tracker(TrackerConfig cfg = {}) : cfg_(cfg) {}

  /// Advance to `frame` (strictly greater than the last processed frame;
  /// throws NonMonotonicFrame otherwise) with that frame's detections.
  /// Frames with no detections still advance prediction and missing
  /// counters. Returns the tracks terminated by this step.
  std::vector<Track> step(int frame, const std::vector<Detection>& detections);

  /// End of stream: every live confirmed/missing track is terminated at its
  /// last assigned frame. Tentative tracks are dropped.
  std::vector<Track> flush();

  /// IDs of tracks that reached Confirmed during the most recent step.
  const std::vector<int>& just_confirmed() const { return just_confirmed_; }

  /// Stamp a live track's origin label (set once, at confirmation).
  void set_origin(int track_id, Origin origin);

  const Track* find(int track_id) const;

  /// (id, box) of confirmed tracks observed at `frame`.
  std::vector<std::pair<int, BoundingBox>> confirmed_boxes_at(int frame) const;

  std::vector<const Track*> live_tracks() const;

  const TrackerConfig& config() const { return cfg_; }

 private:
  struct Slot {
    Track track;
    KalmanState kf;
    int hits = 1;           // assigned frames (consecutive while tentative)
    int misses = 0;         // consecutive unassigned frames
    int last_assigned = 0;
  };

  Slot make_slot(int frame, const Detection& det);

  TrackerConfig cfg_;
  std::vector<Slot> slots_;  // creation (= id) order
  std::vector<int> just_confirmed_;
  int next_id_ = 1;
  int last_frame_ = 0;
  bool started_ = false;
};

}  // namespace enex
