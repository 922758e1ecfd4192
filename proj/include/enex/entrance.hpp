#pragma once

#include <map>
#include <utility>
#include <vector>

#include "enex/types.hpp"

namespace enex {

struct EntranceConfig {
  EntranceRegion entrance;
  double containment_threshold = 0.8;  // 1.0 = strict containment
  double occluder_margin = 0.10;       // dilation per side, fraction of occluder size
};

/// The entrance usable at one frame: the configured rectangle minus any
/// occluding people, plus a dilated margin around each occluder. Regions are
/// pairwise disjoint; with no occluders this is just the configured rectangle.
struct EffectiveEntrance {
  std::vector<BoundingBox> regions;

  double area() const;
  /// Fraction of b covered by the union of regions, in [0,1].
  double containment(const BoundingBox& b) const;
};

/// Occluder `b` dilated by `margin * w` and `margin * h` on each side.
BoundingBox dilate(const BoundingBox& b, double margin);

/// (E \ U Bi) u U (Bi' \ Bi) decomposed into disjoint rectangles, where Bi'
/// is Bi dilated by `margin`.
EffectiveEntrance effective_entrance(const EntranceRegion& entrance,
                                     const std::vector<BoundingBox>& occluders,
                                     double margin);

/// First-box rule: a track whose first box sits inside the (effective)
/// entrance came out of the private area; anywhere else it walked in from
/// the open scene. Throws ZeroAreaBox on a degenerate box.
Origin classify_origin(const BoundingBox& first_box, const EffectiveEntrance& eff, double tau);

/// Last-box rule, symmetric: a track that vanished inside the entrance went
/// into the private area.
Sink classify_sink(const BoundingBox& last_box, const EffectiveEntrance& eff, double tau);

/// Total transition table over (origin, sink).
EventKind classify_event(Origin origin, Sink sink);

/// Confirmed-track boxes overlapping the entrance, per frame. These are the
/// occluders every *other* track is classified against.
class OccluderHistory {
 public:
  void record(int frame, int track_id, const BoundingBox& box);
  std::vector<BoundingBox> occluders_at(int frame, int excluding_track_id) const;

 private:
  std::map<int, std::vector<std::pair<int, BoundingBox>>> by_frame_;
};

/// Classify a finished track: origin from its first box, sink from its last,
/// each against the entrance as it looked in that frame. A pre-set origin
/// (assigned when the track was confirmed) is kept. Throws EmptyTrack.
EventRecord finalize_track(const Track& track, const EntranceConfig& cfg,
                           const OccluderHistory& occluders, double fps);

}  // namespace enex
