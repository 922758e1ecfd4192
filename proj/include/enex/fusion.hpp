#pragma once

#include <vector>

#include "enex/entrance.hpp"
#include "enex/homography.hpp"
#include "enex/types.hpp"

namespace enex {

struct FusionConfig {
  double duplicate_iou = 0.1;       // mapped box matching an existing one
  double score_discount = 0.5;      // trust haircut for mapped detections
  double neighborhood_margin = 0.25;  // entrance dilation per side, fractional
};

/// Rectangle around the usable entrance where opposite-view fill-in applies.
BoundingBox entrance_neighborhood(const EffectiveEntrance& eff, double margin);

/// Fills entrance occlusions in the camera-0 frame from the camera-1 frame:
/// every camera-1 detection whose mapped foot point lands near the entrance
/// and overlaps no existing camera-0 detection is synthesized into the
/// camera-0 frame (provenance-flagged, score discounted). Existing camera-0
/// detections are returned untouched.
std::vector<Detection> fill_occluded(const std::vector<Detection>& primary_frame,
                                     const std::vector<Detection>& secondary_frame,
                                     const Homography& cam0_from_cam1,
                                     const EffectiveEntrance& eff,
                                     const FusionConfig& cfg = {});

}  // namespace enex
