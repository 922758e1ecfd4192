#include "enex/fusion.hpp"

#include <algorithm>

namespace enex {

BoundingBox entrance_neighborhood(const EffectiveEntrance& eff, double margin) {
  if (eff.regions.empty()) return {};
  double x0 = eff.regions.front().x, y0 = eff.regions.front().y;
  double x1 = eff.regions.front().right(), y1 = eff.regions.front().bottom();
  for (const auto& r : eff.regions) {
    x0 = std::min(x0, r.x);
    y0 = std::min(y0, r.y);
    x1 = std::max(x1, r.right());
    y1 = std::max(y1, r.bottom());
  }
  const BoundingBox hull{x0, y0, x1 - x0, y1 - y0};
  return dilate(hull, margin);
}

std::vector<Detection> fill_occluded(const std::vector<Detection>& primary_frame,
                                     const std::vector<Detection>& secondary_frame,
                                     const Homography& cam0_from_cam1,
                                     const EffectiveEntrance& eff,
                                     const FusionConfig& cfg) {
  std::vector<Detection> out = primary_frame;
  if (secondary_frame.empty()) return out;

  const BoundingBox neighborhood = entrance_neighborhood(eff, cfg.neighborhood_margin);

  for (const auto& det : secondary_frame) {
    BoundingBox mapped;
    try {
      mapped = map_box_ground(cam0_from_cam1, det.box);
    } catch (const PointAtInfinity&) {
      continue;  // foot maps outside the finite plane, nothing usable
    }
    if (mapped.area() <= 0.0) continue;

    const double foot_x = mapped.cx();
    const double foot_y = mapped.bottom();
    const bool near_entrance = foot_x >= neighborhood.x && foot_x <= neighborhood.right() &&
                               foot_y >= neighborhood.y && foot_y <= neighborhood.bottom();
    if (!near_entrance) continue;

    bool duplicate = false;
    for (const auto& existing : primary_frame) {
      if (existing.box.area() <= 0.0) continue;
      if (iou(mapped, existing.box) >= cfg.duplicate_iou) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;

    Detection synth;
    synth.frame = det.frame;
    synth.box = mapped;
    synth.score = det.score * cfg.score_discount;
    synth.camera = 0;
    synth.synthesized = true;
    out.push_back(synth);
  }
  return out;
}

}  // namespace enex
