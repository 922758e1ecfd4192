#pragma once

#include <algorithm>
#include <cmath>

#include "enex/errors.hpp"

namespace enex {

/// Axis-aligned rectangle in pixel coordinates, top-left anchored.
/// Coordinates are real-valued: filter predictions are fractional even
/// though raw detections arrive as integer pixels.
struct BoundingBox {
  double x = 0.0;  // left edge
  double y = 0.0;  // top edge
  double w = 0.0;
  double h = 0.0;

  double right() const { return x + w; }
  double bottom() const { return y + h; }
  double area() const { return w * h; }
  double cx() const { return x + 0.5 * w; }
  double cy() const { return y + 0.5 * h; }

  static BoundingBox from_center(double cx, double cy, double w, double h) {
    return {cx - 0.5 * w, cy - 0.5 * h, w, h};
  }

  bool operator==(const BoundingBox&) const = default;
};

/// Full camera frame, origin fixed at (0,0).
struct SceneRegion {
  double width = 0.0;
  double height = 0.0;

  BoundingBox as_box() const { return {0.0, 0.0, width, height}; }
  bool contains(const BoundingBox& b) const {
    return b.x >= 0.0 && b.y >= 0.0 && b.right() <= width && b.bottom() <= height;
  }
};

/// Doorway of the private area inside the entrance-facing camera frame.
struct EntranceRegion {
  BoundingBox rect;
};

/// Axis-aligned intersection. Disjoint inputs yield a zero-area box
/// (a value, never an error).
inline BoundingBox intersect(const BoundingBox& a, const BoundingBox& b) {
  const double x0 = std::max(a.x, b.x);
  const double y0 = std::max(a.y, b.y);
  const double x1 = std::min(a.right(), b.right());
  const double y1 = std::min(a.bottom(), b.bottom());
  return {x0, y0, std::max(0.0, x1 - x0), std::max(0.0, y1 - y0)};
}

inline bool contains(const BoundingBox& outer, const BoundingBox& inner) {
  return inner.x >= outer.x && inner.y >= outer.y && inner.right() <= outer.right() &&
         inner.bottom() <= outer.bottom();
}

/// Fraction of b's area covered by the region rectangle, in [0,1].
/// Equals 1 exactly when b fits inside the region, boundary contact included.
inline double containment_ratio(const BoundingBox& b, const BoundingBox& region) {
  if (b.area() <= 0.0) throw ZeroAreaBox();
  if (contains(region, b)) return 1.0;  // exact, immune to edge re-rounding
  return std::min(1.0, intersect(b, region).area() / b.area());
}

inline double containment_ratio(const BoundingBox& b, const EntranceRegion& e) {
  return containment_ratio(b, e.rect);
}

/// Intersection over union, in [0,1].
inline double iou(const BoundingBox& a, const BoundingBox& b) {
  const double aa = a.area();
  const double ab = b.area();
  if (aa <= 0.0 && ab <= 0.0) throw BothZeroArea();
  const double inter = intersect(a, b).area();
  return inter / (aa + ab - inter);
}

}  // namespace enex
