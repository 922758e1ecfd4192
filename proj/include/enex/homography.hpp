#pragma once

#include <Eigen/Dense>
#include <vector>

#include "enex/geometry.hpp"

namespace enex {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Plane-to-plane projective map between the two camera views, normalized so
/// m(2,2) = 1. Both cameras see the same ground plane, which is what makes a
/// single homography sufficient.
struct Homography {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();

  static Homography identity() { return {}; }
  Homography inverse() const;
};

/// Normalizes m(2,2) to 1 and rejects singular matrices
/// (|det| < 1e-9 after normalization).
Homography make_homography(const Eigen::Matrix3d& raw);

/// Projective transform of p. Throws PointAtInfinity when the homogeneous
/// denominator falls below 1e-12.
Point2 map_point(const Homography& h, Point2 p);

struct PointPair {
  Point2 src;
  Point2 dst;
};

struct HomographyFit {
  Homography h;
  double rmse = 0.0;  // reprojection RMSE over the input pairs, px
};

/// Least-squares direct linear transform over >= 4 correspondences
/// (Hartley-normalized). Throws DegenerateConfiguration when the pairs do
/// not pin down a plane map (too few, or 3+ collinear source points).
HomographyFit estimate_homography(const std::vector<PointPair>& pairs);

/// Maps a person box between views through its ground contact: bottom
/// corners and bottom-center go through h, width comes from the mapped
/// corners, height is scaled by the local vertical stretch at the foot
/// point. Full projective warping of a person box is ill-posed; the feet
/// are on the shared plane, the head is not.
BoundingBox map_box_ground(const Homography& h, const BoundingBox& b);

}  // namespace enex
