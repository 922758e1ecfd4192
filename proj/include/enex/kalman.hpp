#pragma once

#include <Eigen/Dense>

#include "enex/geometry.hpp"

namespace enex {

using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;

/// Constant-velocity box filter state.
/// mean = [cx, cy, w, h, vcx, vcy, vw, vh], velocities in px/frame.
struct KalmanState {
  Vec8 mean = Vec8::Zero();
  Mat8 cov = Mat8::Zero();
};

/// Noise scales. Standard deviations are proportional to the box height so
/// the filter behaves the same for near and far people:
///   process:      std_pos = process_scale * h,  std_vel = process_scale * h / 2
///   measurement:  std     = measurement_scale * h (of the measured box)
struct KalmanNoise {
  double process_scale = 0.05;
  double measurement_scale = 0.05;
};

/// State with box centered on z, zero velocity, and a broad prior on velocity.
KalmanState kalman_init(const BoundingBox& z, const KalmanNoise& noise);

/// One-frame constant-velocity prediction: mean <- F mean, cov <- F P F^T + Q.
KalmanState kalman_predict(const KalmanState& s, const KalmanNoise& noise);

/// Standard correction against a measured box. Throws SingularInnovation when
/// the innovation covariance cannot be inverted (|det S| < 1e-12).
KalmanState kalman_update(const KalmanState& s, const BoundingBox& z, const KalmanNoise& noise);

/// Current box estimate (w, h clamped to be non-negative).
BoundingBox kalman_box(const KalmanState& s);

}  // namespace enex
