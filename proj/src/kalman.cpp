#include "enex/kalman.hpp"

#include <cmath>

namespace enex {

namespace {

Mat8 transition_matrix() {
  Mat8 f = Mat8::Identity();
  for (int i = 0; i < 4; ++i) f(i, i + 4) = 1.0;
  return f;
}

Mat8 process_noise(const Vec8& mean, const KalmanNoise& noise) {
  const double href = mean(3);
  const double sp = noise.process_scale * href;
  const double sv = noise.process_scale * href / 2.0;
  Mat8 q = Mat8::Zero();
  for (int i = 0; i < 4; ++i) q(i, i) = sp * sp;
  for (int i = 4; i < 8; ++i) q(i, i) = sv * sv;
  return q;
}

Eigen::Matrix4d measurement_noise(const BoundingBox& z, const KalmanNoise& noise) {
  const double sm = noise.measurement_scale * z.h;
  return Eigen::Matrix4d::Identity() * (sm * sm);
}

Mat8 symmetrized(const Mat8& p) { return 0.5 * (p + p.transpose()); }

}  // namespace

KalmanState kalman_init(const BoundingBox& z, const KalmanNoise& noise) {
  KalmanState s;
  s.mean << z.cx(), z.cy(), z.w, z.h, 0.0, 0.0, 0.0, 0.0;
  const double sp = std::max(1.0, noise.measurement_scale * z.h);
  for (int i = 0; i < 4; ++i) s.cov(i, i) = sp * sp;
  for (int i = 4; i < 6; ++i) s.cov(i, i) = 100.0 * sp * sp;  // velocity unknown at birth
  for (int i = 6; i < 8; ++i) s.cov(i, i) = 25.0 * sp * sp;
  return s;
}

KalmanState kalman_predict(const KalmanState& s, const KalmanNoise& noise) {
  static const Mat8 f = transition_matrix();
  KalmanState out;
  out.mean = f * s.mean;
  out.cov = symmetrized(f * s.cov * f.transpose() + process_noise(s.mean, noise));
  return out;
}

KalmanState kalman_update(const KalmanState& s, const BoundingBox& z, const KalmanNoise& noise) {
  Eigen::Matrix<double, 4, 8> h = Eigen::Matrix<double, 4, 8>::Zero();
  for (int i = 0; i < 4; ++i) h(i, i) = 1.0;

  Eigen::Vector4d zv(z.cx(), z.cy(), z.w, z.h);
  const Eigen::Vector4d innovation = zv - h * s.mean;
  const Eigen::Matrix4d innov_cov = h * s.cov * h.transpose() + measurement_noise(z, noise);
  if (std::abs(innov_cov.determinant()) < 1e-12) throw SingularInnovation();

  const Eigen::Matrix<double, 8, 4> gain = s.cov * h.transpose() * innov_cov.inverse();
  KalmanState out;
  out.mean = s.mean + gain * innovation;
  out.cov = symmetrized((Mat8::Identity() - gain * h) * s.cov);
  return out;
}

BoundingBox kalman_box(const KalmanState& s) {
  const double w = std::max(0.0, s.mean(2));
  const double h = std::max(0.0, s.mean(3));
  return BoundingBox::from_center(s.mean(0), s.mean(1), w, h);
}

}  // namespace enex
