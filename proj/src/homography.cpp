#include "enex/homography.hpp"

#include <cmath>

namespace enex {

Homography Homography::inverse() const { return make_homography(m.inverse()); }

Homography make_homography(const Eigen::Matrix3d& raw) {
  if (std::abs(raw(2, 2)) < 1e-12)
    throw DegenerateConfiguration("matrix cannot be normalized, m(2,2) ~ 0");
  Eigen::Matrix3d m = raw / raw(2, 2);
  if (std::abs(m.determinant()) < 1e-9) throw DegenerateConfiguration("matrix is singular");
  return {m};
}

Point2 map_point(const Homography& h, Point2 p) {
  const double den = h.m(2, 0) * p.x + h.m(2, 1) * p.y + h.m(2, 2);
  if (std::abs(den) < 1e-12) throw PointAtInfinity();
  return {(h.m(0, 0) * p.x + h.m(0, 1) * p.y + h.m(0, 2)) / den,
          (h.m(1, 0) * p.x + h.m(1, 1) * p.y + h.m(1, 2)) / den};
}

namespace {

struct Normalizer {
  double cx = 0.0, cy = 0.0, scale = 1.0;

  Eigen::Matrix3d matrix() const {
    Eigen::Matrix3d t;
    t << scale, 0, -scale * cx, 0, scale, -scale * cy, 0, 0, 1;
    return t;
  }
};

// Translate centroid to origin, scale mean distance to sqrt(2).
Normalizer fit_normalizer(const std::vector<PointPair>& pairs, bool src) {
  Normalizer n;
  for (const auto& p : pairs) {
    const Point2& q = src ? p.src : p.dst;
    n.cx += q.x;
    n.cy += q.y;
  }
  n.cx /= pairs.size();
  n.cy /= pairs.size();
  double mean_dist = 0.0;
  for (const auto& p : pairs) {
    const Point2& q = src ? p.src : p.dst;
    mean_dist += std::hypot(q.x - n.cx, q.y - n.cy);
  }
  mean_dist /= pairs.size();
  n.scale = mean_dist > 1e-12 ? std::sqrt(2.0) / mean_dist : 1.0;
  return n;
}

}  // namespace

HomographyFit estimate_homography(const std::vector<PointPair>& pairs) {
  if (pairs.size() < 4) throw DegenerateConfiguration("need at least 4 correspondences");

  const Normalizer ns = fit_normalizer(pairs, true);
  const Normalizer nd = fit_normalizer(pairs, false);

  Eigen::MatrixXd a(2 * pairs.size(), 9);
  for (size_t i = 0; i < pairs.size(); ++i) {
    const double sx = ns.scale * (pairs[i].src.x - ns.cx);
    const double sy = ns.scale * (pairs[i].src.y - ns.cy);
    const double dx = nd.scale * (pairs[i].dst.x - nd.cx);
    const double dy = nd.scale * (pairs[i].dst.y - nd.cy);
    a.row(2 * i) << -sx, -sy, -1, 0, 0, 0, dx * sx, dx * sy, dx;
    a.row(2 * i + 1) << 0, 0, 0, -sx, -sy, -1, dy * sx, dy * sy, dy;
  }

  // FullV: the solution is V's 9th column, which a thin decomposition of the
  // minimal 8x9 system does not carry.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  // Rank < 8 means the correspondences leave the map underdetermined.
  if (sv(7) < 1e-10 * sv(0)) throw DegenerateConfiguration("correspondences are rank-deficient");

  const Eigen::VectorXd hvec = svd.matrixV().col(8);
  Eigen::Matrix3d hn;
  hn << hvec(0), hvec(1), hvec(2), hvec(3), hvec(4), hvec(5), hvec(6), hvec(7), hvec(8);

  const Eigen::Matrix3d denorm = nd.matrix().inverse() * hn * ns.matrix();
  HomographyFit fit;
  fit.h = make_homography(denorm);

  double sq = 0.0;
  for (const auto& p : pairs) {
    const Point2 mapped = map_point(fit.h, p.src);
    sq += (mapped.x - p.dst.x) * (mapped.x - p.dst.x) +
          (mapped.y - p.dst.y) * (mapped.y - p.dst.y);
  }
  fit.rmse = std::sqrt(sq / pairs.size());
  return fit;
}

BoundingBox map_box_ground(const Homography& h, const BoundingBox& b) {
  const Point2 bl = map_point(h, {b.x, b.bottom()});
  const Point2 br = map_point(h, {b.right(), b.bottom()});
  const Point2 foot{b.cx(), b.bottom()};
  const Point2 mapped_foot = map_point(h, foot);

  // Vertical stretch of the map at the foot point, from the analytic Jacobian.
  const double den = h.m(2, 0) * foot.x + h.m(2, 1) * foot.y + h.m(2, 2);
  const double nx = h.m(0, 0) * foot.x + h.m(0, 1) * foot.y + h.m(0, 2);
  const double ny = h.m(1, 0) * foot.x + h.m(1, 1) * foot.y + h.m(1, 2);
  const double dxdy = (h.m(0, 1) * den - nx * h.m(2, 1)) / (den * den);
  const double dydy = (h.m(1, 1) * den - ny * h.m(2, 1)) / (den * den);
  const double vertical_scale = std::hypot(dxdy, dydy);

  const double w = std::abs(br.x - bl.x);
  const double hh = b.h * vertical_scale;
  return {std::min(bl.x, br.x), mapped_foot.y - hh, w, hh};
}

}  // namespace enex
