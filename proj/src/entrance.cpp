#include "enex/entrance.hpp"

#include <algorithm>

namespace enex {

namespace {

void push_edges(const BoundingBox& b, std::vector<double>& xs, std::vector<double>& ys) {
  xs.push_back(b.x);
  xs.push_back(b.right());
  ys.push_back(b.y);
  ys.push_back(b.bottom());
}

bool point_in(const BoundingBox& b, double px, double py) {
  return px >= b.x && px <= b.right() && py >= b.y && py <= b.bottom();
}

}  // namespace

double EffectiveEntrance::area() const {
  double a = 0.0;
  for (const auto& r : regions) a += r.area();
  return a;
}

double EffectiveEntrance::containment(const BoundingBox& b) const {
  if (b.area() <= 0.0) throw ZeroAreaBox();
  double covered = 0.0;
  for (const auto& r : regions) {
    if (contains(r, b)) return 1.0;  // exact, immune to edge re-rounding
    covered += intersect(b, r).area();
  }
  return std::min(1.0, covered / b.area());
}

BoundingBox dilate(const BoundingBox& b, double margin) {
  const double dx = margin * b.w;
  const double dy = margin * b.h;
  return {b.x - dx, b.y - dy, b.w + 2.0 * dx, b.h + 2.0 * dy};
}

EffectiveEntrance effective_entrance(const EntranceRegion& entrance,
                                     const std::vector<BoundingBox>& occluders,
                                     double margin) {
  const BoundingBox& e = entrance.rect;
  if (occluders.empty()) return {{e}};

  std::vector<BoundingBox> dilated;
  dilated.reserve(occluders.size());
  for (const auto& b : occluders) dilated.push_back(dilate(b, margin));

  // Cut the plane along every rectangle edge; each grid cell is then fully
  // inside or outside each rectangle, so a center test decides membership.
  std::vector<double> xs, ys;
  push_edges(e, xs, ys);
  for (const auto& b : occluders) push_edges(b, xs, ys);
  for (const auto& b : dilated) push_edges(b, xs, ys);
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  EffectiveEntrance out;
  for (size_t j = 0; j + 1 < ys.size(); ++j) {
    const double y0 = ys[j], y1 = ys[j + 1];
    const double cy = 0.5 * (y0 + y1);
    double run_x0 = 0.0, run_x1 = 0.0;
    bool open = false;
    const auto close_run = [&] {
      if (open) out.regions.push_back({run_x0, y0, run_x1 - run_x0, y1 - y0});
      open = false;
    };
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
      const double x0 = xs[i], x1 = xs[i + 1];
      const double cx = 0.5 * (x0 + x1);

      bool in_occluder = false;
      bool in_ring = false;
      for (size_t k = 0; k < occluders.size(); ++k) {
        const bool in_b = point_in(occluders[k], cx, cy);
        in_occluder = in_occluder || in_b;
        in_ring = in_ring || (point_in(dilated[k], cx, cy) && !in_b);
      }
      const bool keep = (point_in(e, cx, cy) && !in_occluder) || in_ring;

      if (!keep) {
        close_run();
      } else if (open && run_x1 == x0) {
        run_x1 = x1;  // extend the current horizontal run
      } else {
        close_run();
        run_x0 = x0;
        run_x1 = x1;
        open = true;
      }
    }
    close_run();
  }
  return out;
}

Origin classify_origin(const BoundingBox& first_box, const EffectiveEntrance& eff, double tau) {
  return eff.containment(first_box) >= tau ? Origin::PrivateArea : Origin::Scene;
}

Sink classify_sink(const BoundingBox& last_box, const EffectiveEntrance& eff, double tau) {
  return eff.containment(last_box) >= tau ? Sink::PrivateArea : Sink::Scene;
}

EventKind classify_event(Origin origin, Sink sink) {
  if (origin == Origin::Scene) {
    return sink == Sink::Scene ? EventKind::JustAppeared : EventKind::Entry;
  }
  return sink == Sink::Scene ? EventKind::Exit : EventKind::ReEntry;
}

void OccluderHistory::record(int frame, int track_id, const BoundingBox& box) {
  by_frame_[frame].emplace_back(track_id, box);
}

std::vector<BoundingBox> OccluderHistory::occluders_at(int frame, int excluding_track_id) const {
  std::vector<BoundingBox> out;
  const auto it = by_frame_.find(frame);
  if (it == by_frame_.end()) return out;
  for (const auto& [id, box] : it->second) {
    if (id != excluding_track_id) out.push_back(box);
  }
  return out;
}

EventRecord finalize_track(const Track& track, const EntranceConfig& cfg,
                           const OccluderHistory& occluders, double fps) {
  if (track.empty()) throw EmptyTrack();

  const int first = track.first_frame();
  const int last = track.last_frame();
  const double tau = cfg.containment_threshold;

  Origin origin;
  if (track.origin) {
    origin = *track.origin;
  } else {
    const auto eff = effective_entrance(cfg.entrance, occluders.occluders_at(first, track.id),
                                        cfg.occluder_margin);
    origin = classify_origin(track.first_box(), eff, tau);
  }
  const auto eff_last = effective_entrance(cfg.entrance, occluders.occluders_at(last, track.id),
                                           cfg.occluder_margin);
  const Sink sink = classify_sink(track.last_box(), eff_last, tau);

  EventRecord ev;
  ev.track_id = track.id;
  ev.origin = origin;
  ev.sink = sink;
  ev.event = classify_event(origin, sink);
  ev.t_enter_scene = first;
  ev.t_exit_scene = last;
  ev.enter_seconds = first / fps;
  ev.exit_seconds = last / fps;
  return ev;
}

}  // namespace enex
