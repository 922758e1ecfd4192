#include "enex/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "enex/entrance.hpp"

namespace enex {

namespace {

std::vector<BoundingBox> sample_path(const PersonScript& p) {
  std::vector<double> cumulative{0.0};
  for (size_t i = 0; i + 1 < p.waypoints.size(); ++i) {
    const double seg = std::hypot(p.waypoints[i + 1].x - p.waypoints[i].x,
                                  p.waypoints[i + 1].y - p.waypoints[i].y);
    cumulative.push_back(cumulative.back() + seg);
  }
  const double total = cumulative.back();
  const int nframes = static_cast<int>(std::floor(total / p.speed)) + 1;

  std::vector<BoundingBox> boxes;
  boxes.reserve(nframes);
  for (int k = 0; k < nframes; ++k) {
    const double s = std::min(static_cast<double>(k) * p.speed, total);
    size_t seg = 0;
    while (seg + 2 < cumulative.size() && cumulative[seg + 1] < s) ++seg;
    const double seg_len = cumulative[seg + 1] - cumulative[seg];
    const double t = seg_len > 0.0 ? (s - cumulative[seg]) / seg_len : 0.0;
    const double cx = p.waypoints[seg].x + t * (p.waypoints[seg + 1].x - p.waypoints[seg].x);
    const double cy = p.waypoints[seg].y + t * (p.waypoints[seg + 1].y - p.waypoints[seg].y);
    boxes.push_back(BoundingBox::from_center(cx, cy, p.box_w, p.box_h));
  }
  return boxes;
}

struct EndpointLabels {
  Origin origin;
  Sink sink;
};

EndpointLabels endpoint_labels(EventKind kind) {
  switch (kind) {
    case EventKind::Entry: return {Origin::Scene, Sink::PrivateArea};
    case EventKind::Exit: return {Origin::PrivateArea, Sink::Scene};
    case EventKind::JustAppeared: return {Origin::Scene, Sink::Scene};
    case EventKind::ReEntry: return {Origin::PrivateArea, Sink::PrivateArea};
  }
  return {Origin::Scene, Sink::Scene};
}

void validate_person_shape(const PersonScript& p) {
  const std::string who = "person " + std::to_string(p.id);
  if (p.waypoints.size() < 2) throw InvalidScript(who + ": needs at least 2 waypoints");
  if (p.speed <= 0.0) throw InvalidScript(who + ": speed must be positive");
  if (p.box_w <= 0.0 || p.box_h <= 0.0) throw InvalidScript(who + ": box must have area");
  if (p.t_start < 0) throw InvalidScript(who + ": starts before frame 0");
}

void validate_person(const PersonScript& p, const ScenarioScript& script,
                     const std::vector<BoundingBox>& path) {
  const std::string who = "person " + std::to_string(p.id);
  const int last_frame = p.t_start + static_cast<int>(path.size()) - 1;
  if (last_frame >= script.duration_frames)
    throw InvalidScript(who + ": path runs past the scenario duration");

  // The declared kind must hold under the strict containment rule.
  const EffectiveEntrance plain{{script.entrance.rect}};
  const EndpointLabels want = endpoint_labels(p.kind);
  if (classify_origin(path.front(), plain, 1.0) != want.origin)
    throw InvalidScript(who + ": first box does not produce a " + to_string(p.kind) + " origin");
  if (classify_sink(path.back(), plain, 1.0) != want.sink)
    throw InvalidScript(who + ": last box does not produce a " + to_string(p.kind) + " sink");
}

}  // namespace

Simulation generate(const ScenarioScript& script) {
  if (script.duration_frames <= 0) throw InvalidScript("duration must be positive");
  if (script.scene.width <= 0.0 || script.scene.height <= 0.0)
    throw InvalidScript("scene must have area");

  std::vector<std::vector<BoundingBox>> paths;
  paths.reserve(script.persons.size());
  for (const auto& p : script.persons) {
    validate_person_shape(p);
    paths.push_back(sample_path(p));
    validate_person(p, script, paths.back());
  }

  Simulation sim;
  for (size_t i = 0; i < script.persons.size(); ++i) {
    const auto& p = script.persons[i];
    const auto& path = paths[i];
    const EndpointLabels labels = endpoint_labels(p.kind);

    Track gt;
    gt.id = p.id;
    gt.state = TrackState::Terminated;
    for (size_t k = 0; k < path.size(); ++k) gt.boxes[p.t_start + static_cast<int>(k)] = path[k];
    gt.t_enter_scene = gt.first_frame();
    gt.t_exit_scene = gt.last_frame();
    gt.origin = labels.origin;
    gt.sink = labels.sink;
    sim.gt_tracks.push_back(std::move(gt));

    EventRecord ev;
    ev.track_id = p.id;
    ev.event = p.kind;
    ev.origin = labels.origin;
    ev.sink = labels.sink;
    ev.t_enter_scene = p.t_start;
    ev.t_exit_scene = p.t_start + static_cast<int>(path.size()) - 1;
    ev.enter_seconds = ev.t_enter_scene / script.fps;
    ev.exit_seconds = ev.t_exit_scene / script.fps;
    sim.gt_events.push_back(ev);
  }

  std::mt19937_64 rng(script.seed);
  std::normal_distribution<double> jitter(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  const auto noisy = [&](const BoundingBox& b) {
    if (script.noise.pos_sigma <= 0.0) return b;
    const double dx = jitter(rng) * script.noise.pos_sigma;
    const double dy = jitter(rng) * script.noise.pos_sigma;
    return BoundingBox{b.x + dx, b.y + dy, b.w, b.h};
  };
  const auto missed = [&] {
    return script.noise.miss_prob > 0.0 && uniform(rng) < script.noise.miss_prob;
  };

  for (int frame = 0; frame < script.duration_frames; ++frame) {
    for (size_t i = 0; i < script.persons.size(); ++i) {
      const auto& p = script.persons[i];
      const int k = frame - p.t_start;
      if (k < 0 || k >= static_cast<int>(paths[i].size())) continue;
      const BoundingBox truth = paths[i][k];

      const bool hidden = p.hidden_cam0 && frame >= p.hidden_cam0->first &&
                          frame <= p.hidden_cam0->second;
      if (!hidden && !missed()) {
        sim.detections.push_back({frame, noisy(truth), 1.0, 0, false});
      }
      if (script.cameras >= 2) {
        const BoundingBox mapped = map_box_ground(script.cam1_from_cam0, truth);
        if (!missed()) sim.detections.push_back({frame, noisy(mapped), 1.0, 1, false});
      }
    }

    // Single-frame clutter, person-sized, anywhere in the scene.
    if (script.noise.fp_rate > 0.0 && uniform(rng) < script.noise.fp_rate) {
      const double w = 60.0 * (0.8 + 0.4 * uniform(rng));
      const double h = 120.0 * (0.8 + 0.4 * uniform(rng));
      const double cx = w / 2 + uniform(rng) * (script.scene.width - w);
      const double cy = h / 2 + uniform(rng) * (script.scene.height - h);
      sim.detections.push_back({frame, BoundingBox::from_center(cx, cy, w, h), 0.5, 0, false});
    }
  }

  std::stable_sort(sim.detections.begin(), sim.detections.end(),
                   [](const Detection& a, const Detection& b) {
                     return a.frame != b.frame ? a.frame < b.frame : a.camera < b.camera;
                   });
  return sim;
}

}  // namespace enex
