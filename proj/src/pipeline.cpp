#include "enex/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

namespace enex {

namespace {

struct FrameDetections {
  std::vector<Detection> cam0;
  std::vector<Detection> cam1;
};

std::map<int, FrameDetections> group_by_frame(const std::vector<Detection>& detections) {
  std::map<int, FrameDetections> frames;
  for (const auto& d : detections) {
    if (d.camera == 0) frames[d.frame].cam0.push_back(d);
    else frames[d.frame].cam1.push_back(d);
  }
  return frames;
}

void emit(const Track& track, const EntranceConfig& entrance, const OccluderHistory& occluders,
          double fps, PipelineResult& result) {
  EventRecord ev = finalize_track(track, entrance, occluders, fps);
  Track labeled = track;
  labeled.origin = ev.origin;
  labeled.sink = ev.sink;
  result.ledger.apply_event(ev, fps);
  result.events.push_back(ev);
  result.tracks.push_back(std::move(labeled));
}

}  // namespace

PipelineResult track_and_classify(const std::vector<Detection>& detections,
                                  const PipelineConfig& cfg) {
  PipelineResult result;
  if (detections.empty()) return result;

  const auto frames = group_by_frame(detections);
  const int first_frame = frames.begin()->first;
  const int last_frame = frames.rbegin()->first;

  Tracker tracker(cfg.tracker);
  OccluderHistory occluders;
  const EntranceRegion& entrance = cfg.entrance.entrance;

  for (int frame = first_frame; frame <= last_frame; ++frame) {
    static const FrameDetections none;
    const auto it = frames.find(frame);
    const FrameDetections& fd = it == frames.end() ? none : it->second;

    std::vector<Detection> cam0 = fd.cam0;
    if (cfg.fusion_enabled && cfg.cam0_from_cam1 && !fd.cam1.empty()) {
      const auto eff = effective_entrance(entrance, occluders.occluders_at(frame - 1, -1),
                                          cfg.entrance.occluder_margin);
      cam0 = fill_occluded(cam0, fd.cam1, *cfg.cam0_from_cam1, eff, cfg.fusion);
      result.synthesized_detections +=
          static_cast<long>(cam0.size()) - static_cast<long>(fd.cam0.size());
    }

    const auto terminated = tracker.step(frame, cam0);

    for (const auto& [id, box] : tracker.confirmed_boxes_at(frame)) {
      if (intersect(box, entrance.rect).area() > 0.0) occluders.record(frame, id, box);
    }

    // Origin is decided the moment a track is confirmed, against the
    // entrance as it looked when the track first appeared.
    for (const int id : tracker.just_confirmed()) {
      const Track* t = tracker.find(id);
      if (!t || t->empty()) continue;
      const auto eff = effective_entrance(
          entrance, occluders.occluders_at(t->first_frame(), id), cfg.entrance.occluder_margin);
      tracker.set_origin(id, classify_origin(t->first_box(), eff, cfg.entrance.containment_threshold));
    }

    for (const auto& t : terminated) emit(t, cfg.entrance, occluders, cfg.fps, result);
  }

  for (const auto& t : tracker.flush()) emit(t, cfg.entrance, occluders, cfg.fps, result);
  return result;
}

PipelineResult classify_tracks(const std::vector<DetectionRow>& rows, const PipelineConfig& cfg) {
  PipelineResult result;
  auto tracks = rows_to_tracks(rows);

  // Tracks are classified in termination order so gallery FIFO matching
  // sees events the way a live run would.
  std::sort(tracks.begin(), tracks.end(), [](const Track& a, const Track& b) {
    const int ea = a.last_frame(), eb = b.last_frame();
    return ea != eb ? ea < eb : a.id < b.id;
  });

  OccluderHistory occluders;
  for (const auto& t : tracks) {
    for (const auto& [frame, box] : t.boxes) {
      if (intersect(box, cfg.entrance.entrance.rect).area() > 0.0)
        occluders.record(frame, t.id, box);
    }
  }
  for (const auto& t : tracks) emit(t, cfg.entrance, occluders, cfg.fps, result);
  return result;
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  DetectionFile input;
  try {
    input = load_detections(cfg.detections_path);
  } catch (const EmptyFile&) {
    return {};  // nothing to monitor is a valid day
  }
  std::vector<Detection> detections;
  detections.reserve(input.rows.size());
  for (const auto& r : input.rows) {
    if (r.det.camera == 0 && intersect(r.det.box, cfg.scene.as_box()).area() <= 0.0)
      throw Error("detection at frame " + std::to_string(r.det.frame) +
                  " lies entirely outside the scene");
    detections.push_back(r.det);
  }

  PipelineResult result = track_and_classify(detections, cfg);

  if (!cfg.ground_truth_path.empty()) {
    const DetectionFile gt = load_detections(cfg.ground_truth_path);

    std::vector<Detection> gt_boxes;
    for (const auto& r : gt.rows) {
      if (r.det.camera == 0) gt_boxes.push_back(r.det);
    }
    std::vector<Detection> pred_boxes;
    for (const auto& d : detections) {
      if (d.camera == 0) pred_boxes.push_back(d);  // synthesized boxes never enter metrics
    }
    result.detection_metrics = match_detections(pred_boxes, gt_boxes);
    result.event_metrics = event_accuracy(result.events, rows_to_events(gt.rows, cfg.fps));
  }
  return result;
}

std::string write_outputs(const PipelineResult& result, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto path = [&](const char* name) {
    return (std::filesystem::path(out_dir) / name).string();
  };

  const std::string events_path = path("events.txt");
  {
    std::ofstream os(events_path);
    if (!os) throw Error("cannot write " + events_path);
    write_events(os, result.events);
  }
  save_detections(path("tracked.csv"), tracks_to_rows(result.tracks, result.events));
  {
    std::ofstream os(path("dwell.csv"));
    result.ledger.write_dwell_csv(os);
  }
  if (result.detection_metrics && result.event_metrics) {
    std::ofstream csv(path("report.csv"));
    write_report_csv(csv, *result.detection_metrics, *result.event_metrics);
    std::ofstream txt(path("report.txt"));
    write_report_table(txt, *result.detection_metrics, *result.event_metrics);
  }
  return events_path;
}

}  // namespace enex
