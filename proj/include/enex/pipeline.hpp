#pragma once

#include <optional>
#include <string>
#include <vector>

#include "enex/config.hpp"
#include "enex/detection_io.hpp"
#include "enex/evaluation.hpp"
#include "enex/gallery.hpp"

namespace enex {

struct PipelineResult {
  std::vector<EventRecord> events;  // emission (termination) order
  std::vector<Track> tracks;        // finished tracks, same order
  OccupancyLedger ledger;
  long synthesized_detections = 0;
  std::optional<DetectionMatchResult> detection_metrics;
  std::optional<EventAccuracyResult> event_metrics;
};

/// The per-frame engine: optional opposite-view fill-in, tracker step,
/// event classification on termination, gallery bookkeeping, end-of-stream
/// flush. Detections may span both cameras; camera 1 is only consumed when
/// fusion is on.
PipelineResult track_and_classify(const std::vector<Detection>& detections,
                                  const PipelineConfig& cfg);

/// Classify pre-built tracks (rows with ids): origin/sink/event per track
/// plus gallery bookkeeping, ordered by termination time.
PipelineResult classify_tracks(const std::vector<DetectionRow>& rows, const PipelineConfig& cfg);

/// File-level orchestration: load detections (and ground truth when given),
/// run the engine, attach evaluation.
PipelineResult run_pipeline(const PipelineConfig& cfg);

/// events.txt, tracked.csv, dwell.csv and, when metrics exist, report.csv /
/// report.txt under out_dir. Returns the events file path.
std::string write_outputs(const PipelineResult& result, const std::string& out_dir);

}  // namespace enex
