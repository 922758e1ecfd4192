#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "enex/homography.hpp"
#include "enex/types.hpp"

namespace enex {

/// One CSV row of a detection or ground-truth file:
///   frame,id,x,y,w,h,score,camera[,event]
/// id is -1 for raw detections; the event column appears only in
/// ground-truth / tracked output files.
struct DetectionRow {
  Detection det;
  int id = -1;
  std::optional<EventKind> event;
};

struct DetectionFile {
  std::vector<DetectionRow> rows;  // sorted by frame (stable)
  bool has_ids() const;
};

/// Loads and validates a detection CSV. Lines starting with '#' and the
/// optional header line are skipped. Throws ParseError (with the line
/// number) on malformed rows and EmptyFile when no data rows remain.
DetectionFile load_detections(const std::string& path);

void save_detections(std::ostream& os, const std::vector<DetectionRow>& rows);
void save_detections(const std::string& path, const std::vector<DetectionRow>& rows);

/// Events come out one per line, `key=value` fields separated by spaces:
///   track=7 event=Entry origin=scene sink=private_area t_enter=12 ...
void write_events(std::ostream& os, const std::vector<EventRecord>& events);
std::vector<EventRecord> read_events(const std::string& path);

/// Sidecar: 9 whitespace-separated reals, row-major.
Homography load_homography(const std::string& path);
void save_homography(const std::string& path, const Homography& h);

/// Tracked output: one row per (track, frame), id set, event label attached
/// to every row of the track.
std::vector<DetectionRow> tracks_to_rows(const std::vector<Track>& tracks,
                                         const std::vector<EventRecord>& events);

/// Inverse of tracks_to_rows: group rows by id into terminated tracks.
std::vector<Track> rows_to_tracks(const std::vector<DetectionRow>& rows);

/// Ground-truth events embedded in a labeled CSV (one per distinct id).
std::vector<EventRecord> rows_to_events(const std::vector<DetectionRow>& rows, double fps);

}  // namespace enex
