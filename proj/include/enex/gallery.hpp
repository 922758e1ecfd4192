#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <string>
#include <vector>

#include "enex/types.hpp"

namespace enex {

/// One individual currently inside the private area. The feature slot is an
/// opaque payload reserved for appearance descriptors; nothing here reads it.
struct GalleryEntry {
  int person_id = 0;
  int t_entry = 0;  // frame the person vanished into the entrance
  std::vector<std::uint8_t> feature_slot;
};

struct DwellRow {
  int person_id = 0;
  int t_entry = 0;
  int t_exit = 0;
  double dwell_seconds = 0.0;
};

/// An Exit that arrived with nobody inside: an unmonitored prior entry.
/// Reported, never fatal.
struct UnmatchedExit {
  int track_id = 0;
  int frame = 0;
};

/// Ledger of who is inside the private area and for how long. Exits are
/// matched to entries FIFO (longest inside first); the matched person_id is
/// therefore provisional until appearance matching exists.
class OccupancyLedger {
 public:
  void apply_event(const EventRecord& ev, double fps);

  int occupancy() const { return static_cast<int>(inside_.size()); }
  const std::deque<GalleryEntry>& inside() const { return inside_; }
  const std::vector<DwellRow>& dwell_report() const { return history_; }
  const std::vector<UnmatchedExit>& unmatched_exits() const { return unmatched_exits_; }

  /// CSV: person_id,t_entry,t_exit,dwell_seconds
  void write_dwell_csv(std::ostream& os) const;

 private:
  std::deque<GalleryEntry> inside_;
  std::vector<DwellRow> history_;
  std::vector<UnmatchedExit> unmatched_exits_;
};

}  // namespace enex
