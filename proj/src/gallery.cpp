#include "enex/gallery.hpp"

#include <ostream>

#include "enex/format.hpp"

namespace enex {

void OccupancyLedger::apply_event(const EventRecord& ev, double fps) {
  switch (ev.event) {
    case EventKind::Entry:
      // The person is inside from the frame they vanished into the entrance.
      inside_.push_back({ev.track_id, ev.t_exit_scene, {}});
      break;
    case EventKind::Exit: {
      if (inside_.empty()) {
        unmatched_exits_.push_back({ev.track_id, ev.t_enter_scene});
        return;
      }
      const GalleryEntry entry = inside_.front();
      inside_.pop_front();
      const int t_exit = ev.t_enter_scene;  // reappearance = moment of leaving
      history_.push_back({entry.person_id, entry.t_entry, t_exit,
                          (t_exit - entry.t_entry) / fps});
      break;
    }
    case EventKind::JustAppeared:
      break;
    case EventKind::ReEntry:
      // Bracketed by two inside periods; net occupancy unchanged. The visible
      // interlude is still logged so the dwell history has no silent gap.
      history_.push_back({ev.track_id, ev.t_enter_scene, ev.t_exit_scene,
                          (ev.t_exit_scene - ev.t_enter_scene) / fps});
      break;
  }
}

void OccupancyLedger::write_dwell_csv(std::ostream& os) const {
  os << "person_id,t_entry,t_exit,dwell_seconds\n";
  for (const auto& row : history_) {
    os << row.person_id << ',' << row.t_entry << ',' << row.t_exit << ','
       << format_double(row.dwell_seconds) << '\n';
  }
}

}  // namespace enex
