#include "enex/tracker.hpp"

#include <algorithm>

#include "enex/assignment.hpp"

namespace enex {

namespace {

double pair_cost(const BoundingBox& predicted, const BoundingBox& detected) {
  if (predicted.area() <= 0.0 && detected.area() <= 0.0) return 2.0;  // never gated in
  return 1.0 - iou(predicted, detected);
}

}  // namespace

Tracker::Slot Tracker::make_slot(int frame, const Detection& det) {
  Slot s;
  s.track.id = next_id_++;
  s.track.boxes[frame] = det.box;
  s.track.t_enter_scene = frame;
  s.track.state = cfg_.min_hits_to_confirm <= 1 ? TrackState::Confirmed : TrackState::Tentative;
  s.kf = kalman_init(det.box, cfg_.noise);
  s.last_assigned = frame;
  return s;
}

std::vector<Track> Tracker::step(int frame, const std::vector<Detection>& detections) {
  if (started_ && frame <= last_frame_) throw NonMonotonicFrame(frame, last_frame_);
  const int elapsed = started_ ? frame - last_frame_ : 1;
  just_confirmed_.clear();

  for (auto& slot : slots_) {
    for (int k = 0; k < elapsed; ++k) slot.kf = kalman_predict(slot.kf, cfg_.noise);
  }

  const int n = static_cast<int>(slots_.size());
  const int m = static_cast<int>(detections.size());
  CostMatrix cost(n, m);
  for (int r = 0; r < n; ++r) {
    const BoundingBox predicted = kalman_box(slots_[r].kf);
    for (int c = 0; c < m; ++c) cost.at(r, c) = pair_cost(predicted, detections[c].box);
  }
  const double gate = 1.0 - cfg_.gating_iou;
  const auto matches = assign(cost, gate);

  std::vector<char> slot_matched(n, 0);
  std::vector<char> det_matched(m, 0);
  const auto apply_match = [&](int r, int c) {
    Slot& slot = slots_[r];
    slot.kf = kalman_update(slot.kf, detections[c].box, cfg_.noise);
    slot.track.boxes[frame] = detections[c].box;
    slot.hits += 1;
    slot.misses = 0;
    slot.last_assigned = frame;
    if (slot.track.state == TrackState::Missing) {
      slot.track.state = TrackState::Confirmed;
    } else if (slot.track.state == TrackState::Tentative &&
               slot.hits >= cfg_.min_hits_to_confirm) {
      slot.track.state = TrackState::Confirmed;
      just_confirmed_.push_back(slot.track.id);
    }
    slot_matched[r] = 1;
    det_matched[c] = 1;
  };
  for (const auto& [r, c] : matches) apply_match(r, c);

  // Recovery pass. A direction change while the track is unobserved strands
  // the constant-velocity prediction; the last observed box does not drift,
  // so recent leftovers get one observation-anchored association at the same
  // gate. Long-missing tracks are excluded: their stale anchor must not
  // swallow a different person appearing at the same spot.
  std::vector<int> free_slots, free_dets;
  for (int r = 0; r < n; ++r) {
    if (!slot_matched[r] && slots_[r].misses <= cfg_.recovery_window) free_slots.push_back(r);
  }
  for (int c = 0; c < m; ++c) {
    if (!det_matched[c]) free_dets.push_back(c);
  }
  if (!free_slots.empty() && !free_dets.empty()) {
    CostMatrix recover(static_cast<int>(free_slots.size()), static_cast<int>(free_dets.size()));
    for (size_t i = 0; i < free_slots.size(); ++i) {
      const BoundingBox& anchor = slots_[free_slots[i]].track.last_box();
      for (size_t j = 0; j < free_dets.size(); ++j)
        recover.at(static_cast<int>(i), static_cast<int>(j)) =
            pair_cost(anchor, detections[free_dets[j]].box);
    }
    for (const auto& [i, j] : assign(recover, gate)) apply_match(free_slots[i], free_dets[j]);
  }

  std::vector<Track> terminated;
  std::vector<Slot> kept;
  kept.reserve(slots_.size() + detections.size());
  for (int r = 0; r < n; ++r) {
    Slot& slot = slots_[r];
    if (slot_matched[r]) {
      kept.push_back(std::move(slot));
      continue;
    }
    if (slot.track.state == TrackState::Tentative) continue;  // one miss kills a tentative
    slot.track.state = TrackState::Missing;
    slot.misses += elapsed;
    if (slot.misses > cfg_.max_missing_frames) {
      slot.track.state = TrackState::Terminated;
      slot.track.t_exit_scene = slot.last_assigned;
      terminated.push_back(std::move(slot.track));
    } else {
      kept.push_back(std::move(slot));
    }
  }

  for (int c = 0; c < m; ++c) {
    if (det_matched[c]) continue;
    kept.push_back(make_slot(frame, detections[c]));
    if (kept.back().track.state == TrackState::Confirmed)
      just_confirmed_.push_back(kept.back().track.id);
  }

  slots_ = std::move(kept);
  last_frame_ = frame;
  started_ = true;
  return terminated;
}

std::vector<Track> Tracker::flush() {
  std::vector<Track> terminated;
  for (auto& slot : slots_) {
    if (slot.track.state == TrackState::Tentative) continue;
    slot.track.state = TrackState::Terminated;
    slot.track.t_exit_scene = slot.last_assigned;
    terminated.push_back(std::move(slot.track));
  }
  slots_.clear();
  just_confirmed_.clear();
  return terminated;
}

void Tracker::set_origin(int track_id, Origin origin) {
  for (auto& slot : slots_) {
    if (slot.track.id == track_id) {
      slot.track.origin = origin;
      return;
    }
  }
}

const Track* Tracker::find(int track_id) const {
  for (const auto& slot : slots_) {
    if (slot.track.id == track_id) return &slot.track;
  }
  return nullptr;
}

std::vector<std::pair<int, BoundingBox>> Tracker::confirmed_boxes_at(int frame) const {
  std::vector<std::pair<int, BoundingBox>> out;
  for (const auto& slot : slots_) {
    if (slot.track.state != TrackState::Confirmed) continue;
    const auto it = slot.track.boxes.find(frame);
    if (it != slot.track.boxes.end()) out.emplace_back(slot.track.id, it->second);
  }
  return out;
}

std::vector<const Track*> Tracker::live_tracks() const {
  std::vector<const Track*> out;
  out.reserve(slots_.size());
  for (const auto& slot : slots_) out.push_back(&slot.track);
  return out;
}

}  // namespace enex
