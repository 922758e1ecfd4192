#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "enex/types.hpp"

namespace enex {

struct DetectionMatchResult {
  long tp = 0;
  long fp = 0;
  long fn = 0;
  double recall = 0.0;     // percent
  double precision = 0.0;  // percent
  double f1 = 0.0;         // percent
};

/// Percent-scaled harmonic mean 2PR/(P+R). Throws BothZero when recall and
/// precision are both zero.
double f1_score(double recall_pct, double precision_pct);

/// Per-frame (and per-camera) one-to-one box matching, greedy by descending
/// IoU among pairs at or above the threshold; counts aggregated over the
/// sequence.
DetectionMatchResult match_detections(const std::vector<Detection>& pred,
                                      const std::vector<Detection>& gt,
                                      double iou_threshold = 0.5);

/// Per-class event scoring. ReEntry is reported folded into JustAppeared;
/// the full 4x4 confusion matrix keeps them apart.
struct EventAccuracyResult {
  struct ClassScore {
    long total = 0;    // ground-truth events of this class
    long correct = 0;  // matched and labeled correctly
    double accuracy_pct() const { return total == 0 ? 100.0 : 100.0 * correct / total; }
  };
  ClassScore entry;
  ClassScore exit;
  ClassScore just_appeared;  // includes ReEntry
  // confusion[gt][pred], indexed by EventKind; last column = unmatched gt
  std::array<std::array<long, 5>, 4> confusion{};

  long total() const { return entry.total + exit.total + just_appeared.total; }
  long correct() const { return entry.correct + exit.correct + just_appeared.correct; }
  double overall_accuracy_pct() const {
    return total() == 0 ? 100.0 : 100.0 * correct() / total();
  }
};

/// Track association by temporal span IoU >= 0.5, one-to-one, greedy by
/// descending span overlap. Unmatched ground-truth events count as errors of
/// their class.
EventAccuracyResult event_accuracy(const std::vector<EventRecord>& pred,
                                   const std::vector<EventRecord>& gt);

void write_report_csv(std::ostream& os, const DetectionMatchResult& det,
                      const EventAccuracyResult& ev);
void write_report_table(std::ostream& os, const DetectionMatchResult& det,
                        const EventAccuracyResult& ev);

}  // namespace enex
