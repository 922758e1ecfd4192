#include "enex/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>

#include "enex/errors.hpp"
#include "enex/geometry.hpp"

namespace enex {

double f1_score(double recall_pct, double precision_pct) {
  if (recall_pct <= 0.0 && precision_pct <= 0.0) throw BothZero();
  return 2.0 * precision_pct * recall_pct / (precision_pct + recall_pct);
}

namespace {

struct Candidate {
  double iou;
  int pred;
  int gt;
};

// Greedy one-to-one by descending IoU; index order breaks exact ties.
long greedy_match(std::vector<Candidate>& cands, size_t n_pred, size_t n_gt) {
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.iou != b.iou) return a.iou > b.iou;
    if (a.pred != b.pred) return a.pred < b.pred;
    return a.gt < b.gt;
  });
  std::vector<char> pred_used(n_pred, 0), gt_used(n_gt, 0);
  long matched = 0;
  for (const auto& c : cands) {
    if (pred_used[c.pred] || gt_used[c.gt]) continue;
    pred_used[c.pred] = 1;
    gt_used[c.gt] = 1;
    ++matched;
  }
  return matched;
}

double pct(long num, long den) { return den == 0 ? 0.0 : 100.0 * num / den; }

double span_iou(int a0, int a1, int b0, int b1) {
  const long inter = std::max(0, std::min(a1, b1) - std::max(a0, b0) + 1);
  const long uni = (a1 - a0 + 1L) + (b1 - b0 + 1L) - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / uni;
}

int fold(EventKind k) {
  switch (k) {
    case EventKind::Entry: return 0;
    case EventKind::Exit: return 1;
    case EventKind::JustAppeared:
    case EventKind::ReEntry: return 2;  // reported together
  }
  return 2;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

DetectionMatchResult match_detections(const std::vector<Detection>& pred,
                                      const std::vector<Detection>& gt,
                                      double iou_threshold) {
  using Key = std::pair<int, int>;  // frame, camera
  std::map<Key, std::pair<std::vector<const Detection*>, std::vector<const Detection*>>> frames;
  for (const auto& d : pred) frames[{d.frame, d.camera}].first.push_back(&d);
  for (const auto& d : gt) frames[{d.frame, d.camera}].second.push_back(&d);

  DetectionMatchResult r;
  for (const auto& [key, lists] : frames) {
    const auto& [ps, gs] = lists;
    std::vector<Candidate> cands;
    for (size_t i = 0; i < ps.size(); ++i) {
      for (size_t j = 0; j < gs.size(); ++j) {
        if (ps[i]->box.area() <= 0.0 && gs[j]->box.area() <= 0.0) continue;
        const double v = iou(ps[i]->box, gs[j]->box);
        if (v >= iou_threshold)
          cands.push_back({v, static_cast<int>(i), static_cast<int>(j)});
      }
    }
    const long matched = greedy_match(cands, ps.size(), gs.size());
    r.tp += matched;
    r.fp += static_cast<long>(ps.size()) - matched;
    r.fn += static_cast<long>(gs.size()) - matched;
  }

  r.recall = pct(r.tp, r.tp + r.fn);
  r.precision = pct(r.tp, r.tp + r.fp);
  r.f1 = (r.recall <= 0.0 && r.precision <= 0.0) ? 0.0 : f1_score(r.recall, r.precision);
  return r;
}

EventAccuracyResult event_accuracy(const std::vector<EventRecord>& pred,
                                   const std::vector<EventRecord>& gt) {
  std::vector<Candidate> cands;
  for (size_t j = 0; j < gt.size(); ++j) {
    for (size_t i = 0; i < pred.size(); ++i) {
      const double v = span_iou(pred[i].t_enter_scene, pred[i].t_exit_scene,
                                gt[j].t_enter_scene, gt[j].t_exit_scene);
      if (v >= 0.5) cands.push_back({v, static_cast<int>(i), static_cast<int>(j)});
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.iou != b.iou) return a.iou > b.iou;
    if (a.gt != b.gt) return a.gt < b.gt;
    return a.pred < b.pred;
  });

  std::vector<int> match_of_gt(gt.size(), -1);
  std::vector<char> pred_used(pred.size(), 0);
  for (const auto& c : cands) {
    if (pred_used[c.pred] || match_of_gt[c.gt] >= 0) continue;
    pred_used[c.pred] = 1;
    match_of_gt[c.gt] = c.pred;
  }

  EventAccuracyResult r;
  EventAccuracyResult::ClassScore* scores[3] = {&r.entry, &r.exit, &r.just_appeared};
  for (size_t j = 0; j < gt.size(); ++j) {
    const int cls = fold(gt[j].event);
    scores[cls]->total += 1;
    if (match_of_gt[j] < 0) {
      r.confusion[static_cast<int>(gt[j].event)][4] += 1;
      continue;
    }
    const EventKind predicted = pred[match_of_gt[j]].event;
    r.confusion[static_cast<int>(gt[j].event)][static_cast<int>(predicted)] += 1;
    if (fold(predicted) == cls) scores[cls]->correct += 1;
  }
  return r;
}

void write_report_csv(std::ostream& os, const DetectionMatchResult& det,
                      const EventAccuracyResult& ev) {
  os << "section,metric,value\n";
  os << "detection,tp," << det.tp << "\n";
  os << "detection,fp," << det.fp << "\n";
  os << "detection,fn," << det.fn << "\n";
  os << "detection,recall," << fixed2(det.recall) << "\n";
  os << "detection,precision," << fixed2(det.precision) << "\n";
  os << "detection,f1," << fixed2(det.f1) << "\n";
  os << "events,entry," << fixed2(ev.entry.accuracy_pct()) << "\n";
  os << "events,exit," << fixed2(ev.exit.accuracy_pct()) << "\n";
  os << "events,just_appeared," << fixed2(ev.just_appeared.accuracy_pct()) << "\n";
  os << "events,overall," << fixed2(ev.overall_accuracy_pct()) << "\n";
}

void write_report_table(std::ostream& os, const DetectionMatchResult& det,
                        const EventAccuracyResult& ev) {
  os << "People detection\n";
  os << "  recall     " << fixed2(det.recall) << "   (tp=" << det.tp << " fn=" << det.fn << ")\n";
  os << "  precision  " << fixed2(det.precision) << "   (fp=" << det.fp << ")\n";
  os << "  f1         " << fixed2(det.f1) << "\n";
  os << "Event detection accuracy (%)\n";
  os << "  entry          " << fixed2(ev.entry.accuracy_pct()) << "   (" << ev.entry.correct
     << "/" << ev.entry.total << ")\n";
  os << "  exit           " << fixed2(ev.exit.accuracy_pct()) << "   (" << ev.exit.correct << "/"
     << ev.exit.total << ")\n";
  os << "  just appeared  " << fixed2(ev.just_appeared.accuracy_pct()) << "   ("
     << ev.just_appeared.correct << "/" << ev.just_appeared.total << ")\n";
  os << "  overall        " << fixed2(ev.overall_accuracy_pct()) << "   (" << ev.correct() << "/"
     << ev.total() << ")\n";
}

}  // namespace enex
