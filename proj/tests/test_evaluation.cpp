#include <doctest.h>

#include <random>

#include "enex/evaluation.hpp"
#include "oracles.hpp"

using namespace enex;

namespace {

Detection det(int frame, BoundingBox box) { return {frame, box, 1.0, 0, false}; }

EventRecord event(EventKind kind, int track_id, int t_enter, int t_exit) {
  EventRecord ev;
  ev.track_id = track_id;
  ev.event = kind;
  ev.t_enter_scene = t_enter;
  ev.t_exit_scene = t_exit;
  return ev;
}

}  // namespace

TEST_CASE("f1 of the published reference rows") {
  CHECK(std::abs(f1_score(80.43, 92.23) - 85.92) <= 0.01);
  CHECK(std::abs(f1_score(78.2, 91.3) - 84.24) <= 0.01);
}

TEST_CASE("f1 of equal inputs is the input") {
  for (double x : {5.0, 50.0, 99.0}) CHECK(f1_score(x, x) == doctest::Approx(x));
}

TEST_CASE("f1 rejects the all-zero corner") {
  CHECK_THROWS_AS(f1_score(0.0, 0.0), BothZero);
}

TEST_CASE("f1 is symmetric and between min and max") {
  std::mt19937 rng(81);
  std::uniform_real_distribution<double> u(1.0, 100.0);
  for (int i = 0; i < 300; ++i) {
    const double p = u(rng), r = u(rng);
    const double f = f1_score(r, p);
    CHECK(f == f1_score(p, r));
    CHECK(f <= std::max(p, r) + 1e-12);
    CHECK(f >= std::min(p, r) - 1e-12);
  }
}

TEST_CASE("perfect predictions score 100 everywhere") {
  std::vector<Detection> boxes;
  for (int f = 0; f < 10; ++f) {
    boxes.push_back(det(f, {10.0 * f, 20, 30, 60}));
    boxes.push_back(det(f, {500, 100.0 + f, 40, 80}));
  }
  const DetectionMatchResult r = match_detections(boxes, boxes);
  CHECK(r.tp == 20);
  CHECK(r.fp == 0);
  CHECK(r.fn == 0);
  CHECK(r.recall == 100.0);
  CHECK(r.precision == 100.0);
  CHECK(r.f1 == 100.0);
}

TEST_CASE("the 60.4/80.3 reference row reproduces its F1") {
  CHECK(std::abs(f1_score(60.4, 80.3) - 68.94) <= 0.01);
}

TEST_CASE("counts always partition the inputs") {
  std::mt19937 rng(82);
  std::uniform_real_distribution<double> pos(0.0, 300.0), size(20.0, 60.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Detection> pred, gt;
    const int np = trial % 6, ng = (trial / 2) % 6;
    for (int i = 0; i < np; ++i) pred.push_back(det(0, {pos(rng), pos(rng), size(rng), size(rng)}));
    for (int i = 0; i < ng; ++i) gt.push_back(det(0, {pos(rng), pos(rng), size(rng), size(rng)}));
    const DetectionMatchResult r = match_detections(pred, gt);
    CHECK(r.tp + r.fp == np);
    CHECK(r.tp + r.fn == ng);
  }
}

TEST_CASE("greedy matching agrees with the exhaustive optimum on random frames") {
  // Person-sized boxes scattered over a full frame, predictions jittered off
  // their truths: the operating regime for detection scoring.
  std::mt19937 rng(83);
  std::uniform_real_distribution<double> px(0.0, 1800.0), py(0.0, 900.0), size(40.0, 80.0),
      nudge(-12.0, 12.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Detection> pred, gt;
    std::vector<BoundingBox> pred_boxes, gt_boxes;
    for (int i = 0; i < 5; ++i) {
      const BoundingBox g{px(rng), py(rng), size(rng), 2.0 * size(rng)};
      gt.push_back(det(0, g));
      gt_boxes.push_back(g);
      const BoundingBox p{g.x + nudge(rng), g.y + nudge(rng), g.w, g.h};
      pred.push_back(det(0, p));
      pred_boxes.push_back(p);
    }
    const DetectionMatchResult r = match_detections(pred, gt);
    CHECK(r.tp == oracle::max_matching(pred_boxes, gt_boxes, 0.5));
  }
}

TEST_CASE("greedy matching never beats the exhaustive optimum, even when crowded") {
  std::mt19937 rng(84);
  std::uniform_real_distribution<double> pos(0.0, 200.0), size(20.0, 60.0), nudge(-15.0, 15.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Detection> pred, gt;
    std::vector<BoundingBox> pred_boxes, gt_boxes;
    for (int i = 0; i < 5; ++i) {
      const BoundingBox g{pos(rng), pos(rng), size(rng), size(rng)};
      gt.push_back(det(0, g));
      gt_boxes.push_back(g);
      const BoundingBox p{g.x + nudge(rng), g.y + nudge(rng), g.w, g.h};
      pred.push_back(det(0, p));
      pred_boxes.push_back(p);
    }
    const DetectionMatchResult r = match_detections(pred, gt);
    CHECK(r.tp <= oracle::max_matching(pred_boxes, gt_boxes, 0.5));
  }
}

TEST_CASE("event accuracy: identical records score 100 in every class") {
  std::vector<EventRecord> gt;
  gt.push_back(event(EventKind::Entry, 1, 0, 50));
  gt.push_back(event(EventKind::Exit, 2, 100, 150));
  gt.push_back(event(EventKind::JustAppeared, 3, 200, 260));
  gt.push_back(event(EventKind::ReEntry, 4, 300, 330));
  const EventAccuracyResult r = event_accuracy(gt, gt);
  CHECK(r.entry.accuracy_pct() == 100.0);
  CHECK(r.exit.accuracy_pct() == 100.0);
  CHECK(r.just_appeared.accuracy_pct() == 100.0);
  CHECK(r.overall_accuracy_pct() == 100.0);
  CHECK(r.just_appeared.total == 2);  // ReEntry reports with JustAppeared
}

TEST_CASE("event accuracy: 9 of 10 entries right is 90 percent") {
  std::vector<EventRecord> gt, pred;
  for (int i = 0; i < 10; ++i) {
    gt.push_back(event(EventKind::Entry, i, 100 * i, 100 * i + 50));
    pred.push_back(event(i == 0 ? EventKind::JustAppeared : EventKind::Entry, 100 + i, 100 * i,
                         100 * i + 50));
  }
  const EventAccuracyResult r = event_accuracy(pred, gt);
  CHECK(r.entry.total == 10);
  CHECK(r.entry.correct == 9);
  CHECK(r.entry.accuracy_pct() == doctest::Approx(90.0));
}

TEST_CASE("unmatched ground truth counts as an error of its class") {
  std::vector<EventRecord> gt = {event(EventKind::Exit, 1, 0, 100)};
  std::vector<EventRecord> pred;  // nothing predicted
  const EventAccuracyResult r = event_accuracy(pred, gt);
  CHECK(r.exit.total == 1);
  CHECK(r.exit.correct == 0);
  CHECK(r.confusion[static_cast<int>(EventKind::Exit)][4] == 1);
}

TEST_CASE("tracks associate by time span, not id") {
  std::vector<EventRecord> gt = {event(EventKind::Entry, 7, 0, 100)};
  std::vector<EventRecord> pred = {event(EventKind::Entry, 42, 2, 98)};
  const EventAccuracyResult r = event_accuracy(pred, gt);
  CHECK(r.entry.correct == 1);

  // a short fragment (span overlap < 0.5) does not associate
  std::vector<EventRecord> fragment = {event(EventKind::Entry, 42, 80, 100)};
  CHECK(event_accuracy(fragment, gt).entry.correct == 0);
}

TEST_CASE("a predicted re-entry scores for a just-appeared truth and vice versa") {
  std::vector<EventRecord> gt = {event(EventKind::ReEntry, 1, 0, 40),
                                 event(EventKind::JustAppeared, 2, 100, 140)};
  std::vector<EventRecord> pred = {event(EventKind::JustAppeared, 10, 0, 40),
                                   event(EventKind::ReEntry, 11, 100, 140)};
  const EventAccuracyResult r = event_accuracy(pred, gt);
  CHECK(r.just_appeared.total == 2);
  CHECK(r.just_appeared.correct == 2);
  // the confusion matrix still tells them apart
  CHECK(r.confusion[static_cast<int>(EventKind::ReEntry)][static_cast<int>(
            EventKind::JustAppeared)] == 1);
}
