#include <doctest.h>

#include <random>

#include "enex/entrance.hpp"
#include "oracles.hpp"

using namespace enex;

namespace {

const EntranceRegion kEntrance{{100.0, 100.0, 80.0, 120.0}};

EffectiveEntrance plain() { return {{kEntrance.rect}}; }

}  // namespace

TEST_CASE("origin: box inside the entrance means private-area exit") {
  CHECK(classify_origin({120, 120, 30, 60}, plain(), 1.0) == Origin::PrivateArea);
}

TEST_CASE("origin: box far from the entrance means scene entry") {
  CHECK(classify_origin({500, 500, 30, 60}, plain(), 1.0) == Origin::Scene);
}

TEST_CASE("origin: partial overlap below the threshold stays scene") {
  // ~0.6 of the box inside, threshold 0.8
  const BoundingBox b{100 + 80 - 18, 120, 30, 60};  // 18 of 30 px wide inside
  const double ratio = containment_ratio(b, kEntrance);
  CHECK(std::abs(ratio - oracle::raster_containment(b, kEntrance.rect)) <= 0.02);
  CHECK(ratio == doctest::Approx(0.6));
  CHECK(classify_origin(b, plain(), 0.8) == Origin::Scene);
}

TEST_CASE("sink: box inside the entrance means private-area entry") {
  CHECK(classify_sink({120, 120, 30, 60}, plain(), 1.0) == Sink::PrivateArea);
}

TEST_CASE("sink: box at the far scene edge stays scene") {
  CHECK(classify_sink({0, 500, 30, 60}, plain(), 1.0) == Sink::Scene);
}

TEST_CASE("sink: ratio exactly at the threshold counts as inside") {
  const BoundingBox b{100 + 80 - 15, 120, 30, 60};  // exactly half inside
  CHECK(containment_ratio(b, kEntrance) == doctest::Approx(0.5));
  CHECK(classify_sink(b, plain(), 0.5) == Sink::PrivateArea);
}

TEST_CASE("classification rejects zero-area boxes") {
  CHECK_THROWS_AS(classify_origin({0, 0, 0, 0}, plain(), 0.8), ZeroAreaBox);
}

TEST_CASE("effective entrance with no occluders is the entrance itself") {
  const auto eff = effective_entrance(kEntrance, {}, 0.1);
  REQUIRE(eff.regions.size() == 1);
  CHECK(eff.regions[0] == kEntrance.rect);
}

TEST_CASE("occluder covering the whole entrance leaves only the dilated ring") {
  const EntranceRegion e{{0, 0, 10, 10}};
  const BoundingBox occ{-1, -1, 12, 12};
  const auto eff = effective_entrance(e, {occ}, 0.1);

  const double ring_area = dilate(occ, 0.1).area() - occ.area();
  CHECK(eff.area() == doctest::Approx(ring_area));
  // nothing of E itself survives
  for (const auto& r : eff.regions) CHECK(intersect(r, occ).area() == 0.0);
  const double raster = oracle::raster_effective_area(e.rect, {occ}, 0.1);
  CHECK(std::abs(eff.area() - raster) <= 0.02 * std::max(eff.area(), raster));
}

TEST_CASE("occluder disjoint from the entrance adds its ring") {
  const EntranceRegion e{{0, 0, 10, 10}};
  const BoundingBox occ{50, 50, 8, 8};
  const auto eff = effective_entrance(e, {occ}, 0.25);
  const double want = e.rect.area() + (dilate(occ, 0.25).area() - occ.area());
  CHECK(eff.area() == doctest::Approx(want));
  const double raster = oracle::raster_effective_area(e.rect, {occ}, 0.25);
  CHECK(std::abs(eff.area() - raster) <= 0.02 * std::max(eff.area(), raster));
}

TEST_CASE("effective entrance regions are pairwise disjoint") {
  std::mt19937 rng(51);
  std::uniform_real_distribution<double> pos(80.0, 220.0), size(10.0, 60.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<BoundingBox> occ;
    for (int k = 0; k < 3; ++k) occ.push_back({pos(rng), pos(rng), size(rng), size(rng)});
    const auto eff = effective_entrance(kEntrance, occ, 0.1);
    for (size_t i = 0; i < eff.regions.size(); ++i)
      for (size_t j = i + 1; j < eff.regions.size(); ++j)
        CHECK(intersect(eff.regions[i], eff.regions[j]).area() == 0.0);

    // area never exceeds the entrance plus all rings
    double bound = kEntrance.rect.area();
    for (const auto& b : occ) bound += dilate(b, 0.1).area() - b.area();
    CHECK(eff.area() <= bound + 1e-9);

    // and matches the rasterized set arithmetic
    const double raster = oracle::raster_effective_area(kEntrance.rect, occ, 0.1);
    CHECK(std::abs(eff.area() - raster) <= 0.02 * std::max(eff.area(), raster));
  }
}

TEST_CASE("the transition table is total and exact") {
  CHECK(classify_event(Origin::Scene, Sink::Scene) == EventKind::JustAppeared);
  CHECK(classify_event(Origin::Scene, Sink::PrivateArea) == EventKind::Entry);
  CHECK(classify_event(Origin::PrivateArea, Sink::Scene) == EventKind::Exit);
  CHECK(classify_event(Origin::PrivateArea, Sink::PrivateArea) == EventKind::ReEntry);
}

TEST_CASE("raising the threshold can only flip toward the scene label") {
  std::mt19937 rng(52);
  std::uniform_real_distribution<double> pos(60.0, 240.0), size(10.0, 70.0), tau(0.05, 1.0);
  for (int i = 0; i < 500; ++i) {
    const BoundingBox b{pos(rng), pos(rng), size(rng), size(rng)};
    double t1 = tau(rng), t2 = tau(rng);
    if (t1 > t2) std::swap(t1, t2);
    const auto lo = classify_origin(b, plain(), t1);
    const auto hi = classify_origin(b, plain(), t2);
    if (hi == Origin::PrivateArea) CHECK(lo == Origin::PrivateArea);
  }
}

TEST_CASE("finalize: walk from the scene into the entrance is an entry") {
  Track t;
  t.id = 9;
  t.state = TrackState::Terminated;
  t.boxes[10] = {500, 120, 30, 60};
  t.boxes[11] = {300, 120, 30, 60};
  t.boxes[12] = {120, 130, 30, 60};  // inside the entrance
  t.t_enter_scene = 10;
  t.t_exit_scene = 12;

  EntranceConfig cfg;
  cfg.entrance = kEntrance;
  const EventRecord ev = finalize_track(t, cfg, {}, 20.0);
  CHECK(ev.event == EventKind::Entry);
  CHECK(ev.origin == Origin::Scene);
  CHECK(ev.sink == Sink::PrivateArea);
  CHECK(ev.t_enter_scene == 10);
  CHECK(ev.t_exit_scene == 12);
  CHECK(ev.enter_seconds == doctest::Approx(0.5));
  CHECK(ev.exit_seconds == doctest::Approx(0.6));
}

TEST_CASE("finalize: a single frame inside the entrance reads as re-entry") {
  Track t;
  t.id = 3;
  t.state = TrackState::Terminated;
  t.boxes[100] = {120, 120, 30, 60};
  EntranceConfig cfg;
  cfg.entrance = kEntrance;
  const EventRecord ev = finalize_track(t, cfg, {}, 20.0);
  CHECK(ev.event == EventKind::ReEntry);
}

TEST_CASE("finalize: empty tracks are rejected") {
  Track t;
  EntranceConfig cfg;
  cfg.entrance = kEntrance;
  CHECK_THROWS_AS(finalize_track(t, cfg, {}, 20.0), EmptyTrack);
}

TEST_CASE("finalize: a pre-set origin wins") {
  Track t;
  t.id = 4;
  t.state = TrackState::Terminated;
  t.boxes[0] = {120, 120, 30, 60};  // looks like a private-area exit
  t.origin = Origin::Scene;         // but the caller already decided
  EntranceConfig cfg;
  cfg.entrance = kEntrance;
  CHECK(finalize_track(t, cfg, {}, 20.0).event == EventKind::Entry);
  t.origin = std::nullopt;
  CHECK(finalize_track(t, cfg, {}, 20.0).event == EventKind::ReEntry);
}

TEST_CASE("occluder history excludes the track itself") {
  OccluderHistory hist;
  hist.record(5, 1, {0, 0, 10, 10});
  hist.record(5, 2, {20, 0, 10, 10});
  CHECK(hist.occluders_at(5, 1).size() == 1);
  CHECK(hist.occluders_at(5, 1)[0].x == 20.0);
  CHECK(hist.occluders_at(5, 3).size() == 2);
  CHECK(hist.occluders_at(6, 1).empty());
}

TEST_CASE("finalize: an occluder over the entrance turns an entry into a pass-through") {
  // the sink box overlaps only the occluded part of the entrance
  Track t;
  t.id = 7;
  t.state = TrackState::Terminated;
  t.boxes[0] = {500, 120, 30, 60};
  t.boxes[1] = {110, 130, 30, 60};
  EntranceConfig cfg;
  cfg.entrance = kEntrance;

  OccluderHistory hist;
  CHECK(finalize_track(t, cfg, hist, 20.0).event == EventKind::Entry);
  hist.record(1, 99, {100, 100, 60, 120});  // someone standing in the doorway
  CHECK(finalize_track(t, cfg, hist, 20.0).event == EventKind::JustAppeared);
}
