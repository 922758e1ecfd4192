#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "enex/config.hpp"
#include "enex/detection_io.hpp"
#include "scenarios.hpp"

using namespace enex;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("enex_io_test_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name, const std::string& contents) const {
    const std::string p = (path / name).string();
    std::ofstream os(p);
    os << contents;
    return p;
  }
};

}  // namespace

TEST_CASE("well-formed detection rows parse") {
  TempDir dir;
  const auto p = dir.file("d.csv",
                          "frame,id,x,y,w,h,score,camera\n"
                          "0,-1,10,20,30,40,1.0,0\n"
                          "2,-1,11.5,21.5,30,40,0.75,1\n"
                          "1,-1,12,22,30,40,0.5\n");
  const DetectionFile f = load_detections(p);
  REQUIRE(f.rows.size() == 3);
  CHECK(f.rows[0].det.frame == 0);
  CHECK(f.rows[1].det.frame == 1);  // sorted by frame
  CHECK(f.rows[1].det.camera == 0);  // camera defaults to 0
  CHECK(f.rows[2].det.camera == 1);
  CHECK(f.rows[2].det.box.x == 11.5);
  CHECK(!f.has_ids());
}

TEST_CASE("negative width is a parse error with the line number") {
  TempDir dir;
  const auto p = dir.file("bad.csv", "0,-1,10,20,30,40,1.0,0\n5,-1,1,1,-3,4,1.0,0\n");
  try {
    load_detections(p);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line_number == 2);
    CHECK(std::string(e.what()).find("width") != std::string::npos);
  }
}

TEST_CASE("malformed fields report their line") {
  TempDir dir;
  CHECK_THROWS_AS(load_detections(dir.file("a.csv", "0,-1,x,20,30,40,1,0\n")), ParseError);
  CHECK_THROWS_AS(load_detections(dir.file("b.csv", "0,-1,1,2,3,4\n")), ParseError);
  CHECK_THROWS_AS(load_detections(dir.file("c.csv", "0,-1,1,2,3,4,2.0,0\n")), ParseError);
  CHECK_THROWS_AS(load_detections(dir.file("d.csv", "0,-1,1,2,3,4,1.0,7\n")), ParseError);
  CHECK_THROWS_AS(load_detections(dir.file("e.csv", "0,-1,1,2,3,4,1.0,0,Banana\n")), ParseError);
}

TEST_CASE("a file with no data rows is empty") {
  TempDir dir;
  CHECK_THROWS_AS(load_detections(dir.file("empty.csv", "# nothing here\n\n")), EmptyFile);
}

TEST_CASE("simulator output round-trips exactly") {
  const Simulation sim = generate(scenarios::corridor_mix(1, {2.0, 0.1, 0.05}, 5));
  std::vector<DetectionRow> rows;
  for (const auto& d : sim.detections) rows.push_back({d, -1, std::nullopt});

  TempDir dir;
  const std::string p = (dir.path / "sim.csv").string();
  save_detections(p, rows);
  const DetectionFile loaded = load_detections(p);
  REQUIRE(loaded.rows.size() == rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(loaded.rows[i].det.frame == rows[i].det.frame);
    CHECK(loaded.rows[i].det.box == rows[i].det.box);  // exact, not approximate
    CHECK(loaded.rows[i].det.score == rows[i].det.score);
    CHECK(loaded.rows[i].det.camera == rows[i].det.camera);
  }
}

TEST_CASE("events round-trip through their line format") {
  std::vector<EventRecord> events;
  EventRecord ev;
  ev.track_id = 3;
  ev.event = EventKind::Entry;
  ev.origin = Origin::Scene;
  ev.sink = Sink::PrivateArea;
  ev.t_enter_scene = 12;
  ev.t_exit_scene = 140;
  ev.enter_seconds = 0.6;
  ev.exit_seconds = 7.0;
  events.push_back(ev);
  ev.track_id = 4;
  ev.event = EventKind::ReEntry;
  ev.origin = Origin::PrivateArea;
  events.push_back(ev);

  TempDir dir;
  const std::string p = (dir.path / "events.txt").string();
  {
    std::ofstream os(p);
    write_events(os, events);
  }
  const auto loaded = read_events(p);
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].track_id == 3);
  CHECK(loaded[0].event == EventKind::Entry);
  CHECK(loaded[0].origin == Origin::Scene);
  CHECK(loaded[0].sink == Sink::PrivateArea);
  CHECK(loaded[0].t_enter_scene == 12);
  CHECK(loaded[0].enter_seconds == 0.6);
  CHECK(loaded[1].event == EventKind::ReEntry);
}

TEST_CASE("homography sidecars round-trip") {
  Eigen::Matrix3d m;
  m << 0.5, 0.01, 100.0, -0.02, 0.5, 50.0, 1e-5, -1e-5, 1.0;
  const Homography h = make_homography(m);
  TempDir dir;
  const std::string p = (dir.path / "h.txt").string();
  save_homography(p, h);
  const Homography loaded = load_homography(p);
  CHECK((loaded.m - h.m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pipeline configs parse and validate") {
  TempDir dir;
  dir.file("dets.csv", "0,-1,10,20,30,40,1.0,0\n");
  const auto conf = dir.file("run.conf",
                             "# sample\n"
                             "[scene]\nwidth = 1920\nheight = 1080\nfps = 20\n"
                             "[entrance]\nx = 1600\ny = 400\nw = 200\nh = 300\n"
                             "containment_threshold = 0.9\noccluder_margin = 0.15\n"
                             "[tracker]\nmax_missing_frames = 15\nmin_hits_to_confirm = 2\n"
                             "gating_iou = 0.25\n"
                             "[fusion]\nenabled = false\n"
                             "[io]\ndetections = " +
                                 (dir.path / "dets.csv").string() + "\noutput_dir = out\n");
  PipelineConfig cfg = load_pipeline_config(conf);
  CHECK(cfg.scene.width == 1920.0);
  CHECK(cfg.fps == 20.0);
  CHECK(cfg.tracker.fps == 20.0);
  CHECK(cfg.entrance.entrance.rect == BoundingBox{1600, 400, 200, 300});
  CHECK(cfg.entrance.containment_threshold == 0.9);
  CHECK(cfg.entrance.occluder_margin == 0.15);
  CHECK(cfg.tracker.max_missing_frames == 15);
  CHECK(cfg.tracker.min_hits_to_confirm == 2);
  CHECK(cfg.tracker.gating_iou == 0.25);
  CHECK(!cfg.fusion_enabled);
  CHECK_NOTHROW(validate_config(cfg));

  cfg.entrance.entrance.rect.x = 1800.0;  // pokes out of the scene
  CHECK_THROWS_AS(validate_config(cfg), Error);
}

TEST_CASE("config parse errors carry context") {
  TempDir dir;
  CHECK_THROWS_AS(load_pipeline_config(dir.file("a.conf", "[scene]\nwidth == 3\n")), ParseError);
  CHECK_THROWS_AS(load_pipeline_config(dir.file("b.conf", "[scene]\nbogus = 3\n")), ParseError);
  CHECK_THROWS_AS(load_pipeline_config(dir.file("c.conf", "width = 3\n")), ParseError);
  CHECK_THROWS_AS(load_pipeline_config(dir.file("d.conf", "[tracker]\nmax_missing_frames = 2.5\n")),
                  ParseError);
}

TEST_CASE("scenario scripts round-trip through their text form") {
  const ScenarioScript script = scenarios::occlusion_scene(7);
  TempDir dir;
  const std::string p = (dir.path / "scene.txt").string();
  {
    std::ofstream os(p);
    write_script(os, script);
  }
  const ScenarioScript loaded = load_script(p);
  CHECK(loaded.scene.width == script.scene.width);
  CHECK(loaded.entrance.rect == script.entrance.rect);
  CHECK(loaded.duration_frames == script.duration_frames);
  CHECK(loaded.cameras == 2);
  CHECK(loaded.seed == script.seed);
  CHECK((loaded.cam1_from_cam0.m - script.cam1_from_cam0.m).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(loaded.persons.size() == script.persons.size());
  CHECK(loaded.persons[1].hidden_cam0 == script.persons[1].hidden_cam0);
  CHECK(loaded.persons[1].waypoints.size() == script.persons[1].waypoints.size());

  // identical generation from the reloaded script
  const Simulation a = generate(script);
  const Simulation b = generate(loaded);
  REQUIRE(a.detections.size() == b.detections.size());
  for (size_t i = 0; i < a.detections.size(); ++i) CHECK(a.detections[i].box == b.detections[i].box);
}

TEST_CASE("event lines with unknown labels are rejected") {
  TempDir dir;
  CHECK_THROWS_AS(read_events(dir.file("a.txt", "track=1 event=Nope\n")), ParseError);
  CHECK_THROWS_AS(read_events(dir.file("b.txt", "track=1 origin=elsewhere\n")), ParseError);
  CHECK_THROWS_AS(read_events(dir.file("c.txt", "track=1 sink=void\n")), ParseError);
  CHECK_THROWS_AS(read_events(dir.file("d.txt", "track=1 whatever=3\n")), ParseError);
  CHECK_THROWS_AS(read_events(dir.file("e.txt", "not key value\n")), ParseError);
}

TEST_CASE("script structure errors are rejected with context") {
  TempDir dir;
  CHECK_THROWS_AS(load_script(dir.file("a.txt", "person {\nid = 1\n")), ParseError);
  CHECK_THROWS_AS(load_script(dir.file("b.txt", "}\n")), ParseError);
  CHECK_THROWS_AS(load_script(dir.file("c.txt", "person {\nperson {\n}\n}\n")), ParseError);
  CHECK_THROWS_AS(load_script(dir.file("d.txt", "wheelbarrow {\n}\n")), ParseError);
  CHECK_THROWS_AS(load_script(dir.file("e.txt", "person {\nkind = Sideways\n}\n")), ParseError);
  CHECK_THROWS_AS(load_script(dir.file("f.txt", "entrance = 1 2 3\n")), ParseError);
  CHECK_THROWS_AS(load_script(dir.file("g.txt", "person {\nbogus = 1\n}\n")), ParseError);
}

TEST_CASE("tracked rows rebuild into terminated tracks") {
  TempDir dir;
  const auto p = dir.file("t.csv",
                          "frame,id,x,y,w,h,score,camera,event\n"
                          "0,1,10,10,30,60,1,0,Entry\n"
                          "1,1,20,10,30,60,1,0,Entry\n"
                          "0,2,500,10,30,60,1,0,\n");
  const DetectionFile f = load_detections(p);
  CHECK(f.has_ids());
  const auto tracks = rows_to_tracks(f.rows);
  REQUIRE(tracks.size() == 2);
  CHECK(tracks[0].id == 1);
  CHECK(tracks[0].boxes.size() == 2);
  CHECK(tracks[0].state == TrackState::Terminated);
  CHECK(tracks[0].t_exit_scene == 1);

  const auto events = rows_to_events(f.rows, 20.0);
  REQUIRE(events.size() == 1);  // only labeled tracks produce events
  CHECK(events[0].track_id == 1);
  CHECK(events[0].event == EventKind::Entry);
  CHECK(events[0].t_enter_scene == 0);
  CHECK(events[0].t_exit_scene == 1);
}
