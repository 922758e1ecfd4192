#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "enex/format.hpp"
#include "enex/pipeline.hpp"

namespace fs = std::filesystem;
using namespace enex;

namespace {

void print_summary(const PipelineResult& result) {
  std::cout << "events: " << result.events.size() << "  occupancy: " << result.ledger.occupancy()
            << "  dwell rows: " << result.ledger.dwell_report().size();
  if (result.synthesized_detections > 0)
    std::cout << "  synthesized detections: " << result.synthesized_detections;
  std::cout << '\n';
  for (const auto& ue : result.ledger.unmatched_exits())
    std::cout << "warning: exit with empty gallery (track " << ue.track_id << ", frame "
              << ue.frame << ") - unmonitored prior entry\n";
  if (result.event_metrics)
    write_report_table(std::cout, result.detection_metrics.value_or(DetectionMatchResult{}),
                       *result.event_metrics);
}

int cmd_track(const std::string& config_path, const std::string& out_dir) {
  PipelineConfig cfg = load_pipeline_config(config_path);
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  validate_config(cfg);
  const PipelineResult result = run_pipeline(cfg);
  fs::create_directories(cfg.output_dir);
  save_detections((fs::path(cfg.output_dir) / "tracked.csv").string(),
                  tracks_to_rows(result.tracks, {}));
  std::cout << "tracks: " << result.tracks.size() << " -> " << cfg.output_dir << "/tracked.csv\n";
  return 0;
}

int cmd_classify(const std::string& config_path, const std::string& gt_path,
                 const std::string& out_dir, bool strict) {
  PipelineConfig cfg = load_pipeline_config(config_path);
  if (!gt_path.empty()) cfg.ground_truth_path = gt_path;
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  if (strict) cfg.entrance.containment_threshold = 1.0;
  validate_config(cfg);

  const DetectionFile input = load_detections(cfg.detections_path);
  if (!input.has_ids())
    throw Error("classify needs tracked input (every row with id >= 0); use `track` or `run`");
  PipelineResult result = classify_tracks(input.rows, cfg);
  if (!cfg.ground_truth_path.empty()) {
    const DetectionFile gt = load_detections(cfg.ground_truth_path);
    std::vector<Detection> pred_boxes, gt_boxes;
    for (const auto& r : input.rows) {
      if (r.det.camera == 0) pred_boxes.push_back(r.det);
    }
    for (const auto& r : gt.rows) {
      if (r.det.camera == 0) gt_boxes.push_back(r.det);
    }
    result.detection_metrics = match_detections(pred_boxes, gt_boxes);
    result.event_metrics = event_accuracy(result.events, rows_to_events(gt.rows, cfg.fps));
  }

  fs::create_directories(cfg.output_dir);
  std::ofstream events_os((fs::path(cfg.output_dir) / "events.txt").string());
  write_events(events_os, result.events);
  std::ofstream dwell_os((fs::path(cfg.output_dir) / "dwell.csv").string());
  result.ledger.write_dwell_csv(dwell_os);
  print_summary(result);
  return 0;
}

int cmd_simulate(const std::string& script_path, const std::string& out_dir, long long seed) {
  ScenarioScript script = load_script(script_path);
  if (seed >= 0) script.seed = static_cast<std::uint64_t>(seed);
  const Simulation sim = generate(script);

  fs::create_directories(out_dir);
  const auto path = [&](const char* name) { return (fs::path(out_dir) / name).string(); };

  std::vector<DetectionRow> det_rows;
  det_rows.reserve(sim.detections.size());
  for (const auto& d : sim.detections) det_rows.push_back({d, -1, std::nullopt});
  save_detections(path("detections.csv"), det_rows);

  std::vector<EventRecord> gt_events = sim.gt_events;
  save_detections(path("gt.csv"), tracks_to_rows(sim.gt_tracks, gt_events));

  if (script.cameras >= 2) save_homography(path("homography.txt"), script.cam1_from_cam0.inverse());

  std::ofstream conf(path("run.conf"));
  conf << "[scene]\nwidth = " << format_double(script.scene.width)
       << "\nheight = " << format_double(script.scene.height)
       << "\nfps = " << format_double(script.fps) << "\n\n";
  conf << "[entrance]\nx = " << format_double(script.entrance.rect.x)
       << "\ny = " << format_double(script.entrance.rect.y)
       << "\nw = " << format_double(script.entrance.rect.w)
       << "\nh = " << format_double(script.entrance.rect.h) << "\n\n";
  if (script.cameras >= 2)
    conf << "[fusion]\nenabled = true\nhomography_file = homography.txt\n\n";
  conf << "[io]\ndetections = " << path("detections.csv") << "\nground_truth = " << path("gt.csv")
       << "\noutput_dir = " << (fs::path(out_dir) / "out").string() << '\n';

  std::cout << "frames: " << script.duration_frames << "  detections: " << sim.detections.size()
            << "  people: " << sim.gt_tracks.size() << " -> " << out_dir << '\n';
  return 0;
}

int cmd_evaluate(const std::string& pred_path, const std::string& gt_path,
                 const std::string& out_dir, double fps) {
  const DetectionFile pred = load_detections(pred_path);
  const DetectionFile gt = load_detections(gt_path);

  std::vector<Detection> pred_boxes, gt_boxes;
  for (const auto& r : pred.rows) {
    if (r.det.camera == 0) pred_boxes.push_back(r.det);
  }
  for (const auto& r : gt.rows) {
    if (r.det.camera == 0) gt_boxes.push_back(r.det);
  }
  const DetectionMatchResult det = match_detections(pred_boxes, gt_boxes);
  const EventAccuracyResult ev =
      event_accuracy(rows_to_events(pred.rows, fps), rows_to_events(gt.rows, fps));

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream csv((fs::path(out_dir) / "report.csv").string());
    write_report_csv(csv, det, ev);
    std::ofstream txt((fs::path(out_dir) / "report.txt").string());
    write_report_table(txt, det, ev);
  }
  write_report_table(std::cout, det, ev);
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& gt_path,
            const std::string& out_dir, bool strict) {
  PipelineConfig cfg = load_pipeline_config(config_path);
  if (!gt_path.empty()) cfg.ground_truth_path = gt_path;
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  if (strict) cfg.entrance.containment_threshold = 1.0;
  validate_config(cfg);
  const PipelineResult result = run_pipeline(cfg);
  write_outputs(result, cfg.output_dir);
  print_summary(result);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entry/exit monitoring of private areas from outside cameras"};
  app.require_subcommand(1);

  std::string config_path, gt_path, out_dir, pred_path;
  long long seed = -1;
  bool strict = false;
  double fps = 20.0;

  auto* track = app.add_subcommand("track", "build tracks from raw detections");
  track->add_option("--config", config_path, "pipeline config file")->required();
  track->add_option("--out", out_dir, "output directory");

  auto* classify = app.add_subcommand("classify", "events + gallery from tracked input");
  classify->add_option("--config", config_path, "pipeline config file")->required();
  classify->add_option("--gt", gt_path, "ground-truth CSV");
  classify->add_option("--out", out_dir, "output directory");
  classify->add_flag("--strict-containment", strict, "containment threshold 1.0");

  auto* simulate = app.add_subcommand("simulate", "render a scenario script to files");
  simulate->add_option("--config", config_path, "scenario script")->required();
  simulate->add_option("--out", out_dir, "output directory")->required();
  simulate->add_option("--seed", seed, "override the script seed");

  auto* evaluate = app.add_subcommand("evaluate", "score tracked output against ground truth");
  evaluate->add_option("pred", pred_path, "tracked CSV with event labels")->required();
  evaluate->add_option("--gt", gt_path, "ground-truth CSV")->required();
  evaluate->add_option("--out", out_dir, "output directory for reports");
  evaluate->add_option("--fps", fps, "frames per second (default 20)");

  auto* run = app.add_subcommand("run", "full pipeline: fuse, track, classify, evaluate");
  run->add_option("--config", config_path, "pipeline config file")->required();
  run->add_option("--gt", gt_path, "ground-truth CSV (overrides config)");
  run->add_option("--out", out_dir, "output directory (overrides config)");
  run->add_flag("--strict-containment", strict, "containment threshold 1.0");

  CLI11_PARSE(app, argc, argv);

  try {
    if (track->parsed()) return cmd_track(config_path, out_dir);
    if (classify->parsed()) return cmd_classify(config_path, gt_path, out_dir, strict);
    if (simulate->parsed()) return cmd_simulate(config_path, out_dir, seed);
    if (evaluate->parsed()) return cmd_evaluate(pred_path, gt_path, out_dir, fps);
    if (run->parsed()) return cmd_run(config_path, gt_path, out_dir, strict);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
