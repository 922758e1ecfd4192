#include "enex/config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "enex/detection_io.hpp"
#include "enex/format.hpp"

namespace enex {

namespace {

std::string trimmed(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct KeyValue {
  int line = 0;
  std::string key;
  std::string value;
};

struct ParsedLine {
  enum Kind { Empty, Section, Pair, BlockOpen, BlockClose } kind = Empty;
  std::string name;  // section or block name
  KeyValue kv;
};

ParsedLine parse_line(const std::string& raw, const std::string& path, int lineno) {
  std::string line = raw;
  if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
  line = trimmed(line);

  ParsedLine out;
  if (line.empty()) return out;
  if (line.front() == '[' && line.back() == ']') {
    out.kind = ParsedLine::Section;
    out.name = trimmed(line.substr(1, line.size() - 2));
    return out;
  }
  if (line == "}") {
    out.kind = ParsedLine::BlockClose;
    return out;
  }
  if (line.back() == '{') {
    out.kind = ParsedLine::BlockOpen;
    out.name = trimmed(line.substr(0, line.size() - 1));
    return out;
  }
  const auto eq = line.find('=');
  if (eq == std::string::npos) throw ParseError(path, lineno, "expected 'key = value'");
  out.kind = ParsedLine::Pair;
  out.kv = {lineno, trimmed(line.substr(0, eq)), trimmed(line.substr(eq + 1))};
  if (out.kv.key.empty()) throw ParseError(path, lineno, "empty key");
  return out;
}

double to_double(const KeyValue& kv, const std::string& path) {
  double v = 0.0;
  const auto res = std::from_chars(kv.value.data(), kv.value.data() + kv.value.size(), v);
  if (res.ec != std::errc() || res.ptr != kv.value.data() + kv.value.size())
    throw ParseError(path, kv.line, "bad number for '" + kv.key + "': '" + kv.value + "'");
  return v;
}

int to_int(const KeyValue& kv, const std::string& path) {
  const double v = to_double(kv, path);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw ParseError(path, kv.line, "'" + kv.key + "' must be an integer");
  return i;
}

bool to_bool(const KeyValue& kv, const std::string& path) {
  if (kv.value == "true" || kv.value == "1" || kv.value == "yes") return true;
  if (kv.value == "false" || kv.value == "0" || kv.value == "no") return false;
  throw ParseError(path, kv.line, "'" + kv.key + "' must be true or false");
}

std::vector<double> to_doubles(const KeyValue& kv, const std::string& path, size_t expect) {
  std::vector<double> out;
  std::istringstream ss(kv.value);
  double v;
  while (ss >> v) out.push_back(v);
  if (out.size() != expect)
    throw ParseError(path, kv.line,
                     "'" + kv.key + "' expects " + std::to_string(expect) + " numbers");
  return out;
}

Homography to_homography(const KeyValue& kv, const std::string& path) {
  const auto v = to_doubles(kv, path, 9);
  Eigen::Matrix3d m;
  for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = v[i];
  try {
    return make_homography(m);
  } catch (const DegenerateConfiguration& e) {
    throw ParseError(path, kv.line, e.what());
  }
}

}  // namespace

PipelineConfig load_pipeline_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");

  PipelineConfig cfg;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const ParsedLine p = parse_line(line, path, lineno);
    if (p.kind == ParsedLine::Empty) continue;
    if (p.kind == ParsedLine::Section) {
      section = p.name;
      continue;
    }
    if (p.kind != ParsedLine::Pair)
      throw ParseError(path, lineno, "blocks are not allowed in pipeline configs");
    const KeyValue& kv = p.kv;

    if (section == "scene") {
      if (kv.key == "width") cfg.scene.width = to_double(kv, path);
      else if (kv.key == "height") cfg.scene.height = to_double(kv, path);
      else if (kv.key == "fps") cfg.fps = to_double(kv, path);
      else throw ParseError(path, kv.line, "unknown [scene] key '" + kv.key + "'");
    } else if (section == "entrance") {
      if (kv.key == "x") cfg.entrance.entrance.rect.x = to_double(kv, path);
      else if (kv.key == "y") cfg.entrance.entrance.rect.y = to_double(kv, path);
      else if (kv.key == "w") cfg.entrance.entrance.rect.w = to_double(kv, path);
      else if (kv.key == "h") cfg.entrance.entrance.rect.h = to_double(kv, path);
      else if (kv.key == "containment_threshold")
        cfg.entrance.containment_threshold = to_double(kv, path);
      else if (kv.key == "occluder_margin") cfg.entrance.occluder_margin = to_double(kv, path);
      else throw ParseError(path, kv.line, "unknown [entrance] key '" + kv.key + "'");
    } else if (section == "tracker") {
      if (kv.key == "max_missing_frames") cfg.tracker.max_missing_frames = to_int(kv, path);
      else if (kv.key == "min_hits_to_confirm") cfg.tracker.min_hits_to_confirm = to_int(kv, path);
      else if (kv.key == "gating_iou") cfg.tracker.gating_iou = to_double(kv, path);
      else if (kv.key == "recovery_window") cfg.tracker.recovery_window = to_int(kv, path);
      else if (kv.key == "process_noise_scale") cfg.tracker.noise.process_scale = to_double(kv, path);
      else if (kv.key == "measurement_noise_scale")
        cfg.tracker.noise.measurement_scale = to_double(kv, path);
      else throw ParseError(path, kv.line, "unknown [tracker] key '" + kv.key + "'");
    } else if (section == "fusion") {
      if (kv.key == "enabled") cfg.fusion_enabled = to_bool(kv, path);
      else if (kv.key == "homography") cfg.cam0_from_cam1 = to_homography(kv, path);
      else if (kv.key == "homography_file") {
        // sidecar path is relative to the config file
        const auto sidecar = std::filesystem::path(path).parent_path() / kv.value;
        try {
          cfg.cam0_from_cam1 = load_homography(sidecar.string());
        } catch (const DegenerateConfiguration& e) {
          throw ParseError(path, kv.line, e.what());
        }
      } else if (kv.key == "score_discount") cfg.fusion.score_discount = to_double(kv, path);
      else if (kv.key == "duplicate_iou") cfg.fusion.duplicate_iou = to_double(kv, path);
      else if (kv.key == "neighborhood_margin")
        cfg.fusion.neighborhood_margin = to_double(kv, path);
      else throw ParseError(path, kv.line, "unknown [fusion] key '" + kv.key + "'");
    } else if (section == "io") {
      if (kv.key == "detections") cfg.detections_path = kv.value;
      else if (kv.key == "ground_truth") cfg.ground_truth_path = kv.value;
      else if (kv.key == "output_dir") cfg.output_dir = kv.value;
      else throw ParseError(path, kv.line, "unknown [io] key '" + kv.key + "'");
    } else {
      throw ParseError(path, kv.line, "key outside a known section: '" + kv.key + "'");
    }
  }

  cfg.tracker.fps = cfg.fps;
  return cfg;
}

void validate_config(const PipelineConfig& cfg, bool check_paths) {
  if (cfg.scene.width <= 0.0 || cfg.scene.height <= 0.0)
    throw Error("config: scene must have positive dimensions");
  const BoundingBox& e = cfg.entrance.entrance.rect;
  if (e.w <= 0.0 || e.h <= 0.0) throw Error("config: entrance must have positive dimensions");
  if (!cfg.scene.contains(e)) throw Error("config: entrance must lie inside the scene");
  const double tau = cfg.entrance.containment_threshold;
  if (tau <= 0.0 || tau > 1.0) throw Error("config: containment_threshold must be in (0,1]");
  if (cfg.entrance.occluder_margin < 0.0) throw Error("config: occluder_margin must be >= 0");
  if (cfg.tracker.max_missing_frames <= 0 || cfg.tracker.min_hits_to_confirm <= 0)
    throw Error("config: tracker thresholds must be positive");
  if (cfg.tracker.gating_iou <= 0.0 || cfg.tracker.gating_iou > 1.0)
    throw Error("config: gating_iou must be in (0,1]");
  if (cfg.fps <= 0.0) throw Error("config: fps must be positive");
  if (cfg.fusion_enabled && !cfg.cam0_from_cam1)
    throw Error("config: fusion enabled but no homography given");
  if (check_paths) {
    if (cfg.detections_path.empty()) throw Error("config: [io] detections is required");
    if (!std::filesystem::exists(cfg.detections_path))
      throw Error("config: detections file not found: " + cfg.detections_path);
    if (!cfg.ground_truth_path.empty() && !std::filesystem::exists(cfg.ground_truth_path))
      throw Error("config: ground truth file not found: " + cfg.ground_truth_path);
  }
}

ScenarioScript load_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");

  ScenarioScript script;
  PersonScript* person = nullptr;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const ParsedLine p = parse_line(line, path, lineno);
    switch (p.kind) {
      case ParsedLine::Empty:
      case ParsedLine::Section:
        break;
      case ParsedLine::BlockOpen:
        if (p.name != "person") throw ParseError(path, lineno, "unknown block '" + p.name + "'");
        if (person) throw ParseError(path, lineno, "person blocks cannot nest");
        script.persons.emplace_back();
        person = &script.persons.back();
        break;
      case ParsedLine::BlockClose:
        if (!person) throw ParseError(path, lineno, "stray '}'");
        person = nullptr;
        break;
      case ParsedLine::Pair: {
        const KeyValue& kv = p.kv;
        if (person) {
          if (kv.key == "id") person->id = to_int(kv, path);
          else if (kv.key == "kind") {
            const auto kind = parse_event_kind(kv.value);
            if (!kind) throw ParseError(path, kv.line, "unknown kind '" + kv.value + "'");
            person->kind = *kind;
          } else if (kv.key == "t_start") person->t_start = to_int(kv, path);
          else if (kv.key == "speed") person->speed = to_double(kv, path);
          else if (kv.key == "size") {
            const auto v = to_doubles(kv, path, 2);
            person->box_w = v[0];
            person->box_h = v[1];
          } else if (kv.key == "waypoint") {
            const auto v = to_doubles(kv, path, 2);
            person->waypoints.push_back({v[0], v[1]});
          } else if (kv.key == "hidden_cam0") {
            const auto v = to_doubles(kv, path, 2);
            person->hidden_cam0 = {static_cast<int>(v[0]), static_cast<int>(v[1])};
          } else {
            throw ParseError(path, kv.line, "unknown person key '" + kv.key + "'");
          }
        } else {
          if (kv.key == "scene") {
            const auto v = to_doubles(kv, path, 2);
            script.scene = {v[0], v[1]};
          } else if (kv.key == "entrance") {
            const auto v = to_doubles(kv, path, 4);
            script.entrance.rect = {v[0], v[1], v[2], v[3]};
          } else if (kv.key == "fps") script.fps = to_double(kv, path);
          else if (kv.key == "duration") script.duration_frames = to_int(kv, path);
          else if (kv.key == "cameras") script.cameras = to_int(kv, path);
          else if (kv.key == "seed") script.seed = static_cast<std::uint64_t>(to_double(kv, path));
          else if (kv.key == "pos_sigma") script.noise.pos_sigma = to_double(kv, path);
          else if (kv.key == "miss_prob") script.noise.miss_prob = to_double(kv, path);
          else if (kv.key == "fp_rate") script.noise.fp_rate = to_double(kv, path);
          else if (kv.key == "cam1_from_cam0") script.cam1_from_cam0 = to_homography(kv, path);
          else throw ParseError(path, kv.line, "unknown script key '" + kv.key + "'");
        }
        break;
      }
    }
  }
  if (person) throw ParseError(path, lineno, "unterminated person block");
  return script;
}

void write_script(std::ostream& os, const ScenarioScript& s) {
  os << "scene = " << format_double(s.scene.width) << ' ' << format_double(s.scene.height) << '\n';
  os << "entrance = " << format_double(s.entrance.rect.x) << ' ' << format_double(s.entrance.rect.y)
     << ' ' << format_double(s.entrance.rect.w) << ' ' << format_double(s.entrance.rect.h) << '\n';
  os << "fps = " << format_double(s.fps) << '\n';
  os << "duration = " << s.duration_frames << '\n';
  os << "cameras = " << s.cameras << '\n';
  os << "seed = " << s.seed << '\n';
  os << "pos_sigma = " << format_double(s.noise.pos_sigma) << '\n';
  os << "miss_prob = " << format_double(s.noise.miss_prob) << '\n';
  os << "fp_rate = " << format_double(s.noise.fp_rate) << '\n';
  os << "cam1_from_cam0 =";
  for (int i = 0; i < 9; ++i) os << ' ' << format_double(s.cam1_from_cam0.m(i / 3, i % 3));
  os << '\n';
  for (const auto& p : s.persons) {
    os << "\nperson {\n";
    os << "  id = " << p.id << '\n';
    os << "  kind = " << to_string(p.kind) << '\n';
    os << "  t_start = " << p.t_start << '\n';
    os << "  speed = " << format_double(p.speed) << '\n';
    os << "  size = " << format_double(p.box_w) << ' ' << format_double(p.box_h) << '\n';
    for (const auto& w : p.waypoints)
      os << "  waypoint = " << format_double(w.x) << ' ' << format_double(w.y) << '\n';
    if (p.hidden_cam0)
      os << "  hidden_cam0 = " << p.hidden_cam0->first << ' ' << p.hidden_cam0->second << '\n';
    os << "}\n";
  }
}

}  // namespace enex
