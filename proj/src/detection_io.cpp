#include "enex/detection_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "enex/format.hpp"

namespace enex {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trimmed(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_num(const std::string& s, const std::string& path, int line, const char* what) {
  const std::string t = trimmed(s);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw ParseError(path, line, std::string("bad ") + what + " value '" + s + "'");
  return v;
}

int parse_int(const std::string& s, const std::string& path, int line, const char* what) {
  const double v = parse_num(s, path, line, what);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw ParseError(path, line, std::string(what) + " must be an integer, got '" + s + "'");
  return i;
}

}  // namespace

bool DetectionFile::has_ids() const {
  return !rows.empty() &&
         std::all_of(rows.begin(), rows.end(), [](const DetectionRow& r) { return r.id >= 0; });
}

DetectionFile load_detections(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");

  DetectionFile file;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trimmed(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.rfind("frame,", 0) == 0) continue;  // header

    const auto fields = split(t, ',');
    if (fields.size() < 7 || fields.size() > 9)
      throw ParseError(path, lineno, "expected 7-9 comma-separated fields, got " +
                                         std::to_string(fields.size()));

    DetectionRow row;
    row.det.frame = parse_int(fields[0], path, lineno, "frame");
    row.id = parse_int(fields[1], path, lineno, "id");
    row.det.box.x = parse_num(fields[2], path, lineno, "x");
    row.det.box.y = parse_num(fields[3], path, lineno, "y");
    row.det.box.w = parse_num(fields[4], path, lineno, "w");
    row.det.box.h = parse_num(fields[5], path, lineno, "h");
    row.det.score = parse_num(fields[6], path, lineno, "score");
    row.det.camera = fields.size() >= 8 ? parse_int(fields[7], path, lineno, "camera") : 0;
    if (fields.size() == 9) {
      const std::string label = trimmed(fields[8]);
      if (!label.empty()) {
        row.event = parse_event_kind(label);
        if (!row.event) throw ParseError(path, lineno, "unknown event label '" + label + "'");
      }
    }

    if (row.det.frame < 0) throw ParseError(path, lineno, "frame must be >= 0");
    if (row.id < -1) throw ParseError(path, lineno, "id must be >= -1");
    if (row.det.box.w < 0.0 || row.det.box.h < 0.0)
      throw ParseError(path, lineno, "box width/height must be >= 0");
    if (row.det.score < 0.0 || row.det.score > 1.0)
      throw ParseError(path, lineno, "score must be in [0,1]");
    if (row.det.camera != 0 && row.det.camera != 1)
      throw ParseError(path, lineno, "camera must be 0 or 1");
    file.rows.push_back(row);
  }
  if (file.rows.empty()) throw EmptyFile(path);

  std::stable_sort(file.rows.begin(), file.rows.end(),
                   [](const DetectionRow& a, const DetectionRow& b) {
                     return a.det.frame < b.det.frame;
                   });
  return file;
}

void save_detections(std::ostream& os, const std::vector<DetectionRow>& rows) {
  os << "frame,id,x,y,w,h,score,camera,event\n";
  for (const auto& r : rows) {
    os << r.det.frame << ',' << r.id << ',' << format_double(r.det.box.x) << ','
       << format_double(r.det.box.y) << ',' << format_double(r.det.box.w) << ','
       << format_double(r.det.box.h) << ',' << format_double(r.det.score) << ',' << r.det.camera
       << ',' << (r.event ? to_string(*r.event) : "") << '\n';
  }
}

void save_detections(const std::string& path, const std::vector<DetectionRow>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  save_detections(out, rows);
}

void write_events(std::ostream& os, const std::vector<EventRecord>& events) {
  for (const auto& ev : events) {
    os << "track=" << ev.track_id << " event=" << to_string(ev.event)
       << " origin=" << to_string(ev.origin) << " sink=" << to_string(ev.sink)
       << " t_enter=" << ev.t_enter_scene << " t_exit=" << ev.t_exit_scene
       << " enter_s=" << format_double(ev.enter_seconds)
       << " exit_s=" << format_double(ev.exit_seconds) << '\n';
  }
}

std::vector<EventRecord> read_events(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::vector<EventRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trimmed(line);
    if (t.empty() || t[0] == '#') continue;
    EventRecord ev;
    std::istringstream ss(t);
    std::string field;
    while (ss >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) throw ParseError(path, lineno, "expected key=value fields");
      const std::string key = field.substr(0, eq);
      const std::string val = field.substr(eq + 1);
      const auto place = [&](const char* what) {
        if (val != "scene" && val != "private_area")
          throw ParseError(path, lineno, std::string("unknown ") + what + " '" + val + "'");
        return val == "scene";
      };
      if (key == "track") ev.track_id = parse_int(val, path, lineno, "track");
      else if (key == "event") {
        const auto kind = parse_event_kind(val);
        if (!kind) throw ParseError(path, lineno, "unknown event '" + val + "'");
        ev.event = *kind;
      } else if (key == "origin") ev.origin = place("origin") ? Origin::Scene : Origin::PrivateArea;
      else if (key == "sink") ev.sink = place("sink") ? Sink::Scene : Sink::PrivateArea;
      else if (key == "t_enter") ev.t_enter_scene = parse_int(val, path, lineno, "t_enter");
      else if (key == "t_exit") ev.t_exit_scene = parse_int(val, path, lineno, "t_exit");
      else if (key == "enter_s") ev.enter_seconds = parse_num(val, path, lineno, "enter_s");
      else if (key == "exit_s") ev.exit_seconds = parse_num(val, path, lineno, "exit_s");
      else throw ParseError(path, lineno, "unknown field '" + key + "'");
    }
    out.push_back(ev);
  }
  return out;
}

Homography load_homography(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  Eigen::Matrix3d m;
  for (int i = 0; i < 9; ++i) {
    double v;
    if (!(in >> v)) throw ParseError(path, 1, "expected 9 whitespace-separated reals");
    m(i / 3, i % 3) = v;
  }
  return make_homography(m);
}

void save_homography(const std::string& path, const Homography& h) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out << format_double(h.m(r, c)) << (c == 2 ? '\n' : ' ');
  }
}

std::vector<DetectionRow> tracks_to_rows(const std::vector<Track>& tracks,
                                         const std::vector<EventRecord>& events) {
  std::map<int, EventKind> label;
  for (const auto& ev : events) label[ev.track_id] = ev.event;

  std::vector<DetectionRow> rows;
  for (const auto& t : tracks) {
    for (const auto& [frame, box] : t.boxes) {
      DetectionRow r;
      r.det = {frame, box, 1.0, 0, false};
      r.id = t.id;
      const auto it = label.find(t.id);
      if (it != label.end()) r.event = it->second;
      rows.push_back(r);
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const DetectionRow& a, const DetectionRow& b) {
    return a.det.frame != b.det.frame ? a.det.frame < b.det.frame : a.id < b.id;
  });
  return rows;
}

std::vector<Track> rows_to_tracks(const std::vector<DetectionRow>& rows) {
  std::map<int, Track> by_id;
  for (const auto& r : rows) {
    if (r.id < 0 || r.det.camera != 0) continue;
    Track& t = by_id[r.id];
    t.id = r.id;
    t.boxes[r.det.frame] = r.det.box;
  }
  std::vector<Track> out;
  out.reserve(by_id.size());
  for (auto& [id, t] : by_id) {
    t.state = TrackState::Terminated;
    t.t_enter_scene = t.first_frame();
    t.t_exit_scene = t.last_frame();
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<EventRecord> rows_to_events(const std::vector<DetectionRow>& rows, double fps) {
  std::map<int, EventRecord> by_id;
  std::map<int, std::pair<int, int>> spans;
  for (const auto& r : rows) {
    if (r.id < 0 || !r.event || r.det.camera != 0) continue;
    auto [it, fresh] = spans.try_emplace(r.id, r.det.frame, r.det.frame);
    if (!fresh) {
      it->second.first = std::min(it->second.first, r.det.frame);
      it->second.second = std::max(it->second.second, r.det.frame);
    }
    by_id[r.id].event = *r.event;
  }
  std::vector<EventRecord> out;
  for (auto& [id, ev] : by_id) {
    ev.track_id = id;
    ev.t_enter_scene = spans[id].first;
    ev.t_exit_scene = spans[id].second;
    ev.enter_seconds = ev.t_enter_scene / fps;
    ev.exit_seconds = ev.t_exit_scene / fps;
    switch (ev.event) {
      case EventKind::Entry: ev.origin = Origin::Scene; ev.sink = Sink::PrivateArea; break;
      case EventKind::Exit: ev.origin = Origin::PrivateArea; ev.sink = Sink::Scene; break;
      case EventKind::JustAppeared: ev.origin = Origin::Scene; ev.sink = Sink::Scene; break;
      case EventKind::ReEntry: ev.origin = Origin::PrivateArea; ev.sink = Sink::PrivateArea; break;
    }
    out.push_back(ev);
  }
  return out;
}

}  // namespace enex
