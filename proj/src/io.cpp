#include "stallwatch/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "stallwatch/errors.hpp"

namespace stallwatch {
namespace {

template <typename Error>
[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(where + ": " + what);
}

double number_field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) fail<InputError>(where, std::string("missing '") + key + "'");
  if (!j[key].is_number()) fail<InputError>(where, std::string("'") + key + "' must be a number");
  return j[key].get<double>();
}

double probability(const json& v, const std::string& where) {
  if (!v.is_number()) fail<InputError>(where, "probability must be a number");
  const double p = v.get<double>();
  if (!(p >= 0.0 && p <= 1.0)) fail<InputError>(where, "probability outside [0, 1]");
  return p;
}

ClassScores scores_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || j.empty()) fail<InputError>(where, "'scores' must be a non-empty object");
  ClassScores s;
  for (const auto& [name, value] : j.items()) {
    const std::optional<ObjectClass> cls = parse_object_class(name);
    if (!cls) fail<InputError>(where, "unknown class '" + name + "'");
    s[*cls] = probability(value, where);
  }
  return s;
}

json box_array(const Box& b) { return json::array({b.x, b.y, b.w, b.h}); }

Box box_from_array(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4)
    fail<InputError>(where, "box must be an array [x, y, w, h]");
  for (const json& v : j)
    if (!v.is_number()) fail<InputError>(where, "box coordinates must be numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

Point point_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail<ConfigError>(where, "point must be [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::string_view edge_name(Edge e) {
  switch (e) {
    case Edge::left: return "left";
    case Edge::right: return "right";
    case Edge::top: return "top";
    case Edge::bottom: return "bottom";
  }
  return "?";
}

constexpr Edge kEdges[] = {Edge::left, Edge::right, Edge::top, Edge::bottom};

template <typename T>
T config_value(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  try {
    if constexpr (std::is_same_v<T, int>) {
      if (!j[key].is_number_integer()) throw ConfigError("");
    } else if constexpr (std::is_arithmetic_v<T>) {
      if (!j[key].is_number()) throw ConfigError("");
    }
    return j[key].get<T>();
  } catch (const std::exception&) {
    fail<ConfigError>(key, "wrong type");
  }
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

json parse_line(const std::string& line, std::size_t line_no) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    fail<InputError>("line " + std::to_string(line_no), std::string("malformed JSON: ") + e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": malformed JSON: " + e.what());
  }
}

}  // namespace

std::optional<ObjectClass> parse_object_class(std::string_view s) {
  for (ObjectClass c : kAllClasses)
    if (s == to_string(c)) return c;
  return std::nullopt;
}

ParsedDetections parse_detections(std::istream& in, const IngestOptions& options) {
  ParsedDetections out;
  std::map<std::string, std::size_t> clip_index;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const std::string where = "line " + std::to_string(line_no);
    const json rec = parse_line(line, line_no);
    if (!rec.is_object()) fail<InputError>(where, "record must be an object");
    if (!rec.contains("clip_id") || !rec["clip_id"].is_string())
      fail<InputError>(where, "missing string 'clip_id'");
    if (!rec.contains("frame_idx") || !rec["frame_idx"].is_number_integer() ||
        rec["frame_idx"].get<long long>() < 0)
      fail<InputError>(where, "missing non-negative integer 'frame_idx'");
    if (!rec.contains("boxes") || !rec["boxes"].is_array())
      fail<InputError>(where, "missing array 'boxes'");

    const std::string clip_id = rec["clip_id"].get<std::string>();
    const int frame_idx = rec["frame_idx"].get<int>();
    auto [pos, fresh] = clip_index.try_emplace(clip_id, out.clips.size());
    if (fresh) out.clips.push_back({clip_id, {}});
    ClipDetections& clip = out.clips[pos->second];
    auto [slot, inserted] = clip.frames.try_emplace(frame_idx);
    if (!inserted)
      fail<InputError>(where, "duplicate frame " + std::to_string(frame_idx) + " in clip " + clip_id);

    for (const json& b : rec["boxes"]) {
      if (!b.is_object()) fail<InputError>(where, "box must be an object");
      Detection d;
      d.frame_idx = frame_idx;
      d.box = {number_field(b, "x", where), number_field(b, "y", where),
               number_field(b, "w", where), number_field(b, "h", where)};
      if (!d.box.valid()) fail<InputError>(where, "box needs finite coordinates and w, h > 0");
      if (!b.contains("scores")) fail<InputError>(where, "missing 'scores'");
      d.scores = scores_from_json(b["scores"], where);
      if (!b.contains("confidence")) fail<InputError>(where, "missing 'confidence'");
      d.confidence = probability(b["confidence"], where);
      if (d.confidence < options.confidence_threshold) continue;
      if (options.frame) {
        const FrameDims& f = *options.frame;
        const double x0 = std::clamp(d.box.left(), 0.0, f.width);
        const double y0 = std::clamp(d.box.top(), 0.0, f.height);
        const double x1 = std::clamp(d.box.right(), 0.0, f.width);
        const double y1 = std::clamp(d.box.bottom(), 0.0, f.height);
        const Box clamped{x0, y0, x1 - x0, y1 - y0};
        if (!(clamped.w > 0.0 && clamped.h > 0.0)) {
          out.warnings.push_back(where + ": box outside frame dropped");
          continue;
        }
        if (clamped != d.box) {
          out.warnings.push_back(where + ": box clamped to frame");
          d.box = clamped;
        }
      }
      slot->second.push_back(d);
    }
  }
  return out;
}

void write_detections(std::ostream& out, std::span<const ClipDetections> clips) {
  for (const ClipDetections& clip : clips) {
    for (const auto& [frame_idx, dets] : clip.frames) {
      json rec;
      rec["clip_id"] = clip.clip_id;
      rec["frame_idx"] = frame_idx;
      rec["boxes"] = json::array();
      for (const Detection& d : dets) {
        json b;
        b["x"] = d.box.x;
        b["y"] = d.box.y;
        b["w"] = d.box.w;
        b["h"] = d.box.h;
        for (ObjectClass c : kAllClasses) b["scores"][std::string(to_string(c))] = d.scores[c];
        b["confidence"] = d.confidence;
        rec["boxes"].push_back(std::move(b));
      }
      out << rec.dump() << '\n';
    }
  }
}

StallConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  StallConfig cfg;
  cfg.camera_id = config_value<std::string>(j, "camera_id", cfg.camera_id);
  if (j.contains("frame")) {
    const json& f = j["frame"];
    if (!f.is_object()) fail<ConfigError>("frame", "must be {width, height}");
    cfg.frame.width = config_value<double>(f, "width", cfg.frame.width);
    cfg.frame.height = config_value<double>(f, "height", cfg.frame.height);
  }
  if (!j.contains("floor_polygon") || !j["floor_polygon"].is_array())
    fail<ConfigError>("floor_polygon", "missing vertex list");
  for (const json& p : j["floor_polygon"]) cfg.floor_polygon.push_back(point_from_json(p, "floor_polygon"));
  if (!j.contains("entrance") || !j["entrance"].is_array() || j["entrance"].size() != 2)
    fail<ConfigError>("entrance", "must be [[x, y], [x, y]]");
  cfg.entrance = {point_from_json(j["entrance"][0], "entrance"),
                  point_from_json(j["entrance"][1], "entrance")};
  cfg.entrance_dist_px = config_value<double>(j, "entrance_dist_px", default_entrance_dist(cfg.frame));
  cfg.edge_margin_px = config_value<double>(j, "edge_margin_px", cfg.edge_margin_px);
  if (j.contains("interior_edges")) {
    if (!j["interior_edges"].is_array()) fail<ConfigError>("interior_edges", "must be a list");
    for (const json& e : j["interior_edges"]) {
      const std::string name = e.is_string() ? e.get<std::string>() : "";
      auto it = std::find_if(std::begin(kEdges), std::end(kEdges),
                             [&](Edge k) { return edge_name(k) == name; });
      if (it == std::end(kEdges)) fail<ConfigError>("interior_edges", "unknown edge '" + name + "'");
      cfg.interior_edges.insert(*it);
    }
  }
  cfg.min_area_ratio = config_value<double>(j, "min_area_ratio", cfg.min_area_ratio);
  cfg.fps = config_value<int>(j, "fps", cfg.fps);
  cfg.frame_stride = config_value<int>(j, "frame_stride", cfg.frame_stride);
  cfg.confidence_threshold = config_value<double>(j, "confidence_threshold", cfg.confidence_threshold);
  cfg.clip_length_s = config_value<int>(j, "clip_length_s", cfg.clip_length_s);
  cfg.detector_iou_threshold =
      config_value<double>(j, "detector_iou_threshold", cfg.detector_iou_threshold);
  if (j.contains("tracker")) {
    const json& t = j["tracker"];
    if (!t.is_object()) fail<ConfigError>("tracker", "must be an object");
    cfg.tracker.iou_gate = config_value<double>(t, "iou_gate", cfg.tracker.iou_gate);
    cfg.tracker.max_age = config_value<int>(t, "max_age", cfg.tracker.max_age);
    cfg.tracker.min_hits = config_value<int>(t, "min_hits", cfg.tracker.min_hits);
    cfg.tracker.noise.process_scale =
        config_value<double>(t, "process_noise", cfg.tracker.noise.process_scale);
    cfg.tracker.noise.measurement_scale =
        config_value<double>(t, "measurement_noise", cfg.tracker.noise.measurement_scale);
  }
  cfg.validate();
  return cfg;
}

json config_to_json(const StallConfig& cfg) {
  json j;
  j["camera_id"] = cfg.camera_id;
  j["frame"] = {{"width", cfg.frame.width}, {"height", cfg.frame.height}};
  j["floor_polygon"] = json::array();
  for (const Point& p : cfg.floor_polygon) j["floor_polygon"].push_back({p.x, p.y});
  j["entrance"] = json::array({json::array({cfg.entrance.a.x, cfg.entrance.a.y}),
                               json::array({cfg.entrance.b.x, cfg.entrance.b.y})});
  j["entrance_dist_px"] = cfg.entrance_dist_px;
  j["edge_margin_px"] = cfg.edge_margin_px;
  j["interior_edges"] = json::array();
  for (Edge e : kEdges)
    if (cfg.interior_edges.contains(e)) j["interior_edges"].push_back(std::string(edge_name(e)));
  j["min_area_ratio"] = cfg.min_area_ratio;
  j["fps"] = cfg.fps;
  j["frame_stride"] = cfg.frame_stride;
  j["confidence_threshold"] = cfg.confidence_threshold;
  j["clip_length_s"] = cfg.clip_length_s;
  j["detector_iou_threshold"] = cfg.detector_iou_threshold;
  j["tracker"] = {{"iou_gate", cfg.tracker.iou_gate},
                  {"max_age", cfg.tracker.max_age},
                  {"min_hits", cfg.tracker.min_hits},
                  {"process_noise", cfg.tracker.noise.process_scale},
                  {"measurement_noise", cfg.tracker.noise.measurement_scale}};
  return j;
}

StallConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": malformed JSON: " + e.what());
  }
  return config_from_json(j);
}

json event_to_json(const Event& e) {
  json j;
  j["camera_id"] = e.camera_id;
  j["clip_id"] = e.clip_id;
  j["class"] = std::string(to_string(e.cls));
  j["state"] = std::string(to_string(e.state));
  j["start_s"] = e.start_s;
  j["end_s"] = e.end_s;
  if (e.wall_clock_start) j["wall_clock_start"] = *e.wall_clock_start;
  return j;
}

Event event_from_json(const json& j) {
  if (!j.is_object()) throw InputError("event must be an object");
  auto str = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_string())
      throw InputError(std::string("event: missing string '") + key + "'");
    return j[key].get<std::string>();
  };
  Event e;
  e.camera_id = str("camera_id");
  e.clip_id = str("clip_id");
  const std::optional<ObjectClass> cls = parse_object_class(str("class"));
  if (!cls) throw InputError("event: unknown class '" + str("class") + "'");
  e.cls = *cls;
  const std::optional<EventState> state = parse_event_state(str("state"));
  if (!state || *state == EventState::not_localized)
    throw InputError("event: invalid state '" + str("state") + "'");
  e.state = *state;
  e.start_s = number_field(j, "start_s", "event");
  e.end_s = number_field(j, "end_s", "event");
  if (!(e.start_s < e.end_s)) throw InputError("event: start_s must be < end_s");
  if (j.contains("wall_clock_start")) e.wall_clock_start = str("wall_clock_start");
  return e;
}

void sort_events(std::vector<Event>& events) {
  std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return std::tie(a.camera_id, a.clip_id, a.cls, a.start_s) <
           std::tie(b.camera_id, b.clip_id, b.cls, b.start_s);
  });
}

bool events_sorted(std::span<const Event> events) {
  return std::is_sorted(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return std::tie(a.camera_id, a.clip_id, a.cls, a.start_s) <
           std::tie(b.camera_id, b.clip_id, b.cls, b.start_s);
  });
}

void write_events(std::ostream& out, std::span<const Event> events) {
  if (!events_sorted(events)) throw InputError("events must be sorted by (camera, clip, class, start)");
  json header;
  header["format"] = kEventLogFormat;
  header["version"] = kEventLogVersion;
  out << header.dump() << '\n';
  for (const Event& e : events) out << event_to_json(e).dump() << '\n';
}

std::vector<Event> read_events(std::istream& in) {
  std::vector<Event> events;
  bool have_header = false;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const json j = parse_line(line, line_no);
    if (!have_header) {
      if (!j.is_object() || j.value("format", std::string()) != kEventLogFormat)
        fail<InputError>("line " + std::to_string(line_no), "missing event log header");
      if (j.value("version", 0) != kEventLogVersion)
        fail<InputError>("line " + std::to_string(line_no), "unsupported event log version");
      have_header = true;
      continue;
    }
    try {
      events.push_back(event_from_json(j));
    } catch (const InputError& e) {
      fail<InputError>("line " + std::to_string(line_no), e.what());
    }
  }
  return events;
}

std::vector<Event> read_events(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open");
  return read_events(in);
}

void append_events(const std::filesystem::path& path, std::span<const Event> events) {
  if (!events_sorted(events)) throw InputError("events must be sorted by (camera, clip, class, start)");
  const bool existing = std::filesystem::exists(path) && std::filesystem::file_size(path) > 0;
  if (!existing) {
    std::ofstream out(path);
    if (!out) throw InputError(path.string() + ": cannot write");
    write_events(out, events);
    return;
  }
  std::map<std::string, std::string> last_clip;
  for (const Event& e : read_events(path)) {
    std::string& c = last_clip[e.camera_id];
    c = std::max(c, e.clip_id);
  }
  for (const Event& e : events) {
    auto it = last_clip.find(e.camera_id);
    if (it != last_clip.end() && !(it->second < e.clip_id)) {
      throw UsageError("camera " + e.camera_id + ": clip " + e.clip_id +
                       " does not follow already logged clip " + it->second);
    }
  }
  std::ofstream out(path, std::ios::app);
  if (!out) throw InputError(path.string() + ": cannot append");
  for (const Event& e : events) out << event_to_json(e).dump() << '\n';
}

ClipTail tail_from_log(std::span<const Event> events, const std::string& camera_id) {
  ClipTail tail;
  std::optional<std::string> last_clip;
  for (const Event& e : events) {
    if (e.camera_id == camera_id && (!last_clip || *last_clip < e.clip_id)) last_clip = e.clip_id;
  }
  if (!last_clip) return tail;
  for (const Event& e : events) {
    if (e.camera_id != camera_id || e.clip_id != *last_clip) continue;
    std::optional<Event>& slot = tail[e.cls];
    if (!slot || slot->start_s < e.start_s) slot = e;
  }
  return tail;
}

json tracks_to_json(const std::string& clip_id, std::span<const Track> tracks) {
  json arr = json::array();
  for (const Track& t : tracks) {
    json j;
    j["clip_id"] = clip_id;
    j["track_id"] = t.id;
    j["class"] = std::string(to_string(assign_class(t)));
    j["hits"] = t.hits;
    for (ObjectClass c : kAllClasses)
      j["class_scores_sum"][std::string(to_string(c))] = t.class_scores_sum[c];
    j["frames"] = json::array();
    j["boxes"] = json::array();
    for (const Detection& d : t.observations) {
      j["frames"].push_back(d.frame_idx);
      j["boxes"].push_back(box_array(d.box));
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

json report_to_json(const EvalReport& r) {
  json j;
  j["threshold"] = r.options.threshold;
  j["state_aware"] = r.options.state_aware;
  for (ObjectClass c : kAllClasses) {
    const ClassMetrics& m = r.per_class[static_cast<std::size_t>(c)];
    j["metrics"][std::string(to_string(c))] = {
        {"n_pred", m.n_pred},       {"n_gt", m.n_gt}, {"n_matched", m.n_matched},
        {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1},
        {"mean_t_iou", m.mean_t_iou}};
  }
  j["matches"] = json::array();
  for (const EventMatch& m : r.matching.matches) {
    j["matches"].push_back(
        {{"pred", event_to_json(m.pred)}, {"gt", event_to_json(m.gt)}, {"t_iou", m.t_iou}});
  }
  j["errors"] = json::array();
  for (const EventError& e : r.errors) {
    json ej;
    ej["level"] = std::string(to_string(e.level));
    ej["kind"] = std::string(to_string(e.kind));
    ej["camera_id"] = e.camera_id;
    ej["clip_id"] = e.clip_id;
    ej["class"] = std::string(to_string(e.cls));
    if (e.pred) ej["pred"] = {e.pred->start, e.pred->end};
    if (e.gt) ej["gt"] = {e.gt->start, e.gt->end};
    if (e.pred_state) ej["pred_state"] = std::string(to_string(*e.pred_state));
    if (e.gt_state) ej["gt_state"] = std::string(to_string(*e.gt_state));
    if (e.pred && e.gt) {
      ej["t_iou"] = e.t_iou;
      ej["start_delta_s"] = e.start_delta_s;
      ej["end_delta_s"] = e.end_delta_s;
    }
    j["errors"].push_back(std::move(ej));
  }
  return j;
}

Script script_from_json(const json& j) {
  if (!j.is_object()) throw InputError("script must be a JSON object");
  Script s;
  if (!j.contains("config")) throw InputError("script: missing 'config'");
  try {
    s.config = config_from_json(j["config"]);
  } catch (const ConfigError& e) {
    throw InputError(std::string("script config: ") + e.what());
  }
  if (j.contains("clips")) {
    if (!j["clips"].is_number_integer()) throw InputError("script: 'clips' must be an integer");
    s.clips = j["clips"].get<int>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw InputError("script: 'seed' must be a non-negative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("clip_prefix")) {
    if (!j["clip_prefix"].is_string()) throw InputError("script: 'clip_prefix' must be a string");
    s.clip_prefix = j["clip_prefix"].get<std::string>();
  }
  const double horizon = s.clips * s.config.clip_length();
  if (j.contains("actors")) {
    if (!j["actors"].is_array()) throw InputError("script: 'actors' must be a list");
    for (std::size_t a = 0; a < j["actors"].size(); ++a) {
      const json& aj = j["actors"][a];
      const std::string where = "actors[" + std::to_string(a) + "]";
      if (!aj.is_object()) throw InputError(where + ": must be an object");
      Actor actor;
      if (aj.contains("name") && !aj["name"].is_string())
        throw InputError(where + ".name: must be a string");
      actor.name = aj.value("name", where);
      const std::optional<ObjectClass> cls = parse_object_class(aj.value("class", std::string()));
      if (!cls) throw InputError(where + ": unknown or missing class");
      actor.cls = *cls;
      if (!aj.contains("waypoints") || !aj["waypoints"].is_array())
        throw InputError(where + ": missing 'waypoints'");
      for (std::size_t w = 0; w < aj["waypoints"].size(); ++w) {
        const json& wj = aj["waypoints"][w];
        const std::string wp = where + ".waypoints[" + std::to_string(w) + "]";
        if (!wj.is_object() || !wj.contains("box")) throw InputError(wp + ": needs 't' and 'box'");
        actor.waypoints.push_back({number_field(wj, "t", wp), box_from_array(wj["box"], wp)});
      }
      if (aj.contains("visible")) {
        if (!aj["visible"].is_array()) throw InputError(where + ".visible: must be a list");
        for (std::size_t v = 0; v < aj["visible"].size(); ++v) {
          const json& vj = aj["visible"][v];
          const std::string vw = where + ".visible[" + std::to_string(v) + "]";
          if (!vj.is_array() || vj.size() != 2 || !vj[0].is_number() || !vj[1].is_number())
            throw InputError(vw + ": must be [start, end]");
          actor.visible.push_back({vj[0].get<double>(), vj[1].get<double>()});
        }
      } else {
        actor.visible.push_back({0.0, horizon});
      }
      s.actors.push_back(std::move(actor));
    }
  }
  s.validate();
  return s;
}

json script_to_json(const Script& s) {
  json j;
  j["config"] = config_to_json(s.config);
  j["clips"] = s.clips;
  j["seed"] = s.seed;
  j["clip_prefix"] = s.clip_prefix;
  j["actors"] = json::array();
  for (const Actor& a : s.actors) {
    json aj;
    aj["name"] = a.name;
    aj["class"] = std::string(to_string(a.cls));
    aj["waypoints"] = json::array();
    for (const Waypoint& w : a.waypoints) aj["waypoints"].push_back({{"t", w.t_s}, {"box", box_array(w.box)}});
    aj["visible"] = json::array();
    for (const Interval& iv : a.visible) aj["visible"].push_back({iv.start, iv.end});
    j["actors"].push_back(std::move(aj));
  }
  return j;
}

Script load_script(const std::filesystem::path& path) { return script_from_json(read_json_file(path)); }

NoiseModel noise_from_json(const json& j) {
  NoiseModel n;
  if (!j.is_object()) throw InputError("noise must be an object");
  auto get = [&](const char* key, double fallback) {
    return j.contains(key) ? number_field(j, key, "noise") : fallback;
  };
  n.center_sigma_px = get("center_sigma_px", 0.0);
  n.size_sigma_ratio = get("size_sigma_ratio", 0.0);
  n.dropout_prob = get("dropout_prob", 0.0);
  n.class_flip_prob = get("class_flip_prob", 0.0);
  n.spurious_per_frame = get("spurious_per_frame", 0.0);
  n.validate();
  return n;
}

json noise_to_json(const NoiseModel& n) {
  return {{"center_sigma_px", n.center_sigma_px},
          {"size_sigma_ratio", n.size_sigma_ratio},
          {"dropout_prob", n.dropout_prob},
          {"class_flip_prob", n.class_flip_prob},
          {"spurious_per_frame", n.spurious_per_frame}};
}

std::vector<EmbeddingRecord> read_embeddings(std::istream& in) {
  std::vector<EmbeddingRecord> out;
  std::size_t line_no = 0;
  std::string line;
  std::optional<std::size_t> dim;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const std::string where = "line " + std::to_string(line_no);
    const json j = parse_line(line, line_no);
    if (!j.is_object() || !j.contains("clip_id") || !j["clip_id"].is_string() ||
        !j.contains("frame_idx") || !j["frame_idx"].is_number_integer() ||
        !j.contains("embedding") || !j["embedding"].is_array() || j["embedding"].empty())
      fail<InputError>(where, "expected {clip_id, frame_idx, embedding}");
    EmbeddingRecord r;
    r.clip_id = j["clip_id"].get<std::string>();
    r.frame_idx = j["frame_idx"].get<int>();
    for (const json& v : j["embedding"]) {
      if (!v.is_number()) fail<InputError>(where, "embedding values must be numbers");
      r.vector.push_back(v.get<double>());
    }
    if (dim && *dim != r.vector.size()) fail<InputError>(where, "embedding dimension changed");
    dim = r.vector.size();
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ClipMeta> read_clip_meta(std::istream& in) {
  std::vector<ClipMeta> out;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const std::string where = "line " + std::to_string(line_no);
    const json j = parse_line(line, line_no);
    ClipMeta m;
    for (auto [key, field] : {std::pair{"clip_id", &m.clip_id}, std::pair{"stall_id", &m.stall_id},
                              std::pair{"time_of_day", &m.time_of_day},
                              std::pair{"season", &m.season}}) {
      if (!j.is_object() || !j.contains(key) || !j[key].is_string())
        fail<InputError>(where, std::string("missing string '") + key + "'");
      *field = j[key].get<std::string>();
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace stallwatch
