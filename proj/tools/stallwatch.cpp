// stallwatch command-line front end.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stallwatch/curation.hpp"
#include "stallwatch/errors.hpp"
#include "stallwatch/evaluation.hpp"
#include "stallwatch/io.hpp"
#include "stallwatch/log.hpp"
#include "stallwatch/pipeline.hpp"
#include "stallwatch/scenario.hpp"

namespace fs = std::filesystem;
namespace sw = stallwatch;
using sw::json;

namespace {

constexpr int kExitValidation = 2;

// Command-line overrides for the stall configuration. Unset fields keep the
// value from --config (or the built-in default).
struct ConfigFlags {
  std::string path;
  std::optional<std::string> camera_id;
  std::optional<double> frame_width, frame_height;
  std::optional<std::string> floor_polygon, entrance;
  std::optional<double> entrance_dist_px, edge_margin_px, min_area_ratio;
  std::optional<std::vector<std::string>> interior_edges;
  std::optional<int> fps, frame_stride, clip_length_s;
  std::optional<double> confidence_threshold, detector_iou_threshold;
  std::optional<double> iou_gate, process_noise, measurement_noise;
  std::optional<int> max_age, min_hits;
};

void add_config_flags(CLI::App* app, ConfigFlags& f, bool config_required) {
  auto* opt = app->add_option("-c,--config", f.path, "stall configuration (JSON)");
  if (config_required) opt->required();
  auto* g = app->add_option_group("stall configuration overrides");
  g->add_option("--camera-id", f.camera_id);
  g->add_option("--frame-width", f.frame_width);
  g->add_option("--frame-height", f.frame_height);
  g->add_option("--floor-polygon", f.floor_polygon, "vertices as \"x,y;x,y;...\"");
  g->add_option("--entrance", f.entrance, "segment as \"x,y;x,y\"");
  g->add_option("--entrance-dist-px", f.entrance_dist_px);
  g->add_option("--edge-margin-px", f.edge_margin_px);
  g->add_option("--interior-edges", f.interior_edges, "left|top|right|bottom");
  g->add_option("--min-area-ratio", f.min_area_ratio);
  g->add_option("--fps", f.fps);
  g->add_option("--frame-stride", f.frame_stride);
  g->add_option("--clip-length-s", f.clip_length_s);
  g->add_option("--confidence-threshold", f.confidence_threshold);
  g->add_option("--detector-iou-threshold", f.detector_iou_threshold);
  g->add_option("--iou-gate", f.iou_gate);
  g->add_option("--max-age", f.max_age);
  g->add_option("--min-hits", f.min_hits);
  g->add_option("--process-noise", f.process_noise);
  g->add_option("--measurement-noise", f.measurement_noise);
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw sw::InputError(path.string() + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw sw::InputError(path.string() + ": malformed JSON: " + e.what());
  }
}

json parse_points(const std::string& text, const char* field) {
  json pts = json::array();
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    double x = 0, y = 0;
    char comma = 0;
    std::istringstream p(item);
    if (!(p >> x >> comma >> y) || comma != ',' || !(p >> std::ws).eof())
      throw sw::ConfigError(std::string(field) + ": bad point '" + item + "'");
    pts.push_back({x, y});
  }
  return pts;
}

sw::StallConfig resolve_config(const ConfigFlags& f) {
  json j = json::object();
  if (!f.path.empty()) {
    std::ifstream in(f.path);
    if (!in) throw sw::ConfigError(f.path + ": cannot open");
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw sw::ConfigError(f.path + ": malformed JSON: " + e.what());
    }
    if (!j.is_object()) throw sw::ConfigError(f.path + ": config must be a JSON object");
  }
  auto set = [&](const char* key, const auto& v) {
    if (v) j[key] = *v;
  };
  auto set_in = [&](const char* group, const char* key, const auto& v) {
    if (!v) return;
    if (!j.contains(group) || !j[group].is_object()) j[group] = json::object();
    j[group][key] = *v;
  };
  set("camera_id", f.camera_id);
  set_in("frame", "width", f.frame_width);
  set_in("frame", "height", f.frame_height);
  if (f.floor_polygon) j["floor_polygon"] = parse_points(*f.floor_polygon, "floor_polygon");
  if (f.entrance) j["entrance"] = parse_points(*f.entrance, "entrance");
  set("entrance_dist_px", f.entrance_dist_px);
  set("edge_margin_px", f.edge_margin_px);
  set("interior_edges", f.interior_edges);
  set("min_area_ratio", f.min_area_ratio);
  set("fps", f.fps);
  set("frame_stride", f.frame_stride);
  set("clip_length_s", f.clip_length_s);
  set("confidence_threshold", f.confidence_threshold);
  set("detector_iou_threshold", f.detector_iou_threshold);
  set_in("tracker", "iou_gate", f.iou_gate);
  set_in("tracker", "max_age", f.max_age);
  set_in("tracker", "min_hits", f.min_hits);
  set_in("tracker", "process_noise", f.process_noise);
  set_in("tracker", "measurement_noise", f.measurement_noise);
  return sw::config_from_json(j);
}

// Output stream that is stdout for "" or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw sw::InputError(path + ": cannot open for writing");
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

sw::ParsedDetections load_detections(const std::string& path, const sw::StallConfig& cfg) {
  sw::IngestOptions o;
  o.confidence_threshold = cfg.confidence_threshold;
  o.frame = cfg.frame;
  sw::ParsedDetections parsed;
  if (path == "-") {
    parsed = sw::parse_detections(std::cin, o);
  } else {
    std::ifstream in(path);
    if (!in) throw sw::InputError(path + ": cannot open");
    parsed = sw::parse_detections(in, o);
  }
  for (const auto& w : parsed.warnings) sw::log::warn(w);
  sw::log::info("read " + std::to_string(parsed.clips.size()) + " clip(s) from " + path);
  return parsed;
}

template <typename Reader>
auto read_lines_file(const std::string& path, Reader reader) {
  std::ifstream in(path);
  if (!in) throw sw::InputError(path + ": cannot open");
  return reader(in);
}

// ---- track ----

struct TrackArgs {
  ConfigFlags config;
  std::string detections;
  std::string out;
};

void run_track(const TrackArgs& a) {
  const auto cfg = resolve_config(a.config);
  const auto parsed = load_detections(a.detections, cfg);
  Output out(a.out);
  for (const auto& clip : parsed.clips) {
    const auto tracks = sw::track_clip(clip, cfg);
    for (const auto& t : sw::tracks_to_json(clip.clip_id, tracks)) out.stream() << t.dump() << '\n';
  }
}

// ---- events ----

struct EventsArgs {
  ConfigFlags config;
  std::string detections;
  std::string out;
  bool resume = false;
  bool overwrite = false;
};

void run_events(const EventsArgs& a) {
  const auto cfg = resolve_config(a.config);
  const bool to_stdout = a.out.empty() || a.out == "-";
  if (a.resume && to_stdout) throw sw::UsageError("--resume needs --out pointing at the event log");
  if (!to_stdout && !a.resume && !a.overwrite && fs::exists(a.out))
    throw sw::UsageError(a.out + " exists; pass --resume to continue it or --overwrite to replace it");

  sw::ClipTail tail;
  if (a.resume && fs::exists(a.out)) {
    tail = sw::tail_from_log(sw::read_events(fs::path(a.out)), cfg.camera_id);
    sw::log::info("resuming " + a.out + " for camera " + cfg.camera_id);
  }
  const auto parsed = load_detections(a.detections, cfg);

  std::vector<sw::Event> all;
  for (const auto& clip : parsed.clips) {
    const auto r = sw::run_pipeline(clip, tail, cfg);
    tail = r.tail;
    for (const auto& e : r.all_events()) all.push_back(e);
    sw::log::info(clip.clip_id + ": " + std::to_string(r.tracks.size()) + " tracks, " +
                  std::to_string(r.objects.size()) + " kept objects");
  }
  sw::sort_events(all);
  if (to_stdout) {
    sw::write_events(std::cout, all);
  } else if (a.resume) {
    sw::append_events(a.out, all);
  } else {
    std::ofstream f(a.out);
    if (!f) throw sw::InputError(a.out + ": cannot open for writing");
    sw::write_events(f, all);
  }
}

// ---- eval ----

struct EvalArgs {
  std::string pred, gt, report;
  double threshold = 0.5;
  bool state_blind = false;
  bool sweep = false;
};

void print_metrics(std::ostream& os, const sw::EvalReport& r) {
  char line[160];
  for (auto c : sw::kAllClasses) {
    const auto& m = r.per_class[static_cast<std::size_t>(c)];
    std::snprintf(line, sizeof line,
                  "t-IoU>=%.2f %-6s pred %3zu  gt %3zu  matched %3zu  P %.3f  R %.3f  F1 %.3f  "
                  "mean t-IoU %.3f\n",
                  r.options.threshold, std::string(sw::to_string(c)).c_str(), m.n_pred, m.n_gt,
                  m.n_matched, m.precision, m.recall, m.f1, m.mean_t_iou);
    os << line;
  }
}

void run_eval(const EvalArgs& a) {
  const auto pred = sw::read_events(fs::path(a.pred));
  const auto gt = sw::read_events(fs::path(a.gt));
  sw::MatchOptions options{a.threshold, !a.state_blind};
  const auto report = sw::evaluate(pred, gt, options);
  std::cout << sw::render_comparison_table(pred, gt, report) << '\n';
  print_metrics(std::cout, report);
  json sweep = json::array();
  if (a.sweep) {
    std::cout << "\nthreshold sweep\n";
    for (double thr : {0.3, 0.5, 0.7}) {
      const auto r = sw::evaluate(pred, gt, {thr, options.state_aware});
      print_metrics(std::cout, r);
      sweep.push_back(sw::report_to_json(r));
    }
  }
  if (!a.report.empty()) {
    json j = sw::report_to_json(report);
    if (a.sweep) j["sweep"] = sweep;
    Output out(a.report);
    out.stream() << j.dump(2) << '\n';
  }
}

// ---- synth ----

struct SynthArgs {
  std::string script, detections_out, gt_out, config_out;
  std::optional<std::string> noise_file;
  std::optional<double> center_sigma, size_sigma, dropout, class_flip, spurious;
  std::optional<std::uint64_t> noise_seed;
};

void run_synth(const SynthArgs& a) {
  const auto script = sw::load_script(a.script);
  sw::NoiseModel noise;
  if (a.noise_file) noise = sw::noise_from_json(read_json_file(*a.noise_file));
  if (a.center_sigma) noise.center_sigma_px = *a.center_sigma;
  if (a.size_sigma) noise.size_sigma_ratio = *a.size_sigma;
  if (a.dropout) noise.dropout_prob = *a.dropout;
  if (a.class_flip) noise.class_flip_prob = *a.class_flip;
  if (a.spurious) noise.spurious_per_frame = *a.spurious;
  noise.validate();

  auto out = sw::generate(script);
  out.detections = sw::perturb(out.detections, noise, a.noise_seed.value_or(script.seed),
                               script.config.frame);
  {
    Output det(a.detections_out);
    sw::write_detections(det.stream(), out.detections);
  }
  if (!a.gt_out.empty()) {
    Output gt(a.gt_out);
    sw::sort_events(out.ground_truth);
    sw::write_events(gt.stream(), out.ground_truth);
  }
  if (!a.config_out.empty()) {
    Output cfg(a.config_out);
    cfg.stream() << sw::config_to_json(script.config).dump(2) << '\n';
  }
}

// ---- curate ----

struct SelectArgs {
  std::string embeddings, out;
  double percentile = 0.25;
};

void run_select(const SelectArgs& a) {
  const auto records = read_lines_file(a.embeddings, sw::read_embeddings);
  // Group per clip in first-appearance order, frames ascending.
  std::vector<std::string> order;
  std::map<std::string, std::map<int, std::vector<double>>> by_clip;
  for (const auto& r : records) {
    if (!by_clip.contains(r.clip_id)) order.push_back(r.clip_id);
    auto& frames = by_clip[r.clip_id];
    if (!frames.emplace(r.frame_idx, r.vector).second)
      throw sw::InputError("embeddings: duplicate frame " + std::to_string(r.frame_idx) +
                           " in clip " + r.clip_id);
  }
  Output out(a.out);
  for (const auto& clip : order) {
    std::vector<int> frame_ids;
    std::vector<std::vector<double>> seq;
    for (const auto& [f, v] : by_clip[clip]) {
      frame_ids.push_back(f);
      seq.push_back(v);
    }
    const auto sel = sw::select_informative(seq, a.percentile);
    if (sel.warning) sw::log::warn(clip + ": " + *sel.warning);
    for (std::size_t i = 0; i < sel.positions.size(); ++i) {
      json j;
      j["clip_id"] = clip;
      j["frame_idx"] = frame_ids[sel.positions[i]];
      j["similarity"] = sel.similarities[i];
      out.stream() << j.dump() << '\n';
    }
  }
}

struct SampleArgs {
  std::string meta, out;
  int k = 1;
  std::uint64_t seed = 0;
};

void run_sample(const SampleArgs& a) {
  const auto meta = read_lines_file(a.meta, sw::read_clip_meta);
  const auto s = sw::stratified_sample(meta, a.k, a.seed);
  for (const auto& w : s.warnings) sw::log::warn(w);
  Output out(a.out);
  for (const auto& id : s.clip_ids) out.stream() << json{{"clip_id", id}}.dump() << '\n';
}

struct SubsampleArgs {
  int frame_count = 0;
  int every = 60;
};

void run_subsample(const SubsampleArgs& a) {
  for (int idx : sw::subsample_every_n(a.frame_count, a.every)) std::cout << idx << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stall occupancy events from per-frame detections"};
  app.require_subcommand(1);

  TrackArgs track;
  auto* track_cmd = app.add_subcommand("track", "associate detections into tracks");
  add_config_flags(track_cmd, track.config, false);
  track_cmd->add_option("-d,--detections", track.detections, "detections JSONL ('-' for stdin)")->required();
  track_cmd->add_option("-o,--out", track.out, "tracks JSONL (default stdout)");

  EventsArgs events;
  auto* events_cmd = app.add_subcommand("events", "detect occupancy events clip by clip");
  add_config_flags(events_cmd, events.config, false);
  events_cmd->add_option("-d,--detections", events.detections, "detections JSONL ('-' for stdin)")->required();
  events_cmd->add_option("-o,--out", events.out, "event log (default stdout)");
  events_cmd->add_flag("--resume", events.resume,
                       "continue an existing log: its last clip seeds the inter-clip correction");
  events_cmd->add_flag("--overwrite", events.overwrite, "replace an existing log");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "compare predicted events against ground truth");
  eval_cmd->add_option("-p,--pred", eval.pred, "predicted event log")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("-g,--gt", eval.gt, "ground-truth event log")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("-t,--threshold", eval.threshold, "t-IoU match threshold")
      ->check(CLI::Range(0.0, 1.0));
  eval_cmd->add_flag("--state-blind", eval.state_blind, "let events of different states match");
  eval_cmd->add_flag("--sweep", eval.sweep, "also report thresholds 0.3, 0.5 and 0.7");
  eval_cmd->add_option("-r,--report", eval.report, "machine-readable report (JSON)");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "generate detections and ground truth from a script");
  synth_cmd->add_option("-s,--script", synth.script, "scenario script (JSON)")->required();
  synth_cmd->add_option("-o,--out", synth.detections_out, "detections JSONL (default stdout)");
  synth_cmd->add_option("--gt", synth.gt_out, "ground-truth event log");
  synth_cmd->add_option("--config-out", synth.config_out, "write the script's stall configuration");
  synth_cmd->add_option("--noise", synth.noise_file, "noise model (JSON)");
  synth_cmd->add_option("--center-sigma-px", synth.center_sigma);
  synth_cmd->add_option("--size-sigma-ratio", synth.size_sigma);
  synth_cmd->add_option("--dropout-prob", synth.dropout);
  synth_cmd->add_option("--class-flip-prob", synth.class_flip);
  synth_cmd->add_option("--spurious-per-frame", synth.spurious);
  synth_cmd->add_option("--noise-seed", synth.noise_seed, "defaults to the script seed");

  auto* curate_cmd = app.add_subcommand("curate", "dataset curation helpers");
  curate_cmd->require_subcommand(1);
  SelectArgs select;
  auto* select_cmd = curate_cmd->add_subcommand("select", "keep the least redundant frames per clip");
  select_cmd->add_option("-e,--embeddings", select.embeddings, "embeddings JSONL")->required();
  select_cmd->add_option("--percentile", select.percentile);
  select_cmd->add_option("-o,--out", select.out, "selection manifest JSONL (default stdout)");
  SampleArgs sample;
  auto* sample_cmd = curate_cmd->add_subcommand("sample", "stratified clip sample");
  sample_cmd->add_option("-m,--meta", sample.meta, "clip metadata JSONL")->required();
  sample_cmd->add_option("-k,--per-stratum", sample.k);
  sample_cmd->add_option("--seed", sample.seed);
  sample_cmd->add_option("-o,--out", sample.out, "sample manifest JSONL (default stdout)");
  SubsampleArgs subsample;
  auto* subsample_cmd = curate_cmd->add_subcommand("subsample", "indices of every n-th frame");
  subsample_cmd->add_option("--frame-count", subsample.frame_count)->required();
  subsample_cmd->add_option("--every", subsample.every);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    if (*track_cmd) run_track(track);
    else if (*events_cmd) run_events(events);
    else if (*eval_cmd) run_eval(eval);
    else if (*synth_cmd) run_synth(synth);
    else if (*select_cmd) run_select(select);
    else if (*sample_cmd) run_sample(sample);
    else if (*subsample_cmd) run_subsample(subsample);
  } catch (const sw::ConfigError& e) {
    sw::log::error(std::string("config: ") + e.what());
    return kExitValidation;
  } catch (const sw::InputError& e) {
    sw::log::error(std::string("input: ") + e.what());
    return kExitValidation;
  } catch (const sw::UsageError& e) {
    sw::log::error(std::string("usage: ") + e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    sw::log::error(e.what());
    return 1;
  }
  return 0;
}
