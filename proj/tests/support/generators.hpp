// Random inputs for property and fuzz tests.
#ifndef STALLWATCH_TESTS_GENERATORS_HPP
#define STALLWATCH_TESTS_GENERATORS_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "stallwatch/config.hpp"
#include "stallwatch/errors.hpp"
#include "stallwatch/pipeline.hpp"

namespace stallwatch::gen {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random valid stall configuration with a convex floor polygon.
inline StallConfig random_config(std::mt19937_64& rng) {
  static const FrameDims frames[] = {{1280, 720}, {640, 480}, {1920, 1080}};
  struct Rate {
    int fps, stride;
  };
  static const Rate rates[] = {{20, 20}, {20, 10}, {30, 15}, {10, 20}, {20, 40}};
  for (;;) {
    StallConfig cfg;
    cfg.camera_id = "fuzz";
    cfg.frame = frames[uniform_int(rng, 0, 2)];
    const double w = cfg.frame.width, h = cfg.frame.height;
    const int n = uniform_int(rng, 3, 8);
    const double cx = uniform(rng, 0.3, 0.7) * w, cy = uniform(rng, 0.3, 0.7) * h;
    const double rx = uniform(rng, 0.1, 0.3) * w, ry = uniform(rng, 0.1, 0.3) * h;
    std::vector<double> ang;
    for (int i = 0; i < n; ++i) ang.push_back(uniform(rng, 0, 2 * M_PI));
    std::sort(ang.begin(), ang.end());
    for (double a : ang) cfg.floor_polygon.push_back({cx + rx * std::cos(a), cy + ry * std::sin(a)});
    cfg.entrance = {{uniform(rng, 0, w), uniform(rng, 0, h)}, {uniform(rng, 0, w), uniform(rng, 0, h)}};
    cfg.entrance_dist_px = default_entrance_dist(cfg.frame) * uniform(rng, 0.5, 2.0);
    cfg.edge_margin_px = uniform(rng, 0, 20);
    for (Edge e : {Edge::left, Edge::right, Edge::top, Edge::bottom})
      if (uniform_int(rng, 0, 3) == 0) cfg.interior_edges.insert(e);
    cfg.min_area_ratio = uniform_int(rng, 0, 2) == 0 ? uniform(rng, 0, 0.5) : 0.0;
    const Rate r = rates[uniform_int(rng, 0, 4)];
    cfg.fps = r.fps;
    cfg.frame_stride = r.stride;
    cfg.confidence_threshold = uniform(rng, 0.2, 0.8);
    cfg.tracker.iou_gate = uniform(rng, 0.1, 0.7);
    cfg.tracker.max_age = uniform_int(rng, 1, 8);
    cfg.tracker.min_hits = uniform_int(rng, 1, 3);
    try {
      cfg.validate();
      return cfg;
    } catch (const ConfigError&) {
      // Rejected (e.g. a sliver polygon or degenerate entrance); draw again.
    }
  }
}

// Random detections: a few drifting objects plus clutter, with random
// scores and confidences.
inline ClipDetections random_clip(std::mt19937_64& rng, const StallConfig& cfg,
                                  std::string clip_id = "fuzz") {
  ClipDetections clip;
  clip.clip_id = std::move(clip_id);
  const double w = cfg.frame.width, h = cfg.frame.height;
  struct Walker {
    Box box;
    double vx, vy;
    int start, end;
  };
  std::vector<Walker> walkers;
  for (int k = uniform_int(rng, 0, 4); k > 0; --k) {
    const double bw = uniform(rng, 0.03, 0.3) * w, bh = uniform(rng, 0.05, 0.4) * h;
    const int a = uniform_int(rng, 0, cfg.frames_per_clip() - 1);
    walkers.push_back({{uniform(rng, 0, w - bw), uniform(rng, 0, h - bh), bw, bh},
                       uniform(rng, -0.02, 0.02) * w, uniform(rng, -0.02, 0.02) * h, a,
                       uniform_int(rng, a, cfg.frames_per_clip())});
  }
  auto make = [&](int f, Box b) {
    Detection d;
    d.frame_idx = f;
    d.box = b;
    d.scores[ObjectClass::horse] = uniform(rng, 0, 1);
    d.scores[ObjectClass::person] = uniform(rng, 0, 1);
    d.confidence = uniform(rng, 0, 1);
    return d;
  };
  for (int f = 0; f < cfg.frames_per_clip(); ++f) {
    if (uniform_int(rng, 0, 9) == 0) continue;  // frame record missing entirely
    std::vector<Detection>& dets = clip.frames[f];
    for (Walker& wk : walkers) {
      if (f < wk.start || f >= wk.end) continue;
      wk.box.x = std::clamp(wk.box.x + wk.vx, 0.0, w - wk.box.w);
      wk.box.y = std::clamp(wk.box.y + wk.vy, 0.0, h - wk.box.h);
      if (uniform_int(rng, 0, 5) != 0) dets.push_back(make(f, wk.box));
    }
    for (int k = uniform_int(rng, 0, 3); k > 0; --k) {
      const double bw = uniform(rng, 1, 0.4 * w), bh = uniform(rng, 1, 0.4 * h);
      dets.push_back(make(f, {uniform(rng, 0, w - bw), uniform(rng, 0, h - bh), bw, bh}));
    }
  }
  return clip;
}

// K objects in separate horizontal lanes bouncing between the frame sides
// with per-frame displacement of at most a sixth of their width. The lane
// of a detection is recoverable from its box top.
struct LaneScenario {
  ClipDetections clip;
  int objects = 0;
  std::vector<double> lane_tops;
};

inline LaneScenario lane_scenario(std::uint64_t seed, const StallConfig& cfg) {
  std::mt19937_64 rng(seed);
  LaneScenario s;
  s.objects = uniform_int(rng, 1, 5);
  s.clip.clip_id = "lanes_" + std::to_string(seed);
  const double lane_h = cfg.frame.height / 5.0;
  struct Mover {
    double x, top, w, h, v;
    ObjectClass cls;
  };
  std::vector<Mover> movers;
  for (int k = 0; k < s.objects; ++k) {
    const double bw = uniform(rng, 60, 200);
    const double bh = uniform(rng, 0.5, 0.9) * lane_h;
    const double top = k * lane_h + uniform(rng, 0, lane_h - bh);
    const double v = uniform(rng, 0, bw / 6.0) * (uniform_int(rng, 0, 1) ? 1 : -1);
    movers.push_back({uniform(rng, 0, cfg.frame.width - bw), top, bw, bh, v,
                      uniform_int(rng, 0, 1) ? ObjectClass::horse : ObjectClass::person});
    s.lane_tops.push_back(top);
  }
  for (int f = 0; f < cfg.frames_per_clip(); ++f) {
    std::vector<Detection>& dets = s.clip.frames[f];
    for (Mover& m : movers) {
      if (f > 0) {
        m.x += m.v;
        if (m.x < 0 || m.x + m.w > cfg.frame.width) {
          m.v = -m.v;
          m.x = std::clamp(m.x + 2 * m.v, 0.0, cfg.frame.width - m.w);
        }
      }
      Detection d;
      d.frame_idx = f;
      d.box = {m.x, m.top, m.w, m.h};
      for (ObjectClass c : kAllClasses) d.scores[c] = c == m.cls ? 0.9 : 0.1;
      d.confidence = 0.9;
      dets.push_back(d);
    }
  }
  return s;
}

// Counts identity switches: a track whose observations span several lanes,
// plus any lane covered by more than one track.
inline int identity_switches(const LaneScenario& s, const std::vector<Track>& tracks) {
  auto lane_of = [&](const Box& b) {
    for (std::size_t k = 0; k < s.lane_tops.size(); ++k)
      if (b.y == s.lane_tops[k]) return static_cast<int>(k);
    return -1;
  };
  int switches = 0;
  std::vector<int> tracks_per_lane(s.lane_tops.size(), 0);
  for (const Track& t : tracks) {
    const int lane = lane_of(t.observations.front().box);
    for (const Detection& d : t.observations) switches += lane_of(d.box) != lane;
    if (lane >= 0) ++tracks_per_lane[static_cast<std::size_t>(lane)];
  }
  for (int n : tracks_per_lane) switches += std::max(0, n - 1);
  return switches;
}

// Empty string when the events of each class partition [0, clip_length)
// without not_localized; otherwise a description of the first violation.
inline std::string partition_violation(const ClipResult& r, const StallConfig& cfg) {
  for (ObjectClass c : kAllClasses) {
    const auto& ev = r[c];
    if (ev.empty()) return "no events for " + std::string(to_string(c));
    double t = 0.0;
    for (const Event& e : ev) {
      if (e.cls != c) return "class mismatch";
      if (e.state == EventState::not_localized) return "not_localized survived";
      if (e.start_s != t) return "gap or overlap at " + std::to_string(e.start_s);
      if (!(e.end_s > e.start_s)) return "empty event";
      t = e.end_s;
    }
    if (t != cfg.clip_length()) return "ends at " + std::to_string(t);
  }
  return {};
}

}  // namespace stallwatch::gen

#endif  // STALLWATCH_TESTS_GENERATORS_HPP
