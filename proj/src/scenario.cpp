#include "stallwatch/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "stallwatch/errors.hpp"

namespace stallwatch {
namespace {

constexpr double kOwnClassScore = 0.9;
constexpr double kOtherClassScore = 0.1;
constexpr double kSynthConfidence = 0.9;

Box lerp(const Box& a, const Box& b, double s) {
  return {a.x + s * (b.x - a.x), a.y + s * (b.y - a.y), a.w + s * (b.w - a.w),
          a.h + s * (b.h - a.h)};
}

bool box_in_frame(const Box& b, const FrameDims& f) {
  return b.valid() && b.left() >= -kGeomEps && b.top() >= -kGeomEps &&
         b.right() <= f.width + kGeomEps && b.bottom() <= f.height + kGeomEps;
}

std::optional<Box> clamp_to_frame(const Box& b, const FrameDims& f) {
  const double x0 = std::clamp(b.left(), 0.0, f.width);
  const double y0 = std::clamp(b.top(), 0.0, f.height);
  const double x1 = std::clamp(b.right(), 0.0, f.width);
  const double y1 = std::clamp(b.bottom(), 0.0, f.height);
  if (x1 - x0 <= kGeomEps || y1 - y0 <= kGeomEps) return std::nullopt;
  return Box{x0, y0, x1 - x0, y1 - y0};
}

ClassScores scores_for(ObjectClass cls) {
  ClassScores s;
  for (ObjectClass c : kAllClasses) s[c] = c == cls ? kOwnClassScore : kOtherClassScore;
  return s;
}

}  // namespace

Box Actor::box_at(double t_s) const {
  if (t_s <= waypoints.front().t_s) return waypoints.front().box;
  if (t_s >= waypoints.back().t_s) return waypoints.back().box;
  auto hi = std::upper_bound(waypoints.begin(), waypoints.end(), t_s,
                             [](double t, const Waypoint& w) { return t < w.t_s; });
  auto lo = std::prev(hi);
  return lerp(lo->box, hi->box, (t_s - lo->t_s) / (hi->t_s - lo->t_s));
}

bool Actor::visible_at(double t_s) const {
  return std::any_of(visible.begin(), visible.end(),
                     [&](const Interval& iv) { return iv.start <= t_s && t_s < iv.end; });
}

std::string Script::clip_id(int clip) const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03d", clip);
  return clip_prefix + "_" + buf;
}

void Script::validate() const {
  try {
    config.validate();
  } catch (const ConfigError& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  if (clips < 1) throw InputError("clips: must be >= 1");
  const double horizon = clips * config.clip_length();
  for (std::size_t a = 0; a < actors.size(); ++a) {
    const Actor& actor = actors[a];
    const std::string where = "actors[" + std::to_string(a) + "]";
    if (actor.waypoints.empty()) throw InputError(where + ".waypoints: empty");
    for (std::size_t w = 0; w < actor.waypoints.size(); ++w) {
      const std::string wp = where + ".waypoints[" + std::to_string(w) + "]";
      if (w > 0 && !(actor.waypoints[w].t_s > actor.waypoints[w - 1].t_s))
        throw InputError(wp + ": times must strictly increase");
      if (!box_in_frame(actor.waypoints[w].box, config.frame))
        throw InputError(wp + ": box outside frame or degenerate");
    }
    for (std::size_t v = 0; v < actor.visible.size(); ++v) {
      const Interval& iv = actor.visible[v];
      if (!(iv.start < iv.end) || iv.start < 0.0 || iv.end > horizon)
        throw InputError(where + ".visible[" + std::to_string(v) + "]: outside clip bounds");
    }
  }
}

SynthOutput generate(const Script& script) {
  script.validate();
  const StallConfig& cfg = script.config;
  const int n_frames = cfg.frames_per_clip();
  const double stride = cfg.stride_s();
  auto inside = [&](const Box& b) {
    return box_polygon_intersects(b, cfg.floor_polygon, cfg.min_area_ratio);
  };

  SynthOutput out;
  for (int c = 0; c < script.clips; ++c) {
    const double clip_t0 = c * cfg.clip_length();
    ClipDetections clip;
    clip.clip_id = script.clip_id(c);
    for (int f = 0; f < n_frames; ++f) {
      std::vector<Detection>& dets = clip.frames[f];
      const double t = clip_t0 + f * stride;
      for (const Actor& a : script.actors) {
        if (a.visible_at(t)) dets.push_back({f, a.box_at(t), scores_for(a.cls), kSynthConfidence});
      }
    }
    const std::string clip_id = clip.clip_id;
    out.detections.push_back(std::move(clip));

    for (ObjectClass cls : kAllClasses) {
      // Actors that are in the stall (seen or hidden) at some point of the clip.
      std::vector<const Actor*> kept;
      for (const Actor& a : script.actors) {
        if (a.cls != cls) continue;
        for (int f = 0; f < n_frames; ++f) {
          if (inside(a.box_at(clip_t0 + f * stride))) {
            kept.push_back(&a);
            break;
          }
        }
      }
      std::vector<FrameState> timeline(static_cast<std::size_t>(n_frames));
      std::vector<ObjectFrameState> states;
      for (int f = 0; f < n_frames; ++f) {
        const double t = clip_t0 + f * stride;
        states.clear();
        bool hidden_inside = false;
        for (const Actor* a : kept) {
          const bool in = inside(a->box_at(t));
          if (a->visible_at(t)) {
            states.push_back(in ? ObjectFrameState::inside : ObjectFrameState::outside);
          } else {
            states.push_back(ObjectFrameState::not_localized);
            hidden_inside = hidden_inside || in;
          }
        }
        FrameState s = aggregate_frame(states);
        if (s == EventState::not_localized) {
          s = hidden_inside ? EventState::inside_invisible : EventState::outside_invisible;
        }
        timeline[static_cast<std::size_t>(f)] = s;
      }
      for (const FrameRun& run : merge_temporal(timeline, stride)) {
        out.ground_truth.push_back(
            {cfg.camera_id, clip_id, cls, run.state, run.start_s, run.end_s, std::nullopt});
      }
    }
  }
  return out;
}

void NoiseModel::validate() const {
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!(center_sigma_px >= 0.0) || !(size_sigma_ratio >= 0.0))
    throw InputError("noise: sigmas must be non-negative");
  if (!prob(dropout_prob) || !prob(class_flip_prob))
    throw InputError("noise: probabilities must lie in [0, 1]");
  if (!(spurious_per_frame >= 0.0)) throw InputError("noise: spurious rate must be non-negative");
}

std::vector<ClipDetections> perturb(const std::vector<ClipDetections>& clips,
                                    const NoiseModel& noise, std::uint64_t seed,
                                    const FrameDims& frame) {
  noise.validate();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit_normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<ClipDetections> out;
  out.reserve(clips.size());
  for (const ClipDetections& clip : clips) {
    ClipDetections noisy;
    noisy.clip_id = clip.clip_id;
    for (const auto& [frame_idx, dets] : clip.frames) {
      std::vector<Detection>& kept = noisy.frames[frame_idx];
      for (const Detection& d : dets) {
        if (noise.dropout_prob > 0.0 && unit(rng) < noise.dropout_prob) continue;
        Detection nd = d;
        if (noise.center_sigma_px > 0.0 || noise.size_sigma_ratio > 0.0) {
          Point c = d.box.center();
          double w = d.box.w;
          double h = d.box.h;
          if (noise.center_sigma_px > 0.0) {
            c.x += noise.center_sigma_px * unit_normal(rng);
            c.y += noise.center_sigma_px * unit_normal(rng);
          }
          if (noise.size_sigma_ratio > 0.0) {
            w *= std::max(0.1, 1.0 + noise.size_sigma_ratio * unit_normal(rng));
            h *= std::max(0.1, 1.0 + noise.size_sigma_ratio * unit_normal(rng));
          }
          const std::optional<Box> clamped =
              clamp_to_frame({c.x - 0.5 * w, c.y - 0.5 * h, w, h}, frame);
          if (!clamped) continue;
          nd.box = *clamped;
        }
        if (noise.class_flip_prob > 0.0 && unit(rng) < noise.class_flip_prob) {
          std::swap(nd.scores[ObjectClass::horse], nd.scores[ObjectClass::person]);
        }
        kept.push_back(nd);
      }
      if (noise.spurious_per_frame > 0.0) {
        std::poisson_distribution<int> count(noise.spurious_per_frame);
        for (int k = count(rng); k > 0; --k) {
          const double w = 20.0 + unit(rng) * 0.3 * frame.width;
          const double h = 20.0 + unit(rng) * 0.3 * frame.height;
          const Box b{unit(rng) * (frame.width - w), unit(rng) * (frame.height - h), w, h};
          Detection sd;
          sd.frame_idx = frame_idx;
          sd.box = b;
          const double p = unit(rng);
          sd.scores[ObjectClass::horse] = p;
          sd.scores[ObjectClass::person] = 1.0 - p;
          sd.confidence = 0.5 + 0.5 * unit(rng);
          kept.push_back(sd);
        }
      }
    }
    out.push_back(std::move(noisy));
  }
  return out;
}

}  // namespace stallwatch
