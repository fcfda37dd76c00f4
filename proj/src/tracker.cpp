#include "stallwatch/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stallwatch/errors.hpp"

namespace stallwatch {

void TrackerParams::validate() const {
  if (!(iou_gate > 0.0 && iou_gate < 1.0)) throw ConfigError("iou_gate must lie in (0, 1)");
  if (max_age < 1) throw ConfigError("max_age must be >= 1");
  if (min_hits < 1) throw ConfigError("min_hits must be >= 1");
  if (!(noise.process_scale > 0.0) || !std::isfinite(noise.process_scale))
    throw ConfigError("process noise scale must be positive");
  if (!(noise.measurement_scale > 0.0) || !std::isfinite(noise.measurement_scale))
    throw ConfigError("measurement noise scale must be positive");
}

Matching assign(std::span<const Box> track_boxes, std::span<const Box> det_boxes,
                double iou_gate) {
  Matrix score(track_boxes.size(), det_boxes.size());
  for (std::size_t t = 0; t < track_boxes.size(); ++t)
    for (std::size_t d = 0; d < det_boxes.size(); ++d)
      score(t, d) = iou(track_boxes[t], det_boxes[d]);
  return max_score_matching(score, iou_gate);
}

Tracker::Tracker(TrackerParams params) : params_(params) { params_.validate(); }

std::vector<TrackSnapshot> Tracker::step(int frame_idx, std::span<const Detection> dets) {
  if (frame_idx < 0 || frame_idx <= last_frame_) {
    throw UsageError("tracker frames must strictly increase (got " + std::to_string(frame_idx) +
                     " after " + std::to_string(last_frame_) + ")");
  }
  for (const Detection& d : dets) {
    if (d.frame_idx != frame_idx) throw UsageError("detection frame_idx does not match step frame");
  }
  for (int f = last_frame_ + 1; f < frame_idx; ++f) advance(f, {});
  advance(frame_idx, dets);

  std::vector<TrackSnapshot> snapshot;
  snapshot.reserve(live_.size());
  for (const Track& t : live_) {
    snapshot.push_back({t.id, state_to_box(t.motion), t.hits, t.misses});
  }
  return snapshot;
}

void Tracker::advance(int frame_idx, std::span<const Detection> dets) {
  last_frame_ = frame_idx;

  std::vector<Box> predicted;
  predicted.reserve(live_.size());
  for (Track& t : live_) {
    t.motion = predict(t.motion, params_.noise);
    predicted.push_back(state_to_box(t.motion));
  }
  std::vector<Box> det_boxes;
  det_boxes.reserve(dets.size());
  for (const Detection& d : dets) det_boxes.push_back(d.box);

  const Matching m = assign(predicted, det_boxes, params_.iou_gate);
  for (auto [ti, di] : m.matches) {
    Track& t = live_[ti];
    const Detection& d = dets[di];
    t.motion = update(t.motion, d.box, params_.noise);
    t.observations.push_back(d);
    for (ObjectClass c : kAllClasses) t.class_scores_sum[c] += d.scores[c];
    t.misses = 0;
    ++t.hits;
  }
  for (int ti : m.unmatched_rows) ++live_[ti].misses;

  auto expired = [&](const Track& t) { return t.misses > params_.max_age; };
  for (Track& t : live_) {
    if (expired(t)) finished_.push_back(std::move(t));
  }
  std::erase_if(live_, expired);

  for (int di : m.unmatched_cols) {
    const Detection& d = dets[di];
    Track t;
    t.id = next_id_++;
    t.class_scores_sum = d.scores;
    t.observations.push_back(d);
    t.motion = initiate_motion(d.box);
    t.hits = 1;
    live_.push_back(std::move(t));
  }
}

std::vector<Track> Tracker::finalize() const {
  std::vector<Track> out;
  for (const auto* pool : {&finished_, &live_}) {
    for (const Track& t : *pool) {
      if (t.hits >= params_.min_hits) out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end(), [](const Track& a, const Track& b) {
    if (a.first_frame() != b.first_frame()) return a.first_frame() < b.first_frame();
    return a.id < b.id;
  });
  return out;
}

}  // namespace stallwatch
