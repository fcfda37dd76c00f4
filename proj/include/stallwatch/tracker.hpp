#ifndef STALLWATCH_TRACKER_HPP
#define STALLWATCH_TRACKER_HPP

#include <span>
#include <vector>

#include "stallwatch/assignment.hpp"
#include "stallwatch/geometry.hpp"
#include "stallwatch/motion.hpp"
#include "stallwatch/object_class.hpp"

namespace stallwatch {

// One detector box at one sampled frame.
struct Detection {
  int frame_idx = 0;
  Box box;
  ClassScores scores;
  double confidence = 1.0;

  bool operator==(const Detection&) const = default;
};

struct Track {
  int id = 0;
  ClassScores class_scores_sum;
  std::vector<Detection> observations;  // strictly increasing frame_idx
  MotionState motion;
  int misses = 0;
  int hits = 0;

  int first_frame() const { return observations.front().frame_idx; }
  int last_frame() const { return observations.back().frame_idx; }
};

struct TrackerParams {
  double iou_gate = 0.3;
  int max_age = 5;  // sampled frames a track survives unmatched
  int min_hits = 1;
  MotionNoise noise;

  // Throws ConfigError on out-of-range values.
  void validate() const;
};

struct TrackSnapshot {
  int id = 0;
  Box box;  // filtered state after this frame
  int hits = 0;
  int misses = 0;
};

// IoU-gated optimal association between predicted track boxes (rows) and
// detection boxes (columns).
Matching assign(std::span<const Box> track_boxes, std::span<const Box> det_boxes, double iou_gate);

// Online SORT-style tracker over sampled frames. One instance per camera
// stream; calls to step() must be serialized.
class Tracker {
 public:
  explicit Tracker(TrackerParams params = {});

  // Advances to frame_idx. Frames skipped since the previous call count as
  // frames without detections. Throws UsageError unless frame_idx increases.
  std::vector<TrackSnapshot> step(int frame_idx, std::span<const Detection> dets);

  // Every track seen so far with hits >= min_hits, ordered by first frame.
  std::vector<Track> finalize() const;

  const std::vector<Track>& live_tracks() const { return live_; }
  const TrackerParams& params() const { return params_; }

 private:
  void advance(int frame_idx, std::span<const Detection> dets);

  TrackerParams params_;
  std::vector<Track> live_;
  std::vector<Track> finished_;
  int next_id_ = 1;
  int last_frame_ = -1;
};

}  // namespace stallwatch

#endif  // STALLWATCH_TRACKER_HPP
