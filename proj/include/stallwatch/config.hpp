#ifndef STALLWATCH_CONFIG_HPP
#define STALLWATCH_CONFIG_HPP

#include <string>

#include "stallwatch/geometry.hpp"
#include "stallwatch/tracker.hpp"

namespace stallwatch {

// Entrance distance at the 1280-px reference width; scaled with frame width.
inline constexpr double kReferenceEntranceDistPx = 150.0;
inline constexpr double kReferenceFrameWidth = 1280.0;

// Everything that describes one stall camera.
struct StallConfig {
  std::string camera_id = "camera";
  FrameDims frame;
  Polygon floor_polygon;
  Segment entrance;
  double entrance_dist_px = kReferenceEntranceDistPx;
  double edge_margin_px = 10.0;
  EdgeSet interior_edges;
  double min_area_ratio = 0.0;
  int fps = 20;
  int frame_stride = 20;
  double confidence_threshold = 0.5;
  int clip_length_s = 60;
  // Upstream detector NMS threshold; recorded, not used.
  double detector_iou_threshold = 0.5;
  TrackerParams tracker;

  double stride_s() const { return static_cast<double>(frame_stride) / fps; }
  int frames_per_clip() const { return clip_length_s * fps / frame_stride; }
  double clip_length() const { return static_cast<double>(clip_length_s); }

  // Throws ConfigError naming the offending field.
  void validate() const;
};

double default_entrance_dist(const FrameDims& frame);

}  // namespace stallwatch

#endif  // STALLWATCH_CONFIG_HPP
