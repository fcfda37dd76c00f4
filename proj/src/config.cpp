#include "stallwatch/config.hpp"

#include <cmath>

#include "stallwatch/errors.hpp"

namespace stallwatch {
namespace {

bool within_frame(Point p, const FrameDims& f) {
  return p.x >= -kGeomEps && p.y >= -kGeomEps && p.x <= f.width + kGeomEps &&
         p.y <= f.height + kGeomEps;
}

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError(field + ": " + what);
}

}  // namespace

double default_entrance_dist(const FrameDims& frame) {
  return kReferenceEntranceDistPx * frame.width / kReferenceFrameWidth;
}

void StallConfig::validate() const {
  if (!(frame.width > 0.0) || !(frame.height > 0.0)) fail("frame", "dimensions must be positive");
  if (floor_polygon.size() < 3) fail("floor_polygon", "needs at least 3 vertices");
  for (const Point& p : floor_polygon) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) fail("floor_polygon", "non-finite vertex");
    if (!within_frame(p, frame)) fail("floor_polygon", "vertex outside frame bounds");
  }
  if (!is_simple_polygon(floor_polygon)) fail("floor_polygon", "self-intersecting polygon");
  if (polygon_area(floor_polygon) <= kGeomEps) fail("floor_polygon", "zero area");
  if (!within_frame(entrance.a, frame) || !within_frame(entrance.b, frame))
    fail("entrance", "endpoint outside frame bounds");
  if (std::hypot(entrance.b.x - entrance.a.x, entrance.b.y - entrance.a.y) <= kGeomEps)
    fail("entrance", "degenerate segment");
  if (!(entrance_dist_px > 0.0)) fail("entrance_dist_px", "must be positive");
  if (!(edge_margin_px >= 0.0)) fail("edge_margin_px", "must be non-negative");
  if (!(min_area_ratio >= 0.0 && min_area_ratio < 1.0)) fail("min_area_ratio", "must lie in [0, 1)");
  if (fps <= 0) fail("fps", "must be positive");
  if (frame_stride <= 0) fail("frame_stride", "must be positive");
  if (clip_length_s <= 0) fail("clip_length_s", "must be positive");
  if ((clip_length_s * fps) % frame_stride != 0)
    fail("frame_stride", "must divide the clip's frame count evenly");
  if (!(confidence_threshold > 0.0 && confidence_threshold <= 1.0))
    fail("confidence_threshold", "must lie in (0, 1]");
  if (!(detector_iou_threshold > 0.0 && detector_iou_threshold <= 1.0))
    fail("detector_iou_threshold", "must lie in (0, 1]");
  try {
    tracker.validate();
  } catch (const ConfigError& e) {
    fail("tracker", e.what());
  }
}

}  // namespace stallwatch
