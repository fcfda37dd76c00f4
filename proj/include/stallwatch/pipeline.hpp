#ifndef STALLWATCH_PIPELINE_HPP
#define STALLWATCH_PIPELINE_HPP

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stallwatch/config.hpp"
#include "stallwatch/events.hpp"
#include "stallwatch/track_refine.hpp"
#include "stallwatch/tracker.hpp"

namespace stallwatch {

// Detections of one clip keyed by sampled frame index.
struct ClipDetections {
  std::string clip_id;
  std::map<int, std::vector<Detection>> frames;

  bool operator==(const ClipDetections&) const = default;
};

// Last event per class of the previous clip on the same camera.
struct ClipTail {
  std::array<std::optional<Event>, kNumClasses> last;

  std::optional<Event>& operator[](ObjectClass c) { return last[static_cast<std::size_t>(c)]; }
  const std::optional<Event>& operator[](ObjectClass c) const {
    return last[static_cast<std::size_t>(c)];
  }
};

struct ClipResult {
  std::array<std::vector<Event>, kNumClasses> events;
  std::vector<Track> tracks;
  std::vector<RefinedObject> objects;  // kept objects, both classes
  ClipTail tail;

  const std::vector<Event>& operator[](ObjectClass c) const {
    return events[static_cast<std::size_t>(c)];
  }
  // Events of both classes, horse first.
  std::vector<Event> all_events() const;
};

// Tracks every sampled frame of the clip (low-confidence boxes dropped).
std::vector<Track> track_clip(const ClipDetections& clip, const StallConfig& cfg);

// Localization, aggregation, blind-spot resolution and inter-clip correction
// for one class given its refined objects.
std::vector<Event> detect_events(std::span<const RefinedObject> objs, ObjectClass cls,
                                 const StallConfig& cfg, const std::string& clip_id,
                                 const std::optional<Event>& prev_last);

// Full clip: tracking, class assignment, ID merging, then event detection per
// class. Output partitions [0, clip_length) for each class.
ClipResult run_pipeline(const ClipDetections& clip, const ClipTail& prev, const StallConfig& cfg,
                        const MergeOptions& merge_options = {});

}  // namespace stallwatch

#endif  // STALLWATCH_PIPELINE_HPP
