#ifndef STALLWATCH_TRACK_REFINE_HPP
#define STALLWATCH_TRACK_REFINE_HPP

#include <optional>
#include <span>
#include <vector>

#include "stallwatch/geometry.hpp"
#include "stallwatch/object_class.hpp"
#include "stallwatch/tracker.hpp"

namespace stallwatch {

// A clip-level object built from one or more same-class tracks. Frames
// without a box are gaps ("not localized").
struct RefinedObject {
  int object_id = 0;
  ObjectClass cls = ObjectClass::horse;
  int first_frame = 0;
  std::vector<std::optional<Box>> timeline;  // index i <-> frame first_frame + i
  std::vector<int> source_track_ids;

  int last_frame() const { return first_frame + static_cast<int>(timeline.size()) - 1; }
  bool spans(int frame) const { return frame >= first_frame && frame <= last_frame(); }
  // Box at frame, or nullopt for gaps and frames outside the span.
  std::optional<Box> box_at(int frame) const;
};

struct ClassifiedTrack {
  Track track;
  ObjectClass cls = ObjectClass::horse;
};

// Class with the largest summed probability over the track's observations.
// Ties go to the larger single-frame maximum, then to the smaller class name.
ObjectClass assign_class(const Track& t);

std::vector<ClassifiedTrack> classify_tracks(std::vector<Track> tracks);

struct MergeOptions {
  // Fill frames a single track missed while it stayed alive by linear
  // interpolation between its bracketing observations. Gaps between
  // different source tracks are always kept.
  bool fill_track_gaps = true;
  // Gaps of at most this many frames between two source tracks are filled
  // the same way (detector misses that broke a track). run_pipeline uses the
  // tracker's max_age when unset; merge_tracks treats unset as 0.
  std::optional<int> max_bridge_gap;
};

// Greedy earliest-first merge: each track joins the earliest-created object
// of its class whose observed frames are disjoint from its own, otherwise it
// founds a new object.
std::vector<RefinedObject> merge_tracks(std::span<const ClassifiedTrack> tracks,
                                        const MergeOptions& options = {});

}  // namespace stallwatch

#endif  // STALLWATCH_TRACK_REFINE_HPP
