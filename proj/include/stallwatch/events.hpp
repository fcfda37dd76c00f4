#ifndef STALLWATCH_EVENTS_HPP
#define STALLWATCH_EVENTS_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stallwatch/config.hpp"
#include "stallwatch/object_class.hpp"
#include "stallwatch/track_refine.hpp"

namespace stallwatch {

enum class ObjectFrameState { inside, outside, not_localized };

// Per-class state of a frame or an event. not_localized only occurs before
// blind-spot resolution; inside_invisible only after it.
enum class EventState {
  outside_invisible,
  outside_visible,
  not_localized,
  inside_visible,
  multiple_inside_visible,
  inside_invisible,
};
using FrameState = EventState;

std::string_view to_string(ObjectFrameState s);
std::string_view to_string(EventState s);
// Short labels used in comparison tables ("inside", "outside", ...).
std::string_view short_label(EventState s);
// Accepts canonical names plus the short labels.
std::optional<EventState> parse_event_state(std::string_view s);

bool is_visible(EventState s);
bool is_in_stall(EventState s);

// One event over the half-open interval [start_s, end_s) of a clip.
struct Event {
  std::string camera_id;
  std::string clip_id;
  ObjectClass cls = ObjectClass::horse;
  EventState state = EventState::outside_invisible;
  double start_s = 0.0;
  double end_s = 0.0;
  std::optional<std::string> wall_clock_start;

  double duration() const { return end_s - start_s; }
  bool operator==(const Event&) const = default;
};

// Maximal run of one frame state over sampled frames [first_frame, end_frame).
struct FrameRun {
  EventState state = EventState::outside_invisible;
  int first_frame = 0;
  int end_frame = 0;
  double start_s = 0.0;
  double end_s = 0.0;
};

// Floor-polygon test for one object at one frame. Throws UsageError when the
// frame lies outside the object's timeline.
ObjectFrameState localize(const RefinedObject& obj, int frame, const StallConfig& cfg);

// Like localize, but frames before the first or after the last observation
// are not_localized: the object exists for the whole clip once kept.
ObjectFrameState object_state_at(const RefinedObject& obj, int frame, const StallConfig& cfg);

std::vector<RefinedObject> discard_never_inside(std::vector<RefinedObject> objs,
                                                const StallConfig& cfg);

FrameState aggregate_frame(std::span<const ObjectFrameState> states);

std::vector<FrameRun> merge_temporal(std::span<const FrameState> timeline, double stride_s);

struct BlindSpotResolution {
  EventState state = EventState::outside_invisible;
  // No contributing object had a localized frame before the run; the label
  // is a default left for inter-clip correction.
  bool provisional = false;
};

// Resolves a not_localized run using each contributing object's last
// localized box: exited near the entrance -> outside_invisible, otherwise (or
// when touching a configured interior edge) inside_invisible. Any object
// resolving inside wins.
BlindSpotResolution classify_not_localized(const FrameRun& run,
                                           std::span<const RefinedObject> objs,
                                           const StallConfig& cfg);

// Per-object part of the rule above, from a last localized box.
EventState resolve_from_last_box(ObjectFrameState last_state, const Box& last_box,
                                 const StallConfig& cfg);

// Joins adjacent events that carry the same state.
std::vector<Event> coalesce(std::vector<Event> events);

// Inter-clip correction: when the previous clip ended inside_invisible, the
// leading outside_invisible events of this clip (up to the first visible
// event) become inside_invisible. Only labels change.
std::vector<Event> correct_inter_clip(const std::optional<Event>& prev_last,
                                      std::vector<Event> current);

}  // namespace stallwatch

#endif  // STALLWATCH_EVENTS_HPP
