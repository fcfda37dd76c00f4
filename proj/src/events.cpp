#include "stallwatch/events.hpp"

#include <algorithm>
#include <string>

#include "stallwatch/errors.hpp"

namespace stallwatch {

std::string_view to_string(ObjectFrameState s) {
  switch (s) {
    case ObjectFrameState::inside: return "inside";
    case ObjectFrameState::outside: return "outside";
    case ObjectFrameState::not_localized: return "not_localized";
  }
  return "?";
}

std::string_view to_string(EventState s) {
  switch (s) {
    case EventState::outside_invisible: return "outside_invisible";
    case EventState::outside_visible: return "outside_visible";
    case EventState::not_localized: return "not_localized";
    case EventState::inside_visible: return "inside_visible";
    case EventState::multiple_inside_visible: return "multiple_inside_visible";
    case EventState::inside_invisible: return "inside_invisible";
  }
  return "?";
}

std::string_view short_label(EventState s) {
  switch (s) {
    case EventState::outside_visible: return "outside";
    case EventState::inside_visible: return "inside";
    case EventState::multiple_inside_visible: return "multiple_inside";
    default: return to_string(s);
  }
}

std::optional<EventState> parse_event_state(std::string_view s) {
  for (EventState st : {EventState::outside_invisible, EventState::outside_visible,
                        EventState::not_localized, EventState::inside_visible,
                        EventState::multiple_inside_visible, EventState::inside_invisible}) {
    if (s == to_string(st) || s == short_label(st)) return st;
  }
  return std::nullopt;
}

bool is_visible(EventState s) {
  return s == EventState::outside_visible || s == EventState::inside_visible ||
         s == EventState::multiple_inside_visible;
}

bool is_in_stall(EventState s) {
  return s == EventState::inside_visible || s == EventState::multiple_inside_visible ||
         s == EventState::inside_invisible;
}

ObjectFrameState localize(const RefinedObject& obj, int frame, const StallConfig& cfg) {
  if (!obj.spans(frame)) {
    throw UsageError("frame " + std::to_string(frame) + " outside timeline of object " +
                     std::to_string(obj.object_id));
  }
  return object_state_at(obj, frame, cfg);
}

ObjectFrameState object_state_at(const RefinedObject& obj, int frame, const StallConfig& cfg) {
  const std::optional<Box> box = obj.box_at(frame);
  if (!box) return ObjectFrameState::not_localized;
  return box_polygon_intersects(*box, cfg.floor_polygon, cfg.min_area_ratio)
             ? ObjectFrameState::inside
             : ObjectFrameState::outside;
}

std::vector<RefinedObject> discard_never_inside(std::vector<RefinedObject> objs,
                                                const StallConfig& cfg) {
  std::erase_if(objs, [&](const RefinedObject& o) {
    for (int f = o.first_frame; f <= o.last_frame(); ++f) {
      if (object_state_at(o, f, cfg) == ObjectFrameState::inside) return false;
    }
    return true;
  });
  return objs;
}

FrameState aggregate_frame(std::span<const ObjectFrameState> states) {
  int inside = 0;
  int not_localized = 0;
  for (ObjectFrameState s : states) {
    if (s == ObjectFrameState::inside) ++inside;
    if (s == ObjectFrameState::not_localized) ++not_localized;
  }
  if (inside >= 2) return EventState::multiple_inside_visible;
  if (inside == 1) return EventState::inside_visible;
  if (not_localized >= 1) return EventState::not_localized;
  if (!states.empty()) return EventState::outside_visible;
  return EventState::outside_invisible;
}

std::vector<FrameRun> merge_temporal(std::span<const FrameState> timeline, double stride_s) {
  std::vector<FrameRun> runs;
  for (std::size_t i = 0; i < timeline.size();) {
    std::size_t j = i + 1;
    while (j < timeline.size() && timeline[j] == timeline[i]) ++j;
    runs.push_back({timeline[i], static_cast<int>(i), static_cast<int>(j),
                    static_cast<double>(i) * stride_s, static_cast<double>(j) * stride_s});
    i = j;
  }
  return runs;
}

EventState resolve_from_last_box(ObjectFrameState last_state, const Box& last_box,
                                 const StallConfig& cfg) {
  if (last_state != ObjectFrameState::inside) return EventState::outside_invisible;
  if (touches_frame_edge(last_box, cfg.frame, cfg.edge_margin_px).intersects(cfg.interior_edges))
    return EventState::inside_invisible;
  if (dist_to_segment(last_box.bottom_center(), cfg.entrance) <= cfg.entrance_dist_px)
    return EventState::outside_invisible;
  return EventState::inside_invisible;
}

BlindSpotResolution classify_not_localized(const FrameRun& run,
                                           std::span<const RefinedObject> objs,
                                           const StallConfig& cfg) {
  BlindSpotResolution out;
  bool any_contributor = false;
  bool missing_history = false;
  for (const RefinedObject& obj : objs) {
    int first_gap = -1;
    for (int f = run.first_frame; f < run.end_frame; ++f) {
      if (object_state_at(obj, f, cfg) == ObjectFrameState::not_localized) {
        first_gap = f;
        break;
      }
    }
    if (first_gap < 0) continue;
    any_contributor = true;

    std::optional<Box> last_box;
    for (int f = std::min(first_gap - 1, obj.last_frame()); f >= obj.first_frame; --f) {
      last_box = obj.box_at(f);
      if (last_box) break;
    }
    if (!last_box) {
      missing_history = true;
      continue;
    }
    const ObjectFrameState last_state =
        box_polygon_intersects(*last_box, cfg.floor_polygon, cfg.min_area_ratio)
            ? ObjectFrameState::inside
            : ObjectFrameState::outside;
    if (resolve_from_last_box(last_state, *last_box, cfg) == EventState::inside_invisible) {
      out.state = EventState::inside_invisible;
    }
  }
  out.provisional =
      out.state == EventState::outside_invisible && (missing_history || !any_contributor);
  return out;
}

std::vector<Event> coalesce(std::vector<Event> events) {
  std::vector<Event> out;
  out.reserve(events.size());
  for (Event& e : events) {
    if (!out.empty() && out.back().state == e.state && out.back().end_s == e.start_s &&
        out.back().clip_id == e.clip_id && out.back().cls == e.cls) {
      out.back().end_s = e.end_s;
    } else {
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<Event> correct_inter_clip(const std::optional<Event>& prev_last,
                                      std::vector<Event> current) {
  if (!prev_last || prev_last->state != EventState::inside_invisible) return current;
  for (Event& e : current) {
    if (is_visible(e.state)) break;
    if (e.state == EventState::outside_invisible) e.state = EventState::inside_invisible;
  }
  return current;
}

}  // namespace stallwatch
