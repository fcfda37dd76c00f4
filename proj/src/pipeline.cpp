#include "stallwatch/pipeline.hpp"

#include <string>

#include "stallwatch/errors.hpp"

namespace stallwatch {

std::vector<Event> ClipResult::all_events() const {
  std::vector<Event> out;
  for (const auto& per_class : events) out.insert(out.end(), per_class.begin(), per_class.end());
  return out;
}

std::vector<Track> track_clip(const ClipDetections& clip, const StallConfig& cfg) {
  const int n_frames = cfg.frames_per_clip();
  Tracker tracker(cfg.tracker);
  std::vector<Detection> kept;
  auto it = clip.frames.begin();
  for (int f = 0; f < n_frames; ++f) {
    kept.clear();
    if (it != clip.frames.end() && it->first == f) {
      for (const Detection& d : it->second) {
        if (d.confidence >= cfg.confidence_threshold) {
          kept.push_back(d);
          kept.back().frame_idx = f;
        }
      }
      ++it;
    }
    tracker.step(f, kept);
  }
  if (it != clip.frames.end()) {
    throw InputError("clip " + clip.clip_id + ": frame " + std::to_string(it->first) +
                     " outside [0, " + std::to_string(n_frames) + ")");
  }
  return tracker.finalize();
}

std::vector<Event> detect_events(std::span<const RefinedObject> objs, ObjectClass cls,
                                 const StallConfig& cfg, const std::string& clip_id,
                                 const std::optional<Event>& prev_last) {
  const int n_frames = cfg.frames_per_clip();
  std::vector<ObjectFrameState> per_object;
  std::vector<FrameState> timeline(static_cast<std::size_t>(n_frames));
  for (int f = 0; f < n_frames; ++f) {
    per_object.clear();
    for (const RefinedObject& o : objs) per_object.push_back(object_state_at(o, f, cfg));
    timeline[static_cast<std::size_t>(f)] = aggregate_frame(per_object);
  }

  std::vector<Event> events;
  for (const FrameRun& run : merge_temporal(timeline, cfg.stride_s())) {
    Event e;
    e.camera_id = cfg.camera_id;
    e.clip_id = clip_id;
    e.cls = cls;
    e.state = run.state;
    e.start_s = run.start_s;
    e.end_s = run.end_s;
    if (run.state == EventState::not_localized) {
      e.state = classify_not_localized(run, objs, cfg).state;
    }
    events.push_back(std::move(e));
  }
  return coalesce(correct_inter_clip(prev_last, coalesce(std::move(events))));
}

ClipResult run_pipeline(const ClipDetections& clip, const ClipTail& prev, const StallConfig& cfg,
                        const MergeOptions& merge_options) {
  ClipResult result;
  result.tracks = track_clip(clip, cfg);
  const std::vector<ClassifiedTrack> classified = classify_tracks(result.tracks);
  MergeOptions options = merge_options;
  if (!options.max_bridge_gap) options.max_bridge_gap = cfg.tracker.max_age;
  std::vector<RefinedObject> objects =
      discard_never_inside(merge_tracks(classified, options), cfg);

  for (ObjectClass cls : kAllClasses) {
    std::vector<RefinedObject> of_class;
    for (const RefinedObject& o : objects) {
      if (o.cls == cls) of_class.push_back(o);
    }
    auto& events = result.events[static_cast<std::size_t>(cls)];
    events = detect_events(of_class, cls, cfg, clip.clip_id, prev[cls]);
    result.tail[cls] = events.empty() ? std::nullopt : std::optional<Event>(events.back());
  }
  result.objects = std::move(objects);
  return result;
}

}  // namespace stallwatch
