#include "stallwatch/track_refine.hpp"

#include <algorithm>
#include <set>

namespace stallwatch {

std::optional<Box> RefinedObject::box_at(int frame) const {
  if (!spans(frame)) return std::nullopt;
  return timeline[static_cast<std::size_t>(frame - first_frame)];
}

ObjectClass assign_class(const Track& t) {
  ClassScores sum;
  ClassScores peak;
  for (const Detection& d : t.observations) {
    for (ObjectClass c : kAllClasses) {
      sum[c] += d.scores[c];
      peak[c] = std::max(peak[c], d.scores[c]);
    }
  }
  ObjectClass best = kAllClasses.front();
  for (ObjectClass c : kAllClasses) {
    if (sum[c] > sum[best] || (sum[c] == sum[best] && peak[c] > peak[best]) ||
        (sum[c] == sum[best] && peak[c] == peak[best] && to_string(c) < to_string(best))) {
      best = c;
    }
  }
  return best;
}

std::vector<ClassifiedTrack> classify_tracks(std::vector<Track> tracks) {
  std::vector<ClassifiedTrack> out;
  out.reserve(tracks.size());
  for (Track& t : tracks) {
    const ObjectClass c = assign_class(t);
    out.push_back({std::move(t), c});
  }
  return out;
}

namespace {

struct Group {
  ObjectClass cls;
  std::set<int> frames;
  std::vector<const Track*> members;
};

bool disjoint(const std::set<int>& frames, const Track& t) {
  for (const Detection& d : t.observations) {
    if (frames.contains(d.frame_idx)) return false;
  }
  return true;
}

Box lerp(const Box& a, const Box& b, double s) {
  return {a.x + s * (b.x - a.x), a.y + s * (b.y - a.y), a.w + s * (b.w - a.w),
          a.h + s * (b.h - a.h)};
}

RefinedObject build_object(int object_id, const Group& g, const MergeOptions& options) {
  RefinedObject obj;
  obj.object_id = object_id;
  obj.cls = g.cls;
  obj.first_frame = *g.frames.begin();
  obj.timeline.assign(static_cast<std::size_t>(*g.frames.rbegin() - obj.first_frame + 1),
                      std::nullopt);
  for (const Track* t : g.members) {
    obj.source_track_ids.push_back(t->id);
    for (const Detection& d : t->observations) {
      obj.timeline[static_cast<std::size_t>(d.frame_idx - obj.first_frame)] = d.box;
    }
  }
  const int bridge = options.max_bridge_gap.value_or(0);
  if (bridge > 0) {
    std::optional<std::size_t> prev;
    for (std::size_t i = 0; i < obj.timeline.size(); ++i) {
      if (!obj.timeline[i]) continue;
      if (prev && i - *prev > 1 && static_cast<int>(i - *prev - 1) <= bridge) {
        const Box a = *obj.timeline[*prev];
        const Box b = *obj.timeline[i];
        const double span = static_cast<double>(i - *prev);
        for (std::size_t f = *prev + 1; f < i; ++f)
          obj.timeline[f] = lerp(a, b, static_cast<double>(f - *prev) / span);
      }
      prev = i;
    }
  }
  if (options.fill_track_gaps) {
    for (const Track* t : g.members) {
      for (std::size_t k = 1; k < t->observations.size(); ++k) {
        const Detection& a = t->observations[k - 1];
        const Detection& b = t->observations[k];
        const int span = b.frame_idx - a.frame_idx;
        for (int f = a.frame_idx + 1; f < b.frame_idx; ++f) {
          auto& slot = obj.timeline[static_cast<std::size_t>(f - obj.first_frame)];
          if (!slot) slot = lerp(a.box, b.box, static_cast<double>(f - a.frame_idx) / span);
        }
      }
    }
  }
  return obj;
}

}  // namespace

std::vector<RefinedObject> merge_tracks(std::span<const ClassifiedTrack> tracks,
                                        const MergeOptions& options) {
  std::vector<const ClassifiedTrack*> order;
  for (const ClassifiedTrack& ct : tracks) {
    if (!ct.track.observations.empty()) order.push_back(&ct);
  }
  std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    if (a->track.first_frame() != b->track.first_frame())
      return a->track.first_frame() < b->track.first_frame();
    return a->track.id < b->track.id;
  });

  std::vector<Group> groups;
  for (const ClassifiedTrack* ct : order) {
    auto target = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return g.cls == ct->cls && disjoint(g.frames, ct->track);
    });
    if (target == groups.end()) {
      groups.push_back({ct->cls, {}, {}});
      target = std::prev(groups.end());
    }
    for (const Detection& d : ct->track.observations) target->frames.insert(d.frame_idx);
    target->members.push_back(&ct->track);
  }

  std::vector<RefinedObject> out;
  out.reserve(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    out.push_back(build_object(static_cast<int>(i) + 1, groups[i], options));
  }
  return out;
}

}  // namespace stallwatch
