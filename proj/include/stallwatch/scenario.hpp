#ifndef STALLWATCH_SCENARIO_HPP
#define STALLWATCH_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "stallwatch/config.hpp"
#include "stallwatch/evaluation.hpp"
#include "stallwatch/events.hpp"
#include "stallwatch/pipeline.hpp"

namespace stallwatch {

struct Waypoint {
  double t_s = 0.0;  // script time, seconds from the start of the first clip
  Box box;
};

// A scripted horse or person. The true box is linearly interpolated between
// waypoints and held at the ends. Detections are emitted only inside the
// visibility intervals [start, end); when hidden, whether the actor is in a
// blind spot or gone follows from its true box.
struct Actor {
  std::string name;
  ObjectClass cls = ObjectClass::horse;
  std::vector<Waypoint> waypoints;
  std::vector<Interval> visible;

  Box box_at(double t_s) const;
  bool visible_at(double t_s) const;
};

struct Script {
  StallConfig config;
  int clips = 1;
  std::uint64_t seed = 0;
  std::string clip_prefix = "clip";
  std::vector<Actor> actors;

  // Throws InputError naming the offending actor/waypoint.
  void validate() const;
  std::string clip_id(int clip) const;
};

struct SynthOutput {
  std::vector<ClipDetections> detections;  // one entry per clip, every frame present
  std::vector<Event> ground_truth;
};

// Detection stream plus ground-truth events derived from the true boxes and
// the scripted visibility, independently of the tracker and the blind-spot
// heuristic.
SynthOutput generate(const Script& script);

struct NoiseModel {
  double center_sigma_px = 0.0;
  double size_sigma_ratio = 0.0;
  double dropout_prob = 0.0;
  double class_flip_prob = 0.0;
  double spurious_per_frame = 0.0;

  void validate() const;
};

// Seeded, deterministic corruption of a detection stream. Boxes are clamped
// to the frame.
std::vector<ClipDetections> perturb(const std::vector<ClipDetections>& clips,
                                    const NoiseModel& noise, std::uint64_t seed,
                                    const FrameDims& frame);

}  // namespace stallwatch

#endif  // STALLWATCH_SCENARIO_HPP
