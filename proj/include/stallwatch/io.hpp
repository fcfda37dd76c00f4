#ifndef STALLWATCH_IO_HPP
#define STALLWATCH_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "stallwatch/config.hpp"
#include "stallwatch/curation.hpp"
#include "stallwatch/evaluation.hpp"
#include "stallwatch/events.hpp"
#include "stallwatch/pipeline.hpp"
#include "stallwatch/scenario.hpp"

namespace stallwatch {

using json = nlohmann::ordered_json;

// ---- detections (JSON Lines, one record per sampled frame per clip) ----

struct IngestOptions {
  double confidence_threshold = 0.5;
  std::optional<FrameDims> frame;  // clamp boxes when set
};

struct ParsedDetections {
  std::vector<ClipDetections> clips;  // first-appearance order, frames sorted
  std::vector<std::string> warnings;
};

// Throws InputError naming the line for malformed records and for a
// repeated (clip, frame) pair.
ParsedDetections parse_detections(std::istream& in, const IngestOptions& options = {});
void write_detections(std::ostream& out, std::span<const ClipDetections> clips);

// ---- stall configuration (one JSON document per camera) ----

// Missing fields take their defaults; the result is validated.
StallConfig config_from_json(const json& j);
json config_to_json(const StallConfig& cfg);
StallConfig load_config(const std::filesystem::path& path);

// ---- event logs (JSON Lines with a header record) ----

inline constexpr const char* kEventLogFormat = "stallwatch.events";
inline constexpr int kEventLogVersion = 1;

json event_to_json(const Event& e);
Event event_from_json(const json& j);

// Orders by (camera, clip, class, start).
void sort_events(std::vector<Event>& events);
bool events_sorted(std::span<const Event> events);

// Throws InputError unless the events are sorted.
void write_events(std::ostream& out, std::span<const Event> events);
std::vector<Event> read_events(std::istream& in);
std::vector<Event> read_events(const std::filesystem::path& path);

// Appends to an event log, creating it when missing. Throws UsageError when
// a camera's new clips do not come strictly after the ones already logged.
void append_events(const std::filesystem::path& path, std::span<const Event> events);

// Final event per class of the camera's most recent clip in a log.
ClipTail tail_from_log(std::span<const Event> events, const std::string& camera_id);

// ---- misc dumps ----

json tracks_to_json(const std::string& clip_id, std::span<const Track> tracks);
json report_to_json(const EvalReport& report);

Script script_from_json(const json& j);
json script_to_json(const Script& s);
Script load_script(const std::filesystem::path& path);
NoiseModel noise_from_json(const json& j);
json noise_to_json(const NoiseModel& n);

struct EmbeddingRecord {
  std::string clip_id;
  int frame_idx = 0;
  std::vector<double> vector;
};
// JSON Lines {"clip_id", "frame_idx", "embedding": [...]}.
std::vector<EmbeddingRecord> read_embeddings(std::istream& in);
// JSON Lines {"clip_id", "stall_id", "time_of_day", "season"}.
std::vector<ClipMeta> read_clip_meta(std::istream& in);

}  // namespace stallwatch

#endif  // STALLWATCH_IO_HPP
