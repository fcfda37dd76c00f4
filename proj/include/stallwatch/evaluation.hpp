#ifndef STALLWATCH_EVALUATION_HPP
#define STALLWATCH_EVALUATION_HPP

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stallwatch/events.hpp"

namespace stallwatch {

struct Interval {
  double start = 0.0;
  double end = 0.0;
  bool operator==(const Interval&) const = default;
};

// |a ∩ b| / |a ∪ b| for intervals with start < end.
double t_iou(Interval a, Interval b);

inline Interval interval_of(const Event& e) { return {e.start_s, e.end_s}; }

struct MatchOptions {
  double threshold = 0.5;
  // When false, events of different states may match (ablation mode).
  bool state_aware = true;
};

struct EventMatch {
  Event pred;
  Event gt;
  double t_iou = 0.0;
};

struct MatchResult {
  std::vector<EventMatch> matches;
  std::vector<Event> unmatched_pred;  // false positives
  std::vector<Event> unmatched_gt;    // false negatives
};

// Exact one-to-one matching within each (camera, clip, class) group,
// maximizing total t-IoU over pairs at or above the threshold.
MatchResult match_events(std::span<const Event> pred, std::span<const Event> gt,
                         const MatchOptions& options = {});

struct ClassMetrics {
  std::size_t n_pred = 0;
  std::size_t n_gt = 0;
  std::size_t n_matched = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double mean_t_iou = 0.0;
};

std::array<ClassMetrics, kNumClasses> metrics(const MatchResult& m);

enum class ErrorKind { false_positive, false_negative, temporal_shift, state_mismatch };
// Event-level errors compare individual events; presence-level errors
// compare the in-stall intervals (any inside state) derived from them.
enum class ErrorLevel { event, presence };

std::string_view to_string(ErrorKind k);
std::string_view to_string(ErrorLevel l);

struct EventError {
  ErrorLevel level = ErrorLevel::event;
  ErrorKind kind = ErrorKind::false_positive;
  std::string camera_id;
  std::string clip_id;
  ObjectClass cls = ObjectClass::horse;
  std::optional<Interval> pred;
  std::optional<Interval> gt;
  std::optional<EventState> pred_state;
  std::optional<EventState> gt_state;
  double t_iou = 0.0;
  double start_delta_s = 0.0;  // pred - gt
  double end_delta_s = 0.0;
};

// Taxonomy-labelled diff. Unmatched pred/GT pairs of the same group that
// overlap at the threshold but differ in state are reported once as
// state_mismatch instead of a false positive plus a false negative.
std::vector<EventError> error_report(std::span<const Event> pred, std::span<const Event> gt,
                                     const MatchResult& m, const MatchOptions& options = {});

struct EvalReport {
  MatchOptions options;
  MatchResult matching;
  std::array<ClassMetrics, kNumClasses> per_class;
  std::vector<EventError> errors;

  // True when the (clip, class) group has no event-level error.
  bool fully_correct(const std::string& clip_id, ObjectClass cls) const;
};

EvalReport evaluate(std::span<const Event> pred, std::span<const Event> gt,
                    const MatchOptions& options = {});

// Side-by-side table in the layout of the qualitative comparison: one row
// per clip with predicted/GT events per class and the error labels.
std::string render_comparison_table(std::span<const Event> pred, std::span<const Event> gt,
                                    const EvalReport& report);

}  // namespace stallwatch

#endif  // STALLWATCH_EVALUATION_HPP
