#include "stallwatch/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "stallwatch/assignment.hpp"

namespace stallwatch {
namespace {

using GroupKey = std::tuple<std::string, std::string, int>;

GroupKey key_of(const Event& e) {
  return {e.camera_id, e.clip_id, static_cast<int>(e.cls)};
}

struct Group {
  std::vector<const Event*> pred;
  std::vector<const Event*> gt;
};

std::map<GroupKey, Group> group_events(std::span<const Event> pred, std::span<const Event> gt) {
  std::map<GroupKey, Group> groups;
  for (const Event& e : pred) groups[key_of(e)].pred.push_back(&e);
  for (const Event& e : gt) groups[key_of(e)].gt.push_back(&e);
  return groups;
}

bool by_start(const Event& a, const Event& b) {
  return std::tie(a.camera_id, a.clip_id, a.cls, a.start_s, a.end_s) <
         std::tie(b.camera_id, b.clip_id, b.cls, b.start_s, b.end_s);
}

std::vector<Interval> presence_intervals(const std::vector<const Event*>& events) {
  std::vector<const Event*> sorted = events;
  std::sort(sorted.begin(), sorted.end(),
            [](const Event* a, const Event* b) { return a->start_s < b->start_s; });
  std::vector<Interval> out;
  for (const Event* e : sorted) {
    if (!is_in_stall(e->state)) continue;
    if (!out.empty() && out.back().end >= e->start_s) {
      out.back().end = std::max(out.back().end, e->end_s);
    } else {
      out.push_back(interval_of(*e));
    }
  }
  return out;
}

EventError make_error(ErrorLevel level, ErrorKind kind, const GroupKey& key) {
  EventError err;
  err.level = level;
  err.kind = kind;
  err.camera_id = std::get<0>(key);
  err.clip_id = std::get<1>(key);
  err.cls = static_cast<ObjectClass>(std::get<2>(key));
  return err;
}

void fill_pair(EventError& err, Interval p, Interval g) {
  err.pred = p;
  err.gt = g;
  err.t_iou = t_iou(p, g);
  err.start_delta_s = p.start - g.start;
  err.end_delta_s = p.end - g.end;
}

std::string fmt_seconds(double s) {
  char buf[32];
  if (s == std::floor(s) && s >= 0 && s < 1e9) {
    std::snprintf(buf, sizeof buf, "%02lld", static_cast<long long>(s));
  } else {
    std::snprintf(buf, sizeof buf, "%g", s);
  }
  return buf;
}

std::string fmt_interval(Interval iv) { return fmt_seconds(iv.start) + "-" + fmt_seconds(iv.end); }

}  // namespace

double t_iou(Interval a, Interval b) {
  const double inter = std::max(0.0, std::min(a.end, b.end) - std::max(a.start, b.start));
  const double uni = (a.end - a.start) + (b.end - b.start) - inter;
  return uni > 0.0 ? std::clamp(inter / uni, 0.0, 1.0) : 0.0;
}

std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::false_positive: return "false_positive";
    case ErrorKind::false_negative: return "false_negative";
    case ErrorKind::temporal_shift: return "temporal_shift";
    case ErrorKind::state_mismatch: return "state_mismatch";
  }
  return "?";
}

std::string_view to_string(ErrorLevel l) { return l == ErrorLevel::event ? "event" : "presence"; }

MatchResult match_events(std::span<const Event> pred, std::span<const Event> gt,
                         const MatchOptions& options) {
  MatchResult out;
  for (const auto& [key, g] : group_events(pred, gt)) {
    Matrix score(g.pred.size(), g.gt.size(), -1.0);
    for (std::size_t i = 0; i < g.pred.size(); ++i) {
      for (std::size_t j = 0; j < g.gt.size(); ++j) {
        if (options.state_aware && g.pred[i]->state != g.gt[j]->state) continue;
        score(i, j) = t_iou(interval_of(*g.pred[i]), interval_of(*g.gt[j]));
      }
    }
    const Matching m = max_score_matching(score, options.threshold);
    for (auto [i, j] : m.matches) out.matches.push_back({*g.pred[i], *g.gt[j], score(i, j)});
    for (int i : m.unmatched_rows) out.unmatched_pred.push_back(*g.pred[i]);
    for (int j : m.unmatched_cols) out.unmatched_gt.push_back(*g.gt[j]);
  }
  std::sort(out.matches.begin(), out.matches.end(),
            [](const EventMatch& a, const EventMatch& b) { return by_start(a.gt, b.gt); });
  std::sort(out.unmatched_pred.begin(), out.unmatched_pred.end(), by_start);
  std::sort(out.unmatched_gt.begin(), out.unmatched_gt.end(), by_start);
  return out;
}

std::array<ClassMetrics, kNumClasses> metrics(const MatchResult& m) {
  std::array<ClassMetrics, kNumClasses> out{};
  std::array<double, kNumClasses> iou_sum{};
  for (const EventMatch& em : m.matches) {
    const auto c = static_cast<std::size_t>(em.gt.cls);
    ++out[c].n_matched;
    ++out[c].n_pred;
    ++out[c].n_gt;
    iou_sum[c] += em.t_iou;
  }
  for (const Event& e : m.unmatched_pred) ++out[static_cast<std::size_t>(e.cls)].n_pred;
  for (const Event& e : m.unmatched_gt) ++out[static_cast<std::size_t>(e.cls)].n_gt;

  for (std::size_t c = 0; c < kNumClasses; ++c) {
    ClassMetrics& cm = out[c];
    const bool both_empty = cm.n_pred == 0 && cm.n_gt == 0;
    auto ratio = [&](std::size_t num, std::size_t den) {
      if (den == 0) return both_empty ? 1.0 : 0.0;
      return static_cast<double>(num) / static_cast<double>(den);
    };
    cm.precision = ratio(cm.n_matched, cm.n_pred);
    cm.recall = ratio(cm.n_matched, cm.n_gt);
    cm.f1 = cm.precision + cm.recall > 0.0
                ? 2.0 * cm.precision * cm.recall / (cm.precision + cm.recall)
                : 0.0;
    cm.mean_t_iou = cm.n_matched > 0 ? iou_sum[c] / static_cast<double>(cm.n_matched)
                                     : (both_empty ? 1.0 : 0.0);
  }
  return out;
}

std::vector<EventError> error_report(std::span<const Event> pred, std::span<const Event> gt,
                                     const MatchResult& m, const MatchOptions& options) {
  std::vector<EventError> errors;

  for (const EventMatch& em : m.matches) {
    const bool same_state = em.pred.state == em.gt.state;
    if (same_state && em.t_iou >= 1.0) continue;
    EventError err = make_error(ErrorLevel::event,
                                same_state ? ErrorKind::temporal_shift : ErrorKind::state_mismatch,
                                key_of(em.gt));
    fill_pair(err, interval_of(em.pred), interval_of(em.gt));
    err.pred_state = em.pred.state;
    err.gt_state = em.gt.state;
    errors.push_back(std::move(err));
  }

  for (const auto& [key, g] : group_events(m.unmatched_pred, m.unmatched_gt)) {
    Matrix score(g.pred.size(), g.gt.size(), -1.0);
    for (std::size_t i = 0; i < g.pred.size(); ++i)
      for (std::size_t j = 0; j < g.gt.size(); ++j)
        if (g.pred[i]->state != g.gt[j]->state)
          score(i, j) = t_iou(interval_of(*g.pred[i]), interval_of(*g.gt[j]));
    const Matching pairs = max_score_matching(score, options.threshold);
    for (auto [i, j] : pairs.matches) {
      EventError err = make_error(ErrorLevel::event, ErrorKind::state_mismatch, key);
      fill_pair(err, interval_of(*g.pred[i]), interval_of(*g.gt[j]));
      err.pred_state = g.pred[i]->state;
      err.gt_state = g.gt[j]->state;
      errors.push_back(std::move(err));
    }
    for (int i : pairs.unmatched_rows) {
      EventError err = make_error(ErrorLevel::event, ErrorKind::false_positive, key);
      err.pred = interval_of(*g.pred[i]);
      err.pred_state = g.pred[i]->state;
      errors.push_back(std::move(err));
    }
    for (int j : pairs.unmatched_cols) {
      EventError err = make_error(ErrorLevel::event, ErrorKind::false_negative, key);
      err.gt = interval_of(*g.gt[j]);
      err.gt_state = g.gt[j]->state;
      errors.push_back(std::move(err));
    }
  }

  for (const auto& [key, g] : group_events(pred, gt)) {
    const std::vector<Interval> p = presence_intervals(g.pred);
    const std::vector<Interval> q = presence_intervals(g.gt);
    Matrix score(p.size(), q.size());
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j) score(i, j) = t_iou(p[i], q[j]);
    const Matching pm = max_score_matching(score, options.threshold);
    for (auto [i, j] : pm.matches) {
      if (score(i, j) >= 1.0) continue;
      EventError err = make_error(ErrorLevel::presence, ErrorKind::temporal_shift, key);
      fill_pair(err, p[i], q[j]);
      errors.push_back(std::move(err));
    }
    for (int i : pm.unmatched_rows) {
      EventError err = make_error(ErrorLevel::presence, ErrorKind::false_positive, key);
      err.pred = p[i];
      errors.push_back(std::move(err));
    }
    for (int j : pm.unmatched_cols) {
      EventError err = make_error(ErrorLevel::presence, ErrorKind::false_negative, key);
      err.gt = q[j];
      errors.push_back(std::move(err));
    }
  }

  std::stable_sort(errors.begin(), errors.end(), [](const EventError& a, const EventError& b) {
    const double sa = a.gt ? a.gt->start : a.pred->start;
    const double sb = b.gt ? b.gt->start : b.pred->start;
    return std::tie(a.camera_id, a.clip_id, a.cls, a.level, sa) <
           std::tie(b.camera_id, b.clip_id, b.cls, b.level, sb);
  });
  return errors;
}

bool EvalReport::fully_correct(const std::string& clip_id, ObjectClass cls) const {
  return std::none_of(errors.begin(), errors.end(), [&](const EventError& e) {
    return e.level == ErrorLevel::event && e.clip_id == clip_id && e.cls == cls;
  });
}

EvalReport evaluate(std::span<const Event> pred, std::span<const Event> gt,
                    const MatchOptions& options) {
  EvalReport r;
  r.options = options;
  r.matching = match_events(pred, gt, options);
  r.per_class = metrics(r.matching);
  r.errors = error_report(pred, gt, r.matching, options);
  return r;
}

std::string render_comparison_table(std::span<const Event> pred, std::span<const Event> gt,
                                    const EvalReport& report) {
  std::vector<std::string> clips;
  std::set<std::string> seen;
  for (auto events : {gt, pred}) {
    for (const Event& e : events) {
      if (seen.insert(e.clip_id).second) clips.push_back(e.clip_id);
    }
  }
  std::sort(clips.begin(), clips.end());

  auto cell_lines = [](std::span<const Event> events, const std::string& clip, ObjectClass cls) {
    std::vector<Event> sel;
    for (const Event& e : events)
      if (e.clip_id == clip && e.cls == cls) sel.push_back(e);
    std::sort(sel.begin(), sel.end(), by_start);
    std::vector<std::string> lines;
    for (const Event& e : sel) {
      lines.push_back(fmt_seconds(e.start_s) + ", " + fmt_seconds(e.end_s) + ", " +
                      std::string(short_label(e.state)));
    }
    return lines;
  };

  const std::vector<std::string> header = {"Clip",       "Person (Pred)", "Person (GT)",
                                           "Horse (Pred)", "Horse (GT)",  "Event errors"};
  std::vector<std::vector<std::vector<std::string>>> rows;
  for (const std::string& clip : clips) {
    std::vector<std::vector<std::string>> row(header.size());
    row[0] = {clip};
    row[1] = cell_lines(pred, clip, ObjectClass::person);
    row[2] = cell_lines(gt, clip, ObjectClass::person);
    row[3] = cell_lines(pred, clip, ObjectClass::horse);
    row[4] = cell_lines(gt, clip, ObjectClass::horse);
    for (const EventError& e : report.errors) {
      if (e.clip_id != clip || e.level != ErrorLevel::event) continue;
      std::string line = std::string(to_string(e.cls)) + ": " + std::string(to_string(e.kind));
      if (e.gt) line += " gt " + fmt_interval(*e.gt) + " " + std::string(short_label(*e.gt_state));
      if (e.pred)
        line += " pred " + fmt_interval(*e.pred) + " " + std::string(short_label(*e.pred_state));
      row[5].push_back(line);
    }
    if (row[5].empty()) row[5] = {"-"};
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& row : rows)
      for (const auto& line : row[c]) width[c] = std::max(width[c], line.size());
  }
  std::ostringstream out;
  auto emit_line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out << (c == 0 ? "| " : " | ") << cells[c] << std::string(width[c] - cells[c].size(), ' ');
    }
    out << " |\n";
  };
  auto emit_rule = [&] {
    for (std::size_t c = 0; c < width.size(); ++c)
      out << (c == 0 ? "|-" : "-|-") << std::string(width[c], '-');
    out << "-|\n";
  };
  emit_line(header);
  emit_rule();
  for (const auto& row : rows) {
    std::size_t height = 0;
    for (const auto& cell : row) height = std::max(height, cell.size());
    for (std::size_t k = 0; k < height; ++k) {
      std::vector<std::string> cells;
      for (const auto& cell : row) cells.push_back(k < cell.size() ? cell[k] : "");
      emit_line(cells);
    }
    emit_rule();
  }
  return out.str();
}

}  // namespace stallwatch
