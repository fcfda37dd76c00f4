#include "stallwatch/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "stallwatch/errors.hpp"

namespace stallwatch {
namespace {

double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int orientation(Point o, Point a, Point b) {
  const double c = cross(o, a, b);
  if (c > kGeomEps) return 1;
  if (c < -kGeomEps) return -1;
  return 0;
}

bool on_segment(Point p, Point a, Point b) {
  return std::min(a.x, b.x) - kGeomEps <= p.x && p.x <= std::max(a.x, b.x) + kGeomEps &&
         std::min(a.y, b.y) - kGeomEps <= p.y && p.y <= std::max(a.y, b.y) + kGeomEps;
}

bool segments_touch(Point p1, Point p2, Point q1, Point q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 == 0 && on_segment(q1, p1, p2)) return true;
  if (o2 == 0 && on_segment(q2, p1, p2)) return true;
  if (o3 == 0 && on_segment(p1, q1, q2)) return true;
  if (o4 == 0 && on_segment(p2, q1, q2)) return true;
  return o1 != o2 && o3 != o4;
}

// One Sutherland-Hodgman pass against the half-plane {p : sign * (coord(p) - bound) <= 0}.
template <typename Coord>
Polygon clip_half_plane(const Polygon& in, Coord coord, double bound, double sign) {
  Polygon out;
  if (in.empty()) return out;
  out.reserve(in.size() + 4);
  auto inside = [&](Point p) { return sign * (coord(p) - bound) <= 0.0; };
  Point prev = in.back();
  bool prev_in = inside(prev);
  for (Point cur : in) {
    const bool cur_in = inside(cur);
    if (cur_in != prev_in) {
      const double t = (bound - coord(prev)) / (coord(cur) - coord(prev));
      out.push_back({prev.x + t * (cur.x - prev.x), prev.y + t * (cur.y - prev.y)});
    }
    if (cur_in) out.push_back(cur);
    prev = cur;
    prev_in = cur_in;
  }
  return out;
}

}  // namespace

bool Box::valid() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(w) && std::isfinite(h) &&
         w > 0.0 && h > 0.0;
}

double iou(const Box& a, const Box& b) {
  const double iw = std::min(a.right(), b.right()) - std::max(a.left(), b.left());
  const double ih = std::min(a.bottom(), b.bottom()) - std::max(a.top(), b.top());
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  // Extents measured the same way as the intersection so that iou(a, a) is exactly 1.
  auto extent_area = [](const Box& r) { return (r.right() - r.left()) * (r.bottom() - r.top()); };
  const double inter = iw * ih;
  const double uni = extent_area(a) + extent_area(b) - inter;
  return uni > 0.0 ? std::clamp(inter / uni, 0.0, 1.0) : 0.0;
}

double signed_area(std::span<const Point> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % n];
    acc += p.x * q.y - q.x * p.y;
  }
  return 0.5 * acc;
}

double polygon_area(std::span<const Point> poly) { return std::abs(signed_area(poly)); }

bool is_simple_polygon(std::span<const Point> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly[i];
    const Point b = poly[(i + 1) % n];
    if (std::hypot(b.x - a.x, b.y - a.y) <= kGeomEps) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point a1 = poly[i];
    const Point a2 = poly[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point b1 = poly[j];
      const Point b2 = poly[(j + 1) % n];
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        // Shared vertex; reject only if the edges fold back onto each other.
        const Point shared = (j == i + 1) ? a2 : a1;
        const Point u = (j == i + 1) ? a1 : a2;
        const Point v = (j == i + 1) ? b2 : b1;
        if (orientation(shared, u, v) == 0) {
          const double dot = (u.x - shared.x) * (v.x - shared.x) + (u.y - shared.y) * (v.y - shared.y);
          if (dot > 0.0) return false;
        }
        continue;
      }
      if (segments_touch(a1, a2, b1, b2)) return false;
    }
  }
  return true;
}

Polygon clip_to_box(std::span<const Point> poly, const Box& box) {
  Polygon out(poly.begin(), poly.end());
  auto cx = [](Point p) { return p.x; };
  auto cy = [](Point p) { return p.y; };
  out = clip_half_plane(out, cx, box.left(), -1.0);
  out = clip_half_plane(out, cx, box.right(), 1.0);
  out = clip_half_plane(out, cy, box.top(), -1.0);
  out = clip_half_plane(out, cy, box.bottom(), 1.0);
  return out;
}

double box_polygon_overlap_ratio(const Box& box, std::span<const Point> poly) {
  if (polygon_area(poly) <= kGeomEps) {
    throw ConfigError("floor polygon has zero area");
  }
  const double inter = polygon_area(clip_to_box(poly, box));
  return std::clamp(inter / box.area(), 0.0, 1.0);
}

bool box_polygon_intersects(const Box& box, std::span<const Point> poly, double min_area_ratio) {
  return box_polygon_overlap_ratio(box, poly) > min_area_ratio;
}

bool point_in_polygon(Point pt, std::span<const Point> poly) {
  bool in = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = poly[i];
    const Point b = poly[j];
    if ((a.y > pt.y) != (b.y > pt.y)) {
      const double x_cross = (b.x - a.x) * (pt.y - a.y) / (b.y - a.y) + a.x;
      if (pt.x < x_cross) in = !in;
    }
  }
  return in;
}

double dist_to_segment(Point pt, const Segment& s) {
  const double dx = s.b.x - s.a.x;
  const double dy = s.b.y - s.a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((pt.x - s.a.x) * dx + (pt.y - s.a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(pt.x - (s.a.x + t * dx), pt.y - (s.a.y + t * dy));
}

EdgeSet touches_frame_edge(const Box& b, const FrameDims& f, double margin) {
  EdgeSet edges;
  if (b.left() <= margin) edges.insert(Edge::left);
  if (b.top() <= margin) edges.insert(Edge::top);
  if (f.width - b.right() <= margin) edges.insert(Edge::right);
  if (f.height - b.bottom() <= margin) edges.insert(Edge::bottom);
  return edges;
}

}  // namespace stallwatch
