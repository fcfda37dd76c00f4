#ifndef STALLWATCH_GEOMETRY_HPP
#define STALLWATCH_GEOMETRY_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace stallwatch {

// Degeneracy tolerance in pixels (and squared pixels for areas).
inline constexpr double kGeomEps = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

// Axis-aligned box, top-left origin, y grows downward.
struct Box {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double left() const { return x; }
  double top() const { return y; }
  double right() const { return x + w; }
  double bottom() const { return y + h; }
  double area() const { return w * h; }
  Point center() const { return {x + 0.5 * w, y + 0.5 * h}; }
  Point bottom_center() const { return {x + 0.5 * w, y + h}; }
  bool valid() const;

  bool operator==(const Box&) const = default;
};

struct Segment {
  Point a;
  Point b;
  bool operator==(const Segment&) const = default;
};

struct FrameDims {
  double width = 1280.0;
  double height = 720.0;
  bool operator==(const FrameDims&) const = default;
};

// Simple polygon, implicitly closed. Vertex order may be either orientation.
using Polygon = std::vector<Point>;

enum class Edge : std::uint8_t { left = 1, right = 2, top = 4, bottom = 8 };

// Small bit set over the four frame edges.
class EdgeSet {
 public:
  constexpr EdgeSet() = default;
  constexpr EdgeSet(std::initializer_list<Edge> edges) {
    for (Edge e : edges) insert(e);
  }
  constexpr void insert(Edge e) { bits_ |= static_cast<std::uint8_t>(e); }
  constexpr bool contains(Edge e) const {
    return (bits_ & static_cast<std::uint8_t>(e)) != 0;
  }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool intersects(EdgeSet other) const { return (bits_ & other.bits_) != 0; }
  constexpr std::uint8_t bits() const { return bits_; }
  constexpr bool operator==(const EdgeSet&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

double iou(const Box& a, const Box& b);

// Signed shoelace area; positive for counter-clockwise in a y-up frame.
double signed_area(std::span<const Point> poly);
double polygon_area(std::span<const Point> poly);

// True when no two non-adjacent edges touch and no adjacent edges fold back.
bool is_simple_polygon(std::span<const Point> poly);

// Clips a (possibly concave) polygon against the box. The result may contain
// zero-width bridges for concave inputs; its area is exact.
Polygon clip_to_box(std::span<const Point> poly, const Box& box);

// area(box ∩ poly) / area(box). Throws ConfigError for a zero-area polygon.
double box_polygon_overlap_ratio(const Box& box, std::span<const Point> poly);

bool box_polygon_intersects(const Box& box, std::span<const Point> poly,
                            double min_area_ratio = 0.0);

bool point_in_polygon(Point pt, std::span<const Point> poly);

double dist_to_segment(Point pt, const Segment& s);

EdgeSet touches_frame_edge(const Box& b, const FrameDims& f, double margin);

}  // namespace stallwatch

#endif  // STALLWATCH_GEOMETRY_HPP
