#pragma once

#include "steiner/rational.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace steiner {

struct Point {
  Rat x;
  Rat y;
  bool operator==(const Point&) const = default;
};

bool lex_less(const Point& a, const Point& b);

struct PointLess {
  bool operator()(const Point& a, const Point& b) const { return lex_less(a, b); }
};

struct Segment {
  Point a;
  Point b;
};

// A plane network: a finite set of closed line segments. Connectivity is
// geometric, two segments in the same component whenever they share a point.
using Forest = std::vector<Segment>;

using PointPair = std::pair<Point, Point>;

Rat dist2(const Point& a, const Point& b);
double rat_sqrt(const Rat& x);
double segment_length(const Segment& s);

// Compensated (Neumaier) accumulator so reported lengths are stable under
// reordering of segments.
struct LengthAccum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v);
  double value() const { return sum + comp; }
};

double forest_length(const Forest& f);

// Sign of the cross product (q - p) x (r - p): 1 left turn, -1 right, 0 collinear.
int orient(const Point& p, const Point& q, const Point& r);
bool on_segment(const Point& p, const Segment& s);
bool segments_intersect(const Segment& s, const Segment& t);

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(size_t n) : parent(n) {
    for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

// Component label per segment.
std::vector<int> forest_components(const Forest& f);

// Every pair endpoint must lie on the network and both ends of a pair in the
// same component.
bool is_feasible(const Forest& f, const std::vector<PointPair>& pairs);

// Kruskal on the complete graph, exact squared-distance comparisons,
// deterministic tie-break by index.
std::vector<std::pair<int, int>> mst_edges(const std::vector<Point>& pts);
Forest mst_forest(const std::vector<Point>& pts);

std::vector<Point> convex_hull(std::vector<Point> pts);
Rat diameter2(const std::vector<Point>& pts);

// Portion of the segment inside the closed axis-aligned rectangle. The two
// returned points may coincide (a single-point touch); empty when disjoint.
std::optional<std::pair<Point, Point>> clip_segment_to_rect(const Segment& s, const Rat& x0,
                                                            const Rat& y0, const Rat& x1,
                                                            const Rat& y1);

}  // namespace steiner
