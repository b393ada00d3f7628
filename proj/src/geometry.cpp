#include "steiner/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace steiner {

bool lex_less(const Point& a, const Point& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

Rat dist2(const Point& a, const Point& b) {
  Rat dx = a.x - b.x;
  Rat dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double rat_sqrt(const Rat& x) { return std::sqrt(to_double(x)); }

double segment_length(const Segment& s) { return rat_sqrt(dist2(s.a, s.b)); }

void LengthAccum::add(double v) {
  double t = sum + v;
  if (std::abs(sum) >= std::abs(v)) {
    comp += (sum - t) + v;
  } else {
    comp += (v - t) + sum;
  }
  sum = t;
}

double forest_length(const Forest& f) {
  LengthAccum acc;
  for (const Segment& s : f) acc.add(segment_length(s));
  return acc.value();
}

int orient(const Point& p, const Point& q, const Point& r) {
  Rat c = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  if (c > 0) return 1;
  if (c < 0) return -1;
  return 0;
}

bool on_segment(const Point& p, const Segment& s) {
  if (orient(s.a, s.b, p) != 0) return false;
  const Rat& lox = s.a.x <= s.b.x ? s.a.x : s.b.x;
  const Rat& hix = s.a.x <= s.b.x ? s.b.x : s.a.x;
  const Rat& loy = s.a.y <= s.b.y ? s.a.y : s.b.y;
  const Rat& hiy = s.a.y <= s.b.y ? s.b.y : s.a.y;
  return lox <= p.x && p.x <= hix && loy <= p.y && p.y <= hiy;
}

bool segments_intersect(const Segment& s, const Segment& t) {
  int d1 = orient(t.a, t.b, s.a);
  int d2 = orient(t.a, t.b, s.b);
  int d3 = orient(s.a, s.b, t.a);
  int d4 = orient(s.a, s.b, t.b);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_segment(s.a, t)) return true;
  if (d2 == 0 && on_segment(s.b, t)) return true;
  if (d3 == 0 && on_segment(t.a, s)) return true;
  if (d4 == 0 && on_segment(t.b, s)) return true;
  return false;
}

namespace {

struct SegBox {
  Rat lox, hix, loy, hiy;
};

SegBox seg_box(const Segment& s) {
  SegBox b;
  b.lox = s.a.x <= s.b.x ? s.a.x : s.b.x;
  b.hix = s.a.x <= s.b.x ? s.b.x : s.a.x;
  b.loy = s.a.y <= s.b.y ? s.a.y : s.b.y;
  b.hiy = s.a.y <= s.b.y ? s.b.y : s.a.y;
  return b;
}

bool boxes_touch(const SegBox& a, const SegBox& b) {
  return a.lox <= b.hix && b.lox <= a.hix && a.loy <= b.hiy && b.loy <= a.hiy;
}

}  // namespace

std::vector<int> forest_components(const Forest& f) {
  size_t m = f.size();
  Dsu dsu(m);
  std::vector<SegBox> boxes;
  boxes.reserve(m);
  for (const Segment& s : f) boxes.push_back(seg_box(s));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i + 1; j < m; ++j) {
      if (dsu.find(static_cast<int>(i)) == dsu.find(static_cast<int>(j))) continue;
      if (!boxes_touch(boxes[i], boxes[j])) continue;
      if (segments_intersect(f[i], f[j])) dsu.unite(static_cast<int>(i), static_cast<int>(j));
    }
  }
  std::vector<int> label(m);
  for (size_t i = 0; i < m; ++i) label[i] = dsu.find(static_cast<int>(i));
  return label;
}

bool is_feasible(const Forest& f, const std::vector<PointPair>& pairs) {
  if (pairs.empty()) return true;
  if (f.empty()) {
    for (const auto& [s, t] : pairs)
      if (!(s == t)) return false;
    return true;
  }
  std::vector<int> label = forest_components(f);
  auto locate = [&](const Point& p) -> int {
    for (size_t i = 0; i < f.size(); ++i)
      if (on_segment(p, f[i])) return label[i];
    return -1;
  };
  for (const auto& [s, t] : pairs) {
    if (s == t) continue;
    int cs = locate(s);
    if (cs < 0) return false;
    int ct = locate(t);
    if (ct < 0 || cs != ct) return false;
  }
  return true;
}

std::vector<std::pair<int, int>> mst_edges(const std::vector<Point>& pts) {
  size_t n = pts.size();
  std::vector<std::pair<int, int>> out;
  if (n < 2) return out;
  struct Edge {
    Rat d2;
    int i, j;
  };
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      edges.push_back({dist2(pts[i], pts[j]), static_cast<int>(i), static_cast<int>(j)});
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.d2 != b.d2) return a.d2 < b.d2;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  Dsu dsu(n);
  for (const Edge& e : edges) {
    if (dsu.unite(e.i, e.j)) {
      out.emplace_back(e.i, e.j);
      if (out.size() + 1 == n) break;
    }
  }
  return out;
}

Forest mst_forest(const std::vector<Point>& pts) {
  Forest f;
  for (auto [i, j] : mst_edges(pts)) {
    if (pts[i] == pts[j]) continue;
    f.push_back({pts[i], pts[j]});
  }
  return f;
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Point> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {
    while (k >= lower && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

Rat diameter2(const std::vector<Point>& pts) {
  std::vector<Point> h = convex_hull(pts);
  Rat best = 0;
  for (size_t i = 0; i < h.size(); ++i)
    for (size_t j = i + 1; j < h.size(); ++j) {
      Rat d = dist2(h[i], h[j]);
      if (d > best) best = d;
    }
  return best;
}

std::optional<std::pair<Point, Point>> clip_segment_to_rect(const Segment& s, const Rat& x0,
                                                            const Rat& y0, const Rat& x1,
                                                            const Rat& y1) {
  Rat dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
  Rat t_lo(0), t_hi(1);
  bool empty = false;
  auto clip = [&](const Rat& p0, const Rat& dp, const Rat& lo, const Rat& hi) {
    if (empty) return;
    if (dp == 0) {
      if (p0 < lo || p0 > hi) empty = true;
      return;
    }
    Rat t0 = (lo - p0) / dp, t1 = (hi - p0) / dp;
    if (t0 > t1) std::swap(t0, t1);
    if (t0 > t_lo) t_lo = t0;
    if (t1 < t_hi) t_hi = t1;
  };
  clip(s.a.x, dx, x0, x1);
  clip(s.a.y, dy, y0, y1);
  if (empty || t_lo > t_hi) return std::nullopt;
  auto at = [&](const Rat& t) {
    return Point{s.a.x + t * dx, s.a.y + t * dy};
  };
  return std::make_pair(at(t_lo), at(t_hi));
}

}  // namespace steiner
