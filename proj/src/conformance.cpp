#include "steiner/conformance.hpp"

#include "steiner/oracles.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

namespace steiner {

namespace {

Rat along(const Point& p, bool vertical) { return vertical ? p.y : p.x; }
Rat across(const Point& p, bool vertical) { return vertical ? p.x : p.y; }

Point line_point(bool vertical, const Rat& c, const Rat& offset) {
  return vertical ? Point{c, offset} : Point{offset, c};
}

struct SideRef {
  int sq;
  int side;  // 0 bottom, 1 right, 2 top, 3 left
  bool vertical;
  Rat c;
  Rat lo, hi;
};

SideRef side_of(const Dissection& d, int sq, int side) {
  const Square& s = d.squares[sq];
  Rat x0(s.x0), y0(s.y0), x1(s.x0 + s.side), y1(s.y0 + s.side);
  switch (side) {
    case 0: return {sq, side, false, y0, x0, x1};
    case 1: return {sq, side, true, x1, y0, y1};
    case 2: return {sq, side, false, y1, x0, x1};
    default: return {sq, side, true, x0, y0, y1};
  }
}

std::vector<std::pair<Rat, Rat>> merge_intervals(std::vector<std::pair<Rat, Rat>> items) {
  std::sort(items.begin(), items.end());
  std::vector<std::pair<Rat, Rat>> out;
  for (auto& it : items) {
    if (!out.empty() && it.first <= out.back().second) {
      if (it.second > out.back().second) out.back().second = it.second;
    } else {
      out.push_back(it);
    }
  }
  return out;
}

// Portal offsets along the full-dissection line at coordinate c exist only
// strictly inside the box span; k-th portal sits at base + k * spacing.
struct LinePortals {
  bool any = false;
  Rat base;     // box-side coordinate along the line
  Rat spacing;  // portal spacing for this line's depth
  Rat lo, hi;   // valid open range (base, base + L)
};

LinePortals portals_on_line(const Dissection& d, bool vertical, const Rat& c) {
  LinePortals lp;
  int depth = d.line_depth(vertical, c);
  if (depth <= 0) return lp;
  lp.any = true;
  lp.base = vertical ? Rat(d.cy) : Rat(d.cx);
  lp.spacing = d.portal_spacing(depth);
  lp.lo = lp.base;
  lp.hi = lp.base + d.L;
  return lp;
}

bool has_portal_between(const LinePortals& lp, const Rat& lo, const Rat& hi) {
  if (!lp.any) return false;
  Int k_lo = rat_ceil((lo - lp.base) / lp.spacing);
  Int k_hi = rat_floor((hi - lp.base) / lp.spacing);
  if (k_lo < 1) k_lo = 1;
  Int k_max = rat_floor((lp.hi - lp.base) / lp.spacing) - 1;
  if (k_hi > k_max) k_hi = k_max;
  return k_lo <= k_hi;
}

// Clipped portion of every forest segment inside the closed square, kept as
// (possibly degenerate) point pairs.
std::vector<std::pair<Point, Point>> clip_to_square(const Dissection& d, int sq,
                                                    const Forest& f,
                                                    std::vector<int>* seg_ids = nullptr) {
  Rect r = d.square_rect(sq);
  std::vector<std::pair<Point, Point>> out;
  for (size_t i = 0; i < f.size(); ++i) {
    auto c = clip_segment_to_rect(f[i], r.x_lo, r.y_lo, r.x_hi, r.y_hi);
    if (!c) continue;
    out.push_back(*c);
    if (seg_ids) seg_ids->push_back(static_cast<int>(i));
  }
  return out;
}

bool pieces_touch(const std::pair<Point, Point>& a, const std::pair<Point, Point>& b) {
  bool a_pt = a.first == a.second;
  bool b_pt = b.first == b.second;
  if (a_pt && b_pt) return a.first == b.first;
  if (a_pt) return on_segment(a.first, {b.first, b.second});
  if (b_pt) return on_segment(b.first, {a.first, a.second});
  return segments_intersect({a.first, a.second}, {b.first, b.second});
}

bool on_rect_boundary(const Point& p, const Rect& r) {
  return p.x == r.x_lo || p.x == r.x_hi || p.y == r.y_lo || p.y == r.y_hi;
}

// Cells of the square met by the segment's interior (positive length in the
// open cell). Equals the essential footprint except for segments running
// along a cell grid line, which have interior presence nowhere.
std::vector<int> interior_footprint(const Dissection& d, int sq, const Segment& s) {
  const Square& q = d.squares[sq];
  Rat cs = d.cell_side(sq);
  if (s.a.x == s.b.x) {
    Rat u = (s.a.x - q.x0) / cs;
    if (rat_den(u) == 1) return {};
  }
  if (s.a.y == s.b.y) {
    Rat u = (s.a.y - q.y0) / cs;
    if (rat_den(u) == 1) return {};
  }
  return segment_footprint(d, sq, s);
}

struct SquareCheck {
  SquareViolations v;
  long long side_overflows = 0;
};

SquareCheck check_square(const Dissection& d, const Forest& f,
                         const std::vector<int>& comp_of, int sq) {
  SquareCheck res;
  res.v.square = sq;
  const Square& s = d.squares[sq];
  long long B = d.params.B;
  long long budget = 4 * (d.params.D + 1);
  Rect rect = d.square_rect(sq);

  // Boundary and portal properties over pieces of F on the four sides,
  // merged where they share a corner.
  struct Item {
    int side;
    Rat lo, hi;
  };
  std::vector<Item> items;
  for (int k = 0; k < 4; ++k) {
    SideRef sr = side_of(d, sq, k);
    auto comps = line_components(f, sr.vertical, sr.c, sr.lo, sr.hi);
    long long non_corner = 0;
    for (auto& [lo, hi] : comps) {
      items.push_back({k, lo, hi});
      if (!(lo <= sr.lo && sr.lo <= hi) && !(lo <= sr.hi && sr.hi <= hi)) non_corner += 1;
    }
    if (non_corner > d.params.D) res.side_overflows += 1;
  }
  Point corners[4] = {{rect.x_lo, rect.y_lo},
                      {rect.x_hi, rect.y_lo},
                      {rect.x_hi, rect.y_hi},
                      {rect.x_lo, rect.y_hi}};
  auto item_contains = [&](const Item& it, const Point& p) {
    SideRef sr = side_of(d, sq, it.side);
    if (across(p, sr.vertical) != sr.c) return false;
    Rat o = along(p, sr.vertical);
    return it.lo <= o && o <= it.hi;
  };
  Dsu uf(items.size());
  for (const Point& c : corners) {
    int first = -1;
    for (size_t i = 0; i < items.size(); ++i) {
      if (!item_contains(items[i], c)) continue;
      if (first < 0) {
        first = static_cast<int>(i);
      } else {
        uf.unite(first, static_cast<int>(i));
      }
    }
  }
  std::map<int, std::vector<int>> pieces;
  for (size_t i = 0; i < items.size(); ++i) {
    pieces[uf.find(static_cast<int>(i))].push_back(static_cast<int>(i));
  }
  long long n_pieces = static_cast<long long>(pieces.size());
  if (n_pieces > budget) res.v.boundary_excess = n_pieces - budget;
  for (auto& [root, members] : pieces) {
    bool has_portal = false;
    for (int i : members) {
      SideRef sr = side_of(d, sq, items[i].side);
      LinePortals lp = portals_on_line(d, sr.vertical, sr.c);
      if (has_portal_between(lp, items[i].lo, items[i].hi)) {
        has_portal = true;
        break;
      }
      for (const Point& c : corners) {
        if (item_contains(items[i], c) && d.is_portal_of(sq, c)) {
          has_portal = true;
          break;
        }
      }
      if (has_portal) break;
    }
    if (!has_portal) res.v.portal_free_components += 1;
  }

  // Cell property: at most one global component of F may touch both the
  // interior of a cell and the boundary of the square.
  int n_comp = 0;
  for (int c : comp_of) n_comp = std::max(n_comp, c + 1);
  std::vector<char> touches(n_comp, 0);
  for (size_t i = 0; i < f.size(); ++i) {
    if (touches[comp_of[i]]) continue;
    auto c = clip_segment_to_rect(f[i], rect.x_lo, rect.y_lo, rect.x_hi, rect.y_hi);
    if (!c) continue;
    if (on_rect_boundary(c->first, rect) || on_rect_boundary(c->second, rect)) {
      touches[comp_of[i]] = 1;
    }
  }
  std::vector<int> claim(static_cast<size_t>(B * B), -1);
  std::set<int> unhappy;
  for (size_t i = 0; i < f.size(); ++i) {
    int k = comp_of[i];
    if (!touches[k]) continue;
    for (int cell : interior_footprint(d, sq, f[i])) {
      if (claim[cell] < 0) {
        claim[cell] = k;
      } else if (claim[cell] != k) {
        unhappy.insert(cell);
      }
    }
  }
  res.v.unhappy_cells.assign(unhappy.begin(), unhappy.end());

  // Terminal property on pieces of F inside the square.
  std::vector<int> inside;
  for (size_t t = 0; t < d.terminals.size(); ++t) {
    const Point& p = d.terminals[t];
    if (rect.x_lo <= p.x && p.x <= rect.x_hi && rect.y_lo <= p.y && p.y <= rect.y_hi) {
      inside.push_back(static_cast<int>(t));
    }
  }
  if (!inside.empty()) {
    auto clips = clip_to_square(d, sq, f);
    Dsu cu(clips.size());
    for (size_t i = 0; i < clips.size(); ++i) {
      for (size_t j = i + 1; j < clips.size(); ++j) {
        if (pieces_touch(clips[i], clips[j])) cu.unite(static_cast<int>(i), static_cast<int>(j));
      }
    }
    std::vector<char> class_touches(clips.size() ? clips.size() : 1, 0);
    for (size_t i = 0; i < clips.size(); ++i) {
      if (on_rect_boundary(clips[i].first, rect) || on_rect_boundary(clips[i].second, rect)) {
        class_touches[cu.find(static_cast<int>(i))] = 1;
      }
    }
    auto piece_class = [&](const Point& p) {
      for (size_t i = 0; i < clips.size(); ++i) {
        bool pt = clips[i].first == clips[i].second;
        bool hit = pt ? clips[i].first == p : on_segment(p, {clips[i].first, clips[i].second});
        if (hit) return cu.find(static_cast<int>(i));
      }
      return -1;
    };
    std::set<int> bad;
    for (int t : inside) {
      int ct = piece_class(d.terminals[t]);
      for (auto [a, b] : d.pair_ids) {
        int mate = -1;
        if (a == t) mate = b;
        if (b == t) mate = a;
        if (mate < 0) continue;
        if (ct >= 0 && piece_class(d.terminals[mate]) == ct) continue;
        if (ct >= 0 && class_touches[ct]) continue;
        bad.insert(t);
      }
    }
    res.v.unsatisfied_terminals.assign(bad.begin(), bad.end());
  }
  (void)s;
  return res;
}

struct TreeLine {
  bool vertical;
  Rat c;
  int depth;
};

std::vector<TreeLine> tree_lines(const Dissection& d) {
  std::set<std::pair<bool, Rat>> seen;
  std::vector<TreeLine> lines;
  for (size_t sq = 0; sq < d.squares.size(); ++sq) {
    for (int k = 0; k < 4; ++k) {
      SideRef sr = side_of(d, static_cast<int>(sq), k);
      if (seen.insert({sr.vertical, sr.c}).second) {
        lines.push_back({sr.vertical, sr.c, d.line_depth(sr.vertical, sr.c)});
      }
    }
  }
  return lines;
}

}  // namespace

std::vector<std::pair<Rat, Rat>> line_components(const Forest& f, bool vertical, const Rat& c,
                                                 const Rat& lo, const Rat& hi) {
  std::vector<std::pair<Rat, Rat>> items;
  for (const Segment& s : f) {
    Rat ca = across(s.a, vertical), cb = across(s.b, vertical);
    Rat oa = along(s.a, vertical), ob = along(s.b, vertical);
    if (ca == c && cb == c) {
      Rat a = std::min(oa, ob), b = std::max(oa, ob);
      if (a < lo) a = lo;
      if (b > hi) b = hi;
      if (a <= b) items.push_back({a, b});
    } else if (ca == c) {
      if (lo <= oa && oa <= hi) items.push_back({oa, oa});
    } else if (cb == c) {
      if (lo <= ob && ob <= hi) items.push_back({ob, ob});
    } else if ((ca < c) != (cb < c)) {
      Rat t = (c - ca) / (cb - ca);
      Rat o = oa + t * (ob - oa);
      if (lo <= o && o <= hi) items.push_back({o, o});
    }
  }
  return merge_intervals(std::move(items));
}

std::string ConformanceReport::to_text() const {
  std::ostringstream os;
  if (empty()) {
    os << "conformance ok";
    if (side_overflows > 0) {
      os << " (side components above D on " << side_overflows << " sides)";
    }
    os << "\n";
    return os.str();
  }
  for (const SquareViolations& v : squares) {
    os << "square " << v.square << ":";
    if (v.boundary_excess > 0) os << " boundary_excess=" << v.boundary_excess;
    if (v.portal_free_components > 0) os << " portal_free=" << v.portal_free_components;
    if (!v.unhappy_cells.empty()) {
      os << " unhappy_cells=";
      for (size_t i = 0; i < v.unhappy_cells.size(); ++i) {
        os << (i ? "," : "") << v.unhappy_cells[i];
      }
    }
    if (!v.unsatisfied_terminals.empty()) {
      os << " unsatisfied_terminals=";
      for (size_t i = 0; i < v.unsatisfied_terminals.size(); ++i) {
        os << (i ? "," : "") << v.unsatisfied_terminals[i];
      }
    }
    os << "\n";
  }
  if (side_overflows > 0) {
    os << "side components above D on " << side_overflows << " sides\n";
  }
  return os.str();
}

ConformanceReport check(const Dissection& d, const Forest& f, int threads) {
  ConformanceReport rep;
  int n = static_cast<int>(d.squares.size());
  std::vector<SquareCheck> results(n);
  std::vector<int> comp_of = forest_components(f);
  auto work = [&](int from, int to) {
    for (int sq = from; sq < to; ++sq) results[sq] = check_square(d, f, comp_of, sq);
  };
  if (threads <= 1 || n < 4) {
    work(0, n);
  } else {
    int n_threads = std::min(threads, n);
    std::vector<std::thread> pool;
    int chunk = (n + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      int from = t * chunk, to = std::min(n, from + chunk);
      if (from < to) pool.emplace_back(work, from, to);
    }
    for (auto& th : pool) th.join();
  }
  for (int sq = 0; sq < n; ++sq) {
    rep.side_overflows += results[sq].side_overflows;
    if (!results[sq].v.empty()) rep.squares.push_back(std::move(results[sq].v));
  }
  return rep;
}

long long side_noncorner_overflows(const Dissection& d, const Forest& f) {
  long long total = 0;
  for (size_t sq = 0; sq < d.squares.size(); ++sq) {
    for (int k = 0; k < 4; ++k) {
      SideRef sr = side_of(d, static_cast<int>(sq), k);
      auto comps = line_components(f, sr.vertical, sr.c, sr.lo, sr.hi);
      long long non_corner = 0;
      for (auto& [lo, hi] : comps) {
        if (!(lo <= sr.lo && sr.lo <= hi) && !(lo <= sr.hi && sr.hi <= hi)) non_corner += 1;
      }
      if (non_corner > d.params.D) total += 1;
    }
  }
  return total;
}

long long portal_free_line_components(const Dissection& d, const Forest& f) {
  long long bad = 0;
  for (const TreeLine& ln : tree_lines(d)) {
    if (ln.depth <= 0) continue;
    LinePortals lp = portals_on_line(d, ln.vertical, ln.c);
    Rat lo = ln.vertical ? Rat(d.cy) : Rat(d.cx);
    for (auto& [a, b] : line_components(f, ln.vertical, ln.c, lo, lo + d.L)) {
      if (!has_portal_between(lp, a, b)) bad += 1;
    }
  }
  return bad;
}

long long unhappy_cell_count(const Dissection& d, const Forest& f) {
  std::vector<int> comp_of = forest_components(f);
  long long total = 0;
  for (size_t sq = 0; sq < d.squares.size(); ++sq) {
    SquareCheck sc = check_square(d, f, comp_of, static_cast<int>(sq));
    total += static_cast<long long>(sc.v.unhappy_cells.size());
  }
  return total;
}

Forest satisfy_boundary(const Dissection& d, const Forest& f) {
  Forest out = canonicalize_forest(f);
  std::vector<int> order(d.squares.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return d.squares[a].depth > d.squares[b].depth;
  });
  for (int sq : order) {
    for (int k = 0; k < 4; ++k) {
      SideRef sr = side_of(d, sq, k);
      auto comps = line_components(out, sr.vertical, sr.c, sr.lo, sr.hi);
      std::vector<std::pair<Rat, Rat>> nc;
      for (auto& [lo, hi] : comps) {
        if (!(lo <= sr.lo && sr.lo <= hi) && !(lo <= sr.hi && sr.hi <= hi)) {
          nc.push_back({lo, hi});
        }
      }
      if (static_cast<long long>(nc.size()) <= d.params.D) continue;
      Rat lo = nc.front().first, hi = nc.front().second;
      for (auto& [a, b] : nc) {
        if (a < lo) lo = a;
        if (b > hi) hi = b;
      }
      out.push_back({line_point(sr.vertical, sr.c, lo), line_point(sr.vertical, sr.c, hi)});
      out = canonicalize_forest(out);
    }
  }
  return out;
}

Forest satisfy_portal(const Dissection& d, const Forest& f) {
  Forest out = canonicalize_forest(f);
  std::vector<TreeLine> lines = tree_lines(d);
  std::sort(lines.begin(), lines.end(), [](const TreeLine& a, const TreeLine& b) {
    if (a.depth != b.depth) return a.depth > b.depth;
    if (a.vertical != b.vertical) return a.vertical;
    return a.c < b.c;
  });
  for (const TreeLine& ln : lines) {
    if (ln.depth <= 0) continue;
    LinePortals lp = portals_on_line(d, ln.vertical, ln.c);
    Rat lo = ln.vertical ? Rat(d.cy) : Rat(d.cx);
    Rat hi = lo + d.L;
    bool added = false;
    for (auto& [a, b] : line_components(out, ln.vertical, ln.c, lo, hi)) {
      if (has_portal_between(lp, a, b)) continue;
      Int k_max = rat_floor((lp.hi - lp.base) / lp.spacing) - 1;
      Int k_dn = rat_floor((a - lp.base) / lp.spacing);
      Int k_up = rat_ceil((b - lp.base) / lp.spacing);
      bool dn_ok = k_dn >= 1 && k_dn <= k_max;
      bool up_ok = k_up >= 1 && k_up <= k_max;
      if (!dn_ok && !up_ok) throw InvariantError("line with no portal to extend to");
      Rat p_dn = lp.base + Rat(k_dn) * lp.spacing;
      Rat p_up = lp.base + Rat(k_up) * lp.spacing;
      bool take_dn;
      if (dn_ok && up_ok) {
        take_dn = (a - p_dn) <= (p_up - b);
      } else {
        take_dn = dn_ok;
      }
      if (take_dn) {
        out.push_back({line_point(ln.vertical, ln.c, p_dn), line_point(ln.vertical, ln.c, a)});
      } else {
        out.push_back({line_point(ln.vertical, ln.c, b), line_point(ln.vertical, ln.c, p_up)});
      }
      added = true;
    }
    if (added) out = canonicalize_forest(out);
  }
  return out;
}

Forest satisfy_cell(const Dissection& d, const Forest& f) {
  Forest out = canonicalize_forest(f);
  long long B = d.params.B;
  std::set<std::pair<int, int>> augmented;
  for (;;) {
    std::vector<int> comp_of = forest_components(out);
    int found_sq = -1, found_cell = -1;
    for (size_t sq = 0; sq < d.squares.size() && found_sq < 0; ++sq) {
      SquareCheck sc = check_square(d, out, comp_of, static_cast<int>(sq));
      if (!sc.v.unhappy_cells.empty()) {
        found_sq = static_cast<int>(sq);
        found_cell = sc.v.unhappy_cells.front();
      }
    }
    if (found_sq < 0) return out;
    if (!augmented.insert({found_sq, found_cell}).second) {
      throw InvariantError("cell required a second augmentation");
    }
    int row = static_cast<int>(found_cell / B);
    int col = static_cast<int>(found_cell % B);
    Rect cr = d.cell_rect(found_sq, row, col);
    struct CellSide {
      bool vertical;
      Rat c, lo, hi;
      int depth;
      int lo_adj, hi_adj;  // neighbor side sharing the lo / hi corner
    };
    CellSide sides[4] = {
        {false, cr.y_lo, cr.x_lo, cr.x_hi, d.line_depth(false, cr.y_lo), 3, 1},
        {true, cr.x_hi, cr.y_lo, cr.y_hi, d.line_depth(true, cr.x_hi), 0, 2},
        {false, cr.y_hi, cr.x_lo, cr.x_hi, d.line_depth(false, cr.y_hi), 3, 1},
        {true, cr.x_lo, cr.y_lo, cr.y_hi, d.line_depth(true, cr.x_lo), 0, 2},
    };
    int cell_depth = 0;
    for (const CellSide& s : sides) cell_depth = std::max(cell_depth, s.depth);
    std::vector<std::pair<Rat, Rat>> comps[4];
    bool included[4];
    for (int k = 0; k < 4; ++k) {
      comps[k] = line_components(out, sides[k].vertical, sides[k].c, sides[k].lo, sides[k].hi);
      included[k] = sides[k].depth == cell_depth || !comps[k].empty();
    }
    // The augmentation is open at its ends: an arc end at a corner whose
    // other side is excluded retreats from the corner, but never past a
    // point of the forest. A forest-free end retreats to the previous
    // portal of its own line, whose crossings with perpendicular lines
    // are portals of those lines.
    Rat trim = d.cell_side(found_sq) / std::max<long long>(d.params.A, 4);
    for (int k = 0; k < 4; ++k) {
      if (!included[k]) continue;
      const CellSide& s = sides[k];
      Rat a = s.lo, b = s.hi;
      if (!included[s.lo_adj]) {
        a = s.lo + trim;
        if (!comps[k].empty() && comps[k].front().first < a) a = comps[k].front().first;
      }
      if (!included[s.hi_adj]) {
        b = s.hi - trim;
        if (!comps[k].empty() && comps[k].back().second > b) b = comps[k].back().second;
      }
      out.push_back({line_point(s.vertical, s.c, a), line_point(s.vertical, s.c, b)});
    }
    out = canonicalize_forest(out);
  }
}

Forest transform(const Dissection& d, const Forest& f) {
  return satisfy_cell(d, satisfy_portal(d, satisfy_boundary(d, f)));
}

Forest canonicalize_forest(const Forest& f) {
  // Group segments by supporting line, merge overlapping or touching
  // collinear pieces along it.
  struct LineKey {
    Rat a, b, c;  // ax + by = c with a canonical normalization
    bool operator<(const LineKey& o) const {
      if (a != o.a) return a < o.a;
      if (b != o.b) return b < o.b;
      return c < o.c;
    }
  };
  std::map<LineKey, std::vector<const Segment*>> groups;
  for (const Segment& s : f) {
    Rat dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
    if (dx == 0 && dy == 0) continue;
    Rat a = dy, b = -dx;
    // Normalize: first nonzero of (a, b) positive, then scale so that the
    // larger magnitude is 1.
    if (a < 0 || (a == 0 && b < 0)) {
      a = -a;
      b = -b;
    }
    Rat scale = (abs(a) >= abs(b)) ? abs(a) : abs(b);
    a /= scale;
    b /= scale;
    Rat c = a * s.a.x + b * s.a.y;
    groups[{a, b, c}].push_back(&s);
  }
  Forest out;
  for (auto& [key, segs] : groups) {
    // Parameterize along the line by the dominant coordinate.
    bool by_x = key.a == 0 || (key.b != 0 && abs(key.b) >= abs(key.a));
    std::vector<std::pair<Rat, Rat>> spans;
    std::vector<std::pair<Point, Point>> endpoints;
    for (const Segment* s : segs) {
      Rat ta = by_x ? s->a.x : s->a.y;
      Rat tb = by_x ? s->b.x : s->b.y;
      if (ta > tb) std::swap(ta, tb);
      spans.push_back({ta, tb});
    }
    auto merged = merge_intervals(std::move(spans));
    for (auto& [lo, hi] : merged) {
      if (lo == hi) continue;
      auto at = [&](const Rat& t) {
        const Segment* s = segs[0];
        Rat dx = s->b.x - s->a.x, dy = s->b.y - s->a.y;
        if (by_x) {
          return Point{t, s->a.y + (t - s->a.x) * dy / dx};
        }
        return Point{s->a.x + (t - s->a.y) * dx / dy, t};
      };
      out.push_back({at(lo), at(hi)});
    }
  }
  std::sort(out.begin(), out.end(), [](const Segment& s, const Segment& t) {
    if (!(s.a == t.a)) return lex_less(s.a, t.a);
    return lex_less(s.b, t.b);
  });
  return out;
}

double added_length(const Forest& before, const Forest& after) {
  return forest_length(after) - forest_length(before);
}

}  // namespace steiner
