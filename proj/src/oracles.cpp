#include "steiner/oracles.hpp"

#include "steiner/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace steiner {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct DwChoice {
  signed char type = 0;  // 0 none, 1 split, 2 edge
  int aux = -1;
};

void collect_tree(int mask, int v, const std::vector<std::vector<DwChoice>>& choice,
                  std::vector<std::pair<int, int>>& edges) {
  const DwChoice& c = choice[mask][v];
  if (c.type == 0) return;
  if (c.type == 1) {
    collect_tree(c.aux, v, choice, edges);
    collect_tree(mask ^ c.aux, v, choice, edges);
    return;
  }
  edges.push_back({c.aux, v});
  collect_tree(mask, c.aux, choice, edges);
}

}  // namespace

SteinerTree dreyfus_wagner(const std::vector<std::vector<double>>& w,
                           const std::vector<int>& required_in) {
  std::vector<int> required = required_in;
  std::sort(required.begin(), required.end());
  required.erase(std::unique(required.begin(), required.end()), required.end());
  int n = static_cast<int>(w.size());
  int k = static_cast<int>(required.size());
  if (k > 10) throw SizeError("steiner tree oracle limited to 10 required points");
  SteinerTree out;
  if (k <= 1) return out;

  int full = (1 << k) - 1;
  std::vector<std::vector<double>> dp(full + 1, std::vector<double>(n, kInf));
  std::vector<std::vector<DwChoice>> choice(full + 1, std::vector<DwChoice>(n));
  for (int i = 0; i < k; ++i) dp[1 << i][required[i]] = 0;

  std::vector<char> done(n);
  for (int mask = 1; mask <= full; ++mask) {
    auto& row = dp[mask];
    int low = mask & -mask;
    for (int sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
      if (!(sub & low)) continue;
      const auto& a = dp[sub];
      const auto& b = dp[mask ^ sub];
      for (int v = 0; v < n; ++v) {
        double cand = a[v] + b[v];
        if (cand < row[v]) {
          row[v] = cand;
          choice[mask][v] = {1, sub};
        }
      }
    }
    std::fill(done.begin(), done.end(), 0);
    for (int it = 0; it < n; ++it) {
      int u = -1;
      for (int v = 0; v < n; ++v) {
        if (!done[v] && (u < 0 || row[v] < row[u])) u = v;
      }
      if (u < 0 || row[u] == kInf) break;
      done[u] = 1;
      for (int v = 0; v < n; ++v) {
        if (done[v] || w[u][v] == kInf) continue;
        double cand = row[u] + w[u][v];
        if (cand < row[v]) {
          row[v] = cand;
          choice[mask][v] = {2, u};
        }
      }
    }
  }

  int root = required[0];
  out.length = dp[full][root];
  if (out.length < kInf) collect_tree(full, root, choice, out.edges);
  return out;
}

SteinerTree dreyfus_wagner_euclidean(const std::vector<Point>& pts,
                                     const std::vector<int>& required) {
  int n = static_cast<int>(pts.size());
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double dij = rat_sqrt(dist2(pts[i], pts[j]));
      w[i][j] = w[j][i] = dij;
    }
  }
  return dreyfus_wagner(w, required);
}

OptResult exact_opt(const Instance& inst, const std::vector<Point>& extra_candidates) {
  OptResult out;
  if (inst.n_pairs() == 0) return out;
  if (inst.n_terminals() > 6) throw SizeError("exact forest oracle limited to 6 terminals");

  std::vector<Point> pts = inst.terminals;
  std::set<Point, PointLess> seen(pts.begin(), pts.end());
  auto add = [&](const Point& p) {
    if (seen.insert(p).second) pts.push_back(p);
  };
  for (const auto& p : extra_candidates) add(p);
  Rat min_x = pts[0].x, max_x = pts[0].x, min_y = pts[0].y, max_y = pts[0].y;
  for (const auto& t : inst.terminals) {
    min_x = std::min(min_x, t.x);
    max_x = std::max(max_x, t.x);
    min_y = std::min(min_y, t.y);
    max_y = std::max(max_y, t.y);
  }
  Int gx_lo = rat_floor(min_x) - 1, gx_hi = rat_ceil(max_x) + 1;
  Int gy_lo = rat_floor(min_y) - 1, gy_hi = rat_ceil(max_y) + 1;
  Int width = gx_hi - gx_lo, height = gy_hi - gy_lo;
  if (width * height > 400) throw SizeError("exact forest oracle candidate grid too large");
  for (Int gx = gx_lo; gx < gx_hi; ++gx) {
    for (Int gy = gy_lo; gy < gy_hi; ++gy) {
      add(Point{Rat(2 * gx + 1, 2), Rat(2 * gy + 1, 2)});
    }
  }
  if (pts.size() > 400) throw SizeError("exact forest oracle candidate set too large");

  int n = static_cast<int>(pts.size());
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double dij = rat_sqrt(dist2(pts[i], pts[j]));
      w[i][j] = w[j][i] = dij;
    }
  }
  std::map<Point, int, PointLess> id_of;
  for (int i = 0; i < n; ++i) id_of.emplace(pts[i], i);

  auto components = requirement_components(inst);
  int m = static_cast<int>(components.size());
  std::vector<int> group(m, 0);
  double best = kInf;
  std::vector<std::pair<int, int>> best_edges;
  auto eval = [&]() {
    int groups = 0;
    for (int g : group) groups = std::max(groups, g + 1);
    double total = 0;
    std::vector<std::pair<int, int>> edges;
    for (int g = 0; g < groups; ++g) {
      std::vector<int> required;
      for (int c = 0; c < m; ++c) {
        if (group[c] != g) continue;
        for (int t : components[c]) required.push_back(id_of.at(inst.terminals[t]));
      }
      SteinerTree tree = dreyfus_wagner(w, required);
      if (tree.length == kInf) return;
      total += tree.length;
      edges.insert(edges.end(), tree.edges.begin(), tree.edges.end());
      if (total >= best) return;
    }
    best = total;
    best_edges = std::move(edges);
  };
  auto rec = [&](auto&& self, int idx, int used) -> void {
    if (idx == m) {
      eval();
      return;
    }
    for (int g = 0; g <= used; ++g) {
      group[idx] = g;
      self(self, idx + 1, std::max(used, g + 1));
    }
  };
  rec(rec, 0, 0);

  if (best == kInf) throw InvariantError("exact forest oracle found no connection");
  out.length = best;
  for (auto [i, j] : best_edges) {
    if (!(pts[i] == pts[j])) out.forest.push_back({pts[i], pts[j]});
  }
  return out;
}

Forest mst_baseline(const Instance& inst) {
  Forest out;
  for (const auto& comp : requirement_components(inst)) {
    std::vector<Point> pts;
    pts.reserve(comp.size());
    for (int t : comp) pts.push_back(inst.terminals[t]);
    Forest f = mst_forest(pts);
    out.insert(out.end(), f.begin(), f.end());
  }
  if (!out.empty()) {
    double bound = inst.n_terminals() * rat_sqrt(dist_q2(inst));
    if (forest_length(out) >= bound * (1 + 1e-9) + 1e-12) {
      throw InvariantError("mst baseline exceeded n * dist_q");
    }
  }
  return out;
}

namespace {

// Fraction n/d with d > 0, compared exactly via 128-bit cross products.
struct Frac {
  long long n;
  long long d;
};

bool frac_less(const Frac& a, const Frac& b) {
  return static_cast<__int128>(a.n) * b.d < static_cast<__int128>(b.n) * a.d;
}

// Integer slab clip in cell units scaled by den: the cell [c, c+1] spans
// [c*den, (c+1)*den]. Returns whether the clipped parameter interval has
// positive length.
bool clipped_positive(long long a0x, long long a1x, long long a0y, long long a1y, long long den,
                      long long col, long long row) {
  Frac t_lo{0, 1}, t_hi{1, 1};
  auto slab = [&](long long a0, long long a1, long long lo, long long hi) {
    long long du = a1 - a0;
    if (du == 0) return a0 >= lo && a0 <= hi;
    Frac t0{lo - a0, du}, t1{hi - a0, du};
    if (du < 0) {
      t0 = {a0 - lo, -du};
      t1 = {a0 - hi, -du};
      std::swap(t0, t1);
    }
    if (frac_less(t_lo, t0)) t_lo = t0;
    if (frac_less(t1, t_hi)) t_hi = t1;
    return true;
  };
  if (!slab(a0x, a1x, col * den, (col + 1) * den)) return false;
  if (!slab(a0y, a1y, row * den, (row + 1) * den)) return false;
  return frac_less(t_lo, t_hi);
}

std::vector<int> footprint_rat_fallback(const Dissection& d, int sq, const Segment& seg) {
  std::vector<int> out;
  long long B = d.params.B;
  Rat dx = seg.b.x - seg.a.x;
  Rat dy = seg.b.y - seg.a.y;
  for (long long r = 0; r < B; ++r) {
    for (long long c = 0; c < B; ++c) {
      Rect rect = d.cell_rect(sq, static_cast<int>(r), static_cast<int>(c));
      Rat t_lo = 0, t_hi = 1;
      bool empty = false;
      auto slab = [&](const Rat& a0, const Rat& delta, const Rat& lo, const Rat& hi) {
        if (empty) return;
        if (delta == 0) {
          if (a0 < lo || a0 > hi) empty = true;
          return;
        }
        Rat t0 = (lo - a0) / delta;
        Rat t1 = (hi - a0) / delta;
        if (t0 > t1) std::swap(t0, t1);
        if (t0 > t_lo) t_lo = t0;
        if (t1 < t_hi) t_hi = t1;
        if (t_lo >= t_hi) empty = true;
      };
      slab(seg.a.x, dx, rect.x_lo, rect.x_hi);
      slab(seg.a.y, dy, rect.y_lo, rect.y_hi);
      if (!empty && t_lo < t_hi) out.push_back(static_cast<int>(r * B + c));
    }
  }
  return out;
}

}  // namespace

std::vector<int> segment_footprint(const Dissection& d, int sq, const Segment& seg) {
  std::vector<int> out;
  if (seg.a == seg.b) return out;
  long long B = d.params.B;
  const Square& s = d.squares[sq];
  Rat cs = d.cell_side(sq);
  // Segment endpoints in cell units, scaled to a common integer denominator.
  Rat u[4] = {(seg.a.x - Rat(s.x0)) / cs, (seg.a.y - Rat(s.y0)) / cs,
              (seg.b.x - Rat(s.x0)) / cs, (seg.b.y - Rat(s.y0)) / cs};
  Int den = 1;
  for (const Rat& v : u) den = boost::multiprecision::lcm(den, rat_den(v));
  if (den <= (Int(1) << 40)) {
    long long dl = static_cast<long long>(den);
    long long sc[4];
    bool ok = true;
    for (int i = 0; i < 4; ++i) {
      Int scaled = rat_num(u[i]) * (den / rat_den(u[i]));
      if (scaled > (Int(1) << 61) || scaled < -(Int(1) << 61)) {
        ok = false;
        break;
      }
      sc[i] = static_cast<long long>(scaled);
    }
    if (ok) {
      long long c_lo = std::max(0LL, std::min(sc[0], sc[2]) / dl - 1);
      long long c_hi = std::min(B - 1, std::max(sc[0], sc[2]) / dl + 1);
      long long r_lo = std::max(0LL, std::min(sc[1], sc[3]) / dl - 1);
      long long r_hi = std::min(B - 1, std::max(sc[1], sc[3]) / dl + 1);
      for (long long r = r_lo; r <= r_hi; ++r) {
        for (long long c = c_lo; c <= c_hi; ++c) {
          if (clipped_positive(sc[0], sc[2], sc[1], sc[3], dl, c, r)) {
            out.push_back(static_cast<int>(r * B + c));
          }
        }
      }
      return out;
    }
  }
  return footprint_rat_fallback(d, sq, seg);
}

std::vector<int> forest_footprint(const Dissection& d, int sq, const Forest& f) {
  std::vector<int> out;
  for (const auto& seg : f) {
    auto fp = segment_footprint(d, sq, seg);
    out.insert(out.end(), fp.begin(), fp.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::vector<Rat> subsample(std::vector<Rat> values, int keep) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  int n = static_cast<int>(values.size());
  if (n <= keep || keep <= 0) return values;
  std::vector<Rat> out;
  out.reserve(keep);
  for (int j = 0; j < keep; ++j) {
    int idx = keep == 1 ? 0 : static_cast<int>((static_cast<long long>(j) * (n - 1)) / (keep - 1));
    out.push_back(values[idx]);
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::optional<Connector> leaf_connector(const Dissection& d, int sq,
                                        const std::vector<Point>& required,
                                        const std::vector<int>& allowed_cells, int grid_per_axis,
                                        int max_candidates) {
  std::set<int> allowed(allowed_cells.begin(), allowed_cells.end());
  std::vector<Point> pts;
  std::set<Point, PointLess> seen;
  std::vector<int> required_ids;
  for (const auto& p : required) {
    auto [it, fresh] = seen.insert(p);
    (void)it;
    if (fresh) {
      required_ids.push_back(static_cast<int>(pts.size()));
      pts.push_back(p);
    } else {
      required_ids.push_back(
          static_cast<int>(std::find(pts.begin(), pts.end(), p) - pts.begin()));
    }
  }
  std::vector<Point> grid;
  std::set<Point, PointLess> grid_seen;
  for (int cell : allowed_cells) {
    long long B = d.params.B;
    Rect rect = d.cell_rect(sq, static_cast<int>(cell / B), static_cast<int>(cell % B));
    std::vector<Rat> xs, ys;
    for (Int i = rat_ceil(rect.x_lo - Rat(1, 2)); Rat(i) + Rat(1, 2) <= rect.x_hi; ++i) {
      xs.push_back(Rat(i) + Rat(1, 2));
    }
    for (Int i = rat_ceil(rect.y_lo - Rat(1, 2)); Rat(i) + Rat(1, 2) <= rect.y_hi; ++i) {
      ys.push_back(Rat(i) + Rat(1, 2));
    }
    xs = subsample(std::move(xs), grid_per_axis);
    ys = subsample(std::move(ys), grid_per_axis);
    for (const Rat& x : xs) {
      for (const Rat& y : ys) {
        Point p{x, y};
        if (!seen.count(p) && grid_seen.insert(p).second) grid.push_back(p);
      }
    }
  }
  if (max_candidates > 0 && static_cast<int>(grid.size()) > max_candidates) {
    std::sort(grid.begin(), grid.end(), lex_less);
    std::vector<Point> kept;
    kept.reserve(max_candidates);
    int n = static_cast<int>(grid.size());
    for (int j = 0; j < max_candidates; ++j) {
      int idx = max_candidates == 1
                    ? 0
                    : static_cast<int>((static_cast<long long>(j) * (n - 1)) / (max_candidates - 1));
      kept.push_back(grid[idx]);
    }
    grid = std::move(kept);
  }
  pts.insert(pts.end(), grid.begin(), grid.end());

  const Square& s = d.squares[sq];
  Rat x0(s.x0), y0(s.y0), x1(s.x0 + s.side), y1(s.y0 + s.side);
  int n = static_cast<int>(pts.size());
  std::vector<std::vector<double>> w(n, std::vector<double>(n, kInf));
  std::map<std::pair<int, int>, std::vector<int>> footprints;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Point& a = pts[i];
      const Point& b = pts[j];
      if (a.x == b.x && (a.x == x0 || a.x == x1)) continue;
      if (a.y == b.y && (a.y == y0 || a.y == y1)) continue;
      auto fp = segment_footprint(d, sq, {a, b});
      bool inside = !fp.empty();
      for (int cell : fp) {
        if (!allowed.count(cell)) {
          inside = false;
          break;
        }
      }
      if (!inside) continue;
      w[i][j] = w[j][i] = rat_sqrt(dist2(a, b));
      footprints.emplace(std::make_pair(i, j), std::move(fp));
    }
  }

  SteinerTree tree = dreyfus_wagner(w, required_ids);
  if (tree.length == kInf) return std::nullopt;
  Connector out;
  LengthAccum acc;
  std::set<int> cells;
  for (auto [i, j] : tree.edges) {
    if (i > j) std::swap(i, j);
    out.edges.push_back({pts[i], pts[j]});
    acc.add(w[i][j]);
    for (int cell : footprints.at({i, j})) cells.insert(cell);
  }
  out.length = acc.value();
  out.cells.assign(cells.begin(), cells.end());
  return out;
}

}  // namespace steiner
