#include "steiner/dissection.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace steiner {

namespace {

bool is_power_of_two(long long v) { return v > 0 && (v & (v - 1)) == 0; }

int ilog2_ll(long long v) {
  int k = 0;
  while ((1LL << k) < v) ++k;
  return k;
}

// 2-adic valuation of a nonzero dyadic rational.
int v2_dyadic(const Rat& r) {
  Int num = rat_num(r);
  Int den = rat_den(r);
  if (num == 0) throw InvariantError("v2 of zero");
  if (num < 0) num = -num;
  unsigned nb = boost::multiprecision::lsb(num);
  unsigned db = boost::multiprecision::lsb(den);
  if ((Int(1) << db) != den) throw InvariantError("line coordinate is not dyadic");
  return static_cast<int>(nb) - static_cast<int>(db);
}

void validate_params(const DissectionParams& p) {
  if (p.epsilon <= 0) throw ParamError("epsilon must be positive");
  if (!is_power_of_two(p.A)) throw ParamError("A must be a positive power of two");
  if (!is_power_of_two(p.B)) throw ParamError("B must be a positive power of two");
  if (p.D < 1) throw ParamError("D must be at least 1");
}

Dissection build_core(const Instance& rounded, const DissectionParams& params, long long shift_x,
                      long long shift_y, bool draw_shifts, std::uint64_t seed) {
  if (rounded.n_terminals() == 0) throw InvariantError("dissection needs at least one terminal");
  for (const auto& t : rounded.terminals) {
    for (const Rat& c : {t.x, t.y}) {
      Rat twice = c * 2;
      if (rat_den(twice) != 1 || rat_den(c) == 1) {
        throw InvariantError("terminals must sit at half-integer grid centers");
      }
    }
  }

  Dissection d;
  d.params = params;
  d.terminals = rounded.terminals;
  d.pair_ids = rounded.pair_ids;

  Rat diam2 = diameter2(d.terminals);
  long long L = 1;
  while (Rat(L) * Rat(L) <= diam2 * 4) {
    if (L > (1LL << 61)) throw SizeError("dissection box side overflows");
    L <<= 1;
  }
  d.L = L;
  d.logL = ilog2_ll(L);

  if (d.params.mode == Mode::paper) {
    const Rat& eps = d.params.epsilon;
    long long A = 1;
    Rat a_target = Rat(30) * d.logL / eps;
    while (Rat(A) <= a_target) A <<= 1;
    long long B = 1;
    Rat b_target = Rat(240) / eps;
    while (Rat(B) < b_target) B <<= 1;
    d.params.A = A;
    d.params.B = B;
    d.params.D = static_cast<long long>(rat_ceil(Rat(60) / eps));
  }
  validate_params(d.params);

  if (draw_shifts) {
    std::mt19937_64 rng(seed);
    if (L >= 2) {
      std::uint64_t mask = static_cast<std::uint64_t>(L / 2 - 1);
      shift_x = static_cast<long long>(rng() & mask);
      shift_y = static_cast<long long>(rng() & mask);
    } else {
      shift_x = shift_y = 0;
    }
  }
  if (shift_x < 0 || shift_x >= std::max(1LL, L / 2) || shift_y < 0 ||
      shift_y >= std::max(1LL, L / 2)) {
    throw ParamError("shifts must lie in [0, L/2)");
  }
  d.shift_x = shift_x;
  d.shift_y = shift_y;

  Rat min_x = d.terminals[0].x;
  Rat min_y = d.terminals[0].y;
  for (const auto& t : d.terminals) {
    if (t.x < min_x) min_x = t.x;
    if (t.y < min_y) min_y = t.y;
  }
  d.cx = static_cast<long long>(rat_floor(min_x)) - shift_x;
  d.cy = static_cast<long long>(rat_floor(min_y)) - shift_y;

  for (const auto& t : d.terminals) {
    if (!(Rat(d.cx) < t.x && t.x < Rat(d.cx + L) && Rat(d.cy) < t.y && t.y < Rat(d.cy + L))) {
      throw InvariantError("terminal outside the shifted box");
    }
  }

  Square root;
  root.depth = 0;
  root.x0 = d.cx;
  root.y0 = d.cy;
  root.side = L;
  root.terminal_ids.resize(d.terminals.size());
  for (size_t i = 0; i < d.terminals.size(); ++i) root.terminal_ids[i] = static_cast<int>(i);
  d.squares.push_back(std::move(root));

  for (size_t qi = 0; qi < d.squares.size(); ++qi) {
    if (d.squares[qi].terminal_ids.size() <= 1) continue;
    Square cur = d.squares[qi];
    if (cur.side < 2) throw InvariantError("unit square holds two terminals");
    long long h = cur.side / 2;
    Rat xm = Rat(cur.x0 + h);
    Rat ym = Rat(cur.y0 + h);
    long long off[4][2] = {{0, 0}, {h, 0}, {0, h}, {h, h}};
    int child_ids[4];
    for (int k = 0; k < 4; ++k) {
      Square ch;
      ch.depth = cur.depth + 1;
      ch.x0 = cur.x0 + off[k][0];
      ch.y0 = cur.y0 + off[k][1];
      ch.side = h;
      ch.parent = static_cast<int>(qi);
      child_ids[k] = static_cast<int>(d.squares.size());
      d.squares.push_back(std::move(ch));
    }
    for (int t : cur.terminal_ids) {
      const Point& p = d.terminals[t];
      if (p.x == xm || p.y == ym) throw InvariantError("terminal on a dissection line");
      int k = (p.x < xm ? 0 : 1) + (p.y < ym ? 0 : 2);
      d.squares[child_ids[k]].terminal_ids.push_back(t);
    }
    for (int k = 0; k < 4; ++k) d.squares[qi].child[k] = child_ids[k];
  }
  return d;
}

}  // namespace

int Dissection::line_depth(bool vertical, const Rat& c) const {
  Rat offset = c - Rat(vertical ? cx : cy);
  if (offset <= 0 || offset >= Rat(L)) return 0;
  return logL - v2_dyadic(offset);
}

Rat Dissection::portal_spacing(int line_depth_value) const {
  return Rat(L) / (Rat(params.A) * (Int(1) << line_depth_value));
}

bool Dissection::on_boundary(int sq, const Point& p) const {
  const Square& s = squares[sq];
  Rat x0(s.x0), y0(s.y0), x1(s.x0 + s.side), y1(s.y0 + s.side);
  if (p.x < x0 || p.x > x1 || p.y < y0 || p.y > y1) return false;
  return p.x == x0 || p.x == x1 || p.y == y0 || p.y == y1;
}

std::vector<Rat> Dissection::portal_offsets_on_line(bool vertical, const Rat& c, const Rat& lo,
                                                    const Rat& hi) const {
  std::vector<Rat> out;
  int depth = line_depth(vertical, c);
  if (depth == 0) return out;
  Rat spacing = portal_spacing(depth);
  Rat base(vertical ? cy : cx);
  Int k_lo = rat_ceil((lo - base) / spacing);
  Int k_hi = rat_floor((hi - base) / spacing);
  for (Int k = k_lo; k <= k_hi; ++k) out.push_back(base + Rat(k) * spacing);
  return out;
}

bool Dissection::is_portal_of(int sq, const Point& p) const {
  if (!on_boundary(sq, p)) return false;
  const Square& s = squares[sq];
  Rat x0(s.x0), y0(s.y0), x1(s.x0 + s.side), y1(s.y0 + s.side);
  struct SideLine {
    bool vertical;
    Rat coord;
    Rat along;
  };
  std::vector<SideLine> lines;
  if (p.x == x0) lines.push_back({true, x0, p.y});
  if (p.x == x1) lines.push_back({true, x1, p.y});
  if (p.y == y0) lines.push_back({false, y0, p.x});
  if (p.y == y1) lines.push_back({false, y1, p.x});
  for (const auto& ln : lines) {
    int depth = line_depth(ln.vertical, ln.coord);
    if (depth == 0) continue;
    Rat base(ln.vertical ? cy : cx);
    Rat q = (ln.along - base) / portal_spacing(depth);
    if (rat_den(q) == 1) return true;
  }
  return false;
}

std::vector<Point> Dissection::portals_of(int sq) const {
  const Square& s = squares[sq];
  Rat x0(s.x0), y0(s.y0), x1(s.x0 + s.side), y1(s.y0 + s.side);
  std::vector<Point> out;
  std::set<Point, PointLess> seen;
  auto emit = [&](const Point& p) {
    if (seen.insert(p).second) out.push_back(p);
  };
  auto side = [&](bool vertical, const Rat& coord, const Rat& lo, const Rat& hi, bool forward) {
    auto pos = portal_offsets_on_line(vertical, coord, lo, hi);
    if (!forward) std::reverse(pos.begin(), pos.end());
    for (const Rat& a : pos) emit(vertical ? Point{coord, a} : Point{a, coord});
  };
  side(false, y0, x0, x1, true);
  side(true, x1, y0, y1, true);
  side(false, y1, x0, x1, false);
  side(true, x0, y0, y1, false);
  return out;
}

std::vector<Point> Dissection::safe_portals_of(int sq) const {
  std::vector<Point> out;
  for (const Point& p : portals_of(sq)) {
    bool safe = true;
    for (int q = squares[sq].parent; q >= 0; q = squares[q].parent) {
      if (!on_boundary(q, p)) break;
      if (!is_portal_of(q, p)) {
        safe = false;
        break;
      }
    }
    if (safe) out.push_back(p);
  }
  return out;
}

Rect Dissection::cell_rect(int sq, int row, int col) const {
  const Square& s = squares[sq];
  Rat cs = cell_side(sq);
  Rat x_lo = Rat(s.x0) + cs * col;
  Rat y_lo = Rat(s.y0) + cs * row;
  return Rect{x_lo, y_lo, x_lo + cs, y_lo + cs};
}

Rect Dissection::square_rect(int sq) const {
  const Square& s = squares[sq];
  return Rect{Rat(s.x0), Rat(s.y0), Rat(s.x0 + s.side), Rat(s.y0 + s.side)};
}

std::vector<std::pair<int, int>> Dissection::cells_containing(int sq, const Point& p) const {
  std::vector<std::pair<int, int>> out;
  const Square& s = squares[sq];
  Rat fx = (p.x - Rat(s.x0)) / cell_side(sq);
  Rat fy = (p.y - Rat(s.y0)) / cell_side(sq);
  long long b = params.B;
  auto axis_cells = [&](const Rat& f) {
    std::vector<long long> cs;
    if (rat_den(f) == 1) {
      long long v = static_cast<long long>(rat_num(f));
      if (v - 1 >= 0 && v - 1 < b) cs.push_back(v - 1);
      if (v >= 0 && v < b) cs.push_back(v);
    } else {
      Int fl = rat_floor(f);
      long long v = static_cast<long long>(fl);
      if (v >= 0 && v < b) cs.push_back(v);
    }
    return cs;
  };
  for (long long r : axis_cells(fy)) {
    for (long long c : axis_cells(fx)) out.push_back({static_cast<int>(r), static_cast<int>(c)});
  }
  return out;
}

int Dissection::max_depth() const {
  int m = 0;
  for (const auto& s : squares) m = std::max(m, s.depth);
  return m;
}

Dissection build_dissection(const Instance& rounded, const DissectionParams& params,
                            std::uint64_t seed) {
  return build_core(rounded, params, 0, 0, true, seed);
}

Dissection build_dissection_shifted(const Instance& rounded, const DissectionParams& params,
                                    long long shift_x, long long shift_y) {
  return build_core(rounded, params, shift_x, shift_y, false, 0);
}

}  // namespace steiner
