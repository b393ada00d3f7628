#pragma once

#include "steiner/geometry.hpp"
#include "steiner/instance.hpp"

#include <cstdint>
#include <vector>

namespace steiner {

enum class Mode { desk, paper };

struct DissectionParams {
  Mode mode = Mode::desk;
  Rat epsilon = Rat(1, 2);
  long long A = 4;
  long long B = 4;
  long long D = 6;
};

struct Square {
  int depth = 0;
  long long x0 = 0;
  long long y0 = 0;
  long long side = 1;
  int parent = -1;
  // Children in SW, SE, NW, NE order; -1 throughout for leaves.
  int child[4] = {-1, -1, -1, -1};
  std::vector<int> terminal_ids;
  bool leaf() const { return child[0] < 0; }
};

struct Rect {
  Rat x_lo, y_lo, x_hi, y_hi;
};

// Randomly shifted hierarchical dissection of the rounded instance. The
// root box has side L (a power of two) and integer corner (cx, cy); squares
// split at their midlines until they contain at most one terminal. All
// grid lines live at integer coordinates and terminals sit strictly between
// them at half-integer grid centers.
struct Dissection {
  DissectionParams params;
  long long L = 1;
  int logL = 0;
  long long shift_x = 0, shift_y = 0;
  long long cx = 0, cy = 0;
  std::vector<Point> terminals;
  std::vector<std::pair<int, int>> pair_ids;
  std::vector<Square> squares;

  // Depth of the full-dissection line through coordinate c (x for vertical
  // lines, y for horizontal ones). The bounding box itself has depth 0;
  // dyadic coordinates below the unit grid get depths above logL.
  int line_depth(bool vertical, const Rat& c) const;

  // Portal spacing on a line of the given depth: L / (A * 2^depth).
  Rat portal_spacing(int line_depth_value) const;

  // Whether p lies on the closed boundary of the square.
  bool on_boundary(int sq, const Point& p) const;
  // Whether p is a designated portal point of the square: a multiple of the
  // portal spacing of one of its non-box side lines, lying on that side.
  bool is_portal_of(int sq, const Point& p) const;

  // All portals of the square, counterclockwise from the lower-left corner
  // (bottom, right, top, left sides; each corner listed once). The root has
  // none. Points on the bounding box can appear for depth-1 squares.
  std::vector<Point> portals_of(int sq) const;

  // Portals of the square that are portals of every proper ancestor whose
  // boundary they lie on. Only these can carry connections upward, so the
  // solver restricts itself to them.
  std::vector<Point> safe_portals_of(int sq) const;

  // Designated portal points on the full-dissection line at coordinate c
  // (vertical when vertical=true) with the other coordinate in [lo, hi].
  std::vector<Rat> portal_offsets_on_line(bool vertical, const Rat& c, const Rat& lo,
                                          const Rat& hi) const;

  Rat cell_side(int sq) const { return Rat(squares[sq].side) / params.B; }
  Rect cell_rect(int sq, int row, int col) const;
  Rect square_rect(int sq) const;
  // Cells of the square whose closed region contains p (1, 2, or 4 of them).
  std::vector<std::pair<int, int>> cells_containing(int sq, const Point& p) const;

  int max_depth() const;
};

// Builds the shifted dissection. Shifts are drawn from the low bits of a
// seeded mt19937_64, x first, uniformly over [0, L/2). In paper mode A, B,
// and D are derived from epsilon; in desk mode they are taken as given.
Dissection build_dissection(const Instance& rounded, const DissectionParams& params,
                            std::uint64_t seed);

// Same, with explicit shifts (for tests).
Dissection build_dissection_shifted(const Instance& rounded, const DissectionParams& params,
                                    long long shift_x, long long shift_y);

}  // namespace steiner
