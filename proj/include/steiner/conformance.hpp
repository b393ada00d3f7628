#pragma once

#include "steiner/dissection.hpp"
#include "steiner/geometry.hpp"

#include <string>
#include <vector>

namespace steiner {

// Connected components of (forest ∩ line) for the full-dissection line at
// coordinate c (vertical: x = c), restricted to [lo, hi] along the line.
// Each component is a closed interval of line offsets; points are
// degenerate intervals. Overlapping or touching contributions merge.
std::vector<std::pair<Rat, Rat>> line_components(const Forest& f, bool vertical, const Rat& c,
                                                 const Rat& lo, const Rat& hi);

// Violations of the four conformance properties on one square.
struct SquareViolations {
  int square = -1;
  // Components of F ∩ ∂R beyond the 4(D+1) budget.
  long long boundary_excess = 0;
  // Components of F ∩ ∂R containing no portal of R.
  long long portal_free_components = 0;
  // Cells (row * B + col) touched in the interior by two or more global
  // components of F that also touch ∂R.
  std::vector<int> unhappy_cells;
  // Terminals inside R whose component of F ∩ R neither reaches their mate
  // nor touches ∂R.
  std::vector<int> unsatisfied_terminals;
  bool empty() const {
    return boundary_excess == 0 && portal_free_components == 0 && unhappy_cells.empty() &&
           unsatisfied_terminals.empty();
  }
};

struct ConformanceReport {
  std::vector<SquareViolations> squares;  // only squares with violations
  // Sides with more than D non-corner components of F ∩ side. This is the
  // stricter per-side form of the boundary budget; it is reported for
  // diagnosis but does not make the report non-empty.
  long long side_overflows = 0;
  bool empty() const { return squares.empty(); }
  std::string to_text() const;
};

// Exact evaluation of the boundary, portal, cell, and terminal properties
// on every square of the tree. Terminal pairs are taken from the
// dissection. threads > 1 evaluates squares concurrently.
ConformanceReport check(const Dissection& d, const Forest& f, int threads = 1);

// Number of (square, side) pairs with more than D non-corner components.
long long side_noncorner_overflows(const Dissection& d, const Forest& f);

// Number of components of F ∩ ℓ without a portal, over all tree lines of
// depth at least 1.
long long portal_free_line_components(const Dissection& d, const Forest& f);

// Number of unhappy cells over all squares.
long long unhappy_cell_count(const Dissection& d, const Forest& f);

// For every side of every tree square, deepest squares first: when the side
// has more than D non-corner components of F ∩ side, add the closure (the
// minimal subsegment of the side spanning the non-corner components).
Forest satisfy_boundary(const Dissection& d, const Forest& f);

// For every tree line, deepest first: extend every portal-free component of
// F ∩ ℓ along ℓ to the nearest portal.
Forest satisfy_portal(const Dissection& d, const Forest& f);

// While some cell is unhappy (scanning squares in index order, cells in
// row-major order): augment with the cell-boundary sides prescribed for it
// (both sides whose lines are as deep as the cell, plus any shallower side
// the forest already meets). The augmentation is open at its ends: where
// it stops at a corner of an excluded side, it retreats from the corner
// without giving up any point of the forest. Each cell is augmented at
// most once; a second augmentation of the same cell raises InvariantError.
Forest satisfy_cell(const Dissection& d, const Forest& f);

// satisfy_cell ∘ satisfy_portal ∘ satisfy_boundary.
Forest transform(const Dissection& d, const Forest& f);

// Merges overlapping or touching collinear segments, drops duplicates, and
// sorts; the canonical form used to compare forests structurally.
Forest canonicalize_forest(const Forest& f);

// Total added length of |transform output| - |input|, for diagnostics.
double added_length(const Forest& before, const Forest& after);

}  // namespace steiner
