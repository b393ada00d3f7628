#pragma once

#include "steiner/dissection.hpp"
#include "steiner/geometry.hpp"
#include "steiner/instance.hpp"

#include <optional>
#include <vector>

namespace steiner {

// Minimum Steiner tree over an explicit candidate graph, Dreyfus-Wagner.
// w[i][j] is the direct edge length between candidates i and j (infinity
// when the edge is forbidden). Exponential in required.size(), which must
// stay at most 10. Returns edge list (candidate id pairs) and total length;
// length is infinite when the required points cannot be connected.
struct SteinerTree {
  std::vector<std::pair<int, int>> edges;
  double length = 0;
};

SteinerTree dreyfus_wagner(const std::vector<std::vector<double>>& w,
                           const std::vector<int>& required);

// Convenience wrapper on the complete Euclidean graph over pts.
SteinerTree dreyfus_wagner_euclidean(const std::vector<Point>& pts,
                                     const std::vector<int>& required);

// Optimal Steiner forest over a documented candidate universe: Steiner
// points are drawn from the half-integer grid covering the terminal
// bounding box padded by one unit, plus the terminals themselves and any
// extra candidate points supplied by the caller. Minimizes over all ways of
// grouping requirement components, one Steiner tree per group. Requires at
// most 6 distinct terminals and at most 400 candidates (SizeError).
struct OptResult {
  Forest forest;
  double length = 0;
};

OptResult exact_opt(const Instance& inst, const std::vector<Point>& extra_candidates = {});

// Per-requirement-component MST over its terminals. Feasible by
// construction; total length is asserted to stay below n * dist_q.
Forest mst_baseline(const Instance& inst);

// Minimum-length network connecting the required points of one dissection
// square while staying inside the closed union of the allowed cells
// (footprint rule: every positive-length piece lies in an allowed cell).
// Candidate Steiner points are the required points plus half-integer grid
// centers lying in allowed cells, subsampled to grid_per_axis^2 per cell
// and max_candidates overall. Edges collinear with a boundary side line of
// the square are forbidden. cells reports the essential footprint: cells
// meeting the network with positive length. Empty optional when the
// required points cannot be connected within the allowed region.
struct Connector {
  Forest edges;
  double length = 0;
  std::vector<int> cells;
};

std::optional<Connector> leaf_connector(const Dissection& d, int sq,
                                        const std::vector<Point>& required,
                                        const std::vector<int>& allowed_cells, int grid_per_axis,
                                        int max_candidates);

// Essential footprint of a segment in the square's B x B cell grid: cell
// ids whose closed rectangle meets the segment with positive length.
std::vector<int> segment_footprint(const Dissection& d, int sq, const Segment& seg);

// Essential footprint of a whole forest in the square's cell grid.
std::vector<int> forest_footprint(const Dissection& d, int sq, const Forest& f);

}  // namespace steiner
