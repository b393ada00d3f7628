#pragma once

#include "steiner/configuration.hpp"
#include "steiner/dissection.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace steiner {

// Knobs defining the solver universe and its pruning. Caps that merely
// bound how much of the universe is explored set the truncation flags when
// they bite; universe knobs (portal counts per leaf part, candidate grids)
// do not, since they define what the solver is searching over.
struct DpOptions {
  int part_portals = 2;          // portals per leaf part
  int parts_per_square = 6;      // parts per state
  int grid_per_axis = 2;         // leaf grid candidates per cell per axis
  int leaf_candidates = 24;      // leaf grid candidates overall (0 = all)
  long long leaf_state_cap = 256;  // leaf part families (0 = unlimited)
  long long table_cap = 64;        // states kept per square (0 = unlimited)
  long long stage_cap = 512;       // states kept between join stages (0 = unlimited)
  bool exhaustive = false;         // lift every cap (tiny instances only)
};

struct DpOutcome {
  bool found = false;
  double length = 0;
  Forest forest;
  bool truncated_table = false;
  bool truncated_beam = false;
  long long peak_states = 0;
  long long tables_built = 0;
};

// Runs the dissection dynamic program bottom-up and returns the cheapest
// feasible interface-free assembly at the root, if the explored universe
// contains one. Throws SizeError when the parameters make the cell masks or
// portal budgets unrepresentable (B above 8, A above 16).
DpOutcome run_dp(const Dissection& d, const DpOptions& opt);

// One component class of a table entry, with portals resolved to points so
// entries from different solvers over the same dissection can be compared.
struct DpPartDump {
  std::vector<Point> portals;  // lex sorted
  std::uint64_t cells = 0;     // cell mask in the owning square's frame
  std::vector<int> pairs;      // pending pair ids, sorted
};

struct DpEntryDump {
  std::vector<DpPartDump> parts;
  double value = 0;
};

// run_dp, but additionally keeps every square's finished table and copies
// them out, indexed like Dissection::squares. Meant for cross-checking the
// solver against an independent enumeration; tables for every square stay
// resident, so use it only on small trees.
DpOutcome run_dp_with_tables(const Dissection& d, const DpOptions& opt,
                             std::vector<std::vector<DpEntryDump>>& tables);

// Candidate endpoints the solver considers inside one leaf square: the
// usable portals first, then the leaf's terminal (if any), then the
// half-integer grid points selected by the options.
struct LeafCandidates {
  std::vector<Point> pts;
  int n_portals = 0;
  int term_idx = -1;  // index into pts, -1 when the leaf has no terminal
};
LeafCandidates leaf_candidate_points(const Dissection& d, int sq, const DpOptions& opt);

// Whether the forest is one the solver universe can express: inside every
// square it must avoid running along the sides, meet boundaries only at
// usable portals, keep components cell-disjoint and within the part and
// portal budgets, and inside every leaf all junctions must be candidate
// points. When it returns false and why is non-null, *why names the first
// obstruction. A true result means the solver, run with every cap lifted
// (zero caps), explores a state chain of exactly this forest's length.
bool representable(const Dissection& d, const Forest& f, const DpOptions& opt,
                   std::string* why = nullptr);

}  // namespace steiner
