#pragma once

#include "steiner/dissection.hpp"

#include <string>
#include <vector>

namespace steiner {

// Boundary interface vocabulary of one dissection square: the portals the
// solver may use on its boundary (canonical counterclockwise order), its
// B x B cells (cell id = row * B + col), and the terminals inside it.
struct SquareContext {
  int sq = -1;
  long long B = 1;
  std::vector<Point> portals;
  std::vector<int> terminals;
};

SquareContext make_square_context(const Dissection& d, int sq);

// One part of an interface partition: a connected component of a candidate
// subsolution that reaches the square's boundary, recorded by the portals
// it touches, the cells it intersects essentially, and the terminals lying
// on it. Vectors are sorted.
struct Part {
  std::vector<int> portals;
  std::vector<int> cells;
  std::vector<int> terms;

  bool operator==(const Part&) const = default;
  auto operator<=>(const Part&) const = default;
};

// A configuration (pi_in, pi_out): the interface partition itself plus a
// coarsening certificate assigning each part an outside-connectivity group.
// out_group is kept in restricted-growth form over the canonical part order.
struct Configuration {
  std::vector<Part> parts;
  std::vector<int> out_group;

  bool operator==(const Configuration&) const = default;
  auto operator<=>(const Configuration&) const = default;
};

// Sorts parts, relabels out_group into restricted-growth form.
void canonicalize(Configuration& cfg);

// Structural validity: every part has a portal and a cell, parts are
// pairwise disjoint in portals, cells and terminals, ids in range, and the
// configuration is compact (at most 4(D+1) parts and 4(D+1) portals in
// total). out_group must be a restricted-growth string over the parts.
bool is_valid_structure(const SquareContext& ctx, const Configuration& cfg, long long D);

// Requirement-side validity for a standalone square: a terminal of the
// square whose mate sits outside must lie in some part; a pair with both
// terminals inside must be connected inside one part, marked connectable
// outside via equal out groups, or be entirely absent (joined by a
// component that never reaches the boundary).
bool is_valid_requirements(const SquareContext& ctx, const Configuration& cfg,
                           const std::vector<std::pair<int, int>>& pair_ids);

bool is_valid(const SquareContext& ctx, const Configuration& cfg, long long D,
              const std::vector<std::pair<int, int>>& pair_ids);

// All valid configurations of the square, canonically ordered. Exhaustive
// over subsets: meant for reference solvers and tests on tiny squares.
std::vector<Configuration> enumerate_valid(const SquareContext& ctx, long long D,
                                           const std::vector<std::pair<int, int>>& pair_ids);

// The result of joining four child configurations inside a parent square:
// the classes of the join partition pi_v0, each with its lifted content.
struct JoinClass {
  std::vector<int> parent_portals;  // ids into the parent context portal list
  std::vector<int> parent_cells;    // mapped to parent cell ids, deduplicated
  std::vector<int> terms;
  std::vector<std::pair<int, int>> child_parts;  // (child index 0..3, part index)
};

struct JoinResult {
  std::vector<JoinClass> classes;
  // For each class, the index of the parent part it becomes, or -1 if it
  // drops (no parent portals survive).
  std::vector<int> lifted_to;
  Configuration lifted;  // parts only; out_group left empty
  bool cells_disjoint = true;
};

// Joins child parts across the inner cross: parts of different children
// sharing a portal point merge; portals that are not usable portals of the
// parent disappear; child cells map to the parent cell containing them.
JoinResult join_children(const Dissection& d, int parent_sq, const SquareContext& parent_ctx,
                         const SquareContext child_ctx[4], const Configuration child_cfg[4]);

// The quintuple consistency test: internal (the lift of the join equals the
// parent partition, with disjoint cells), external (child out groups agree
// with join connectivity plus one hop through the parent out groups), and
// terminal (mates in different children are connected by the join or marked
// connectable outside; terminals on dropped classes have their mates on the
// same class).
bool are_consistent(const Dissection& d, int parent_sq, const SquareContext& parent_ctx,
                    const SquareContext child_ctx[4], const Configuration child_cfg[4],
                    const Configuration& parent_cfg,
                    const std::vector<std::pair<int, int>>& pair_ids);

std::string dump(const SquareContext& ctx, const Configuration& cfg);

}  // namespace steiner
