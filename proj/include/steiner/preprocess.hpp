#pragma once

#include "steiner/geometry.hpp"
#include "steiner/instance.hpp"

#include <vector>

namespace steiner {

// Squared diameter of the largest requirement-graph component, i.e.
// max over components C of max_{u,v in C} |uv|^2.
Rat dist_q2(const Instance& inst);

// Splits the instance into subinstances that can be solved independently:
// while the longest MST edge over all terminals exceeds n * dist_q, remove
// it and recurse on both sides. Every pair ends up inside one subinstance.
std::vector<Instance> partition(const Instance& inst);

// A scaled-and-rounded instance together with the data needed to undo the
// transformation. rounded holds half-integer coordinates; a point p maps to
// (p - offset) * scale before rounding.
struct ScaledInstance {
  Instance rounded;
  Rat scale = 1;
  Point offset{0, 0};
  // Original pairs of this subinstance and where each original endpoint
  // landed among rounded.terminals (-1 when a pair collapsed entirely and
  // its endpoints vanished from the rounded instance).
  std::vector<PointPair> source_pairs;
  std::vector<std::pair<int, int>> source_landing;
  bool prescaled = false;
};

// Scales by (40*sqrt(2)*n) / (epsilon * dist_q), taking the smallest dyadic
// value N/2^64 that is >= the target, then snaps every terminal to the
// nearest half-integer grid center (ties toward -infinity, per axis).
ScaledInstance scale_and_round(const Instance& inst, const Rat& epsilon);

// Wraps an instance whose coordinates are already half-integers, with
// identity scale. Throws ParamError if a coordinate is not a half-integer.
ScaledInstance wrap_prescaled(const Instance& inst);

// Maps a solution on the rounded instance back to original coordinates and
// reconnects each original terminal to its rounded image.
Forest unround(const Forest& solution, const ScaledInstance& si);

}  // namespace steiner
