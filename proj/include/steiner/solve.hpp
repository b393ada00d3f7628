#pragma once

#include "steiner/dissection.hpp"
#include "steiner/dp.hpp"
#include "steiner/geometry.hpp"
#include "steiner/instance.hpp"
#include "steiner/preprocess.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace steiner {

struct SolveOptions {
  Rat epsilon = Rat(1, 2);
  Mode mode = Mode::desk;
  long long A = 4;  // desk-mode constants; paper mode derives them
  long long B = 4;
  long long D = 6;
  std::uint64_t seed = 0;
  int repeats = 1;  // independent seeds seed, seed+1, ...; shortest output wins
  int threads = 1;
  bool prescaled = false;  // coordinates are already half-integers, skip scaling
  bool verify = false;     // run the conformance checker on the rounded output
  bool exact = false;      // attach the exact oracle (small instances only)
  DpOptions dp;
};

// One subinstance of the winning run.
struct SubReport {
  int n_terminals = 0;
  long long A = 0, B = 0, D = 0;  // effective constants of its dissection
  bool dp_found = false;
  double dp_value_scaled = 0;
  bool truncated_table = false;
  bool truncated_beam = false;
  long long peak_states = 0;
  long long tables_built = 0;
};

struct SolveResult {
  Forest solution;  // original coordinates, all subinstances concatenated
  double final_length = 0;
  std::uint64_t seed = 0;  // seed of the winning run
  double baseline_length = 0;
  double transformed_baseline_length = 0;
  double dp_root_scaled = 0;  // raw dynamic-program totals, scaled coordinates
  double dp_root_length = 0;  // the same scaled back, without reconnection
  bool feasible = false;
  std::optional<double> exact_len;
  std::optional<long long> conformance_violations;
  std::string solver_path = "dp";  // dp | fallback | mixed
  std::string truncated = "none";  // none | table | beam | both
  int subinstances = 0;
  std::vector<SubReport> subs;
  // Winning run artifacts, aligned by subinstance, for overlays and reports.
  std::vector<ScaledInstance> scaled;
  std::vector<Dissection> dissections;
  double t_prepare_ms = 0, t_dp_ms = 0, t_verify_ms = 0, t_total_ms = 0;
};

// End-to-end pipeline: partition into independent subinstances, scale and
// round each (or wrap as-is with prescaled), build the shifted dissection,
// run the dynamic program, and map the result back. When the program finds
// no root state within its caps the subinstance falls back to the
// transformed baseline, which conforms by construction; solver_path records
// which path produced the output. Repeats re-run the randomized pipeline on
// consecutive seeds concurrently and keep the shortest final forest, ties
// to the lowest seed.
SolveResult solve(const Instance& inst, const SolveOptions& opt);

}  // namespace steiner
