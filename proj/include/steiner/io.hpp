#pragma once

#include "steiner/dissection.hpp"
#include "steiner/geometry.hpp"
#include "steiner/instance.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace steiner {

// Parses the line-based instance format:
//
//   steiner-forest 1
//   pairs m
//   x1 y1 x2 y2        (m lines, decimal coordinates)
//
// Blank lines are ignored. The header line is optional on input and always
// written on output. Coordinates become exact rationals; duplicate pairs
// collapse to one. Throws ParseError with the offending line number, and
// treats an instance that ends up with no usable pair as an error.
Instance parse_instance(const std::string& text);

// Inverse of parse_instance. Requires every coordinate to have a finite
// decimal expansion (denominator 2^a 5^b); throws ParamError otherwise.
std::string format_instance(const Instance& inst);

// Reproducible instance families. n_pairs is the number of requirement
// pairs; the same arguments always yield the same instance.
//
//   uniform-pairs  endpoints uniform on a milli-unit grid in [0,1000]^2
//   clustered      pairs split round-robin over `clusters` boxes of side 10
//                  spaced so the partition step must separate them
//   grid-pairs     endpoints on a regular integer lattice in [0,1000]^2
//
// clustered requires n_pairs >= clusters >= 2 so at least two clusters are
// populated (ParamError otherwise).
Instance generate_uniform_pairs(int n_pairs, std::uint64_t seed);
Instance generate_clustered(int n_pairs, int clusters, std::uint64_t seed);
Instance generate_grid_pairs(int n_pairs, std::uint64_t seed);

// Dispatch by family name ("uniform-pairs", "clustered", "grid-pairs");
// clusters only applies to the clustered family. Throws ParamError on an
// unknown family.
Instance generate_instance(const std::string& family, int n_pairs, int clusters,
                           std::uint64_t seed);

// One dissection drawn over a scaled subinstance, with the map back to
// original coordinates: original = rounded / scale + offset.
struct SvgOverlay {
  const Dissection* dissection = nullptr;
  Rat scale = 1;
  Point offset{0, 0};
};

// Renders the scene as a standalone SVG document: solution segments, then
// terminals as pair-colored markers, then (when show_overlay) one overlay
// group with the dissection lines shaded by depth, leaf cell grids, and
// portal markers. The view box always covers the overlays when they are
// supplied, so toggling show_overlay changes only the overlay group.
std::string render_svg(const Instance& inst, const Forest& solution,
                       const std::vector<SvgOverlay>& overlays, bool show_overlay);

// Flat result record for one end-to-end run. Lengths are in original
// coordinates except dp_root_scaled, which totals the raw dynamic-program
// values across subinstances. In paper mode A reports the largest derived
// value across subinstances; B and D depend only on epsilon.
struct RunSummary {
  std::string instance_id;
  std::uint64_t seed = 0;
  Rat epsilon = Rat(1, 2);
  std::string mode = "desk";
  long long A = 4;
  long long B = 4;
  long long D = 6;
  int repeats = 1;
  int n_pairs = 0;
  int n_terminals = 0;
  int subinstances = 0;
  double baseline_length = 0;
  double transformed_baseline_length = 0;
  double dp_root_scaled = 0;
  double dp_root_length = 0;
  double final_length = 0;
  std::optional<double> exact_opt;
  bool feasible = false;
  std::optional<long long> conformance_violations;
  std::string solver_path = "dp";  // dp | fallback | mixed
  std::string truncated = "none";  // none | table | beam | both
  bool with_timings = false;       // timing keys are excluded from golden comparisons
  double t_total_ms = 0;
  double t_prepare_ms = 0;
  double t_dp_ms = 0;
  double t_verify_ms = 0;
};

// Serializes the summary as "key = value" lines in a fixed order. Optional
// keys appear only when set; timing keys only with with_timings. Numeric
// lengths are printed to 12 significant digits.
std::string format_summary(const RunSummary& s);

}  // namespace steiner
