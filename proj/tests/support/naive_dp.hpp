#pragma once

#include "steiner/dissection.hpp"
#include "steiner/dp.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace steiner {
namespace testsupport {

// One component class of a reference table entry: the boundary points the
// class claims, its cell footprint in the owning square's frame, and the
// pair obligations still open on it.
struct NaivePart {
  std::vector<Point> portals;  // lex sorted
  std::uint64_t cells = 0;
  std::vector<int> pairs;  // sorted pair ids
};

bool naive_part_less(const NaivePart& a, const NaivePart& b);

struct NaiveEntry {
  std::vector<NaivePart> parts;  // sorted by naive_part_less
  double value = 0;
};

struct NaiveResult {
  std::vector<std::vector<NaiveEntry>> tables;  // indexed like d.squares
  bool found = false;
  double value = 0;  // cheapest closed root entry when found
};

// Reference solver: rebuilds every square table by direct enumeration, with
// none of the production shortcuts. Leaf classes are priced by exhaustive
// Steiner-subset search instead of Dreyfus-Wagner, cell footprints are
// remapped through geometric containment instead of index arithmetic, and
// joins are deduplicated maps keyed on whole part lists. Only the candidate
// point sets are shared with the production solver, since they define the
// universe both sides must search. Exhaustive options are required, B must
// be at most 2, and blown-up leaves or joins throw SizeError, so feed it
// only trees a few levels deep.
NaiveResult naive_dp(const Dissection& d, const DpOptions& opt);

// Whether a square is small enough for entry-by-entry comparison: at most
// two usable portals and at most four candidate points per cell.
bool micro_square(const Dissection& d, int sq, const DpOptions& opt);

// Two-way domination check between a production table and a reference table
// for one square. Each entry of either table must be matched by an entry of
// the other with identical claimed portals and pair obligations part by
// part, footprints no larger, and value no larger than the matched entry's
// plus tol_rel (relative to the larger of 1 and the value). Returns an empty
// string when the tables agree, else a description of one mismatch.
std::string compare_square_tables(const std::vector<DpEntryDump>& prod,
                                  const std::vector<NaiveEntry>& ref, double tol_rel);

}  // namespace testsupport
}  // namespace steiner
