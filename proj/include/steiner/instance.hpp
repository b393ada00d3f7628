#pragma once

#include "steiner/geometry.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace steiner {

struct ParamError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  int line;
  ParseError(const std::string& msg, int line_) : std::runtime_error(msg), line(line_) {}
};
struct SizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

// Terminal-pair instance. Terminals are deduplicated by exact coordinate;
// pairs are deduplicated as unordered pairs of terminal ids. Pairs whose
// endpoints coincide are kept out of pair_ids (trivially satisfied).
struct Instance {
  std::vector<Point> terminals;
  std::vector<std::pair<int, int>> pair_ids;

  std::vector<PointPair> point_pairs() const {
    std::vector<PointPair> out;
    out.reserve(pair_ids.size());
    for (auto [i, j] : pair_ids) out.push_back({terminals[i], terminals[j]});
    return out;
  }
  int n_terminals() const { return static_cast<int>(terminals.size()); }
  int n_pairs() const { return static_cast<int>(pair_ids.size()); }
};

Instance make_instance(const std::vector<PointPair>& pairs);

// Union-find components of the requirement graph (vertices = terminals,
// edges = pairs), as terminal-id lists.
std::vector<std::vector<int>> requirement_components(const Instance& inst);

}  // namespace steiner
