#include "doctest.h"

#include "steiner/conformance.hpp"
#include "steiner/dissection.hpp"
#include "steiner/geometry.hpp"
#include "steiner/instance.hpp"
#include "steiner/oracles.hpp"
#include "steiner/preprocess.hpp"

#include <algorithm>
#include <random>
#include <vector>

using namespace steiner;

namespace {

Point ip(long long x, long long y) { return Point{Rat(x), Rat(y)}; }
Point hp(long long nx, long long ny) { return Point{Rat(nx, 2), Rat(ny, 2)}; }

// Two terminals one unit apart in a side-4 box anchored at the origin.
Dissection micro_tree(long long A, long long D) {
  Instance inst = make_instance({{hp(1, 1), hp(3, 1)}});
  DissectionParams params;
  params.A = A;
  params.D = D;
  return build_dissection_shifted(inst, params, 0, 0);
}

int find_square(const Dissection& d, long long x0, long long y0, long long side) {
  for (int i = 0; i < static_cast<int>(d.squares.size()); ++i) {
    const Square& s = d.squares[i];
    if (s.x0 == x0 && s.y0 == y0 && s.side == side) return i;
  }
  return -1;
}

const SquareViolations* find_violations(const ConformanceReport& rep, int sq) {
  for (const SquareViolations& v : rep.squares) {
    if (v.square == sq) return &v;
  }
  return nullptr;
}

bool same_forest(const Forest& a, const Forest& b) {
  Forest ca = canonicalize_forest(a);
  Forest cb = canonicalize_forest(b);
  if (ca.size() != cb.size()) return false;
  for (size_t i = 0; i < ca.size(); ++i) {
    if (!(ca[i].a == cb[i].a && ca[i].b == cb[i].b)) return false;
  }
  return true;
}

bool covers(const Forest& big, const Forest& small) {
  Forest both = big;
  both.insert(both.end(), small.begin(), small.end());
  return same_forest(both, big);
}

Instance random_half_instance(std::uint64_t seed, int n_pairs, long long span) {
  std::mt19937_64 rng(seed);
  auto coord = [&] { return Rat(2 * static_cast<long long>(rng() % span) + 1, 2); };
  std::vector<PointPair> pairs;
  while (static_cast<int>(pairs.size()) < n_pairs) {
    Point a{coord(), coord()};
    Point b{coord(), coord()};
    if (a == b) continue;
    pairs.push_back({a, b});
  }
  return make_instance(pairs);
}

Forest l_paths(const Instance& inst) {
  Forest f;
  for (const PointPair& pr : inst.point_pairs()) {
    if (pr.first.x == pr.second.x || pr.first.y == pr.second.y) {
      f.push_back({pr.first, pr.second});
    } else {
      Point mid{pr.first.x, pr.second.y};
      f.push_back({pr.first, mid});
      f.push_back({mid, pr.second});
    }
  }
  return f;
}

}  // namespace

TEST_CASE("line_components merges collinear runs and isolates crossings") {
  Forest f = {
      {ip(1, 0), ip(1, 2)},  // lies on the line x = 1
      {ip(0, 1), ip(2, 1)},  // crosses it inside that run
      {ip(0, 3), ip(2, 3)},  // crosses it at an isolated point
      {ip(0, 0), ip(2, 2)},  // diagonal through (1, 1)
  };

  auto comps = line_components(f, true, Rat(1), Rat(0), Rat(4));
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].first == Rat(0));
  CHECK(comps[0].second == Rat(2));
  CHECK(comps[1].first == Rat(3));
  CHECK(comps[1].second == Rat(3));

  // Restriction clips runs and drops whatever falls outside.
  auto clipped = line_components(f, true, Rat(1), Rat(1, 2), Rat(3, 2));
  REQUIRE(clipped.size() == 1);
  CHECK(clipped[0].first == Rat(1, 2));
  CHECK(clipped[0].second == Rat(3, 2));
  auto tail = line_components(f, true, Rat(1), Rat(5, 2), Rat(4));
  REQUIRE(tail.size() == 1);
  CHECK(tail[0].first == Rat(3));
  CHECK(tail[0].second == Rat(3));

  // Touching collinear pieces fuse into one component.
  Forest touching = {{ip(1, 0), ip(1, 1)}, {ip(1, 1), ip(1, 2)}};
  auto fused = line_components(touching, true, Rat(1), Rat(0), Rat(4));
  REQUIRE(fused.size() == 1);
  CHECK(fused[0].first == Rat(0));
  CHECK(fused[0].second == Rat(2));

  auto horiz = line_components(f, false, Rat(3), Rat(0), Rat(4));
  REQUIRE(horiz.size() == 1);
  CHECK(horiz[0].first == Rat(0));
  CHECK(horiz[0].second == Rat(2));

  CHECK(line_components(f, true, Rat(9, 2), Rat(0), Rat(4)).empty());
}

TEST_CASE("portal-free crossings are counted and extended to a portal") {
  Forest straight = {{hp(1, 1), hp(3, 1)}};

  // Dense lattice: the crossing (1, 1/2) already sits on a portal.
  Dissection dense = micro_tree(4, 6);
  CHECK(portal_free_line_components(dense, straight) == 0);
  CHECK(same_forest(satisfy_portal(dense, straight), straight));

  // Sparse lattice: the crossing must be walked to the nearest portal.
  Dissection sparse = micro_tree(1, 6);
  CHECK(portal_free_line_components(sparse, straight) == 1);
  Forest fixed = satisfy_portal(sparse, straight);
  CHECK(portal_free_line_components(sparse, fixed) == 0);
  CHECK(covers(fixed, straight));
  CHECK(added_length(straight, fixed) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(same_forest(satisfy_portal(sparse, fixed), fixed));
}

TEST_CASE("crowded sides are closed up by the boundary pass") {
  Dissection d = micro_tree(4, 1);

  // Nine disjoint strands through the side y = 1 of the unit square at the
  // origin; the per-square budget 4(D+1) is 8 and the per-side budget D is 1.
  Forest strands;
  for (int k = 0; k < 9; ++k) {
    Rat x(2 * k + 1, 32);
    strands.push_back({Point{x, Rat(1, 2)}, Point{x, Rat(3, 2)}});
  }

  CHECK(side_noncorner_overflows(d, strands) == 2);

  ConformanceReport rep = check(d, strands);
  CHECK(!rep.empty());
  CHECK(rep.side_overflows == 2);
  CHECK(!rep.to_text().empty());
  int sw = find_square(d, 0, 0, 1);
  REQUIRE(sw >= 0);
  const SquareViolations* v = find_violations(rep, sw);
  REQUIRE(v != nullptr);
  CHECK(v->boundary_excess == 1);
  CHECK(v->portal_free_components == 9);

  Forest closed = satisfy_boundary(d, strands);
  CHECK(side_noncorner_overflows(d, closed) == 0);
  CHECK(covers(closed, strands));
  CHECK(same_forest(satisfy_boundary(d, closed), closed));

  // The closure is the minimal span of the strand crossings.
  auto on_line = line_components(closed, false, Rat(1), Rat(0), Rat(4));
  REQUIRE(on_line.size() == 1);
  CHECK(on_line[0].first == Rat(1, 32));
  CHECK(on_line[0].second == Rat(17, 32));
}

TEST_CASE("strangers sharing a cell make it unhappy until augmented") {
  Dissection d = micro_tree(4, 6);

  Forest two = {
      {Point{Rat(1, 32), Rat(1, 2)}, Point{Rat(1, 32), Rat(3, 2)}},
      {Point{Rat(3, 32), Rat(1, 2)}, Point{Rat(3, 32), Rat(3, 2)}},
  };

  CHECK(unhappy_cell_count(d, two) == 4);

  ConformanceReport rep = check(d, two);
  int sw = find_square(d, 0, 0, 1);
  int nw = find_square(d, 0, 1, 1);
  REQUIRE(sw >= 0);
  REQUIRE(nw >= 0);
  const SquareViolations* vs = find_violations(rep, sw);
  const SquareViolations* vn = find_violations(rep, nw);
  REQUIRE(vs != nullptr);
  REQUIRE(vn != nullptr);
  CHECK(vs->unhappy_cells == std::vector<int>{8, 12});
  CHECK(vn->unhappy_cells == std::vector<int>{0, 4});

  Forest merged = satisfy_cell(d, two);
  CHECK(unhappy_cell_count(d, merged) == 0);
  CHECK(covers(merged, two));
}

TEST_CASE("the composite transform conforms, grows, and stabilizes") {
  DissectionParams params;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Instance inst = random_half_instance(900 + seed, 3, 8);
    if (inst.pair_ids.empty()) continue;
    ScaledInstance si = wrap_prescaled(inst);
    Dissection d = build_dissection(si.rounded, params, seed);

    Forest f = seed % 2 == 0 ? mst_baseline(inst) : l_paths(inst);
    REQUIRE(is_feasible(f, inst.point_pairs()));

    Forest tf = transform(d, f);
    CHECK(check(d, tf, 2).empty());
    CHECK(covers(tf, f));
    CHECK(is_feasible(tf, inst.point_pairs()));

    Forest tf2 = transform(d, tf);
    CHECK(added_length(tf, tf2) <= 1e-9);
    CHECK(same_forest(tf2, tf));
  }
}

TEST_CASE("canonicalize_forest merges, deduplicates, and orders") {
  // Overlapping collinear segments fuse.
  Forest overlap = {{ip(0, 0), ip(1, 0)}, {Point{Rat(1, 2), Rat(0)}, ip(2, 0)}};
  Forest c = canonicalize_forest(overlap);
  REQUIRE(c.size() == 1);
  CHECK(((c[0].a == ip(0, 0) && c[0].b == ip(2, 0)) ||
         (c[0].a == ip(2, 0) && c[0].b == ip(0, 0))));

  // Touching collinear segments fuse too.
  Forest touching = {{ip(0, 0), ip(1, 0)}, {ip(1, 0), ip(2, 0)}};
  CHECK(canonicalize_forest(touching).size() == 1);
  CHECK(same_forest(touching, overlap));

  // Duplicates vanish regardless of orientation.
  Forest dup = {{ip(0, 0), ip(1, 1)}, {ip(1, 1), ip(0, 0)}};
  CHECK(canonicalize_forest(dup).size() == 1);

  // Collinear but disjoint segments stay apart; perpendicular ones too.
  Forest gap = {{ip(0, 0), ip(1, 0)}, {ip(2, 0), ip(3, 0)}};
  CHECK(canonicalize_forest(gap).size() == 2);
  Forest corner = {{ip(0, 0), ip(1, 0)}, {ip(1, 0), ip(1, 1)}};
  CHECK(canonicalize_forest(corner).size() == 2);
  Forest crossing = {{ip(0, 0), ip(2, 2)}, {ip(0, 2), ip(2, 0)}};
  CHECK(canonicalize_forest(crossing).size() == 2);

  // Canonical form is order independent and idempotent.
  Forest shuffled = {overlap[1], overlap[0]};
  CHECK(same_forest(shuffled, overlap));
  Forest once = canonicalize_forest(overlap);
  CHECK(same_forest(canonicalize_forest(once), once));
}

TEST_CASE("added_length measures exactly the growth of the forest") {
  Forest f = {{ip(0, 0), ip(1, 0)}};
  CHECK(added_length(f, f) == doctest::Approx(0.0).epsilon(1e-12));
  Forest g = f;
  g.push_back({ip(0, 0), ip(0, 1)});
  CHECK(added_length(f, g) == doctest::Approx(1.0).epsilon(1e-9));
}
