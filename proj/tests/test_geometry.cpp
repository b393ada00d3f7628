#include "doctest.h"

#include "steiner/geometry.hpp"
#include "steiner/rational.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace steiner;

namespace {

Point pt(long long x, long long y) { return Point{Rat(x), Rat(y)}; }
Point hpt(long long tx, long long ty) { return Point{Rat(tx, 2), Rat(ty, 2)}; }

Rat random_rat(std::mt19937_64& rng) {
  long long num = static_cast<long long>(rng() % 2001) - 1000;
  long long den = 1 + static_cast<long long>(rng() % 40);
  return Rat(num, den);
}

}  // namespace

TEST_CASE("rat_floor and rat_ceil agree with mathematical definitions") {
  CHECK(rat_floor(Rat(7, 2)) == 3);
  CHECK(rat_ceil(Rat(7, 2)) == 4);
  CHECK(rat_floor(Rat(-3, 2)) == -2);
  CHECK(rat_ceil(Rat(-3, 2)) == -1);
  CHECK(rat_floor(Rat(5)) == 5);
  CHECK(rat_ceil(Rat(5)) == 5);
  CHECK(rat_floor(Rat(-5)) == -5);
  CHECK(rat_ceil(Rat(-5)) == -5);
  CHECK(rat_floor(Rat(0)) == 0);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Rat x = random_rat(rng);
    Int f = rat_floor(x);
    Int c = rat_ceil(x);
    CHECK(Rat(f) <= x);
    CHECK(x < Rat(f + 1));
    CHECK(x <= Rat(c));
    CHECK(Rat(c - 1) < x);
  }
}

TEST_CASE("round_to_half lands on the nearest grid center, ties downward") {
  CHECK(round_to_half(Rat(0)) == Rat(-1, 2));
  CHECK(round_to_half(Rat(1)) == Rat(1, 2));
  CHECK(round_to_half(Rat(1, 4)) == Rat(1, 2));
  CHECK(round_to_half(Rat(-1, 4)) == Rat(-1, 2));
  CHECK(round_to_half(Rat(3, 2)) == Rat(3, 2));
  CHECK(round_to_half(Rat(-7, 2)) == Rat(-7, 2));

  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    Rat x = random_rat(rng);
    Rat r = round_to_half(x);
    CHECK(rat_den(r) == 2);
    CHECK((rat_num(r) % 2) != 0);
    Rat err = x - r;
    if (err < 0) err = -err;
    CHECK(err <= Rat(1, 2));
    if (err == Rat(1, 2)) CHECK(r < x);
    CHECK(round_to_half(r) == r);
  }
}

TEST_CASE("v2 extracts the 2-adic valuation") {
  CHECK(v2(Int(1)) == 0);
  CHECK(v2(Int(2)) == 1);
  CHECK(v2(Int(8)) == 3);
  CHECK(v2(Int(-12)) == 2);
  CHECK(v2(Int(3)) == 0);
  CHECK(v2(Int(96)) == 5);
}

TEST_CASE("ceil_sqrt is the least integer whose square dominates") {
  CHECK(ceil_sqrt(Rat(0)) == 0);
  CHECK(ceil_sqrt(Rat(1)) == 1);
  CHECK(ceil_sqrt(Rat(2)) == 2);
  CHECK(ceil_sqrt(Rat(4)) == 2);
  CHECK(ceil_sqrt(Rat(1, 4)) == 1);
  CHECK(ceil_sqrt(Rat(10000)) == 100);
  Int big = boost::multiprecision::pow(Int(10), 24);
  CHECK(ceil_sqrt(Rat(big)) == boost::multiprecision::pow(Int(10), 12));

  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    Rat x = random_rat(rng);
    if (x < 0) x = -x;
    Int n = ceil_sqrt(x);
    CHECK(Rat(n * n) >= x);
    if (n > 0) CHECK(Rat((n - 1) * (n - 1)) < x);
  }
}

TEST_CASE("parse_decimal handles signs, fractions and exponents") {
  CHECK(parse_decimal("1.5") == Rat(3, 2));
  CHECK(parse_decimal("-0.25") == Rat(-1, 4));
  CHECK(parse_decimal("+.5") == Rat(1, 2));
  CHECK(parse_decimal("2e3") == Rat(2000));
  CHECK(parse_decimal("1e-2") == Rat(1, 100));
  CHECK(parse_decimal("12.5E+1") == Rat(125));
  CHECK(parse_decimal("0") == Rat(0));
  CHECK(parse_decimal("007") == Rat(7));

  CHECK(!parse_decimal(""));
  CHECK(!parse_decimal("."));
  CHECK(!parse_decimal("-"));
  CHECK(!parse_decimal("1.2.3"));
  CHECK(!parse_decimal("e5"));
  CHECK(!parse_decimal("1e"));
  CHECK(!parse_decimal("1e+"));
  CHECK(!parse_decimal("5 "));
  CHECK(!parse_decimal(" 5"));
  CHECK(!parse_decimal("1e200001"));
}

TEST_CASE("rat_to_string renders integers bare and fractions as num/den") {
  CHECK(rat_to_string(Rat(-7)) == "-7");
  CHECK(rat_to_string(Rat(0)) == "0");
  CHECK(rat_to_string(Rat(3, 2)) == "3/2");
  CHECK(rat_to_string(Rat(-2, 6)) == "-1/3");
  CHECK(to_double(Rat(1, 2)) == 0.5);
}

TEST_CASE("lex_less orders points by x then y") {
  CHECK(lex_less(pt(0, 5), pt(1, 0)));
  CHECK(lex_less(pt(1, 0), pt(1, 1)));
  CHECK(!lex_less(pt(1, 1), pt(1, 1)));
  CHECK(!lex_less(pt(2, 0), pt(1, 9)));
  std::vector<Point> v = {pt(1, 1), pt(0, 2), pt(1, 0), pt(0, 1)};
  std::sort(v.begin(), v.end(), PointLess{});
  CHECK(v == std::vector<Point>{pt(0, 1), pt(0, 2), pt(1, 0), pt(1, 1)});
}

TEST_CASE("dist2, rat_sqrt and segment_length agree on exact cases") {
  CHECK(dist2(pt(0, 0), pt(3, 4)) == Rat(25));
  CHECK(dist2(hpt(1, 1), hpt(3, 1)) == Rat(1));
  CHECK(rat_sqrt(Rat(25)) == 5.0);
  CHECK(rat_sqrt(Rat(9, 4)) == 1.5);
  CHECK(rat_sqrt(Rat(0)) == 0.0);
  CHECK(rat_sqrt(Rat(2)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(segment_length({pt(0, 0), pt(3, 4)}) == 5.0);
  CHECK(segment_length({pt(2, 2), pt(2, 2)}) == 0.0);
}

TEST_CASE("LengthAccum compensates catastrophic cancellation") {
  LengthAccum acc;
  acc.add(1.0);
  acc.add(1e100);
  acc.add(1.0);
  acc.add(-1e100);
  CHECK(acc.value() == 2.0);

  Forest f;
  for (int i = 0; i < 1000; ++i) f.push_back({pt(i, 0), Point{Rat(i) + Rat(1, 10), Rat(0)}});
  CHECK(forest_length(f) == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("orient and on_segment classify relative positions") {
  CHECK(orient(pt(0, 0), pt(1, 0), pt(0, 1)) == 1);
  CHECK(orient(pt(0, 0), pt(0, 1), pt(1, 0)) == -1);
  CHECK(orient(pt(0, 0), pt(1, 1), pt(2, 2)) == 0);

  Segment s{pt(0, 0), pt(2, 2)};
  CHECK(on_segment(pt(0, 0), s));
  CHECK(on_segment(pt(2, 2), s));
  CHECK(on_segment(pt(1, 1), s));
  CHECK(!on_segment(pt(3, 3), s));
  CHECK(!on_segment(pt(1, 0), s));
}

TEST_CASE("segments_intersect covers crossings, touches and collinear overlaps") {
  CHECK(segments_intersect({pt(0, 0), pt(2, 2)}, {pt(0, 2), pt(2, 0)}));
  CHECK(!segments_intersect({pt(0, 0), pt(1, 0)}, {pt(0, 1), pt(1, 1)}));
  CHECK(segments_intersect({pt(0, 0), pt(1, 0)}, {pt(1, 0), pt(1, 1)}));
  CHECK(segments_intersect({pt(0, 0), pt(2, 0)}, {pt(1, 0), pt(3, 0)}));
  CHECK(!segments_intersect({pt(0, 0), pt(1, 0)}, {pt(2, 0), pt(3, 0)}));
  CHECK(segments_intersect({pt(0, 0), pt(2, 0)}, {pt(1, 0), pt(1, 5)}));
}

TEST_CASE("Dsu unites and finds with path compression") {
  Dsu dsu(6);
  CHECK(dsu.unite(0, 1));
  CHECK(dsu.unite(1, 2));
  CHECK(!dsu.unite(0, 2));
  CHECK(dsu.find(0) == dsu.find(2));
  CHECK(dsu.find(3) != dsu.find(0));
  CHECK(dsu.unite(3, 4));
  CHECK(dsu.find(3) == dsu.find(4));
  CHECK(dsu.find(5) == 5);
}

TEST_CASE("forest_components joins segments sharing any point") {
  Forest f = {
      {pt(0, 0), pt(2, 2)},  // crosses the next one at (1,1)
      {pt(0, 2), pt(2, 0)},
      {pt(5, 5), pt(6, 5)},  // touches the next one at an endpoint
      {pt(6, 5), pt(6, 6)},
      {pt(9, 9), pt(9, 10)},  // isolated
  };
  std::vector<int> comp = forest_components(f);
  REQUIRE(comp.size() == f.size());
  CHECK(comp[0] == comp[1]);
  CHECK(comp[2] == comp[3]);
  CHECK(comp[0] != comp[2]);
  CHECK(comp[4] != comp[0]);
  CHECK(comp[4] != comp[2]);
}

TEST_CASE("is_feasible requires endpoints on the network and connected mates") {
  Forest path = {{pt(0, 0), pt(1, 0)}, {pt(1, 0), pt(2, 0)}};
  CHECK(is_feasible(path, {{pt(0, 0), pt(2, 0)}}));
  // Pair endpoint in the middle of a segment counts as on the network.
  CHECK(is_feasible(path, {{pt(0, 0), Point{Rat(1, 2), Rat(0)}}}));
  // Endpoint off the network.
  CHECK(!is_feasible(path, {{pt(0, 0), pt(3, 0)}}));
  // Endpoints on different components.
  Forest split = {{pt(0, 0), pt(1, 0)}, {pt(3, 0), pt(4, 0)}};
  CHECK(!is_feasible(split, {{pt(0, 0), pt(4, 0)}}));
  // No pairs is trivially feasible.
  CHECK(is_feasible({}, {}));
}

TEST_CASE("mst_edges finds the minimum spanning tree") {
  std::vector<Point> pts = {pt(0, 0), pt(1, 0), pt(0, 1)};
  auto edges = mst_edges(pts);
  REQUIRE(edges.size() == 2);
  CHECK(forest_length(mst_forest(pts)) == 2.0);

  CHECK(mst_edges({}).empty());
  CHECK(mst_edges({pt(4, 2)}).empty());

  // Random sets: n-1 edges forming one component, never longer than a star.
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Point> q;
    int n = 2 + static_cast<int>(rng() % 7);
    for (int i = 0; i < n; ++i) q.push_back(pt(static_cast<long long>(rng() % 20), static_cast<long long>(rng() % 20)));
    auto es = mst_edges(q);
    Dsu dsu(q.size());
    int merges = 0;
    for (auto [a, b] : es) {
      if (dsu.unite(a, b)) ++merges;
    }
    CHECK(es.size() == q.size() - 1);
    CHECK(merges == static_cast<int>(q.size()) - 1);
    double star = 0;
    for (size_t i = 1; i < q.size(); ++i) star += segment_length({q[0], q[i]});
    CHECK(forest_length(mst_forest(q)) <= star + 1e-9);
  }
}

TEST_CASE("convex_hull and diameter2 on a square with interior point") {
  std::vector<Point> pts = {pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1), hpt(1, 1)};
  auto hull = convex_hull(pts);
  CHECK(hull.size() == 4);
  for (const Point& h : hull) CHECK(!(h == hpt(1, 1)));
  CHECK(diameter2(pts) == Rat(2));
  CHECK(diameter2({pt(7, 7)}) == Rat(0));

  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Point> q;
    int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) q.push_back(pt(static_cast<long long>(rng() % 15), static_cast<long long>(rng() % 15)));
    Rat best = 0;
    for (size_t i = 0; i < q.size(); ++i)
      for (size_t j = i + 1; j < q.size(); ++j) best = std::max(best, dist2(q[i], q[j]));
    CHECK(diameter2(q) == best);
  }
}

TEST_CASE("clip_segment_to_rect keeps exactly the part inside the rectangle") {
  // Straight crossing.
  auto c = clip_segment_to_rect({pt(-1, 0), pt(3, 0)}, Rat(0), Rat(-1), Rat(1), Rat(1));
  REQUIRE(c.has_value());
  CHECK(c->first == pt(0, 0));
  CHECK(c->second == pt(1, 0));

  // Fully inside: unchanged.
  auto in = clip_segment_to_rect({hpt(1, 1), hpt(1, 3)}, Rat(0), Rat(0), Rat(2), Rat(2));
  REQUIRE(in.has_value());
  CHECK(in->first == hpt(1, 1));
  CHECK(in->second == hpt(1, 3));

  // Fully outside.
  CHECK(!clip_segment_to_rect({pt(5, 5), pt(6, 6)}, Rat(0), Rat(0), Rat(1), Rat(1)).has_value());

  // Corner touch degenerates to a single point.
  auto corner = clip_segment_to_rect({pt(1, 1), pt(3, 3)}, Rat(0), Rat(0), Rat(1), Rat(1));
  REQUIRE(corner.has_value());
  CHECK(corner->first == corner->second);
  CHECK(corner->first == pt(1, 1));

  // Random segments against random rects: clipped part lies on the segment
  // and inside the rect, and interior endpoints survive.
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    auto coord = [&]() { return Rat(static_cast<long long>(rng() % 13) - 6); };
    Segment s{Point{coord(), coord()}, Point{coord(), coord()}};
    Rat x0 = coord(), y0 = coord();
    Rat x1 = x0 + 1 + Rat(static_cast<long long>(rng() % 4));
    Rat y1 = y0 + 1 + Rat(static_cast<long long>(rng() % 4));
    auto inside = [&](const Point& p) {
      return x0 <= p.x && p.x <= x1 && y0 <= p.y && p.y <= y1;
    };
    auto clip = clip_segment_to_rect(s, x0, y0, x1, y1);
    if (clip) {
      CHECK(inside(clip->first));
      CHECK(inside(clip->second));
      CHECK(on_segment(clip->first, s));
      CHECK(on_segment(clip->second, s));
      Segment cs{clip->first, clip->second};
      if (inside(s.a)) CHECK(on_segment(s.a, cs));
      if (inside(s.b)) CHECK(on_segment(s.b, cs));
    } else {
      CHECK(!inside(s.a));
      CHECK(!inside(s.b));
    }
  }
}
