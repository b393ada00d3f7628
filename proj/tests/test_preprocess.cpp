#include "doctest.h"

#include "steiner/geometry.hpp"
#include "steiner/instance.hpp"
#include "steiner/oracles.hpp"
#include "steiner/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace steiner;

namespace {

Point pt(long long x, long long y) { return Point{Rat(x), Rat(y)}; }

std::vector<PointPair> sorted_point_pairs(const Instance& inst) {
  auto pp = inst.point_pairs();
  for (auto& [a, b] : pp) {
    if (lex_less(b, a)) std::swap(a, b);
  }
  std::sort(pp.begin(), pp.end(), [](const PointPair& l, const PointPair& r) {
    if (!(l.first == r.first)) return lex_less(l.first, r.first);
    return lex_less(l.second, r.second);
  });
  return pp;
}

}  // namespace

TEST_CASE("dist_q2 is the largest requirement component diameter, squared") {
  // One merged chain spanning (0,0)..(1,1) plus a short detached pair.
  Instance inst = make_instance({
      {pt(0, 0), pt(1, 0)},
      {pt(1, 0), pt(1, 1)},
      {pt(10, 10), Point{Rat(21, 2), Rat(10)}},
  });
  CHECK(dist_q2(inst) == Rat(2));

  // Single pair: exactly its squared length.
  CHECK(dist_q2(make_instance({{pt(0, 0), pt(0, 5)}})) == Rat(25));
}

TEST_CASE("partition keeps single requirement components whole") {
  Instance inst = make_instance({
      {pt(0, 0), pt(1000, 0)},
      {pt(1000, 0), pt(1000, 1000)},
  });
  auto subs = partition(inst);
  REQUIRE(subs.size() == 1);
  CHECK(subs[0].n_pairs() == 2);
}

TEST_CASE("partition separates far clusters and preserves every pair") {
  Instance inst = make_instance({
      {pt(0, 0), pt(1, 1)},
      {pt(2, 0), pt(0, 2)},
      {pt(1000000, 1000000), pt(1000001, 1000000)},
      {pt(1000000, 1000002), pt(1000002, 1000000)},
  });
  auto subs = partition(inst);
  REQUIRE(subs.size() == 2);

  std::vector<PointPair> all;
  for (const Instance& s : subs) {
    auto pp = sorted_point_pairs(s);
    all.insert(all.end(), pp.begin(), pp.end());
    // No cluster straddles: inside one subinstance every terminal is near
    // every other relative to the split threshold.
    CHECK(s.n_pairs() == 2);
  }
  std::sort(all.begin(), all.end(), [](const PointPair& l, const PointPair& r) {
    if (!(l.first == r.first)) return lex_less(l.first, r.first);
    return lex_less(l.second, r.second);
  });
  CHECK(all == sorted_point_pairs(inst));
}

TEST_CASE("partition output obeys the diameter guarantee") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PointPair> pairs;
    int n = 2 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) {
      long long bx = (rng() % 2) ? 0 : 100000;
      pairs.push_back({pt(bx + static_cast<long long>(rng() % 50), static_cast<long long>(rng() % 50)),
                       pt(bx + static_cast<long long>(rng() % 50), static_cast<long long>(rng() % 50))});
    }
    Instance inst = make_instance(pairs);
    if (inst.n_pairs() == 0) continue;
    for (const Instance& s : partition(inst)) {
      REQUIRE(s.n_pairs() >= 1);
      Rat n4 = Rat(s.n_terminals()) * s.n_terminals();
      n4 *= n4;
      CHECK(diameter2(s.terminals) <= n4 * dist_q2(s));
    }
  }
}

TEST_CASE("scale_and_round picks the least dyadic scale above the target") {
  Instance inst = make_instance({{pt(0, 0), pt(0, 5)}});
  ScaledInstance si = scale_and_round(inst, Rat(1));

  // Target is 16*sqrt(2) here (two terminals, requirement diameter 5), so
  // scale^2 must reach 512 and backing off one unit of 2^-64 must not.
  Int unit = boost::multiprecision::pow(Int(2), 64);
  CHECK(rat_den(si.scale * Rat(unit)) == 1);
  CHECK(si.scale * si.scale >= Rat(512));
  Rat back = si.scale - Rat(1, unit);
  CHECK(back * back < Rat(512));
  CHECK(!si.prescaled);
}

TEST_CASE("scale_and_round lands terminals on half-integers within the displacement bound") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<PointPair> pairs;
    int n = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) {
      auto coord = [&]() { return Rat(static_cast<long long>(rng() % 2000) - 1000, 1 + static_cast<long long>(rng() % 7)); };
      pairs.push_back({Point{coord(), coord()}, Point{coord(), coord()}});
    }
    Instance inst = make_instance(pairs);
    if (inst.n_pairs() == 0) continue;
    ScaledInstance si = scale_and_round(inst, Rat(1, 2));

    for (const Point& t : si.rounded.terminals) {
      for (const Rat& c : {t.x, t.y}) {
        CHECK(rat_den(c) == 2);
        CHECK((rat_num(c) % 2) != 0);
      }
    }

    REQUIRE(si.source_pairs.size() == si.source_landing.size());
    for (size_t k = 0; k < si.source_pairs.size(); ++k) {
      const auto& [pa, pb] = si.source_pairs[k];
      auto [la, lb] = si.source_landing[k];
      for (auto [p, l] : {std::pair<Point, int>{pa, la}, {pb, lb}}) {
        if (l < 0) continue;
        Point scaled{(p.x - si.offset.x) * si.scale, (p.y - si.offset.y) * si.scale};
        CHECK(dist2(scaled, si.rounded.terminals[l]) <= Rat(1, 2));
      }
    }
  }
}

TEST_CASE("pairs far smaller than the requirement diameter collapse in rounding") {
  Instance inst = make_instance({
      {pt(0, 0), pt(0, 5)},
      {pt(2, 2), Point{Rat(2), Rat(2) + Rat(1, 1000000000)}},
  });
  ScaledInstance si = scale_and_round(inst, Rat(1));
  REQUIRE(si.source_pairs.size() == 2);
  CHECK(si.rounded.n_pairs() == 1);
  int collapsed = 0;
  for (auto [la, lb] : si.source_landing) {
    if (la < 0 && lb < 0) ++collapsed;
  }
  CHECK(collapsed == 1);
}

TEST_CASE("wrap_prescaled accepts half-integers only") {
  Instance ok = make_instance({{Point{Rat(1, 2), Rat(3, 2)}, Point{Rat(5, 2), Rat(3, 2)}}});
  ScaledInstance si = wrap_prescaled(ok);
  CHECK(si.prescaled);
  CHECK(si.scale == Rat(1));
  CHECK(si.offset == Point{Rat(0), Rat(0)});
  CHECK(si.rounded.terminals == ok.terminals);
  CHECK(si.rounded.pair_ids == ok.pair_ids);

  Instance bad = make_instance({{pt(0, 0), pt(1, 0)}});
  CHECK_THROWS_AS(wrap_prescaled(bad), ParamError);
}

TEST_CASE("unround restores feasibility in original coordinates") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<PointPair> pairs;
    int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) {
      auto coord = [&]() { return Rat(static_cast<long long>(rng() % 200), 3); };
      pairs.push_back({Point{coord(), coord()}, Point{coord(), coord()}});
    }
    Instance inst = make_instance(pairs);
    if (inst.n_pairs() == 0) continue;
    ScaledInstance si = scale_and_round(inst, Rat(1, 2));
    if (si.rounded.n_pairs() == 0) continue;

    Forest sol = mst_baseline(si.rounded);
    Forest un = unround(sol, si);

    std::vector<PointPair> wanted;
    for (size_t k = 0; k < si.source_pairs.size(); ++k) {
      auto [la, lb] = si.source_landing[k];
      if (la >= 0 && lb >= 0 && la != lb) wanted.push_back(si.source_pairs[k]);
    }
    CHECK(is_feasible(un, wanted));

    // Unrounding scales the solution back and adds one short connector per
    // landed endpoint, each at most (1/sqrt 2)/scale long.
    double scale = to_double(si.scale);
    double budget = forest_length(sol) / scale +
                    2.0 * static_cast<double>(si.source_pairs.size()) / (std::sqrt(2.0) * scale);
    CHECK(forest_length(un) <= budget + 1e-9);
  }
}
