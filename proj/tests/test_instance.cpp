#include "doctest.h"

#include "steiner/instance.hpp"

#include <algorithm>
#include <vector>

using namespace steiner;

namespace {

Point pt(long long x, long long y) { return Point{Rat(x), Rat(y)}; }

}  // namespace

TEST_CASE("make_instance dedups terminals by exact coordinate") {
  Instance inst = make_instance({
      {pt(0, 0), pt(1, 0)},
      {Point{Rat(2, 2), Rat(0)}, pt(0, 1)},  // 2/2 == 1, same terminal as (1,0)
  });
  CHECK(inst.n_terminals() == 3);
  CHECK(inst.n_pairs() == 2);
}

TEST_CASE("make_instance collapses duplicate pairs regardless of orientation") {
  Instance inst = make_instance({
      {pt(0, 0), pt(1, 0)},
      {pt(1, 0), pt(0, 0)},
      {pt(0, 0), pt(1, 0)},
  });
  CHECK(inst.n_terminals() == 2);
  CHECK(inst.n_pairs() == 1);
  auto [i, j] = inst.pair_ids[0];
  CHECK(i < j);
}

TEST_CASE("make_instance drops degenerate pairs and their orphaned terminals") {
  Instance inst = make_instance({
      {pt(5, 5), pt(5, 5)},
      {pt(0, 0), pt(1, 0)},
  });
  CHECK(inst.n_pairs() == 1);
  CHECK(inst.n_terminals() == 2);
  for (const Point& t : inst.terminals) CHECK(!(t == pt(5, 5)));

  Instance empty = make_instance({{pt(3, 3), pt(3, 3)}});
  CHECK(empty.n_pairs() == 0);
  CHECK(empty.n_terminals() == 0);
}

TEST_CASE("pair ids are sorted, in range and non-degenerate") {
  Instance inst = make_instance({
      {pt(4, 0), pt(0, 0)},
      {pt(2, 2), pt(4, 0)},
      {pt(9, 9), pt(2, 2)},
  });
  CHECK(std::is_sorted(inst.pair_ids.begin(), inst.pair_ids.end()));
  for (auto [i, j] : inst.pair_ids) {
    CHECK(i >= 0);
    CHECK(i < j);
    CHECK(j < inst.n_terminals());
  }
  auto pp = inst.point_pairs();
  REQUIRE(pp.size() == inst.pair_ids.size());
  for (size_t k = 0; k < pp.size(); ++k) {
    CHECK(pp[k].first == inst.terminals[inst.pair_ids[k].first]);
    CHECK(pp[k].second == inst.terminals[inst.pair_ids[k].second]);
  }
}

TEST_CASE("requirement_components follows the pair graph") {
  // Chain a-b-c plus a detached pair d-e.
  Instance inst = make_instance({
      {pt(0, 0), pt(1, 0)},
      {pt(1, 0), pt(2, 0)},
      {pt(10, 10), pt(11, 10)},
  });
  REQUIRE(inst.n_terminals() == 5);
  auto comps = requirement_components(inst);
  REQUIRE(comps.size() == 2);
  std::vector<size_t> sizes;
  for (const auto& c : comps) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<size_t>{2, 3});

  // Every terminal appears exactly once across components.
  std::vector<int> seen;
  for (const auto& c : comps) seen.insert(seen.end(), c.begin(), c.end());
  std::sort(seen.begin(), seen.end());
  CHECK(seen == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("error hierarchy keeps types distinguishable") {
  ParseError pe("bad token", 7);
  CHECK(pe.line == 7);
  CHECK(std::string(pe.what()) == "bad token");
  // ParamError, SizeError are runtime errors; InvariantError is a logic error.
  CHECK_THROWS_AS(throw ParamError("x"), std::runtime_error);
  CHECK_THROWS_AS(throw SizeError("x"), std::runtime_error);
  CHECK_THROWS_AS(throw InvariantError("x"), std::logic_error);
}
