#include "steiner/preprocess.hpp"

#include <algorithm>
#include <map>

namespace steiner {

Rat dist_q2(const Instance& inst) {
  Rat best = 0;
  for (const auto& comp : requirement_components(inst)) {
    for (size_t i = 0; i < comp.size(); ++i) {
      for (size_t j = i + 1; j < comp.size(); ++j) {
        Rat d2 = dist2(inst.terminals[comp[i]], inst.terminals[comp[j]]);
        if (d2 > best) best = d2;
      }
    }
  }
  return best;
}

namespace {

Instance induced(const Instance& inst, const std::vector<char>& side, char which) {
  std::vector<PointPair> pairs;
  for (auto [i, j] : inst.pair_ids) {
    if (side[i] == which) pairs.push_back({inst.terminals[i], inst.terminals[j]});
  }
  return make_instance(pairs);
}

void partition_rec(const Instance& inst, std::vector<Instance>& out) {
  if (inst.n_pairs() == 0) return;
  Rat db2 = dist_q2(inst);
  Int n = inst.n_terminals();
  auto mst = mst_edges(inst.terminals);
  int cut = -1;
  Rat cut_d2 = 0;
  for (int k = 0; k < static_cast<int>(mst.size()); ++k) {
    Rat d2 = dist2(inst.terminals[mst[k].first], inst.terminals[mst[k].second]);
    if (cut < 0 || d2 > cut_d2) {
      cut = k;
      cut_d2 = d2;
    }
  }
  if (cut < 0 || cut_d2 <= n * n * db2) {
    out.push_back(inst);
    return;
  }
  Dsu dsu(inst.n_terminals());
  for (int k = 0; k < static_cast<int>(mst.size()); ++k) {
    if (k != cut) dsu.unite(mst[k].first, mst[k].second);
  }
  int left_root = dsu.find(mst[cut].first);
  std::vector<char> side(inst.n_terminals());
  for (int i = 0; i < inst.n_terminals(); ++i) side[i] = dsu.find(i) == left_root ? 0 : 1;
  for (auto [i, j] : inst.pair_ids) {
    if (side[i] != side[j]) throw InvariantError("partition: cut edge separates a pair");
  }
  partition_rec(induced(inst, side, 0), out);
  partition_rec(induced(inst, side, 1), out);
}

Point scale_point(const Point& p, const Point& offset, const Rat& scale) {
  return Point{(p.x - offset.x) * scale, (p.y - offset.y) * scale};
}

Point round_point(const Point& p) { return Point{round_to_half(p.x), round_to_half(p.y)}; }

void fill_landing(ScaledInstance& si) {
  std::map<Point, int, PointLess> id_of;
  for (int i = 0; i < si.rounded.n_terminals(); ++i) id_of.emplace(si.rounded.terminals[i], i);
  auto land = [&](const Point& original) {
    Point r = round_point(scale_point(original, si.offset, si.scale));
    auto it = id_of.find(r);
    return it == id_of.end() ? -1 : it->second;
  };
  si.source_landing.clear();
  for (const auto& [a, b] : si.source_pairs) si.source_landing.push_back({land(a), land(b)});
}

}  // namespace

std::vector<Instance> partition(const Instance& inst) {
  std::vector<Instance> out;
  partition_rec(inst, out);
  return out;
}

ScaledInstance scale_and_round(const Instance& inst, const Rat& epsilon) {
  if (epsilon <= 0) throw ParamError("epsilon must be positive");
  ScaledInstance si;
  si.source_pairs = inst.point_pairs();
  if (inst.n_pairs() == 0) {
    fill_landing(si);
    return si;
  }
  Rat db2 = dist_q2(inst);
  Int n = inst.n_terminals();
  // Smallest dyadic N/2^64 whose square is >= 3200 n^2 / (epsilon^2 db2),
  // i.e. the square of 40 sqrt(2) n / (epsilon dist_q).
  Rat target2 = Rat(3200) * n * n / (epsilon * epsilon * db2);
  Int two64 = Int(1) << 64;
  Int num = ceil_sqrt(target2 * two64 * two64);
  si.scale = Rat(num, two64);
  Rat min_x = inst.terminals[0].x;
  Rat min_y = inst.terminals[0].y;
  for (const auto& t : inst.terminals) {
    if (t.x < min_x) min_x = t.x;
    if (t.y < min_y) min_y = t.y;
  }
  si.offset = Point{Rat(rat_floor(min_x)), Rat(rat_floor(min_y))};
  std::vector<PointPair> rounded_pairs;
  for (const auto& [a, b] : si.source_pairs) {
    rounded_pairs.push_back({round_point(scale_point(a, si.offset, si.scale)),
                             round_point(scale_point(b, si.offset, si.scale))});
  }
  si.rounded = make_instance(rounded_pairs);
  fill_landing(si);
  return si;
}

ScaledInstance wrap_prescaled(const Instance& inst) {
  for (const auto& t : inst.terminals) {
    if (rat_den(t.x * 2) != 1 || rat_den(t.y * 2) != 1) {
      throw ParamError("prescaled instances need half-integer coordinates");
    }
    if (rat_den(t.x) == 1 || rat_den(t.y) == 1) {
      throw ParamError("prescaled instances need strict half-integer coordinates");
    }
  }
  ScaledInstance si;
  si.prescaled = true;
  si.source_pairs = inst.point_pairs();
  si.rounded = inst;
  fill_landing(si);
  return si;
}

Forest unround(const Forest& solution, const ScaledInstance& si) {
  Forest out;
  auto back = [&](const Point& p) {
    return Point{p.x / si.scale + si.offset.x, p.y / si.scale + si.offset.y};
  };
  for (const auto& s : solution) {
    Point a = back(s.a);
    Point b = back(s.b);
    if (!(a == b)) out.push_back({a, b});
  }
  for (size_t k = 0; k < si.source_pairs.size(); ++k) {
    const auto& [a, b] = si.source_pairs[k];
    auto [ia, ib] = si.source_landing[k];
    if (ia < 0 && ib < 0) {
      if (!(a == b)) out.push_back({a, b});
      continue;
    }
    for (auto [orig, id] : {std::pair<const Point*, int>{&a, ia}, {&b, ib}}) {
      if (id < 0) continue;
      Point image = back(si.rounded.terminals[id]);
      if (!(*orig == image)) out.push_back({*orig, image});
    }
  }
  return out;
}

}  // namespace steiner
