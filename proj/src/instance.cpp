#include "steiner/instance.hpp"

#include <algorithm>
#include <map>

namespace steiner {

Instance make_instance(const std::vector<PointPair>& pairs) {
  Instance inst;
  std::map<Point, int, PointLess> id_of;
  auto intern = [&](const Point& p) {
    auto it = id_of.find(p);
    if (it != id_of.end()) return it->second;
    int id = static_cast<int>(inst.terminals.size());
    inst.terminals.push_back(p);
    id_of.emplace(p, id);
    return id;
  };
  std::vector<std::pair<int, int>> seen;
  for (const auto& [a, b] : pairs) {
    int i = intern(a);
    int j = intern(b);
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    seen.push_back({i, j});
  }
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  inst.pair_ids = std::move(seen);

  std::vector<int> remap(inst.terminals.size(), -1);
  std::vector<Point> kept;
  for (auto [i, j] : inst.pair_ids) {
    for (int t : {i, j}) {
      if (remap[t] < 0) {
        remap[t] = static_cast<int>(kept.size());
        kept.push_back(inst.terminals[t]);
      }
    }
  }
  for (auto& [i, j] : inst.pair_ids) {
    i = remap[i];
    j = remap[j];
    if (i > j) std::swap(i, j);
  }
  std::sort(inst.pair_ids.begin(), inst.pair_ids.end());
  inst.terminals = std::move(kept);
  return inst;
}

std::vector<std::vector<int>> requirement_components(const Instance& inst) {
  Dsu dsu(inst.n_terminals());
  for (auto [i, j] : inst.pair_ids) dsu.unite(i, j);
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < inst.n_terminals(); ++i) groups[dsu.find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  out.reserve(groups.size());
  for (auto& [root, ids] : groups) out.push_back(std::move(ids));
  return out;
}

}  // namespace steiner
