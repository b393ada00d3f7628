#include "steiner/configuration.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace steiner {

namespace {

bool sorted_unique_in_range(const std::vector<int>& v, int lo, int hi) {
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] < lo || v[i] >= hi) return false;
    if (i > 0 && v[i] <= v[i - 1]) return false;
  }
  return true;
}

template <typename Get>
bool globally_disjoint(const std::vector<Part>& parts, Get get) {
  std::set<int> seen;
  for (const auto& p : parts) {
    for (int x : get(p)) {
      if (!seen.insert(x).second) return false;
    }
  }
  return true;
}

bool is_rgs(const std::vector<int>& g) {
  int mx = -1;
  for (int v : g) {
    if (v < 0 || v > mx + 1) return false;
    mx = std::max(mx, v);
  }
  return true;
}

}  // namespace

SquareContext make_square_context(const Dissection& d, int sq) {
  SquareContext ctx;
  ctx.sq = sq;
  ctx.B = d.params.B;
  ctx.portals = d.safe_portals_of(sq);
  ctx.terminals = d.squares[sq].terminal_ids;
  return ctx;
}

void canonicalize(Configuration& cfg) {
  std::vector<int> order(cfg.parts.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return cfg.parts[a] < cfg.parts[b]; });
  std::vector<Part> parts;
  std::vector<int> groups;
  parts.reserve(order.size());
  groups.reserve(order.size());
  std::map<int, int> relabel;
  for (int idx : order) {
    parts.push_back(std::move(cfg.parts[idx]));
    int g = cfg.out_group.empty() ? 0 : cfg.out_group[idx];
    auto [it, fresh] = relabel.emplace(g, static_cast<int>(relabel.size()));
    (void)fresh;
    groups.push_back(it->second);
  }
  cfg.parts = std::move(parts);
  cfg.out_group = std::move(groups);
}

bool is_valid_structure(const SquareContext& ctx, const Configuration& cfg, long long D) {
  long long cap = 4 * (D + 1);
  if (static_cast<long long>(cfg.parts.size()) > cap) return false;
  if (cfg.out_group.size() != cfg.parts.size()) return false;
  if (!is_rgs(cfg.out_group)) return false;
  int n_portals = static_cast<int>(ctx.portals.size());
  int n_cells = static_cast<int>(ctx.B * ctx.B);
  long long portal_total = 0;
  std::set<int> term_universe(ctx.terminals.begin(), ctx.terminals.end());
  for (const auto& p : cfg.parts) {
    if (p.portals.empty() || p.cells.empty()) return false;
    if (!sorted_unique_in_range(p.portals, 0, n_portals)) return false;
    if (!sorted_unique_in_range(p.cells, 0, n_cells)) return false;
    for (size_t i = 0; i < p.terms.size(); ++i) {
      if (i > 0 && p.terms[i] <= p.terms[i - 1]) return false;
      if (!term_universe.count(p.terms[i])) return false;
    }
    portal_total += static_cast<long long>(p.portals.size());
  }
  if (portal_total > cap) return false;
  auto get_portals = [](const Part& p) -> const std::vector<int>& { return p.portals; };
  auto get_cells = [](const Part& p) -> const std::vector<int>& { return p.cells; };
  auto get_terms = [](const Part& p) -> const std::vector<int>& { return p.terms; };
  return globally_disjoint(cfg.parts, get_portals) && globally_disjoint(cfg.parts, get_cells) &&
         globally_disjoint(cfg.parts, get_terms);
}

bool is_valid_requirements(const SquareContext& ctx, const Configuration& cfg,
                           const std::vector<std::pair<int, int>>& pair_ids) {
  std::set<int> inside(ctx.terminals.begin(), ctx.terminals.end());
  std::map<int, int> part_of;
  for (size_t i = 0; i < cfg.parts.size(); ++i) {
    for (int t : cfg.parts[i].terms) part_of[t] = static_cast<int>(i);
  }
  for (auto [t, u] : pair_ids) {
    bool ti = inside.count(t) > 0;
    bool ui = inside.count(u) > 0;
    if (!ti && !ui) continue;
    auto pt = part_of.find(t);
    auto pu = part_of.find(u);
    if (ti != ui) {
      int in_t = ti ? t : u;
      if (part_of.find(in_t) == part_of.end()) return false;
      continue;
    }
    bool lt = pt != part_of.end();
    bool lu = pu != part_of.end();
    if (!lt && !lu) continue;
    if (lt != lu) return false;
    if (pt->second == pu->second) continue;
    if (cfg.out_group[pt->second] != cfg.out_group[pu->second]) return false;
  }
  return true;
}

bool is_valid(const SquareContext& ctx, const Configuration& cfg, long long D,
              const std::vector<std::pair<int, int>>& pair_ids) {
  return is_valid_structure(ctx, cfg, D) && is_valid_requirements(ctx, cfg, pair_ids);
}

std::vector<Configuration> enumerate_valid(const SquareContext& ctx, long long D,
                                           const std::vector<std::pair<int, int>>& pair_ids) {
  int n_portals = static_cast<int>(ctx.portals.size());
  int n_cells = static_cast<int>(ctx.B * ctx.B);
  int n_terms = static_cast<int>(ctx.terminals.size());
  int n = n_portals + n_cells + n_terms;
  if (n > 18) throw SizeError("configuration enumeration is only for tiny squares");
  long long cap = 4 * (D + 1);

  std::vector<Configuration> out;
  std::vector<int> label(n, -1);
  auto build = [&]() {
    int k = 0;
    for (int v : label) k = std::max(k, v + 1);
    Configuration base;
    base.parts.assign(k, {});
    for (int i = 0; i < n; ++i) {
      if (label[i] < 0) continue;
      Part& p = base.parts[label[i]];
      if (i < n_portals) {
        p.portals.push_back(i);
      } else if (i < n_portals + n_cells) {
        p.cells.push_back(i - n_portals);
      } else {
        p.terms.push_back(ctx.terminals[i - n_portals - n_cells]);
      }
    }
    for (const auto& p : base.parts) {
      if (p.portals.empty() || p.cells.empty()) return;
    }
    std::vector<int> groups(k, 0);
    auto emit_groups = [&](auto&& self, int idx, int used) -> void {
      if (idx == k) {
        Configuration cfg = base;
        cfg.out_group = groups;
        if (!is_valid(ctx, cfg, D, pair_ids)) return;
        canonicalize(cfg);
        out.push_back(std::move(cfg));
        return;
      }
      for (int g = 0; g <= used; ++g) {
        groups[idx] = g;
        self(self, idx + 1, std::max(used, g + 1));
      }
    };
    if (k == 0) {
      Configuration cfg = base;
      if (is_valid(ctx, cfg, D, pair_ids)) out.push_back(std::move(cfg));
      return;
    }
    emit_groups(emit_groups, 0, 0);
  };
  auto rec = [&](auto&& self, int idx, int used) -> void {
    if (used > cap) return;
    if (idx == n) {
      build();
      return;
    }
    for (int g = -1; g <= used; ++g) {
      label[idx] = g;
      self(self, idx + 1, std::max(used, g + 1));
    }
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

struct ChildOffsets {
  long long ox, oy;
};

ChildOffsets child_offsets(long long B, int quadrant) {
  switch (quadrant) {
    case 0: return {0, 0};
    case 1: return {B, 0};
    case 2: return {0, B};
    default: return {B, B};
  }
}

}  // namespace

JoinResult join_children(const Dissection& d, int parent_sq, const SquareContext& parent_ctx,
                         const SquareContext child_ctx[4], const Configuration child_cfg[4]) {
  (void)parent_sq;
  long long B = d.params.B;
  std::vector<std::pair<int, int>> nodes;
  std::vector<std::vector<int>> node_id(4);
  for (int i = 0; i < 4; ++i) {
    node_id[i].resize(child_cfg[i].parts.size());
    for (size_t j = 0; j < child_cfg[i].parts.size(); ++j) {
      node_id[i][j] = static_cast<int>(nodes.size());
      nodes.push_back({i, static_cast<int>(j)});
    }
  }
  Dsu dsu(static_cast<int>(nodes.size()));
  std::map<Point, int, PointLess> first_at;
  for (int i = 0; i < 4; ++i) {
    for (size_t j = 0; j < child_cfg[i].parts.size(); ++j) {
      for (int pid : child_cfg[i].parts[j].portals) {
        const Point& pt = child_ctx[i].portals[pid];
        auto [it, fresh] = first_at.emplace(pt, node_id[i][j]);
        if (!fresh) dsu.unite(it->second, node_id[i][j]);
      }
    }
  }

  std::map<Point, int, PointLess> parent_pid;
  for (size_t i = 0; i < parent_ctx.portals.size(); ++i) {
    parent_pid.emplace(parent_ctx.portals[i], static_cast<int>(i));
  }

  JoinResult jr;
  std::map<int, int> class_of_root;
  for (size_t ni = 0; ni < nodes.size(); ++ni) {
    int root = dsu.find(static_cast<int>(ni));
    auto [it, fresh] = class_of_root.emplace(root, static_cast<int>(jr.classes.size()));
    if (fresh) jr.classes.push_back({});
    JoinClass& cls = jr.classes[it->second];
    auto [ci, pj] = nodes[ni];
    cls.child_parts.push_back({ci, pj});
    const Part& part = child_cfg[ci].parts[pj];
    for (int pid : part.portals) {
      const Point& pt = child_ctx[ci].portals[pid];
      auto pit = parent_pid.find(pt);
      if (pit != parent_pid.end()) cls.parent_portals.push_back(pit->second);
    }
    auto [ox, oy] = child_offsets(B, ci);
    for (int cell : part.cells) {
      long long r = cell / B;
      long long c = cell % B;
      cls.parent_cells.push_back(static_cast<int>((r + oy) / 2 * B + (c + ox) / 2));
    }
    cls.terms.insert(cls.terms.end(), part.terms.begin(), part.terms.end());
  }

  std::set<int> used_cells;
  for (auto& cls : jr.classes) {
    auto dedupe = [](std::vector<int>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedupe(cls.parent_portals);
    dedupe(cls.parent_cells);
    dedupe(cls.terms);
    if (cls.parent_portals.empty()) {
      jr.lifted_to.push_back(-1);
      continue;
    }
    jr.lifted_to.push_back(static_cast<int>(jr.lifted.parts.size()));
    jr.lifted.parts.push_back(Part{cls.parent_portals, cls.parent_cells, cls.terms});
    for (int cell : cls.parent_cells) {
      if (!used_cells.insert(cell).second) jr.cells_disjoint = false;
    }
  }
  return jr;
}

bool are_consistent(const Dissection& d, int parent_sq, const SquareContext& parent_ctx,
                    const SquareContext child_ctx[4], const Configuration child_cfg[4],
                    const Configuration& parent_cfg,
                    const std::vector<std::pair<int, int>>& pair_ids) {
  JoinResult jr = join_children(d, parent_sq, parent_ctx, child_ctx, child_cfg);
  if (!jr.cells_disjoint) return false;

  std::vector<Part> lifted = jr.lifted.parts;
  std::vector<Part> declared = parent_cfg.parts;
  std::sort(lifted.begin(), lifted.end());
  std::sort(declared.begin(), declared.end());
  if (lifted != declared) return false;

  // Parent part index (in parent_cfg order) per join class, -1 if dropped.
  std::vector<int> parent_part_of_class(jr.classes.size(), -1);
  {
    std::map<Part, int> declared_at;
    for (size_t i = 0; i < parent_cfg.parts.size(); ++i) {
      declared_at.emplace(parent_cfg.parts[i], static_cast<int>(i));
    }
    for (size_t c = 0; c < jr.classes.size(); ++c) {
      if (jr.lifted_to[c] < 0) continue;
      parent_part_of_class[c] = declared_at.at(jr.lifted.parts[jr.lifted_to[c]]);
    }
  }

  std::map<std::pair<int, int>, int> class_of_child_part;
  for (size_t c = 0; c < jr.classes.size(); ++c) {
    for (auto cp : jr.classes[c].child_parts) class_of_child_part[cp] = static_cast<int>(c);
  }

  // External consistency, one child at a time.
  for (int i = 0; i < 4; ++i) {
    int k = static_cast<int>(child_cfg[i].parts.size());
    for (int a = 0; a < k; ++a) {
      for (int b = a + 1; b < k; ++b) {
        bool lhs = child_cfg[i].out_group[a] == child_cfg[i].out_group[b];
        int ca = class_of_child_part.at({i, a});
        int cb = class_of_child_part.at({i, b});
        bool rhs = ca == cb;
        if (!rhs) {
          int pa = parent_part_of_class[ca];
          int pb = parent_part_of_class[cb];
          if (pa >= 0 && pb >= 0 && parent_cfg.out_group[pa] == parent_cfg.out_group[pb]) {
            rhs = true;
          }
        }
        if (lhs != rhs) return false;
      }
    }
  }

  // Terminal consistency.
  std::map<int, int> child_of_term;
  std::map<int, int> class_of_term;
  for (int i = 0; i < 4; ++i) {
    for (int t : child_ctx[i].terminals) child_of_term[t] = i;
    for (size_t j = 0; j < child_cfg[i].parts.size(); ++j) {
      for (int t : child_cfg[i].parts[j].terms) {
        class_of_term[t] = class_of_child_part.at({i, static_cast<int>(j)});
      }
    }
  }
  for (auto [t, u] : pair_ids) {
    auto it = child_of_term.find(t);
    auto iu = child_of_term.find(u);
    bool tin = it != child_of_term.end();
    bool uin = iu != child_of_term.end();
    if (!tin && !uin) continue;
    if (tin && uin && it->second == iu->second) continue;
    if (tin != uin) {
      int inside = tin ? t : u;
      auto ct = class_of_term.find(inside);
      if (ct == class_of_term.end()) return false;
      if (jr.lifted_to[ct->second] < 0) return false;
      continue;
    }
    auto ct = class_of_term.find(t);
    auto cu = class_of_term.find(u);
    if (ct == class_of_term.end() || cu == class_of_term.end()) return false;
    if (ct->second == cu->second) continue;
    int pt = parent_part_of_class[ct->second];
    int pu = parent_part_of_class[cu->second];
    if (pt < 0 || pu < 0) return false;
    if (parent_cfg.out_group[pt] != parent_cfg.out_group[pu]) return false;
  }
  (void)d;
  return true;
}

std::string dump(const SquareContext& ctx, const Configuration& cfg) {
  std::ostringstream os;
  os << "square " << ctx.sq << ": " << cfg.parts.size() << " part(s)\n";
  for (size_t i = 0; i < cfg.parts.size(); ++i) {
    const Part& p = cfg.parts[i];
    os << "  part " << i << ": portals={";
    for (size_t j = 0; j < p.portals.size(); ++j) {
      if (j) os << ",";
      os << p.portals[j];
    }
    os << "} cells={";
    for (size_t j = 0; j < p.cells.size(); ++j) {
      if (j) os << ",";
      os << "(" << p.cells[j] / ctx.B << "," << p.cells[j] % ctx.B << ")";
    }
    os << "} terms={";
    for (size_t j = 0; j < p.terms.size(); ++j) {
      if (j) os << ",";
      os << p.terms[j];
    }
    os << "} out=" << (i < cfg.out_group.size() ? cfg.out_group[i] : -1) << "\n";
  }
  return os.str();
}

}  // namespace steiner
