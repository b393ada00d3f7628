#include "steiner/dp.hpp"

#include "steiner/conformance.hpp"
#include "steiner/oracles.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <tuple>

namespace steiner {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct DpPart {
  std::vector<int> portals;  // global point ids, sorted
  std::uint64_t cells = 0;   // cell mask in the owning square's frame
  std::vector<int> pairs;    // pending pair ids, sorted

  auto tie() const { return std::make_tuple(std::cref(portals), cells, std::cref(pairs)); }
  bool operator<(const DpPart& o) const {
    if (portals != o.portals) return portals < o.portals;
    if (cells != o.cells) return cells < o.cells;
    return pairs < o.pairs;
  }
  bool operator==(const DpPart& o) const {
    return portals == o.portals && cells == o.cells && pairs == o.pairs;
  }
};

struct DpState {
  std::vector<DpPart> parts;
  double value = 0;
  Forest forest;
};

struct JoinIn {
  std::vector<DpPart> parts;
  double value = 0;
  int left = -1;   // index into the previous stage (or child table)
  int right = -1;  // unused for translated child states
};

DpOptions effective_options(const Dissection& d, DpOptions opt) {
  if (opt.exhaustive) {
    long long portal_budget = 4 * (d.params.D + 1);
    // The tree oracle underneath the catalog handles at most 10 required
    // points, so one part can hold at most 9 portals plus the terminal.
    opt.part_portals = static_cast<int>(std::min<long long>(9, portal_budget));
    opt.parts_per_square = static_cast<int>(std::min<long long>(64, portal_budget));
    opt.grid_per_axis = 16;
    opt.leaf_candidates = 0;
    opt.leaf_state_cap = 0;
    opt.table_cap = 0;
    opt.stage_cap = 0;
  }
  return opt;
}

std::vector<DpPart> merge_part_lists(const std::vector<DpPart>& a, const std::vector<DpPart>& b) {
  std::vector<const DpPart*> all;
  all.reserve(a.size() + b.size());
  for (const auto& p : a) all.push_back(&p);
  for (const auto& p : b) all.push_back(&p);
  int n = static_cast<int>(all.size());
  Dsu uf(n);
  std::map<int, int> first_with;
  for (int i = 0; i < n; ++i) {
    for (int portal : all[i]->portals) {
      auto [it, fresh] = first_with.emplace(portal, i);
      if (!fresh) uf.unite(it->second, i);
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[uf.find(i)].push_back(i);
  std::vector<DpPart> out;
  out.reserve(groups.size());
  for (auto& [root, members] : groups) {
    DpPart merged;
    std::vector<int> pairs_acc;
    for (int i : members) {
      merged.portals.insert(merged.portals.end(), all[i]->portals.begin(), all[i]->portals.end());
      merged.cells |= all[i]->cells;
      pairs_acc.insert(pairs_acc.end(), all[i]->pairs.begin(), all[i]->pairs.end());
    }
    std::sort(merged.portals.begin(), merged.portals.end());
    merged.portals.erase(std::unique(merged.portals.begin(), merged.portals.end()),
                         merged.portals.end());
    std::sort(pairs_acc.begin(), pairs_acc.end());
    // A pair id appearing twice was joined across the merge: both endpoints
    // now sit on one component, so the obligation disappears.
    for (size_t i = 0; i < pairs_acc.size();) {
      if (i + 1 < pairs_acc.size() && pairs_acc[i] == pairs_acc[i + 1]) {
        i += 2;
      } else {
        merged.pairs.push_back(pairs_acc[i]);
        i += 1;
      }
    }
    out.push_back(std::move(merged));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Solver {
  const Dissection& d;
  DpOptions opt;
  bool keep_tables = false;
  DpOutcome out;
  long long B;
  long long portal_budget;
  std::map<Point, int, PointLess> point_ids;
  std::vector<Point> points_by_id;
  std::vector<std::vector<int>> pairs_of_term;
  std::vector<std::vector<DpState>> tables;

  // Portals that can still take part in a future merge: the parent-safe
  // ones, plus (between the half joins and the full join) points on the
  // yet-unmerged midline. Anything else is dead weight; parts that lose all
  // portals must have settled their pair obligations.
  struct Interface {
    const std::set<int>* safe = nullptr;
    bool use_line = false;
    Rat line_y;
  };

  bool alive(const Interface& ifc, int portal_id) const {
    if (ifc.safe->count(portal_id)) return true;
    return ifc.use_line && points_by_id[portal_id].y == ifc.line_y;
  }

  // Returns false when the state is infeasible (a part with pending pairs
  // lost its last live portal). Otherwise prunes dead portals and closed
  // parts in place.
  bool sweep(std::vector<DpPart>& parts, const Interface& ifc) const {
    std::vector<DpPart> kept;
    kept.reserve(parts.size());
    for (DpPart& p : parts) {
      std::vector<int> live;
      for (int portal : p.portals) {
        if (alive(ifc, portal)) live.push_back(portal);
      }
      if (live.empty()) {
        if (!p.pairs.empty()) return false;
        continue;
      }
      p.portals = std::move(live);
      kept.push_back(std::move(p));
    }
    std::sort(kept.begin(), kept.end());
    parts = std::move(kept);
    return true;
  }

  Solver(const Dissection& dis, const DpOptions& options)
      : d(dis), opt(effective_options(dis, options)) {
    if (d.params.B > 8) throw SizeError("dp cell masks need B at most 8");
    if (d.params.A > 16) throw SizeError("dp portal budget needs A at most 16");
    B = d.params.B;
    portal_budget = 4 * (d.params.D + 1);
    pairs_of_term.resize(d.terminals.size());
    for (size_t k = 0; k < d.pair_ids.size(); ++k) {
      pairs_of_term[d.pair_ids[k].first].push_back(static_cast<int>(k));
      pairs_of_term[d.pair_ids[k].second].push_back(static_cast<int>(k));
    }
  }

  int intern(const Point& p) {
    auto [it, fresh] = point_ids.emplace(p, static_cast<int>(point_ids.size()));
    if (fresh) points_by_id.push_back(p);
    return it->second;
  }

  static void sort_key_order(std::vector<DpState>& states) {
    std::sort(states.begin(), states.end(), [](const DpState& a, const DpState& b) {
      if (a.value != b.value) return a.value < b.value;
      return a.parts < b.parts;
    });
  }

  void dedup_and_cap(std::vector<DpState>& states, long long cap, bool is_table) {
    std::map<std::vector<DpPart>, int> best;
    std::vector<DpState> kept;
    sort_key_order(states);
    for (auto& s : states) {
      auto [it, fresh] = best.emplace(s.parts, static_cast<int>(kept.size()));
      if (fresh) {
        kept.push_back(std::move(s));
      } else if (s.value < kept[it->second].value) {
        kept[it->second] = std::move(s);
      }
    }
    sort_key_order(kept);
    if (cap > 0 && static_cast<long long>(kept.size()) > cap) {
      kept.resize(cap);
      if (is_table) {
        out.truncated_table = true;
      } else {
        out.truncated_beam = true;
      }
    }
    states = std::move(kept);
  }

  void leaf_table(int sq) {
    LeafCandidates lc = leaf_candidate_points(d, sq, opt);
    const std::vector<Point>& pts = lc.pts;
    int P = lc.n_portals;
    if (P > 64) throw InvariantError("more than 64 usable portals on one square");
    const auto& ids = d.squares[sq].terminal_ids;
    if (ids.size() > 1) throw InvariantError("leaf with more than one terminal");
    int term = ids.empty() ? -1 : ids[0];
    int term_idx = lc.term_idx;
    std::vector<int> portal_global(P);
    for (int i = 0; i < P; ++i) portal_global[i] = intern(pts[i]);

    int n = static_cast<int>(pts.size());
    const Square& s = d.squares[sq];
    Rat x0(s.x0), y0(s.y0), x1(s.x0 + s.side), y1(s.y0 + s.side);
    std::vector<std::vector<double>> w(n, std::vector<double>(n, kInf));
    std::vector<std::vector<std::uint64_t>> fmask(n, std::vector<std::uint64_t>(n, 0));
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const Point& a = pts[i];
        const Point& b = pts[j];
        if (a.x == b.x && (a.x == x0 || a.x == x1)) continue;
        if (a.y == b.y && (a.y == y0 || a.y == y1)) continue;
        auto fp = segment_footprint(d, sq, {a, b});
        if (fp.empty()) continue;
        std::uint64_t m = 0;
        for (int cell : fp) m |= 1ULL << cell;
        w[i][j] = w[j][i] = rat_sqrt(dist2(a, b));
        fmask[i][j] = fmask[j][i] = m;
      }
    }

    std::uint64_t full_mask = (B * B == 64) ? ~0ULL : ((1ULL << (B * B)) - 1);
    auto point_cell_mask = [&](int pi) {
      std::uint64_t m = 0;
      for (auto [r, c] : d.cells_containing(sq, pts[pi])) m |= 1ULL << (r * B + c);
      return m;
    };

    struct CatEntry {
      DpPart part;
      std::uint64_t portal_mask;
      bool has_term;
      double value;
      Forest forest;
    };
    std::vector<CatEntry> catalog;
    std::map<std::tuple<std::vector<int>, std::uint64_t, std::vector<int>>, int> cat_best;

    auto consider = [&](const std::vector<int>& combo, bool with_term, std::uint64_t region) {
      std::vector<int> required;
      for (int c : combo) required.push_back(c);
      if (with_term) required.push_back(term_idx);
      std::vector<std::vector<double>> wv(n, std::vector<double>(n, kInf));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (w[i][j] < kInf && (fmask[i][j] & ~region) == 0) wv[i][j] = w[i][j];
        }
      }
      SteinerTree tree = dreyfus_wagner(wv, required);
      if (tree.length == kInf) return;
      std::uint64_t cells = 0;
      Forest forest;
      LengthAccum acc;
      for (auto [i, j] : tree.edges) {
        cells |= fmask[i][j];
        forest.push_back({pts[i], pts[j]});
        acc.add(w[i][j]);
      }
      if (cells == 0) return;
      DpPart part;
      for (int c : combo) part.portals.push_back(portal_global[c]);
      std::sort(part.portals.begin(), part.portals.end());
      part.cells = cells;
      if (with_term) part.pairs = pairs_of_term[term];
      std::uint64_t pmask = 0;
      for (int c : combo) pmask |= 1ULL << c;
      auto key = std::make_tuple(part.portals, part.cells, part.pairs);
      double value = acc.value();
      auto [it, fresh] = cat_best.emplace(key, static_cast<int>(catalog.size()));
      if (fresh) {
        catalog.push_back({std::move(part), pmask, with_term, value, std::move(forest)});
      } else if (value < catalog[it->second].value) {
        catalog[it->second].value = value;
        catalog[it->second].forest = std::move(forest);
      }
    };

    int max_sub = std::min<int>(opt.part_portals, P);
    std::vector<int> combo;
    auto combos = [&](auto&& self, int start, int want) -> void {
      if (want == 0) {
        for (int with_term = 0; with_term <= (term >= 0 ? 1 : 0); ++with_term) {
          std::uint64_t bbox = 0;
          {
            long long r_lo = B, r_hi = -1, c_lo = B, c_hi = -1;
            auto widen = [&](std::uint64_t m) {
              for (long long bit = 0; bit < B * B; ++bit) {
                if (!(m >> bit & 1)) continue;
                r_lo = std::min(r_lo, bit / B);
                r_hi = std::max(r_hi, bit / B);
                c_lo = std::min(c_lo, bit % B);
                c_hi = std::max(c_hi, bit % B);
              }
            };
            for (int c : combo) widen(point_cell_mask(c));
            if (with_term) widen(point_cell_mask(term_idx));
            if (r_hi >= 0) {
              for (long long r = r_lo; r <= r_hi; ++r) {
                for (long long c = c_lo; c <= c_hi; ++c) bbox |= 1ULL << (r * B + c);
              }
            }
          }
          if (opt.exhaustive && B * B <= 4) {
            // Few enough cells to offer every confined variant.
            for (std::uint64_t region = 1; region <= full_mask; ++region)
              consider(combo, with_term, region);
          } else {
            consider(combo, with_term, full_mask);
            if (bbox != 0 && bbox != full_mask) consider(combo, with_term, bbox);
          }
        }
        return;
      }
      for (int c = start; c <= P - want; ++c) {
        combo.push_back(c);
        self(self, c + 1, want - 1);
        combo.pop_back();
      }
    };
    for (int size = 1; size <= max_sub; ++size) combos(combos, 0, size);

    std::sort(catalog.begin(), catalog.end(), [](const CatEntry& a, const CatEntry& b) {
      if (a.value != b.value) return a.value < b.value;
      return a.part < b.part;
    });

    // States are subsets of mutually disjoint catalog parts, enumerated in
    // ascending subset size (then catalog value order) so a state cap still
    // sees every cheap small combination before any large one.
    std::vector<DpState> states;
    bool hit_cap = false;
    int pcap = opt.parts_per_square > 0 ? opt.parts_per_square
                                        : static_cast<int>(portal_budget);
    std::vector<int> chosen;
    auto emit = [&]() {
      if (term >= 0) {
        bool has = false;
        for (int idx : chosen) has = has || catalog[idx].has_term;
        if (!has) return;
      }
      DpState st;
      for (int idx : chosen) {
        st.parts.push_back(catalog[idx].part);
        st.value += catalog[idx].value;
        st.forest.insert(st.forest.end(), catalog[idx].forest.begin(),
                         catalog[idx].forest.end());
      }
      std::sort(st.parts.begin(), st.parts.end());
      states.push_back(std::move(st));
    };
    auto layer = [&](auto&& self, int idx, std::uint64_t used_p, std::uint64_t used_c,
                     bool used_term, int want) -> void {
      if (hit_cap) return;
      if (want == 0) {
        if (opt.leaf_state_cap > 0 &&
            static_cast<long long>(states.size()) >= opt.leaf_state_cap) {
          hit_cap = true;
          return;
        }
        emit();
        return;
      }
      for (int j = idx; j < static_cast<int>(catalog.size()); ++j) {
        const CatEntry& e = catalog[j];
        if (e.portal_mask & used_p) continue;
        if (e.part.cells & used_c) continue;
        if (e.has_term && used_term) continue;
        chosen.push_back(j);
        self(self, j + 1, used_p | e.portal_mask, used_c | e.part.cells,
             used_term || e.has_term, want - 1);
        chosen.pop_back();
        if (hit_cap) return;
      }
    };
    for (int size = 0; size <= pcap && !hit_cap; ++size) {
      layer(layer, 0, 0, 0, false, size);
    }
    if (hit_cap) out.truncated_table = true;

    dedup_and_cap(states, opt.table_cap, true);
    out.peak_states = std::max<long long>(out.peak_states, states.size());
    out.tables_built += 1;
    tables[sq] = std::move(states);
  }

  std::vector<JoinIn> translate_child(int parent, int quadrant) {
    int child = d.squares[parent].child[quadrant];
    long long ox = (quadrant == 1 || quadrant == 3) ? B : 0;
    long long oy = (quadrant >= 2) ? B : 0;
    int remap[64];
    for (long long r = 0; r < B; ++r) {
      for (long long c = 0; c < B; ++c) {
        remap[r * B + c] = static_cast<int>((r + oy) / 2 * B + (c + ox) / 2);
      }
    }
    std::vector<JoinIn> out_states;
    out_states.reserve(tables[child].size());
    for (size_t si = 0; si < tables[child].size(); ++si) {
      const DpState& st = tables[child][si];
      JoinIn j;
      j.value = st.value;
      j.left = static_cast<int>(si);
      j.parts.reserve(st.parts.size());
      for (const DpPart& p : st.parts) {
        DpPart q;
        q.portals = p.portals;
        q.pairs = p.pairs;
        for (int bit = 0; bit < 64; ++bit) {
          if (p.cells >> bit & 1) q.cells |= 1ULL << remap[bit];
        }
        j.parts.push_back(std::move(q));
      }
      std::sort(j.parts.begin(), j.parts.end());
      out_states.push_back(std::move(j));
    }
    return out_states;
  }

  std::vector<JoinIn> join_stage(const std::vector<JoinIn>& A, const std::vector<JoinIn>& B_,
                                 const Interface& ifc) {
    std::map<std::vector<DpPart>, int> best;
    std::vector<JoinIn> outv;
    for (size_t i = 0; i < A.size(); ++i) {
      for (size_t j = 0; j < B_.size(); ++j) {
        JoinIn merged;
        merged.parts = merge_part_lists(A[i].parts, B_[j].parts);
        if (!sweep(merged.parts, ifc)) continue;
        merged.value = A[i].value + B_[j].value;
        merged.left = static_cast<int>(i);
        merged.right = static_cast<int>(j);
        auto [it, fresh] = best.emplace(merged.parts, static_cast<int>(outv.size()));
        if (fresh) {
          outv.push_back(std::move(merged));
        } else if (merged.value < outv[it->second].value) {
          outv[it->second] = std::move(merged);
        }
      }
    }
    std::sort(outv.begin(), outv.end(), [](const JoinIn& a, const JoinIn& b) {
      if (a.value != b.value) return a.value < b.value;
      return a.parts < b.parts;
    });
    if (opt.stage_cap > 0 && static_cast<long long>(outv.size()) > opt.stage_cap) {
      outv.resize(opt.stage_cap);
      out.truncated_beam = true;
    }
    return outv;
  }

  void internal_table(int parent) {
    std::set<int> psafe;
    for (const Point& p : d.safe_portals_of(parent)) psafe.insert(intern(p));
    const Square& ps = d.squares[parent];
    Rat mid_y = Rat(ps.y0) + Rat(ps.side, 2);

    Interface half{&psafe, true, mid_y};
    Interface full{&psafe, false, Rat(0)};

    std::vector<JoinIn> kid[4];
    for (int k = 0; k < 4; ++k) kid[k] = translate_child(parent, k);
    std::vector<JoinIn> lower = join_stage(kid[0], kid[1], half);
    std::vector<JoinIn> upper = join_stage(kid[2], kid[3], half);
    std::vector<JoinIn> whole = join_stage(lower, upper, full);

    int pcap = opt.parts_per_square > 0 ? opt.parts_per_square
                                        : static_cast<int>(portal_budget);
    std::vector<DpState> states;
    for (const JoinIn& st : whole) {
      bool ok = true;
      std::uint64_t used_cells = 0;
      long long portal_total = 0;
      for (const DpPart& p : st.parts) {
        if (p.cells & used_cells) {
          ok = false;
          break;
        }
        used_cells |= p.cells;
        portal_total += static_cast<long long>(p.portals.size());
      }
      if (!ok) continue;
      if (static_cast<int>(st.parts.size()) > pcap) continue;
      if (static_cast<long long>(st.parts.size()) > 4 * (d.params.D + 1)) continue;
      if (portal_total > portal_budget) continue;

      DpState fin;
      fin.parts = st.parts;
      fin.value = st.value;
      const JoinIn& lo = lower[st.left];
      const JoinIn& hi = upper[st.right];
      int c_sw = d.squares[parent].child[0];
      int c_se = d.squares[parent].child[1];
      int c_nw = d.squares[parent].child[2];
      int c_ne = d.squares[parent].child[3];
      for (auto [tbl, idx] : {std::pair<int, int>{c_sw, lo.left},
                              {c_se, lo.right},
                              {c_nw, hi.left},
                              {c_ne, hi.right}}) {
        const Forest& f = tables[tbl][idx].forest;
        fin.forest.insert(fin.forest.end(), f.begin(), f.end());
      }
      states.push_back(std::move(fin));
    }

    dedup_and_cap(states, opt.table_cap, true);
    out.peak_states = std::max<long long>(out.peak_states, states.size());
    out.tables_built += 1;
    tables[parent] = std::move(states);
    if (!keep_tables) {
      for (int k = 0; k < 4; ++k) {
        std::vector<DpState>().swap(tables[d.squares[parent].child[k]]);
      }
    }
  }

  DpOutcome run() {
    if (d.pair_ids.empty()) {
      out.found = true;
      return out;
    }
    tables.resize(d.squares.size());
    for (int sq = static_cast<int>(d.squares.size()) - 1; sq >= 0; --sq) {
      if (d.squares[sq].leaf()) {
        leaf_table(sq);
      } else {
        internal_table(sq);
      }
    }
    for (const DpState& st : tables[0]) {
      if (!st.parts.empty()) continue;
      out.found = true;
      out.length = st.value;
      out.forest = st.forest;
      break;
    }
    return out;
  }
};

}  // namespace

DpOutcome run_dp(const Dissection& d, const DpOptions& opt) {
  Solver solver(d, opt);
  return solver.run();
}

DpOutcome run_dp_with_tables(const Dissection& d, const DpOptions& opt,
                             std::vector<std::vector<DpEntryDump>>& tables) {
  Solver solver(d, opt);
  solver.keep_tables = true;
  DpOutcome out = solver.run();
  tables.assign(d.squares.size(), {});
  for (size_t sq = 0; sq < solver.tables.size(); ++sq) {
    auto& dst = tables[sq];
    dst.reserve(solver.tables[sq].size());
    for (const DpState& st : solver.tables[sq]) {
      DpEntryDump e;
      e.value = st.value;
      e.parts.reserve(st.parts.size());
      for (const DpPart& p : st.parts) {
        DpPartDump q;
        q.cells = p.cells;
        q.pairs = p.pairs;
        q.portals.reserve(p.portals.size());
        for (int id : p.portals) q.portals.push_back(solver.points_by_id[id]);
        std::sort(q.portals.begin(), q.portals.end(), PointLess{});
        e.parts.push_back(std::move(q));
      }
      std::sort(e.parts.begin(), e.parts.end(), [](const DpPartDump& a, const DpPartDump& b) {
        if (a.portals.size() != b.portals.size()) return a.portals.size() < b.portals.size();
        for (size_t i = 0; i < a.portals.size(); ++i) {
          if (!(a.portals[i] == b.portals[i])) return lex_less(a.portals[i], b.portals[i]);
        }
        if (a.cells != b.cells) return a.cells < b.cells;
        return a.pairs < b.pairs;
      });
      dst.push_back(std::move(e));
    }
  }
  return out;
}

LeafCandidates leaf_candidate_points(const Dissection& d, int sq, const DpOptions& options) {
  DpOptions opt = effective_options(d, options);
  long long B = d.params.B;
  LeafCandidates lc;
  lc.pts = d.safe_portals_of(sq);
  lc.n_portals = static_cast<int>(lc.pts.size());
  const auto& ids = d.squares[sq].terminal_ids;
  if (!ids.empty()) {
    lc.term_idx = static_cast<int>(lc.pts.size());
    lc.pts.push_back(d.terminals[ids[0]]);
  }
  std::set<Point, PointLess> seen(lc.pts.begin(), lc.pts.end());
  std::vector<Point> grid;
  std::set<Point, PointLess> grid_seen;
  for (long long cell = 0; cell < B * B; ++cell) {
    Rect rect = d.cell_rect(sq, static_cast<int>(cell / B), static_cast<int>(cell % B));
    std::vector<Rat> xs, ys;
    for (Int i = rat_ceil(rect.x_lo - Rat(1, 2)); Rat(i) + Rat(1, 2) <= rect.x_hi; ++i) {
      xs.push_back(Rat(i) + Rat(1, 2));
    }
    for (Int i = rat_ceil(rect.y_lo - Rat(1, 2)); Rat(i) + Rat(1, 2) <= rect.y_hi; ++i) {
      ys.push_back(Rat(i) + Rat(1, 2));
    }
    auto pick = [&](std::vector<Rat>& v) {
      int keep = opt.grid_per_axis;
      if (keep <= 0 || static_cast<int>(v.size()) <= keep) return;
      std::vector<Rat> outv;
      int n = static_cast<int>(v.size());
      for (int j = 0; j < keep; ++j) {
        int idx = keep == 1 ? 0 : static_cast<int>((static_cast<long long>(j) * (n - 1)) / (keep - 1));
        outv.push_back(v[idx]);
      }
      outv.erase(std::unique(outv.begin(), outv.end()), outv.end());
      v = std::move(outv);
    };
    pick(xs);
    pick(ys);
    for (const Rat& x : xs) {
      for (const Rat& y : ys) {
        Point p{x, y};
        if (!seen.count(p) && grid_seen.insert(p).second) grid.push_back(p);
      }
    }
  }
  if (opt.leaf_candidates > 0 && static_cast<int>(grid.size()) > opt.leaf_candidates) {
    std::sort(grid.begin(), grid.end(), lex_less);
    std::vector<Point> kept;
    int n = static_cast<int>(grid.size());
    for (int j = 0; j < opt.leaf_candidates; ++j) {
      int idx = opt.leaf_candidates == 1
                    ? 0
                    : static_cast<int>((static_cast<long long>(j) * (n - 1)) /
                                       (opt.leaf_candidates - 1));
      kept.push_back(grid[idx]);
    }
    grid = std::move(kept);
  }
  lc.pts.insert(lc.pts.end(), grid.begin(), grid.end());
  return lc;
}

bool representable(const Dissection& d, const Forest& f_in, const DpOptions& options,
                   std::string* why) {
  DpOptions opt = effective_options(d, options);
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  Forest f = canonicalize_forest(f_in);
  if (f.empty()) return true;
  long long portal_budget = 4 * (d.params.D + 1);
  for (int sq = 0; sq < static_cast<int>(d.squares.size()); ++sq) {
    Rect rect = d.square_rect(sq);
    std::set<Point, PointLess> safe;
    for (const Point& p : d.safe_portals_of(sq)) safe.insert(p);

    struct SideDef {
      bool vertical;
      Rat c, lo, hi;
    };
    SideDef sides[4] = {
        {false, rect.y_lo, rect.x_lo, rect.x_hi},
        {true, rect.x_hi, rect.y_lo, rect.y_hi},
        {false, rect.y_hi, rect.x_lo, rect.x_hi},
        {true, rect.x_lo, rect.y_lo, rect.y_hi},
    };
    std::set<Point, PointLess> touches;
    for (const SideDef& s : sides) {
      for (auto& [lo, hi] : line_components(f, s.vertical, s.c, s.lo, s.hi)) {
        if (lo != hi) {
          return fail("square " + std::to_string(sq) + ": forest runs along a side");
        }
        Point p = s.vertical ? Point{s.c, lo} : Point{lo, s.c};
        if (!safe.count(p)) {
          return fail("square " + std::to_string(sq) +
                      ": boundary touch away from a usable portal");
        }
        touches.insert(p);
      }
    }
    if (static_cast<long long>(touches.size()) > portal_budget) {
      return fail("square " + std::to_string(sq) + ": portal budget exceeded");
    }

    // Components of the forest inside the square, ignoring pieces that
    // only graze the boundary from outside.
    std::vector<std::pair<Point, Point>> clips;
    for (const Segment& s : f) {
      auto c = clip_segment_to_rect(s, rect.x_lo, rect.y_lo, rect.x_hi, rect.y_hi);
      if (c && !(c->first == c->second)) clips.push_back(*c);
    }
    if (clips.empty()) continue;
    Dsu uf(clips.size());
    for (size_t i = 0; i < clips.size(); ++i) {
      for (size_t j = i + 1; j < clips.size(); ++j) {
        if (segments_intersect({clips[i].first, clips[i].second},
                               {clips[j].first, clips[j].second})) {
          uf.unite(static_cast<int>(i), static_cast<int>(j));
        }
      }
    }
    std::map<int, std::vector<int>> comps;
    for (size_t i = 0; i < clips.size(); ++i) {
      comps[uf.find(static_cast<int>(i))].push_back(static_cast<int>(i));
    }
    long long max_parts = std::min<long long>(opt.parts_per_square, portal_budget);
    if (static_cast<long long>(comps.size()) > max_parts) {
      return fail("square " + std::to_string(sq) + ": more components than parts allowed");
    }
    std::uint64_t used_cells = 0;
    bool leaf = d.squares[sq].leaf();
    std::set<Point, PointLess> cand;
    if (leaf) {
      LeafCandidates lcs = leaf_candidate_points(d, sq, opt);
      cand.insert(lcs.pts.begin(), lcs.pts.end());
    }
    for (auto& [root, members] : comps) {
      std::uint64_t cells = 0;
      int comp_portals = 0;
      bool on_boundary = false;
      for (int i : members) {
        Segment piece{clips[i].first, clips[i].second};
        for (int cell : segment_footprint(d, sq, piece)) cells |= 1ULL << cell;
        for (const Point* p : {&piece.a, &piece.b}) {
          if (p->x == rect.x_lo || p->x == rect.x_hi || p->y == rect.y_lo ||
              p->y == rect.y_hi) {
            on_boundary = true;
          }
        }
        if (leaf) {
          for (const Point* p : {&piece.a, &piece.b}) {
            if (!cand.count(*p)) {
              return fail("square " + std::to_string(sq) +
                          ": junction off the candidate set");
            }
          }
          if (piece.a.x == piece.b.x && (piece.a.x == rect.x_lo || piece.a.x == rect.x_hi)) {
            return fail("square " + std::to_string(sq) + ": chord along a side");
          }
          if (piece.a.y == piece.b.y && (piece.a.y == rect.y_lo || piece.a.y == rect.y_hi)) {
            return fail("square " + std::to_string(sq) + ": chord along a side");
          }
        }
      }
      for (const Point& p : touches) {
        for (int i : members) {
          if (on_segment(p, {clips[i].first, clips[i].second})) {
            comp_portals += 1;
            break;
          }
        }
      }
      if (leaf) {
        if (comp_portals > opt.part_portals) {
          return fail("square " + std::to_string(sq) + ": part needs too many portals");
        }
        if (comp_portals == 0) {
          return fail("square " + std::to_string(sq) + ": component closes inside a leaf");
        }
      }
      // Components that close strictly inside the square leave no part
      // behind; only boundary-touching components must stay cell-disjoint.
      if (!on_boundary) continue;
      if (cells & used_cells) {
        return fail("square " + std::to_string(sq) + ": two components share a cell");
      }
      used_cells |= cells;
    }
  }
  return true;
}

}  // namespace steiner
