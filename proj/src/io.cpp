#include "steiner/io.hpp"

#include "steiner/rational.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace steiner {
namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

bool parse_count(const std::string& tok, long long& out) {
  if (tok.empty() || tok.size() > 9) return false;
  for (char c : tok)
    if (c < '0' || c > '9') return false;
  out = std::stoll(tok);
  return true;
}

// Exact decimal rendering; requires den = 2^a 5^b. The digit count is
// minimal, so the result never carries trailing zeros.
std::string decimal_string(const Rat& x) {
  Int n = rat_num(x), d = rat_den(x);
  int a = 0, b = 0;
  Int dd = d;
  while (dd % 2 == 0) {
    dd /= 2;
    ++a;
  }
  while (dd % 5 == 0) {
    dd /= 5;
    ++b;
  }
  if (dd != 1) throw ParamError("coordinate has no finite decimal expansion: " + rat_to_string(x));
  int k = std::max(a, b);
  Int scaled = n * (boost::multiprecision::pow(Int(10), static_cast<unsigned>(k)) / d);
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string digits = scaled.str();
  if (k > 0) {
    if (static_cast<int>(digits.size()) <= k)
      digits.insert(0, static_cast<size_t>(k) + 1 - digits.size(), '0');
    digits.insert(digits.size() - k, ".");
  }
  return neg ? "-" + digits : digits;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  std::uint64_t mask = n - 1;
  for (int s = 1; s < 64; s *= 2) mask |= mask >> s;
  for (;;) {
    std::uint64_t v = rng() & mask;
    if (v < n) return v;
  }
}

Rat milli_coord(std::mt19937_64& rng, std::uint64_t units) {
  return Rat(Int(uniform_below(rng, units + 1)), Int(1000));
}

struct PairLess {
  bool operator()(const PointPair& a, const PointPair& b) const {
    if (a.first != b.first) return lex_less(a.first, b.first);
    return lex_less(a.second, b.second);
  }
};

PointPair normalized(Point p, Point q) {
  if (lex_less(q, p)) std::swap(p, q);
  return {p, q};
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string num12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string pair_color(int i) {
  return "hsl(" + std::to_string(i * 137 % 360) + ",70%,42%)";
}

std::string depth_color(int depth) {
  return "hsl(210,65%," + std::to_string(22 + depth * 11 % 55) + "%)";
}

struct Box {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  bool any = false;
  void add(double x, double y) {
    if (!any) {
      x0 = x1 = x;
      y0 = y1 = y;
      any = true;
      return;
    }
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
};

}  // namespace

Instance parse_instance(const std::string& text) {
  std::vector<std::pair<int, std::string>> rows;
  {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      rows.emplace_back(lineno, line);
    }
  }
  if (rows.empty()) throw ParseError("empty input", 1);

  size_t k = 0;
  {
    std::vector<std::string> t = split_tokens(rows[0].second);
    if (t[0] == "steiner-forest") {
      if (t.size() != 2 || t[1] != "1")
        throw ParseError("unsupported instance header", rows[0].first);
      ++k;
    }
  }
  if (k >= rows.size()) throw ParseError("expected 'pairs m' line", rows.back().first);

  long long m = 0;
  int pairs_line = rows[k].first;
  {
    std::vector<std::string> t = split_tokens(rows[k].second);
    if (t.size() != 2 || t[0] != "pairs" || !parse_count(t[1], m))
      throw ParseError("expected 'pairs m' line", rows[k].first);
    if (m == 0) throw ParseError("instance has no pairs", rows[k].first);
    if (m > 1000000) throw ParseError("pair count out of range", rows[k].first);
    ++k;
  }

  std::vector<PointPair> pairs;
  pairs.reserve(static_cast<size_t>(m));
  for (long long i = 0; i < m; ++i, ++k) {
    if (k >= rows.size())
      throw ParseError("expected " + std::to_string(m) + " coordinate lines, found " +
                           std::to_string(i),
                       rows.back().first);
    std::vector<std::string> t = split_tokens(rows[k].second);
    if (t.size() != 4) throw ParseError("expected 'x1 y1 x2 y2'", rows[k].first);
    Rat c[4];
    for (int j = 0; j < 4; ++j) {
      std::optional<Rat> r = parse_decimal(t[j]);
      if (!r) throw ParseError("bad coordinate '" + t[j] + "'", rows[k].first);
      c[j] = *r;
    }
    pairs.push_back({{c[0], c[1]}, {c[2], c[3]}});
  }
  if (k < rows.size()) throw ParseError("trailing content", rows[k].first);

  Instance inst = make_instance(pairs);
  if (inst.n_pairs() == 0) throw ParseError("every pair is degenerate", pairs_line);
  return inst;
}

std::string format_instance(const Instance& inst) {
  std::ostringstream out;
  out << "steiner-forest 1\n";
  out << "pairs " << inst.n_pairs() << "\n";
  for (auto [i, j] : inst.pair_ids) {
    const Point& p = inst.terminals[i];
    const Point& q = inst.terminals[j];
    out << decimal_string(p.x) << ' ' << decimal_string(p.y) << ' ' << decimal_string(q.x) << ' '
        << decimal_string(q.y) << "\n";
  }
  return out.str();
}

Instance generate_uniform_pairs(int n_pairs, std::uint64_t seed) {
  if (n_pairs < 1) throw ParamError("n_pairs must be positive");
  std::mt19937_64 rng(seed);
  std::set<PointPair, PairLess> seen;
  std::vector<PointPair> pairs;
  while (static_cast<int>(pairs.size()) < n_pairs) {
    Point p{milli_coord(rng, 1000000), milli_coord(rng, 1000000)};
    Point q{milli_coord(rng, 1000000), milli_coord(rng, 1000000)};
    if (p == q) continue;
    PointPair pr = normalized(p, q);
    if (seen.insert(pr).second) pairs.push_back(pr);
  }
  return make_instance(pairs);
}

Instance generate_clustered(int n_pairs, int clusters, std::uint64_t seed) {
  if (clusters < 2) throw ParamError("clustered needs at least two clusters");
  if (n_pairs < clusters) throw ParamError("clustered needs at least one pair per cluster");
  std::mt19937_64 rng(seed);
  // Boxes of side 10 have diameter below 15, so with n terminals a gap of
  // 15n + 25 keeps every inter-cluster distance above n times the largest
  // requirement-component diameter and the partition step must cut.
  Rat gap = Rat(15 * (2ll * n_pairs) + 25);
  std::set<PointPair, PairLess> seen;
  std::vector<PointPair> pairs;
  for (int i = 0; i < n_pairs; ++i) {
    Rat ox = gap * (i % clusters);
    for (;;) {
      Point p{ox + milli_coord(rng, 10000), milli_coord(rng, 10000)};
      Point q{ox + milli_coord(rng, 10000), milli_coord(rng, 10000)};
      if (p == q) continue;
      PointPair pr = normalized(p, q);
      if (!seen.insert(pr).second) continue;
      pairs.push_back(pr);
      break;
    }
  }
  return make_instance(pairs);
}

Instance generate_grid_pairs(int n_pairs, std::uint64_t seed) {
  if (n_pairs < 1) throw ParamError("n_pairs must be positive");
  long long need = 2ll * n_pairs;
  long long g = 1;
  while (g * g < need) ++g;
  long long sp = 1000 / (g + 1);
  if (sp == 0) throw ParamError("n_pairs too large for the lattice");
  std::vector<long long> order(static_cast<size_t>(g) * g);
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<long long>(i);
  std::mt19937_64 rng(seed);
  for (size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[uniform_below(rng, i)]);
  std::vector<PointPair> pairs;
  for (long long i = 0; i < n_pairs; ++i) {
    long long a = order[static_cast<size_t>(2 * i)];
    long long b = order[static_cast<size_t>(2 * i + 1)];
    Point p{Rat(sp * (a % g + 1)), Rat(sp * (a / g + 1))};
    Point q{Rat(sp * (b % g + 1)), Rat(sp * (b / g + 1))};
    pairs.push_back(normalized(p, q));
  }
  return make_instance(pairs);
}

Instance generate_instance(const std::string& family, int n_pairs, int clusters,
                           std::uint64_t seed) {
  if (family == "uniform-pairs") return generate_uniform_pairs(n_pairs, seed);
  if (family == "clustered") return generate_clustered(n_pairs, clusters, seed);
  if (family == "grid-pairs") return generate_grid_pairs(n_pairs, seed);
  throw ParamError("unknown instance family: " + family);
}

std::string render_svg(const Instance& inst, const Forest& solution,
                       const std::vector<SvgOverlay>& overlays, bool show_overlay) {
  // The y axis flips at emission so the scene keeps its geometric
  // orientation inside SVG's downward coordinate system.
  Box bb;
  for (const Point& t : inst.terminals) bb.add(to_double(t.x), -to_double(t.y));
  for (const Segment& s : solution) {
    bb.add(to_double(s.a.x), -to_double(s.a.y));
    bb.add(to_double(s.b.x), -to_double(s.b.y));
  }
  for (const SvgOverlay& ov : overlays) {
    if (!ov.dissection) continue;
    const Dissection& d = *ov.dissection;
    Rat x0 = Rat(d.cx) / ov.scale + ov.offset.x;
    Rat y0 = Rat(d.cy) / ov.scale + ov.offset.y;
    Rat side = Rat(d.L) / ov.scale;
    bb.add(to_double(x0), -to_double(y0));
    bb.add(to_double(x0 + side), -to_double(y0 + side));
  }
  if (!bb.any) bb.add(0, 0);
  double extent = std::max({bb.x1 - bb.x0, bb.y1 - bb.y0, 1e-9});
  double margin = extent * 0.04;
  double vx = bb.x0 - margin, vy = bb.y0 - margin;
  double vw = bb.x1 - bb.x0 + 2 * margin, vh = bb.y1 - bb.y0 + 2 * margin;
  double stroke = extent / 400;
  double r_term = extent / 130;

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(vx) << ' ' << num(vy) << ' '
    << num(vw) << ' ' << num(vh) << "\" width=\"900\" height=\"" << num(900 * vh / vw)
    << "\">\n";

  s << "<g id=\"solution\" stroke=\"#222222\" stroke-width=\"" << num(stroke)
    << "\" stroke-linecap=\"round\">\n";
  for (const Segment& seg : solution)
    s << "<line x1=\"" << num(to_double(seg.a.x)) << "\" y1=\"" << num(-to_double(seg.a.y))
      << "\" x2=\"" << num(to_double(seg.b.x)) << "\" y2=\"" << num(-to_double(seg.b.y))
      << "\"/>\n";
  s << "</g>\n";

  s << "<g id=\"terminals\">\n";
  for (int pi = 0; pi < inst.n_pairs(); ++pi) {
    for (int end = 0; end < 2; ++end) {
      const Point& t =
          inst.terminals[end == 0 ? inst.pair_ids[pi].first : inst.pair_ids[pi].second];
      s << "<circle cx=\"" << num(to_double(t.x)) << "\" cy=\"" << num(-to_double(t.y))
        << "\" r=\"" << num(r_term) << "\" fill=\"" << pair_color(pi) << "\"/>\n";
    }
  }
  s << "</g>\n";

  if (show_overlay && !overlays.empty()) {
    s << "<g id=\"overlay\" fill=\"none\">\n";
    for (const SvgOverlay& ov : overlays) {
      if (!ov.dissection) continue;
      const Dissection& d = *ov.dissection;
      auto ox = [&](const Rat& r) { return to_double(r / ov.scale + ov.offset.x); };
      auto oy = [&](const Rat& r) { return -to_double(r / ov.scale + ov.offset.y); };
      for (const Square& sq : d.squares) {
        s << "<rect x=\"" << num(ox(Rat(sq.x0))) << "\" y=\"" << num(oy(Rat(sq.y0 + sq.side)))
          << "\" width=\"" << num(to_double(Rat(sq.side) / ov.scale)) << "\" height=\""
          << num(to_double(Rat(sq.side) / ov.scale)) << "\" stroke=\"" << depth_color(sq.depth)
          << "\" stroke-width=\"" << num(stroke * 1.5 / (1 + sq.depth)) << "\"/>\n";
      }
      s << "<g stroke=\"#888888\" stroke-width=\"" << num(stroke * 0.5)
        << "\" stroke-dasharray=\"" << num(stroke * 2) << "\" opacity=\"0.35\">\n";
      for (int si = 0; si < static_cast<int>(d.squares.size()); ++si) {
        const Square& sq = d.squares[si];
        if (!sq.leaf()) continue;
        Rat cs = d.cell_side(si);
        for (long long kk = 1; kk < d.params.B; ++kk) {
          Rat t = Rat(sq.x0) + cs * kk;
          s << "<line x1=\"" << num(ox(t)) << "\" y1=\"" << num(oy(Rat(sq.y0))) << "\" x2=\""
            << num(ox(t)) << "\" y2=\"" << num(oy(Rat(sq.y0 + sq.side))) << "\"/>\n";
          t = Rat(sq.y0) + cs * kk;
          s << "<line x1=\"" << num(ox(Rat(sq.x0))) << "\" y1=\"" << num(oy(t)) << "\" x2=\""
            << num(ox(Rat(sq.x0 + sq.side))) << "\" y2=\"" << num(oy(t)) << "\"/>\n";
        }
      }
      s << "</g>\n";
      std::set<Point, PointLess> portals;
      for (int si = 0; si < static_cast<int>(d.squares.size()); ++si)
        for (const Point& p : d.portals_of(si)) portals.insert(p);
      s << "<g fill=\"#e07000\">\n";
      for (const Point& p : portals)
        s << "<circle cx=\"" << num(ox(p.x)) << "\" cy=\"" << num(oy(p.y)) << "\" r=\""
          << num(r_term * 0.45) << "\"/>\n";
      s << "</g>\n";
    }
    s << "</g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string format_summary(const RunSummary& s) {
  std::ostringstream out;
  out << "instance = " << s.instance_id << "\n";
  out << "seed = " << s.seed << "\n";
  out << "epsilon = " << rat_to_string(s.epsilon) << "\n";
  out << "mode = " << s.mode << "\n";
  out << "A = " << s.A << "\n";
  out << "B = " << s.B << "\n";
  out << "D = " << s.D << "\n";
  out << "repeats = " << s.repeats << "\n";
  out << "n_pairs = " << s.n_pairs << "\n";
  out << "n_terminals = " << s.n_terminals << "\n";
  out << "subinstances = " << s.subinstances << "\n";
  out << "baseline_length = " << num12(s.baseline_length) << "\n";
  out << "transformed_baseline_length = " << num12(s.transformed_baseline_length) << "\n";
  out << "dp_root_scaled = " << num12(s.dp_root_scaled) << "\n";
  out << "dp_root_length = " << num12(s.dp_root_length) << "\n";
  out << "final_length = " << num12(s.final_length) << "\n";
  if (s.exact_opt) out << "exact_opt = " << num12(*s.exact_opt) << "\n";
  out << "feasible = " << (s.feasible ? "true" : "false") << "\n";
  if (s.conformance_violations)
    out << "conformance_violations = " << *s.conformance_violations << "\n";
  out << "solver_path = " << s.solver_path << "\n";
  out << "truncated = " << s.truncated << "\n";
  if (s.with_timings) {
    out << "t_total_ms = " << num12(s.t_total_ms) << "\n";
    out << "t_prepare_ms = " << num12(s.t_prepare_ms) << "\n";
    out << "t_dp_ms = " << num12(s.t_dp_ms) << "\n";
    out << "t_verify_ms = " << num12(s.t_verify_ms) << "\n";
  }
  return out.str();
}

}  // namespace steiner
