#include "steiner/io.hpp"
#include "steiner/rational.hpp"
#include "steiner/solve.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw steiner::ParamError("cannot open for writing: " + path);
  out << content;
}

int run_solve(const std::string& input_path, const std::string& epsilon_text,
              const std::string& mode_text, long long A, long long B, long long D,
              bool abd_overridden, std::uint64_t seed, int repeats, int threads, bool prescaled,
              bool verify, bool exact, bool overlay, const std::string& svg_path,
              const std::string& summary_path, bool timings, bool stats,
              const steiner::DpOptions& dp) {
  using namespace steiner;

  SolveOptions opt;
  std::optional<Rat> eps = parse_decimal(epsilon_text);
  if (!eps || *eps <= 0) {
    std::cerr << "usage error: --epsilon must be a positive decimal\n";
    return 1;
  }
  opt.epsilon = *eps;
  opt.mode = mode_text == "paper" ? Mode::paper : Mode::desk;
  if (opt.mode == Mode::paper && abd_overridden) {
    std::cerr << "usage error: --A/--B/--D apply to desk mode only\n";
    return 1;
  }
  opt.A = A;
  opt.B = B;
  opt.D = D;
  opt.seed = seed;
  opt.repeats = repeats;
  opt.threads = threads;
  opt.prescaled = prescaled;
  opt.verify = verify;
  opt.exact = exact;
  opt.dp = dp;

  std::string text;
  std::string id = input_path;
  if (input_path.empty() || input_path == "-") {
    text = read_all(std::cin);
    id = "<stdin>";
  } else {
    std::ifstream in(input_path, std::ios::binary);
    if (!in) {
      std::cerr << "usage error: cannot open instance file: " << input_path << "\n";
      return 1;
    }
    text = read_all(in);
  }

  Instance inst = parse_instance(text);
  SolveResult res = solve(inst, opt);

  RunSummary sum;
  sum.instance_id = id;
  sum.seed = seed;
  sum.epsilon = opt.epsilon;
  sum.mode = mode_text;
  if (opt.mode == Mode::paper) sum.A = sum.B = sum.D = 0;
  else {
    sum.A = opt.A;
    sum.B = opt.B;
    sum.D = opt.D;
  }
  for (const SubReport& sub : res.subs) {
    sum.A = std::max(sum.A, sub.A);
    sum.B = std::max(sum.B, sub.B);
    sum.D = std::max(sum.D, sub.D);
  }
  sum.repeats = repeats;
  sum.n_pairs = inst.n_pairs();
  sum.n_terminals = static_cast<int>(inst.terminals.size());
  sum.subinstances = res.subinstances;
  sum.baseline_length = res.baseline_length;
  sum.transformed_baseline_length = res.transformed_baseline_length;
  sum.dp_root_scaled = res.dp_root_scaled;
  sum.dp_root_length = res.dp_root_length;
  sum.final_length = res.final_length;
  sum.exact_opt = res.exact_len;
  sum.feasible = res.feasible;
  sum.conformance_violations = res.conformance_violations;
  sum.solver_path = res.solver_path;
  sum.truncated = res.truncated;
  sum.with_timings = timings;
  sum.t_total_ms = res.t_total_ms;
  sum.t_prepare_ms = res.t_prepare_ms;
  sum.t_dp_ms = res.t_dp_ms;
  sum.t_verify_ms = res.t_verify_ms;

  if (stats) {
    for (size_t i = 0; i < res.subs.size(); ++i) {
      const SubReport& sub = res.subs[i];
      std::fprintf(stderr,
                   "sub %zu: terminals=%d A=%lld B=%lld D=%lld dp=%d value=%.6g "
                   "peak_states=%lld tables=%lld\n",
                   i, sub.n_terminals, sub.A, sub.B, sub.D, sub.dp_found ? 1 : 0,
                   sub.dp_value_scaled, sub.peak_states, sub.tables_built);
    }
    std::fprintf(stderr, "winning seed: %llu\n",
                 static_cast<unsigned long long>(res.seed));
  }

  std::string summary_text = format_summary(sum);
  std::cout << summary_text;
  if (!summary_path.empty()) write_file(summary_path, summary_text);

  if (!svg_path.empty()) {
    std::vector<SvgOverlay> overlays;
    for (size_t i = 0; i < res.dissections.size(); ++i)
      overlays.push_back({&res.dissections[i], res.scaled[i].scale, res.scaled[i].offset});
    write_file(svg_path, render_svg(inst, res.solution, overlays, overlay));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace steiner;

  CLI::App app{"Euclidean Steiner forest approximation"};
  app.require_subcommand(1);

  CLI::App* sol = app.add_subcommand("solve", "solve an instance end to end");
  std::string input_path, epsilon_text = "0.5", mode_text = "desk";
  long long A = 4, B = 4, D = 6;
  std::uint64_t seed = 0;
  int repeats = 1, threads = 1;
  bool prescaled = false, verify = false, exact = false, overlay = false;
  bool timings = false, stats = false;
  std::string svg_path, summary_path;
  DpOptions dp;
  sol->add_option("instance", input_path, "instance file ('-' or absent for stdin)");
  sol->add_option("--epsilon", epsilon_text, "approximation parameter (positive decimal)");
  sol->add_option("--mode", mode_text, "constant selection")
      ->check(CLI::IsMember({"desk", "paper"}));
  CLI::Option* oA = sol->add_option("--A", A, "portal density constant (desk mode)");
  CLI::Option* oB = sol->add_option("--B", B, "cell grid constant (desk mode)");
  CLI::Option* oD = sol->add_option("--D", D, "boundary budget constant (desk mode)");
  sol->add_option("--seed", seed, "random shift seed");
  sol->add_option("--repeats", repeats, "independent seeds, keep the shortest")
      ->check(CLI::PositiveNumber);
  sol->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  sol->add_flag("--prescaled", prescaled, "coordinates are already half-integers");
  sol->add_flag("--verify", verify, "run the conformance checker on the output");
  sol->add_flag("--exact", exact, "attach the exact oracle (small instances only)");
  CLI::Option* osvg = sol->add_option("--svg", svg_path, "write an SVG scene");
  sol->add_flag("--overlay", overlay, "include the dissection overlay in the SVG")
      ->needs(osvg);
  sol->add_option("--summary", summary_path, "also write the summary to a file");
  sol->add_flag("--timings", timings, "include timing keys in the summary");
  sol->add_flag("--stats", stats, "per-subinstance diagnostics on stderr");
  sol->add_option("--dp-part-portals", dp.part_portals, "portals per leaf part");
  sol->add_option("--dp-parts-per-square", dp.parts_per_square, "parts per state");
  sol->add_option("--dp-grid-per-axis", dp.grid_per_axis, "leaf grid candidates per cell axis");
  sol->add_option("--dp-leaf-candidates", dp.leaf_candidates, "leaf candidates overall (0: all)");
  sol->add_option("--dp-leaf-state-cap", dp.leaf_state_cap, "leaf part families (0: unlimited)");
  sol->add_option("--dp-table-cap", dp.table_cap, "states kept per square (0: unlimited)");
  sol->add_option("--dp-stage-cap", dp.stage_cap, "states kept between stages (0: unlimited)");
  sol->add_flag("--dp-exhaustive", dp.exhaustive, "lift every cap (tiny instances only)");

  CLI::App* gen = app.add_subcommand("generate", "emit a reproducible instance");
  std::string family = "uniform-pairs", out_path;
  int n_pairs = 4, clusters = 2;
  std::uint64_t gseed = 0;
  gen->add_option("--family", family, "uniform-pairs | clustered | grid-pairs")
      ->check(CLI::IsMember({"uniform-pairs", "clustered", "grid-pairs"}));
  gen->add_option("--n", n_pairs, "number of requirement pairs")->check(CLI::PositiveNumber);
  gen->add_option("--clusters", clusters, "clusters (clustered family)")
      ->check(CLI::PositiveNumber);
  gen->add_option("--seed", gseed, "generator seed");
  gen->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      std::string text = format_instance(generate_instance(family, n_pairs, clusters, gseed));
      if (out_path.empty())
        std::cout << text;
      else
        write_file(out_path, text);
      return 0;
    }
    bool abd_overridden = oA->count() > 0 || oB->count() > 0 || oD->count() > 0;
    return run_solve(input_path, epsilon_text, mode_text, A, B, D, abd_overridden, seed, repeats,
                     threads, prescaled, verify, exact, overlay, svg_path, summary_path, timings,
                     stats, dp);
  } catch (const ParseError& e) {
    std::cerr << "parse error: line " << e.line << ": " << e.what() << "\n";
    return 2;
  } catch (const ParamError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const SizeError& e) {
    std::cerr << "size error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
