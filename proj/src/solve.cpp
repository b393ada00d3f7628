#include "steiner/solve.hpp"

#include "steiner/conformance.hpp"
#include "steiner/oracles.hpp"
#include "steiner/rational.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <set>
#include <thread>
#include <utility>
#include <vector>

namespace steiner {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct RunOutput {
  std::uint64_t seed = 0;
  double final_length = 0;
  Forest solution;
  std::vector<Forest> rounded;
  std::vector<Dissection> dissections;
  std::vector<SubReport> subs;
  double transformed_baseline_length = 0;
  double dp_root_scaled = 0;
  double dp_root_length = 0;
};

RunOutput one_run(const std::vector<ScaledInstance>& scaled, const SolveOptions& opt,
                  std::uint64_t seed) {
  RunOutput run;
  run.seed = seed;
  for (const ScaledInstance& si : scaled) {
    DissectionParams params;
    params.mode = opt.mode;
    params.epsilon = opt.epsilon;
    params.A = opt.A;
    params.B = opt.B;
    params.D = opt.D;
    Dissection d = build_dissection(si.rounded, params, seed);
    DpOutcome dp = run_dp(d, opt.dp);
    Forest tb = transform(d, mst_baseline(si.rounded));
    run.transformed_baseline_length += forest_length(unround(tb, si));

    SubReport sub;
    sub.n_terminals = static_cast<int>(si.rounded.terminals.size());
    sub.A = d.params.A;
    sub.B = d.params.B;
    sub.D = d.params.D;
    sub.dp_found = dp.found;
    sub.truncated_table = dp.truncated_table;
    sub.truncated_beam = dp.truncated_beam;
    sub.peak_states = dp.peak_states;
    sub.tables_built = dp.tables_built;

    Forest rounded_sol = dp.found ? std::move(dp.forest) : std::move(tb);
    if (dp.found) {
      sub.dp_value_scaled = dp.length;
      run.dp_root_scaled += dp.length;
      run.dp_root_length += dp.length / to_double(si.scale);
    }
    Forest orig = unround(rounded_sol, si);
    run.final_length += forest_length(orig);
    run.solution.insert(run.solution.end(), orig.begin(), orig.end());
    run.rounded.push_back(std::move(rounded_sol));
    run.dissections.push_back(std::move(d));
    run.subs.push_back(sub);
  }
  return run;
}

}  // namespace

SolveResult solve(const Instance& inst, const SolveOptions& opt) {
  Clock::time_point t0 = Clock::now();
  if (opt.repeats < 1) throw ParamError("repeats must be positive");
  if (opt.threads < 1) throw ParamError("threads must be positive");

  SolveResult res;
  std::vector<Instance> parts = partition(inst);
  std::vector<ScaledInstance> scaled;
  scaled.reserve(parts.size());
  for (const Instance& part : parts)
    scaled.push_back(opt.prescaled ? wrap_prescaled(part) : scale_and_round(part, opt.epsilon));
  res.subinstances = static_cast<int>(scaled.size());
  res.baseline_length = forest_length(mst_baseline(inst));
  res.t_prepare_ms = ms_since(t0);

  Clock::time_point t1 = Clock::now();
  std::vector<RunOutput> runs(static_cast<size_t>(opt.repeats));
  {
    std::atomic<int> next{0};
    std::mutex err_mu;
    std::exception_ptr err;
    auto work = [&] {
      for (;;) {
        int r = next.fetch_add(1);
        if (r >= opt.repeats) return;
        try {
          runs[static_cast<size_t>(r)] = one_run(scaled, opt, opt.seed + static_cast<std::uint64_t>(r));
        } catch (...) {
          std::lock_guard<std::mutex> g(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    };
    int workers = std::min(opt.threads, opt.repeats);
    if (workers <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < workers; ++t) pool.emplace_back(work);
      for (std::thread& th : pool) th.join();
    }
    if (err) std::rethrow_exception(err);
  }
  res.t_dp_ms = ms_since(t1);

  size_t best = 0;
  for (size_t r = 1; r < runs.size(); ++r)
    if (runs[r].final_length < runs[best].final_length) best = r;
  RunOutput& win = runs[best];

  res.seed = win.seed;
  res.final_length = win.final_length;
  res.solution = std::move(win.solution);
  res.transformed_baseline_length = win.transformed_baseline_length;
  res.dp_root_scaled = win.dp_root_scaled;
  res.dp_root_length = win.dp_root_length;
  res.subs = std::move(win.subs);
  res.dissections = std::move(win.dissections);
  res.scaled = std::move(scaled);

  bool any_dp = false, any_fb = false, trunc_table = false, trunc_beam = false;
  for (const SubReport& sub : res.subs) {
    (sub.dp_found ? any_dp : any_fb) = true;
    trunc_table = trunc_table || sub.truncated_table;
    trunc_beam = trunc_beam || sub.truncated_beam;
  }
  res.solver_path = any_dp && any_fb ? "mixed" : any_fb ? "fallback" : "dp";
  res.truncated = trunc_table && trunc_beam ? "both"
                  : trunc_table             ? "table"
                  : trunc_beam              ? "beam"
                                            : "none";

  res.feasible = is_feasible(res.solution, inst.point_pairs());

  if (opt.verify) {
    Clock::time_point t2 = Clock::now();
    long long violations = 0;
    for (size_t i = 0; i < res.dissections.size(); ++i) {
      ConformanceReport rep = check(res.dissections[i], win.rounded[i], opt.threads);
      for (const SquareViolations& sv : rep.squares)
        violations += sv.boundary_excess + sv.portal_free_components +
                      static_cast<long long>(sv.unhappy_cells.size()) +
                      static_cast<long long>(sv.unsatisfied_terminals.size());
    }
    res.conformance_violations = violations;
    res.t_verify_ms = ms_since(t2);
  }

  if (opt.exact) {
    std::set<Point, PointLess> extras;
    for (const Segment& s : res.solution) {
      extras.insert(s.a);
      extras.insert(s.b);
    }
    res.exact_len = exact_opt(inst, std::vector<Point>(extras.begin(), extras.end())).length;
  }

  res.t_total_ms = ms_since(t0);
  return res;
}

}  // namespace steiner
