#include "prp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>

#include "prp/errors.hpp"
#include "prp/game.hpp"
#include "prp/instance_io.hpp"
#include "prp/policies.hpp"
#include "prp/tetris.hpp"

namespace prp {

std::vector<std::string> known_policies() {
  return {"random",           "cheapest:to-storage", "cheapest:avg",     "cheapest:decision",
          "most-expensive",   "fixed",               "tetris:frequency", "tetris:duration",
          "genetic1",         "genetic2:close",      "genetic2:far",     "genetic2:zigzag",
          "genetic2:avg-cost", "exact"};
}

bool is_known_policy(const std::string& name) {
  const auto all = known_policies();
  return std::find(all.begin(), all.end(), name) != all.end();
}

Solution solve_with(const Instance& inst, const std::string& policy, const SolveOptions& opt) {
  Solution sol;
  sol.policy = policy;
  auto online = [&](Policy& p) {
    auto run = run_policy(inst, p);
    sol.actions = std::move(run.actions);
    sol.cost = run.cost;
  };
  if (policy == "random") {
    RandomPolicy p(opt.seed);
    online(p);
  } else if (policy == "cheapest:to-storage" || policy == "cheapest:avg" || policy == "cheapest:decision") {
    const auto v = policy == "cheapest:to-storage" ? CheapestVariant::ToStorage
                   : policy == "cheapest:avg"      ? CheapestVariant::OnAverage
                                                   : CheapestVariant::Decision;
    CheapestPolicy p(v);
    online(p);
  } else if (policy == "most-expensive") {
    MostExpensivePolicy p;
    online(p);
  } else if (policy == "fixed") {
    const auto fa = compute_fixed_assignment(inst);
    const Instance arranged = arrange_for_fixed(inst, fa);
    FixedPolicy p(fa);
    auto run = run_policy(arranged, p);
    sol.actions = std::move(run.actions);
    sol.cost = run.cost;
    sol.comparable = false;
    sol.note = "initial storage rearranged by the fixed assignment at no cost";
  } else if (policy == "tetris:frequency" || policy == "tetris:duration") {
    const auto r = tetris(inst, policy == "tetris:frequency" ? TetrisMode::Frequency : TetrisMode::Duration,
                          opt.tetris_passes);
    sol.actions = r.actions;
    sol.cost = r.cost;
  } else if (policy == "genetic1" || policy.rfind("genetic2:", 0) == 0) {
    GaConfig cfg = opt.ga;
    cfg.seed = opt.seed;
    GaResult r;
    if (policy == "genetic1") {
      r = evolve(inst, Encoding::Genetic1, nullptr, cfg);
    } else {
      const auto gamma = named_place_order(inst, policy.substr(9));
      r = evolve(inst, Encoding::Genetic2, &gamma, cfg);
    }
    sol.actions = std::move(r.actions);
    sol.cost = r.cost;
    char buf[96];
    std::snprintf(buf, sizeof buf, "generations %d, infeasible fraction %.4f", r.generations, r.infeasible_fraction());
    sol.note = buf;
  } else if (policy == "exact") {
    const auto r = opt.window > 0 ? solve_iterative(inst, opt.window, opt.exact) : solve_exact(inst, opt.exact);
    sol.actions = r.actions;
    sol.cost = r.cost;
    if (!r.proven_optimal && opt.window <= 0) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "node budget exhausted, gap %.6f", r.gap());
      sol.note = buf;
    }
  } else {
    throw std::invalid_argument("unknown policy '" + policy + "'");
  }
  return sol;
}

double brute_force_estimate(const Instance& inst) {
  const DepartureSchedule schedule(inst);
  double est = 1.0;
  for (const auto& s : schedule.steps())
    if (!s.fill) est *= s.admissible;
  return est;
}

BruteForceResult brute_force_optimum(const Instance& inst, double cap) {
  const double est = brute_force_estimate(inst);
  if (est > cap) throw BudgetExceeded("brute force refused: about " + std::to_string(est) + " sequences", est);
  BruteForceResult best;
  best.cost = std::numeric_limits<double>::infinity();
  const int n = inst.horizon();
  std::vector<Action> path;
  path.reserve(static_cast<std::size_t>(n));

  std::function<void(const SystemState&, double)> dfs = [&](const SystemState& s, double acc) {
    if (s.clock() == n) {
      ++best.leaves;
      const double total = acc + terminal_cost(s, inst.costs);
      if (total < best.cost) {
        best.cost = total;
        best.actions.actions = path;
      }
      return;
    }
    for (Action a : admissible_actions(s)) {
      SystemState next = s;
      const double c = apply_action(next, a, inst.costs);
      path.push_back(a);
      dfs(next, acc + c);
      path.pop_back();
    }
  };
  dfs(inst.initial_state, 0.0);
  best.cost = total_cost(inst, best.actions);
  return best;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::vector<ResultRow> run_comparison(const Instance& inst, const ComparisonConfig& cfg) {
  for (const auto& p : cfg.policies)
    if (!is_known_policy(p)) throw std::invalid_argument("unknown policy '" + p + "'");
  const std::string fingerprint = instance_fingerprint(inst);
  const DepartureSchedule schedule(inst);
  const int decisions = static_cast<int>(schedule.decision_steps().size());
  const double random_cost = solve_with(inst, "random", cfg.options).cost;

  std::vector<ResultRow> rows;
  for (const auto& name : cfg.policies) {
    ResultRow row;
    row.policy = name;
    row.decisions = decisions;
    try {
      std::vector<double> times;
      Solution sol;
      for (int k = 0; k < std::max(1, cfg.timing_runs); ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        sol = solve_with(inst, name, cfg.options);
        times.push_back(seconds_since(t0));
      }
      row.cost = sol.cost;
      row.relative = random_cost > 0.0 ? sol.cost / random_cost : 0.0;
      row.comparable = sol.comparable;
      row.seconds = median(times);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    if (instance_fingerprint(inst) != fingerprint) throw std::logic_error("instance mutated by policy " + name);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_cost(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_results_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << "policy,total_cost,relative_to_random,decisions,comparable,error\n";
  for (const auto& r : rows) {
    out << r.policy << ',';
    if (r.error.empty()) out << format_cost(r.cost) << ',' << format_cost(r.relative);
    else out << ',';
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out << ',' << r.decisions << ',' << (r.comparable ? "yes" : "no") << ',' << err << '\n';
  }
}

void write_timings_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << "policy,median_seconds\n";
  char buf[32];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.6f", r.seconds);
    out << r.policy << ',' << buf << '\n';
  }
}

nlohmann::json run_manifest(const Instance& inst, const ComparisonConfig& cfg, const std::vector<ResultRow>& rows) {
  nlohmann::json m;
  m["instance"] = {{"fingerprint", instance_fingerprint(inst)},
                   {"pods", inst.pods},
                   {"places", inst.places},
                   {"stations", inst.stations()},
                   {"horizon", inst.horizon()}};
  m["policies"] = cfg.policies;
  m["seed"] = cfg.options.seed;
  m["timing_runs"] = cfg.timing_runs;
  m["ga"] = {{"population", cfg.options.ga.population},
             {"stall_generations", cfg.options.ga.stall_generations},
             {"max_generations", cfg.options.ga.max_generations}};
  m["window"] = cfg.options.window;
  nlohmann::json res = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j = {{"policy", r.policy}, {"comparable", r.comparable}};
    if (r.error.empty()) j["total_cost"] = r.cost, j["relative_to_random"] = r.relative;
    else j["error"] = r.error;
    res.push_back(j);
  }
  m["results"] = res;
  return m;
}

TinyOptions tiny_options_for(RegimeKind kind, const TinyOptions& base) {
  TinyOptions o = base;
  o.kind = kind;
  o.line_costs = true;
  o.equal_capacities = true;
  o.prefill_queues = false;
  return o;
}

std::vector<UniformityRow> uniformity_study(const std::vector<std::uint64_t>& seeds, const TinyOptions& base) {
  std::vector<UniformityRow> out;
  for (auto kind : {RegimeKind::Periodic, RegimeKind::PeriodicRandom, RegimeKind::RandomUniform,
                    RegimeKind::RandomGeometric}) {
    UniformityRow row;
    row.regime = kind;
    row.min_ratio = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (auto seed : seeds) {
      const Instance inst = build_tiny_system(seed, tiny_options_for(kind, base));
      CheapestPolicy cheapest(CheapestVariant::Decision);
      const double c = run_policy(inst, cheapest).cost;
      const double opt = solve_exact(inst).cost;
      const double ratio = opt > 0.0 ? c / opt : 1.0;
      ++row.instances;
      row.equal += c == opt;
      sum += ratio;
      row.min_ratio = std::min(row.min_ratio, ratio);
      row.max_ratio = std::max(row.max_ratio, ratio);
    }
    row.mean_ratio = row.instances ? sum / row.instances : 0.0;
    if (!row.instances) row.min_ratio = 0.0;
    out.push_back(row);
  }
  return out;
}

SeasonalReport seasonal_study(const SeasonalConfig& cfg) {
  std::vector<std::uint64_t> seeds = cfg.seeds;
  if (seeds.empty())
    for (std::uint64_t s = 1; s <= 20; ++s) seeds.push_back(s);
  SeasonalReport rep;
  std::vector<double> fs, ds, fp, dp;
  for (bool seasonal : {true, false})
    for (auto seed : seeds) {
      const Layout layout = medium_system_layout(cfg.layout, seed);
      DepartureRegime regime{RegimeKind::RandomGeometric, seed, 20.0, seasonal ? cfg.season_length : 0};
      const Instance inst = build_instance(layout, regime, cfg.horizon);
      MostExpensivePolicy init;
      const auto start = run_policy(inst, init);
      SeasonalRow row;
      row.seed = seed;
      row.seasonal = seasonal;
      row.baseline = start.cost;
      row.frequency = tetris_improve(inst, start.actions, TetrisMode::Frequency).cost;
      row.duration = tetris_improve(inst, start.actions, TetrisMode::Duration).cost;
      (seasonal ? fs : fp).push_back(row.frequency);
      (seasonal ? ds : dp).push_back(row.duration);
      rep.rows.push_back(row);
    }
  rep.median_frequency_seasonal = median(fs);
  rep.median_duration_seasonal = median(ds);
  rep.median_frequency_plain = median(fp);
  rep.median_duration_plain = median(dp);
  return rep;
}

}  // namespace prp
