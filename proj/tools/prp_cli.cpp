// prp: generate instances, run policies, compare, chart and solve.

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "prp/chart.hpp"
#include "prp/errors.hpp"
#include "prp/exact.hpp"
#include "prp/game.hpp"
#include "prp/harness.hpp"
#include "prp/instance_gen.hpp"
#include "prp/instance_io.hpp"
#include "prp/policies.hpp"

namespace fs = std::filesystem;
using namespace prp;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kBudget = 2;

struct GenArgs {
  std::string system = "small";
  std::uint64_t seed = 2018;
  int horizon = -1;
  std::string regime = "random-geometric";
  double ratio = 20.0;
  int season = 0;
  int capacity = 2;
  std::string out;
};

struct RunArgs {
  std::string instance;
  std::string policy = "cheapest:decision";
  std::string actions_out;
  std::string trace_out;
};

struct CompareArgs {
  std::string instance;
  std::string policies = "random,cheapest:to-storage,cheapest:avg,cheapest:decision,tetris:frequency,tetris:duration";
  std::string out_dir = "results";
  int timing_runs = 3;
  int chart_from = -1;
  int chart_to = -1;
};

struct ChartArgs {
  std::string instance;
  std::string actions;
  std::string policy = "cheapest:decision";
  int from = 0;
  int to = -1;
  std::string out = "chart.svg";
  std::string csv;
};

struct SolveArgs {
  std::string instance;
  bool exact = false;
  int window = 0;
  std::uint64_t node_budget = 0;
  std::string export_lp;
  bool pairwise_all = false;
  std::string out;
};

struct StudyArgs {
  int seeds = 20;
  int horizon = 10000;
  int season = 2000;
  std::string out;
};

void add_search_options(CLI::App* app, SolveOptions& opt) {
  app->add_option("--seed", opt.seed, "seed for random and genetic policies");
  app->add_option("--pop", opt.ga.population, "genetic population size");
  app->add_option("--stall-gens", opt.ga.stall_generations, "genetic stop after this many generations without improvement");
  app->add_option("--max-gens", opt.ga.max_generations, "genetic generation cap (0: none)");
  app->add_option("--window", opt.window, "exact policy: iterative window size (0: full horizon)");
  app->add_option("--node-budget", opt.exact.node_budget, "exact policy: transition budget (0: none)");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

int cmd_gen(const GenArgs& a) {
  Instance inst;
  nlohmann::json meta;
  DepartureRegime regime{parse_regime(a.regime), a.seed, a.ratio, a.season};
  Layout layout;
  int horizon = a.horizon;
  if (a.system == "small") {
    layout = small_system_layout(10, a.capacity);
    if (horizon < 0) horizon = 1000;
  } else if (a.system == "medium") {
    layout = medium_system_layout(MediumLayoutParams{}, a.seed);
    if (horizon < 0) horizon = 20000;
  } else if (a.system == "tiny") {
    inst = build_tiny_system(a.seed);
    meta = {{"system", "tiny"}, {"seed", a.seed}};
  } else {
    throw std::invalid_argument("unknown system '" + a.system + "' (small, medium, tiny)");
  }
  if (a.system != "tiny") {
    inst = build_instance(layout, regime, horizon);
    meta = {{"regime", regime_to_json(regime)},
            {"station_weights", layout.station_weights.weights},
            {"layout", layout.params},
            {"horizon", horizon}};
    if (regime.kind == RegimeKind::RandomGeometric) meta["pod_weights"] = geometric_weights(inst.pods, a.ratio).weights;
  }
  if (a.out.empty()) {
    nlohmann::json doc = instance_to_json(inst);
    doc["metadata"] = meta;
    std::cout << doc.dump() << '\n';
  } else {
    save_instance(inst, a.out, meta);
    std::cerr << "wrote " << a.out << " (" << instance_fingerprint(inst) << ")\n";
  }
  return kOk;
}

int cmd_run(const RunArgs& a, const SolveOptions& opt) {
  const Instance inst = load_instance(a.instance);
  const Solution sol = solve_with(inst, a.policy, opt);
  std::cout << "policy " << sol.policy << "\ntotal_cost " << format_cost(sol.cost) << "\nper_step "
            << format_cost(inst.horizon() ? sol.cost / inst.horizon() : 0.0) << '\n';
  if (!sol.note.empty()) std::cout << "note " << sol.note << '\n';
  if (!a.actions_out.empty()) save_actions(sol.actions, a.actions_out);
  if (!a.trace_out.empty() && sol.comparable) {
    std::ofstream out(a.trace_out);
    write_trace_csv(record_trace(inst, sol.actions), out);
  }
  return kOk;
}

int cmd_compare(const CompareArgs& a, const SolveOptions& opt) {
  const Instance inst = load_instance(a.instance);
  ComparisonConfig cfg;
  cfg.policies = split(a.policies, ',');
  cfg.options = opt;
  cfg.timing_runs = a.timing_runs;
  const auto rows = run_comparison(inst, cfg);
  fs::create_directories(a.out_dir);
  std::ostringstream results, timings;
  write_results_csv(rows, results);
  write_timings_csv(rows, timings);
  write_file(fs::path(a.out_dir) / "results.csv", results.str());
  write_file(fs::path(a.out_dir) / "timings.csv", timings.str());
  write_file(fs::path(a.out_dir) / "manifest.json", run_manifest(inst, cfg, rows).dump(2) + "\n");
  if (a.chart_from >= 0) {
    ChartSpec spec;
    spec.from = a.chart_from;
    spec.to = a.chart_to;
    for (const auto& r : rows) {
      if (!r.error.empty() || !r.comparable) continue;
      const Solution sol = solve_with(inst, r.policy, opt);
      std::string file = r.policy;
      for (char& c : file)
        if (c == ':') c = '_';
      emit_chart(inst, record_trace(inst, sol.actions), spec, fs::path(a.out_dir) / (file + ".svg"));
    }
  }
  std::cout << results.str();
  bool failed = false;
  for (const auto& r : rows) failed = failed || !r.error.empty();
  return failed ? kConfigError : kOk;
}

int cmd_chart(const ChartArgs& a, const SolveOptions& opt) {
  const Instance inst = load_instance(a.instance);
  ActionSequence y;
  Instance shown = inst;
  if (!a.actions.empty()) {
    y = load_actions(a.actions);
  } else {
    const Solution sol = solve_with(inst, a.policy, opt);
    y = sol.actions;
    if (!sol.comparable) shown = arrange_for_fixed(inst, compute_fixed_assignment(inst));
  }
  const RunTrace trace = record_trace(shown, y);
  ChartSpec spec;
  spec.from = a.from;
  spec.to = a.to;
  emit_chart(shown, trace, spec, a.out);
  if (!a.csv.empty()) {
    std::ofstream out(a.csv);
    write_trace_csv(trace, out, a.from, a.to);
  }
  std::cerr << "wrote " << a.out << '\n';
  return kOk;
}

int cmd_solve(const SolveArgs& a) {
  const Instance inst = load_instance(a.instance);
  if (!a.export_lp.empty()) {
    BipExportOptions eo;
    eo.pairwise_all = a.pairwise_all;
    const auto st = export_bip(inst, fs::path(a.export_lp), eo);
    std::cout << "lp " << a.export_lp << " variables " << st.variables << " constraints " << st.constraints() << '\n';
    if (!a.exact && a.window <= 0) return kOk;
  }
  ExactOptions eo;
  eo.node_budget = a.node_budget;
  const ExactResult r = a.window > 0 ? solve_iterative(inst, a.window, eo) : solve_exact(inst, eo);
  std::printf("total_cost %s\nobjective %s\nlower_bound %s\nproven_optimal %s\nnodes %llu\npeak_states %zu\nwindows %zu\n",
              format_cost(r.cost).c_str(), format_cost(r.objective).c_str(), format_cost(r.lower_bound).c_str(),
              r.proven_optimal ? "yes" : "no", static_cast<unsigned long long>(r.nodes), r.peak_states,
              r.windows.size());
  if (!a.out.empty()) save_actions(r.actions, a.out);
  if (a.window <= 0 && !r.proven_optimal) {
    std::printf("gap %.6f\n", r.gap());
    return kBudget;
  }
  return kOk;
}

int cmd_uniformity(const StudyArgs& a) {
  std::vector<std::uint64_t> seeds;
  for (int s = 1; s <= a.seeds; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
  TinyOptions base;
  base.min_horizon = 10;
  base.max_horizon = 30;
  std::ostringstream os;
  os << "regime,instances,optimal,mean_ratio,min_ratio,max_ratio\n";
  for (const auto& r : uniformity_study(seeds, base))
    os << to_string(r.regime) << ',' << r.instances << ',' << r.equal << ',' << format_cost(r.mean_ratio) << ','
       << format_cost(r.min_ratio) << ',' << format_cost(r.max_ratio) << '\n';
  if (!a.out.empty()) write_file(a.out, os.str());
  std::cout << os.str();
  return kOk;
}

int cmd_seasonal(const StudyArgs& a) {
  SeasonalConfig cfg;
  for (int s = 1; s <= a.seeds; ++s) cfg.seeds.push_back(static_cast<std::uint64_t>(s));
  cfg.horizon = a.horizon;
  cfg.season_length = a.season;
  const auto rep = seasonal_study(cfg);
  std::ostringstream os;
  os << "seed,seasonal,most_expensive,tetris_frequency,tetris_duration\n";
  for (const auto& r : rep.rows)
    os << r.seed << ',' << (r.seasonal ? "yes" : "no") << ',' << format_cost(r.baseline) << ','
       << format_cost(r.frequency) << ',' << format_cost(r.duration) << '\n';
  if (!a.out.empty()) write_file(a.out, os.str());
  std::cout << os.str() << "median seasonal: frequency " << format_cost(rep.median_frequency_seasonal)
            << " duration " << format_cost(rep.median_duration_seasonal) << "\nmedian plain: frequency "
            << format_cost(rep.median_frequency_plain) << " duration " << format_cost(rep.median_duration_plain)
            << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pod repositioning simulator and solvers"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate an instance");
  g->add_option("system", gen.system, "small | medium | tiny")->required();
  g->add_option("--seed", gen.seed);
  g->add_option("--horizon", gen.horizon, "number of departures (default 1000 small, 20000 medium)");
  g->add_option("--regime", gen.regime, "random-geometric | random-uniform | periodic-random | periodic");
  g->add_option("--ratio", gen.ratio, "geometric weight ratio");
  g->add_option("--season", gen.season, "re-draw pod weights every this many steps");
  g->add_option("--capacity", gen.capacity, "small system queue capacity");
  g->add_option("-o,--out", gen.out);

  SolveOptions opt;
  RunArgs run;
  auto* r = app.add_subcommand("run", "replay one policy");
  r->add_option("--instance", run.instance)->required();
  r->add_option("--policy", run.policy);
  r->add_option("--actions-out", run.actions_out);
  r->add_option("--trace", run.trace_out, "CSV trace (t, place, pod)");
  add_search_options(r, opt);

  CompareArgs cmp;
  auto* c = app.add_subcommand("compare", "replay several policies on one instance");
  c->add_option("--instance", cmp.instance)->required();
  c->add_option("--policies", cmp.policies, "comma separated");
  c->add_option("--out-dir", cmp.out_dir);
  c->add_option("--timing-runs", cmp.timing_runs);
  c->add_option("--chart-from", cmp.chart_from, "also write one chart per policy from this time");
  c->add_option("--chart-to", cmp.chart_to);
  add_search_options(c, opt);

  ChartArgs ch;
  auto* cc = app.add_subcommand("chart", "storage-area chart as SVG");
  cc->add_option("--instance", ch.instance)->required();
  cc->add_option("--actions", ch.actions, "action sequence JSON (otherwise --policy)");
  cc->add_option("--policy", ch.policy);
  cc->add_option("--from", ch.from);
  cc->add_option("--to", ch.to);
  cc->add_option("-o,--out", ch.out);
  cc->add_option("--csv", ch.csv, "CSV trace of the window");
  add_search_options(cc, opt);

  SolveArgs sv;
  auto* s = app.add_subcommand("solve", "exact or iterative optimization, LP export");
  s->add_option("--instance", sv.instance)->required();
  s->add_flag("--exact", sv.exact, "full-horizon exact solve");
  s->add_option("--window", sv.window, "iterative window size");
  s->add_option("--node-budget", sv.node_budget);
  s->add_option("--export-lp", sv.export_lp, "write the binary program in LP format");
  s->add_flag("--lp-all-pairs", sv.pairwise_all, "export every interval pair, not only overlapping ones");
  s->add_option("--out", sv.out, "action sequence JSON");

  StudyArgs st;
  auto* study = app.add_subcommand("study", "uniformity or seasonal study");
  study->require_subcommand(1);
  auto* uni = study->add_subcommand("uniformity", "cheapest-place versus optimum per departure regime");
  uni->add_option("--seeds", st.seeds);
  uni->add_option("--out", st.out);
  auto* sea = study->add_subcommand("seasonal", "tetris sort orders under seasonal pod weights");
  sea->add_option("--seeds", st.seeds);
  sea->add_option("--horizon", st.horizon);
  sea->add_option("--season", st.season);
  sea->add_option("--out", st.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*r) return cmd_run(run, opt);
    if (*c) return cmd_compare(cmp, opt);
    if (*cc) return cmd_chart(ch, opt);
    if (*s) {
      if (!sv.exact && sv.window <= 0 && sv.export_lp.empty()) throw std::invalid_argument("solve: give --exact, --window or --export-lp");
      return cmd_solve(sv);
    }
    if (*uni) return cmd_uniformity(st);
    if (*sea) return cmd_seasonal(st);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}
