// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "prp/chart.hpp"
#include "prp/exact.hpp"
#include "prp/game.hpp"
#include "prp/genetic.hpp"
#include "prp/harness.hpp"
#include "prp/instance_gen.hpp"
#include "prp/instance_io.hpp"
#include "prp/policies.hpp"
#include "prp/tetris.hpp"

namespace fs = std::filesystem;
using namespace prp;

namespace {

constexpr double kReplayTolerance = 1e-9;
constexpr double kVariantTolerance = 1e-9;
constexpr double kFixedTolerance = 1e-9;
constexpr double kOracleSeconds = 60.0;
constexpr double kMediumTetrisSeconds = 60.0;
constexpr int kGaGenerations = 100;
constexpr int kGaPopulation = 100;

const std::string kData = PODREPO_DATA_DIR;
const std::string kCli = PRP_CLI_PATH;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

Instance shipped_small() { return load_instance(kData + "/small_system.json"); }

Verdict oracle_equivalence() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  int n = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Instance inst = build_tiny_system(seed);
    if (inst.places > 6 || inst.pods > 6 || inst.horizon() > 8) v.fail("instance out of bounds");
    const double bf = brute_force_optimum(inst).cost;
    const double ex = solve_exact(inst).cost;
    if (bf != ex) v.fail(fmt("seed %.0f: exact %.6g vs brute force %.6g", static_cast<double>(seed), ex, bf));
    ++n;
  }
  const double s = seconds_since(t0);
  if (s >= kOracleSeconds) v.fail(fmt("took %.1f s", s));
  if (v.pass) v.detail = fmt("%.0f instances, %.2f s", n, s);
  return v;
}

Verdict periodic_cheapest() {
  Verdict v;
  const TinyOptions opt = tiny_options_for(RegimeKind::Periodic);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = build_tiny_system(seed, opt);
    CheapestPolicy p(CheapestVariant::Decision);
    const double c = run_policy(inst, p).cost;
    const double bf = brute_force_optimum(inst).cost;
    if (c != bf) v.fail(fmt("seed %.0f: cheapest %.6g vs optimum %.6g", static_cast<double>(seed), c, bf));
  }
  if (v.pass) v.detail = "10 periodic instances, cheapest-place optimal";
  return v;
}

Verdict three_variants() {
  Verdict v;
  const Instance inst = shipped_small();
  CheapestPolicy a(CheapestVariant::ToStorage), b(CheapestVariant::OnAverage), c(CheapestVariant::Decision);
  const double ca = run_policy(inst, a).cost, cb = run_policy(inst, b).cost, cc = run_policy(inst, c).cost;
  if (std::abs(ca - cb) > kVariantTolerance || std::abs(ca - cc) > kVariantTolerance)
    v.fail(fmt("to-storage %.10g, avg %.10g, decision %.10g", ca, cb, cc));
  else
    v.detail = fmt("all three %.10g", ca);
  return v;
}

Verdict policy_ordering() {
  Verdict v;
  const Instance inst = shipped_small();
  SolveOptions opt;
  double c[4];
  const char* names[4] = {"exact", "tetris:frequency", "cheapest:decision", "random"};
  for (int i = 0; i < 4; ++i) {
    const Solution s = solve_with(inst, names[i], opt);
    c[i] = s.cost;
    const double replay = total_cost(inst, s.actions);
    if (std::abs(replay - s.cost) > kReplayTolerance) v.fail(std::string(names[i]) + ": reported cost differs from replay");
    if (!s.note.empty() && std::string(names[i]) == "exact") v.fail("exact: " + s.note);
  }
  const double exact = c[0], tet = c[1], cheap = c[2], rnd = c[3];
  if (!(exact < cheap && cheap < rnd)) v.fail(fmt("exact %.10g, cheapest %.10g, random %.10g", exact, cheap, rnd));
  if (!(tet <= cheap)) v.fail(fmt("tetris %.10g > cheapest %.10g", tet, cheap));
  if (v.pass) v.detail = fmt("exact %.10g < tetris %.10g <= cheapest %.10g < random %.10g", exact, tet, cheap, rnd);
  return v;
}

Verdict iterative_consistency() {
  Verdict v;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = build_tiny_system(seed);
    const auto ex = solve_exact(inst);
    const auto one = solve_iterative(inst, std::max(1, inst.horizon()));
    if (!(one.actions == ex.actions) || one.cost != ex.cost) v.fail(fmt("seed %.0f: one window differs", static_cast<double>(seed)));
    CheapestPolicy p(CheapestVariant::Decision);
    const auto greedy = run_policy(inst, p);
    const auto unit = solve_iterative(inst, 1);
    if (!(unit.actions == greedy.actions) || unit.cost != greedy.cost)
      v.fail(fmt("seed %.0f: unit window %.6g vs greedy %.6g", static_cast<double>(seed), unit.cost, greedy.cost));
  }
  if (v.pass) v.detail = "20 instances";
  return v;
}

Verdict tetris_sandwich_and_speed() {
  Verdict v;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Instance inst = build_tiny_system(seed);
    const double bf = brute_force_optimum(inst).cost;
    MostExpensivePolicy me;
    const double worst = run_policy(inst, me).cost;
    for (auto mode : {TetrisMode::Frequency, TetrisMode::Duration}) {
      const double t = tetris(inst, mode).cost;
      if (!(bf <= t && t <= worst)) v.fail(fmt("seed %.0f: %.6g <= %.6g <= %.6g violated", static_cast<double>(seed), bf, t, worst));
    }
  }
  const Instance medium = build_medium_system();
  if (medium.places != 504 || medium.pods != 441 || medium.horizon() != 20000) v.fail("medium system has the wrong shape");
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = tetris(medium, TetrisMode::Frequency);
  const double s = seconds_since(t0);
  if (static_cast<int>(r.actions.size()) != 20000) v.fail("medium run incomplete");
  if (s >= kMediumTetrisSeconds) v.fail(fmt("medium tetris took %.1f s", s));
  if (v.pass) v.detail = fmt("50 tiny instances; medium 20000 decisions in %.2f s", s);
  return v;
}

Verdict genetic_dichotomy() {
  Verdict v;
  const Instance inst = shipped_small();
  GaConfig cfg;
  cfg.population = kGaPopulation;
  cfg.max_generations = kGaGenerations;
  cfg.seed = 1;
  const auto gamma = named_place_order(inst, "avg-cost");
  const auto g2 = evolve(inst, Encoding::Genetic2, &gamma, cfg);
  const auto g1 = evolve(inst, Encoding::Genetic1, nullptr, cfg);
  RandomPolicy rp(1);
  const double rnd = run_policy(inst, rp).cost;
  if (g2.infeasible != 0) v.fail(fmt("genetic2 evaluated %.0f infeasible", static_cast<double>(g2.infeasible)));
  if (g1.infeasible == 0) v.fail("genetic1 never produced an infeasible individual");
  if (g2.generations != kGaGenerations) v.fail("genetic2 stopped early");
  if (!(g2.cost < rnd)) v.fail(fmt("genetic2 %.10g not below random %.10g", g2.cost, rnd));
  if (v.pass)
    v.detail = fmt("genetic2 %.10g < random %.10g; genetic1 infeasible fraction %.4f", g2.cost, rnd,
                   g1.infeasible_fraction());
  return v;
}

// Exhaustive fixed assignment from the departure counts, independent of the
// library's cost tables.
double enumerate_fixed(const Instance& inst) {
  const DepartureSchedule sched(inst);
  std::vector<std::vector<int>> to(static_cast<std::size_t>(inst.pods), std::vector<int>(static_cast<std::size_t>(inst.stations()), 0));
  auto from = to;
  for (int t = 0; t < inst.horizon(); ++t) {
    const auto& info = sched.step(t);
    ++to[info.pod.index()][info.station.index()];
    if (info.returning) ++from[info.returning->index()][info.station.index()];
  }
  std::vector<int> places(static_cast<std::size_t>(inst.places));
  std::iota(places.begin(), places.end(), 1);
  double best = 1e300;
  do {
    double c = 0.0;
    for (int h = 0; h < inst.pods; ++h)
      for (int s = 0; s < inst.stations(); ++s) {
        const PlaceId p(places[static_cast<std::size_t>(h)]);
        c += to[static_cast<std::size_t>(h)][static_cast<std::size_t>(s)] * inst.costs.to_station(p, StationId(s + 1)) +
             from[static_cast<std::size_t>(h)][static_cast<std::size_t>(s)] * inst.costs.from_station(StationId(s + 1), p);
      }
    best = std::min(best, c);
  } while (std::next_permutation(places.begin(), places.end()));
  return best;
}

// True when every pod visits each station equally often in both directions.
bool equal_station_frequencies(const Instance& inst) {
  const auto f = station_frequencies(inst);
  for (int h = 1; h <= inst.pods; ++h)
    for (int s = 2; s <= inst.stations(); ++s)
      if (f.to(PodId(h), StationId(s)) != f.to(PodId(h), StationId(1)) ||
          f.from(PodId(h), StationId(s)) != f.from(PodId(h), StationId(1)))
        return false;
  return true;
}

Verdict fixed_structure() {
  Verdict v;
  const Instance inst = shipped_small();
  const auto fa = compute_fixed_assignment(inst);
  const Instance arranged = arrange_for_fixed(inst, fa);
  FixedPolicy p(fa);
  const auto trace = record_trace(arranged, run_policy(arranged, p).actions);
  const auto distinct = distinct_pods_per_place(trace);
  if (*std::max_element(distinct.begin(), distinct.end()) > 1) v.fail("a place row holds more than one pod");

  int enumerated = 0, shortcut = 0;
  for (std::uint64_t seed = 1; enumerated < 20 && seed < 1000; ++seed) {
    TinyOptions opt;
    opt.max_stations = 1 + static_cast<int>(seed % 2);
    opt.line_costs = seed % 3 == 0;
    const Instance tiny = build_tiny_system(seed, opt);
    if (tiny.pods > tiny.places) continue;
    ++enumerated;
    const auto f = station_frequencies(tiny);
    const double got = fixed_assignment_objective(tiny, f, compute_fixed_assignment(tiny));
    const double want = enumerate_fixed(tiny);
    if (std::abs(got - want) > kFixedTolerance) v.fail(fmt("seed %.0f: %.6g vs enumeration %.6g", static_cast<double>(seed), got, want));
    if (opt.line_costs && equal_station_frequencies(tiny)) {
      ++shortcut;
      const double sorted = fixed_assignment_objective(tiny, f, sort_based_assignment(tiny));
      if (std::abs(sorted - want) > kFixedTolerance) v.fail(fmt("seed %.0f: sort-based %.6g vs %.6g", static_cast<double>(seed), sorted, want));
    }
  }
  if (enumerated < 20) v.fail("not enough tiny instances");
  if (shortcut == 0) v.fail("no instance exercised the sort-based shortcut");
  if (v.pass) v.detail = fmt("20 enumerations, %.0f sort-based checks", shortcut);
  return v;
}

Verdict seasonal_claim() {
  Verdict v;
  SeasonalConfig cfg;
  for (std::uint64_t s = 1; s <= 20; ++s) cfg.seeds.push_back(s);
  cfg.horizon = 10000;
  cfg.season_length = 2000;
  const auto rep = seasonal_study(cfg);
  if (!(rep.median_duration_seasonal <= rep.median_frequency_seasonal))
    v.fail(fmt("seasonal medians: duration %.10g > frequency %.10g", rep.median_duration_seasonal,
               rep.median_frequency_seasonal));
  if (!(rep.median_frequency_plain <= rep.median_duration_plain))
    v.fail(fmt("plain medians: frequency %.10g > duration %.10g", rep.median_frequency_plain, rep.median_duration_plain));
  const std::string medians = fmt("seasonal D %.10g / F %.10g, plain F %.10g / D %.10g", rep.median_duration_seasonal,
                                  rep.median_frequency_seasonal, rep.median_frequency_plain, rep.median_duration_plain);
  v.detail = v.pass ? medians : v.detail + "; " + medians;
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int sh(const std::string& cmd) { return std::system((cmd + " >/dev/null 2>&1").c_str()); }

Verdict determinism() {
  Verdict v;
  const fs::path dir = fs::temp_directory_path() / "prp_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string inst = kData + "/small_system.json";
  const std::string policies = "random,cheapest:to-storage,cheapest:avg,cheapest:decision,most-expensive,fixed,"
                               "tetris:frequency,tetris:duration,genetic2:avg-cost";
  for (const char* run : {"a", "b"}) {
    const fs::path d = dir / run;
    if (sh(kCli + " compare --instance " + inst + " --policies " + policies + " --max-gens 20 --timing-runs 1 --out-dir " +
           d.string()) != 0)
      v.fail(std::string("compare run ") + run + " failed");
    if (sh(kCli + " run --instance " + inst + " --policy genetic1 --max-gens 10 --seed 3 --trace " +
           (d / "trace.csv").string() + " --actions-out " + (d / "actions.json").string()) != 0)
      v.fail(std::string("run ") + run + " failed");
    if (sh(kCli + " chart --instance " + inst + " --policy cheapest:decision --from 160 --to 196 -o " +
           (d / "chart.svg").string()) != 0)
      v.fail(std::string("chart ") + run + " failed");
  }
  for (const char* f : {"results.csv", "trace.csv", "actions.json", "chart.svg"}) {
    const std::string a = slurp(dir / "a" / f), b = slurp(dir / "b" / f);
    if (a.empty() || a != b) v.fail(std::string(f) + " differs between identical runs");
  }
  if (slurp(dir / "a" / "chart.svg") != slurp(kData + "/golden/small_cheapest_chart.svg"))
    v.fail("chart differs from the golden SVG");
  if (v.pass) v.detail = "results.csv, trace, actions and golden SVG byte-identical";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  // optional: a single criterion number
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"cheapest-place optimal under periodic departures", periodic_cheapest},
      {"three cheapest-place variants agree", three_variants},
      {"policy ordering on the small system", policy_ordering},
      {"iterative consistency", iterative_consistency},
      {"tetris sandwich and medium-system speed", tetris_sandwich_and_speed},
      {"genetic feasibility dichotomy", genetic_dichotomy},
      {"fixed-place structure", fixed_structure},
      {"seasonal sort order", seasonal_claim},
      {"determinism", determinism},
  };
  int failed = 0;
  int ran = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    ++ran;
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    failed += !v.pass;
    std::printf("%s %2zu %s (%.1f s): %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                seconds_since(t0), v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed ? 1 : 0;
}
