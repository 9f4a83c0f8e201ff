#include "prp/genetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "prp/errors.hpp"
#include "prp/game.hpp"
#include "prp/policies.hpp"
#include "prp/rng.hpp"

namespace prp {

PlaceOrder make_place_order(std::string name, std::vector<PlaceId> order) {
  PlaceOrder g;
  g.name = std::move(name);
  g.rank.assign(order.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto p = order[i];
    if (p.value() < 1 || p.value() > static_cast<int>(order.size()) || g.rank[p.index()] >= 0)
      throw std::invalid_argument("place order must be a permutation of the places");
    g.rank[p.index()] = static_cast<int>(i);
  }
  g.order = std::move(order);
  return g;
}

PlaceOrder named_place_order(const Instance& inst, const std::string& name) {
  std::vector<double> key(static_cast<std::size_t>(inst.places), 0.0);
  if (name == "avg-cost") {
    key = avg_costs(inst);
  } else {
    for (int p = 1; p <= inst.places; ++p)
      for (int s = 1; s <= inst.stations(); ++s)
        key[static_cast<std::size_t>(p - 1)] +=
            inst.costs.to_station(PlaceId(p), StationId(s)) + inst.costs.from_station(StationId(s), PlaceId(p));
  }
  std::vector<PlaceId> close;
  for (int p = 1; p <= inst.places; ++p) close.emplace_back(p);
  std::stable_sort(close.begin(), close.end(), [&](PlaceId a, PlaceId b) { return key[a.index()] < key[b.index()]; });

  if (name == "close" || name == "avg-cost") return make_place_order(name, close);
  if (name == "far") return make_place_order(name, {close.rbegin(), close.rend()});
  if (name == "zigzag") {
    const std::size_t half = (close.size() + 1) / 2;
    std::vector<PlaceId> z;
    for (std::size_t i = 0; i < half; ++i) {
      z.push_back(close[i]);
      if (half + i < close.size()) z.push_back(close[half + i]);
    }
    return make_place_order(name, std::move(z));
  }
  throw std::invalid_argument("unknown place order '" + name + "' (close, far, zigzag, avg-cost)");
}

std::string to_string(Encoding e) { return e == Encoding::Genetic1 ? "genetic1" : "genetic2"; }

ActionSequence decode1(const Genes& genes, const DepartureSchedule& schedule) {
  const auto& steps = schedule.decision_steps();
  if (genes.size() != steps.size()) throw std::invalid_argument("decode1: one gene per decision step");
  ActionSequence y;
  y.actions.assign(static_cast<std::size_t>(schedule.horizon()), Action::noop());
  for (std::size_t k = 0; k < steps.size(); ++k)
    y.actions[static_cast<std::size_t>(steps[k])] = Action::from_int(genes[k]);
  return y;
}

ActionSequence decode2(const Genes& genes, const Instance& inst, const DepartureSchedule& schedule,
                       const PlaceOrder& gamma) {
  if (genes.size() != schedule.decision_steps().size())
    throw std::invalid_argument("decode2: one gene per decision step");
  if (static_cast<int>(gamma.order.size()) != inst.places) throw std::invalid_argument("decode2: place order size");
  // Occupancy indexed by gamma rank so the k-th admissible place is the k-th
  // free rank.
  std::vector<char> busy(static_cast<std::size_t>(inst.places), 0);
  std::vector<int> rank_of_pod(static_cast<std::size_t>(inst.pods), -1);
  const auto& storage = inst.initial_state.storage();
  for (int p = 1; p <= inst.places; ++p)
    if (auto h = storage.at(PlaceId(p))) {
      const int r = gamma.rank[static_cast<std::size_t>(p - 1)];
      busy[static_cast<std::size_t>(r)] = 1;
      rank_of_pod[h->index()] = r;
    }

  ActionSequence y;
  y.actions.assign(static_cast<std::size_t>(inst.horizon()), Action::noop());
  std::size_t g = 0;
  for (int t = 0; t < inst.horizon(); ++t) {
    const auto& info = schedule.step(t);
    auto& r0 = rank_of_pod[info.pod.index()];
    busy[static_cast<std::size_t>(r0)] = 0;
    r0 = -1;
    if (info.fill) continue;
    const int gene = genes[g++];
    int k = (gene % info.admissible + info.admissible) % info.admissible;
    int r = 0;
    for (;; ++r)
      if (!busy[static_cast<std::size_t>(r)] && k-- == 0) break;
    busy[static_cast<std::size_t>(r)] = 1;
    rank_of_pod[info.returning->index()] = r;
    y.actions[static_cast<std::size_t>(t)] = Action::place(gamma.order[static_cast<std::size_t>(r)]);
  }
  return y;
}

std::optional<double> evaluate(const Instance& inst, const DepartureSchedule& schedule, const ActionSequence& y) {
  if (static_cast<int>(y.size()) != inst.horizon()) return std::nullopt;
  std::vector<int> occ(static_cast<std::size_t>(inst.places), 0);
  std::vector<int> loc(static_cast<std::size_t>(inst.pods), 0);
  const auto& storage = inst.initial_state.storage();
  for (int p = 1; p <= inst.places; ++p)
    if (auto h = storage.at(PlaceId(p))) {
      occ[static_cast<std::size_t>(p - 1)] = h->value();
      loc[h->index()] = p;
    }
  double total = 0.0;
  for (int t = 0; t < inst.horizon(); ++t) {
    const auto& info = schedule.step(t);
    const Action a = y[static_cast<std::size_t>(t)];
    const int p0 = loc[info.pod.index()];
    occ[static_cast<std::size_t>(p0 - 1)] = 0;
    loc[info.pod.index()] = 0;
    double c = inst.costs.to_station(PlaceId(p0), info.station);
    if (info.fill) {
      if (!a.is_noop()) return std::nullopt;
    } else {
      if (a.is_noop()) return std::nullopt;
      const int p = a.target().value();
      if (p < 1 || p > inst.places || occ[static_cast<std::size_t>(p - 1)]) return std::nullopt;
      occ[static_cast<std::size_t>(p - 1)] = info.returning->value();
      loc[info.returning->index()] = p;
      c += inst.costs.from_station(info.station, a.target());
    }
    total += c;
  }
  if (inst.costs.terminal() != TerminalCost::Zero || inst.costs.discount() != 1.0) return total_cost(inst, y);
  return total;
}

namespace {

struct Individual {
  Genes genes;
  double cost = std::numeric_limits<double>::infinity();
};

}  // namespace

GaResult evolve(const Instance& inst, Encoding encoding, const PlaceOrder* gamma, const GaConfig& cfg) {
  if (cfg.population < 2) throw std::invalid_argument("GA population must be >= 2");
  if (cfg.tournament < 1 || cfg.elitism < 0 || cfg.elitism >= cfg.population)
    throw std::invalid_argument("GA tournament/elitism out of range");
  if (encoding == Encoding::Genetic2 && !gamma) throw std::invalid_argument("genetic2 needs a place order");

  const DepartureSchedule schedule(inst);
  const auto& steps = schedule.decision_steps();
  const std::size_t len = steps.size();
  Rng rng(cfg.seed);
  GaResult res;

  auto decode = [&](const Genes& g) {
    return encoding == Encoding::Genetic1 ? decode1(g, schedule) : decode2(g, inst, schedule, *gamma);
  };
  auto eval = [&](Individual& ind) {
    const auto c = evaluate(inst, schedule, decode(ind.genes));
    ++res.evaluated;
    if (!c) ++res.infeasible;
    ind.cost = c ? *c : std::numeric_limits<double>::infinity();
  };
  auto random_gene = [&](std::size_t k) {
    if (encoding == Encoding::Genetic1) return 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(inst.places)));
    return static_cast<int>(rng.below(static_cast<std::uint64_t>(schedule.step(steps[k]).admissible)));
  };

  std::vector<Individual> pop(static_cast<std::size_t>(cfg.population));
  for (auto& ind : pop) {
    if (encoding == Encoding::Genetic1) {
      RandomPolicy rp(rng.next());
      const auto run = run_policy(inst, schedule, rp);
      for (int t : steps) ind.genes.push_back(run.actions[static_cast<std::size_t>(t)].to_int());
    } else {
      // A uniform index into D_t is a uniform admissible place.
      for (std::size_t k = 0; k < len; ++k) ind.genes.push_back(random_gene(k));
    }
    eval(ind);
  }

  auto ranked = [&] {
    std::vector<std::size_t> idx(pop.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pop[a].cost < pop[b].cost; });
    return idx;
  };
  auto tournament = [&]() -> const Individual& {
    std::size_t best = rng.below(pop.size());
    for (int k = 1; k < cfg.tournament; ++k) {
      const std::size_t c = rng.below(pop.size());
      if (pop[c].cost < pop[best].cost || (pop[c].cost == pop[best].cost && c < best)) best = c;
    }
    return pop[best];
  };
  const double rate = len ? std::min(1.0, cfg.mutations_per_chromosome / static_cast<double>(len)) : 0.0;
  auto mutate = [&](Genes& g) {
    for (std::size_t k = 0; k < g.size(); ++k)
      if (rng.bernoulli(rate)) g[k] = random_gene(k);
  };

  Individual best;
  int stall = 0;
  for (int gen = 0;; ++gen) {
    const auto order = ranked();
    const Individual& top = pop[order.front()];
    if (top.cost < best.cost) {
      best = top;
      stall = 0;
    } else {
      ++stall;
    }
    res.history.push_back(best.cost);
    res.generations = gen;
    if (stall >= cfg.stall_generations || (cfg.max_generations > 0 && gen >= cfg.max_generations) || len == 0) break;

    std::vector<Individual> next;
    next.reserve(pop.size());
    for (int e = 0; e < cfg.elitism; ++e) next.push_back(pop[order[static_cast<std::size_t>(e)]]);
    while (next.size() < pop.size()) {
      Individual a = tournament();
      Individual b = tournament();
      if (len > 1 && rng.bernoulli(cfg.crossover_probability)) {
        std::size_t i = rng.below(len + 1), j = rng.below(len + 1);
        if (i > j) std::swap(i, j);
        std::swap_ranges(a.genes.begin() + static_cast<std::ptrdiff_t>(i), a.genes.begin() + static_cast<std::ptrdiff_t>(j),
                         b.genes.begin() + static_cast<std::ptrdiff_t>(i));
      }
      mutate(a.genes);
      mutate(b.genes);
      eval(a);
      next.push_back(std::move(a));
      if (next.size() < pop.size()) {
        eval(b);
        next.push_back(std::move(b));
      }
    }
    pop = std::move(next);
  }

  if (std::isinf(best.cost)) throw Infeasible("genetic search found no feasible individual");
  res.actions = decode(best.genes);
  res.cost = total_cost(inst, res.actions);
  return res;
}

}  // namespace prp
