#include "prp/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include <absl/container/flat_hash_map.h>

#include "prp/errors.hpp"
#include "prp/game.hpp"

namespace prp {

BipParameters derive_bip_parameters(const Instance& inst) {
  return derive_bip_parameters(inst, DepartureSchedule(inst));
}

BipParameters derive_bip_parameters(const Instance& inst, const DepartureSchedule& schedule) {
  BipParameters bp;
  bp.horizon = inst.horizon();
  bp.places = inst.places;
  bp.big_m = inst.horizon() + 2;
  bp.initial_busy_end = schedule.initial_busy_ends();
  for (int t : schedule.decision_steps()) {
    const auto& info = schedule.step(t);
    bp.decisions.push_back({t, *info.returning, info.station, t + 1, schedule.busy_end(t), info.next_station});
  }
  const auto& storage = inst.initial_state.storage();
  for (int p = 1; p <= inst.places; ++p)
    if (auto h = storage.at(PlaceId(p)))
      if (auto first = schedule.next_departure_at_or_after(*h, 0))
        bp.fixed_cost += inst.costs.to_station(PlaceId(p), schedule.step(*first).station);
  return bp;
}

double decision_cost(const CostModel& costs, const BipDecision& d, PlaceId p) {
  return costs.decision(d.from_station, p, d.to_station);
}

double root_lower_bound(const Instance& inst) {
  const auto bp = derive_bip_parameters(inst);
  double lb = bp.fixed_cost;
  for (const auto& d : bp.decisions) {
    double best = std::numeric_limits<double>::infinity();
    for (int p = 1; p <= inst.places; ++p) best = std::min(best, decision_cost(inst.costs, d, PlaceId(p)));
    lb += best;
  }
  return lb;
}

namespace {

// A state is the list of places of the stored pods: first the pods that
// depart again inside the window, ordered by that departure, then the places
// of all other stored pods in ascending order. Packed into one word.
struct Codec {
  int bits = 0;
  std::uint64_t mask = 0;

  explicit Codec(int places) : bits(std::bit_width(static_cast<unsigned>(places))), mask((1ULL << bits) - 1) {}

  std::uint64_t encode(const std::uint8_t* row, int len) const {
    std::uint64_t k = 0;
    for (int i = len - 1; i >= 0; --i) k = (k << bits) | row[i];
    return k;
  }
  void decode(std::uint64_t k, int len, std::uint8_t* row) const {
    for (int i = 0; i < len; ++i, k >>= bits) row[i] = static_cast<std::uint8_t>(k & mask);
  }
};

struct StepPlan {
  bool decision = false;
  int active_after_removal = 0;  // active pods once the departing one is gone
  int insert_at = -1;            // position of the returning pod, -1: goes to the ascending tail
  const std::vector<double>* costs = nullptr;
};

struct WindowOutcome {
  std::vector<Action> actions;
  double objective = 0.0;
  double lower_bound = 0.0;
  bool optimal = false;
  std::uint64_t nodes = 0;
  std::size_t peak = 0;
};

constexpr int kMaxRow = 64;

class WindowSolver {
 public:
  WindowSolver(const Instance& inst, const DepartureSchedule& schedule, const SystemState& start, int begin,
               int end, const ExactOptions& opt)
      : inst_(inst), sched_(schedule), begin_(begin), end_(end), opt_(opt), codec_(inst.places) {
    if (inst.places > 64) throw BudgetExceeded("exact solver supports at most 64 places", inst.places);
    build_start(start);
    build_steps();
  }

  WindowOutcome solve(std::uint64_t node_budget);

 private:
  void build_start(const SystemState& start);
  void build_steps();
  // Places the returning pod on `a` given a row whose head was removed.
  void insert(const StepPlan& sp, const std::uint8_t* rest, int len, std::uint8_t a, std::uint8_t* out) const;
  std::uint64_t free_mask(const std::uint8_t* rest, int len) const {
    std::uint64_t occupied = 0;
    for (int i = 0; i < len; ++i) occupied |= 1ULL << (rest[i] - 1);
    return all_places_ & ~occupied;
  }
  WindowOutcome greedy() const;

  const Instance& inst_;
  const DepartureSchedule& sched_;
  int begin_, end_;
  ExactOptions opt_;
  Codec codec_;
  std::uint64_t all_places_ = 0;
  std::vector<std::uint8_t> start_row_;
  std::vector<StepPlan> steps_;
  std::vector<int> row_len_;  // before step k
  std::vector<std::vector<double>> cost_rows_;
  std::vector<double> suffix_lb_;
  std::vector<int> times_;  // next departures of the active pods at the window start
};

void WindowSolver::build_start(const SystemState& start) {
  all_places_ = inst_.places == 64 ? ~0ULL : (1ULL << inst_.places) - 1;
  std::vector<std::pair<int, int>> active;  // (next departure, place)
  std::vector<int> tail;
  const auto& st = start.storage();
  for (int p = 1; p <= inst_.places; ++p) {
    auto h = st.at(PlaceId(p));
    if (!h) continue;
    auto d = sched_.next_departure_at_or_after(*h, begin_);
    if (d && *d < end_) active.emplace_back(*d, p);
    else tail.push_back(p);
  }
  std::sort(active.begin(), active.end());
  for (auto [d, p] : active) {
    start_row_.push_back(static_cast<std::uint8_t>(p));
    times_.push_back(d);
  }
  for (int p : tail) start_row_.push_back(static_cast<std::uint8_t>(p));
}

void WindowSolver::build_steps() {
  const int n = end_ - begin_;
  steps_.resize(static_cast<std::size_t>(n));
  row_len_.resize(static_cast<std::size_t>(n) + 1);
  cost_rows_.resize(static_cast<std::size_t>(n));
  std::vector<int> times = times_;
  int len = static_cast<int>(start_row_.size());
  for (int k = 0; k < n; ++k) {
    const int t = begin_ + k;
    row_len_[static_cast<std::size_t>(k)] = len;
    if (len * codec_.bits > 64 || len + 1 > kMaxRow)
      throw BudgetExceeded("exact solver: storage state does not fit the packed encoding", len);
    if (times.empty() || times.front() != t) throw std::logic_error("exact solver: departure order mismatch");
    times.erase(times.begin());
    --len;
    const auto& info = sched_.step(t);
    StepPlan& sp = steps_[static_cast<std::size_t>(k)];
    sp.active_after_removal = static_cast<int>(times.size());
    if (info.returning) {
      sp.decision = true;
      ++len;
      if (info.next_departure && *info.next_departure < end_) {
        auto it = std::lower_bound(times.begin(), times.end(), *info.next_departure);
        sp.insert_at = static_cast<int>(it - times.begin());
        times.insert(it, *info.next_departure);
      }
      auto& row = cost_rows_[static_cast<std::size_t>(k)];
      row.resize(static_cast<std::size_t>(inst_.places));
      for (int p = 1; p <= inst_.places; ++p)
        row[static_cast<std::size_t>(p - 1)] = inst_.costs.decision(info.station, PlaceId(p), info.next_station);
      sp.costs = &row;
    }
  }
  row_len_[static_cast<std::size_t>(n)] = len;
  if (len * codec_.bits > 64) throw BudgetExceeded("exact solver: storage state does not fit the packed encoding", len);

  suffix_lb_.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = n - 1; k >= 0; --k) {
    double best = 0.0;
    if (steps_[static_cast<std::size_t>(k)].decision) {
      const auto& row = cost_rows_[static_cast<std::size_t>(k)];
      best = *std::min_element(row.begin(), row.end());
    }
    suffix_lb_[static_cast<std::size_t>(k)] = suffix_lb_[static_cast<std::size_t>(k) + 1] + best;
  }
}

void WindowSolver::insert(const StepPlan& sp, const std::uint8_t* rest, int len, std::uint8_t a,
                          std::uint8_t* out) const {
  if (sp.insert_at >= 0) {
    std::copy(rest, rest + sp.insert_at, out);
    out[sp.insert_at] = a;
    std::copy(rest + sp.insert_at, rest + len, out + sp.insert_at + 1);
    return;
  }
  const int head = sp.active_after_removal;
  std::copy(rest, rest + head, out);
  int i = head;
  int o = head;
  while (i < len && rest[i] < a) out[o++] = rest[i++];
  out[o++] = a;
  while (i < len) out[o++] = rest[i++];
}

WindowOutcome WindowSolver::greedy() const {
  WindowOutcome w;
  std::uint8_t row[kMaxRow], next[kMaxRow];
  std::copy(start_row_.begin(), start_row_.end(), row);
  for (std::size_t k = 0; k < steps_.size(); ++k) {
    const auto& sp = steps_[k];
    const int len = row_len_[k];
    const std::uint8_t* rest = row + 1;
    if (!sp.decision) {
      std::copy(rest, rest + len - 1, next);
      w.actions.push_back(Action::noop());
    } else {
      std::uint64_t m = free_mask(rest, len - 1);
      int best = -1;
      double best_cost = 0.0;
      for (; m; m &= m - 1) {
        const int a = std::countr_zero(m) + 1;
        const double c = (*sp.costs)[static_cast<std::size_t>(a - 1)];
        if (best < 0 || c < best_cost) {
          best = a;
          best_cost = c;
        }
      }
      insert(sp, rest, len - 1, static_cast<std::uint8_t>(best), next);
      w.objective += best_cost;
      w.actions.push_back(Action::place(PlaceId(best)));
    }
    std::copy(next, next + row_len_[k + 1], row);
  }
  return w;
}

WindowOutcome WindowSolver::solve(std::uint64_t node_budget) {
  const WindowOutcome incumbent = greedy();
  const double ub = incumbent.objective;
  const double cut = ub + 1e-9 * std::max(1.0, std::abs(ub));
  const std::size_t n = steps_.size();

  std::vector<std::uint64_t> keys{codec_.encode(start_row_.data(), static_cast<int>(start_row_.size()))};
  std::vector<double> g{0.0};
  std::vector<std::vector<std::uint32_t>> hist(n);
  std::uint64_t nodes = 0;
  std::size_t peak = 1;

  auto give_up = [&](std::size_t k) {
    WindowOutcome w = incumbent;
    double lb = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < keys.size(); ++i) lb = std::min(lb, g[i] + suffix_lb_[k]);
    w.lower_bound = std::min(lb, ub);
    w.optimal = false;
    w.nodes = nodes;
    w.peak = peak;
    return w;
  };

  absl::flat_hash_map<std::uint64_t, std::uint32_t> index;
  std::vector<std::uint64_t> next_keys;
  std::vector<double> next_g;
  std::vector<std::uint32_t> next_hist;
  std::uint8_t row[kMaxRow], out[kMaxRow];

  for (std::size_t k = 0; k < n; ++k) {
    const StepPlan& sp = steps_[k];
    const int len = row_len_[k];
    const int out_len = row_len_[k + 1];
    const double lb_after = suffix_lb_[k + 1];
    index.clear();
    index.reserve(keys.size() * (sp.decision ? 2 : 1));
    next_keys.clear();
    next_g.clear();
    next_hist.clear();

    auto offer = [&](std::uint32_t parent, std::uint8_t a, double cost) {
      const std::uint64_t key = codec_.encode(out, out_len);
      const std::uint32_t tag = (parent << 8) | a;
      auto [it, fresh] = index.try_emplace(key, static_cast<std::uint32_t>(next_keys.size()));
      if (fresh) {
        next_keys.push_back(key);
        next_g.push_back(cost);
        next_hist.push_back(tag);
      } else if (cost < next_g[it->second]) {
        next_g[it->second] = cost;
        next_hist[it->second] = tag;
      }
    };

    for (std::size_t i = 0; i < keys.size(); ++i) {
      codec_.decode(keys[i], len, row);
      const std::uint8_t* rest = row + 1;
      const auto parent = static_cast<std::uint32_t>(i);
      if (!sp.decision) {
        std::copy(rest, rest + len - 1, out);
        ++nodes;
        offer(parent, 0, g[i]);
      } else {
        for (std::uint64_t m = free_mask(rest, len - 1); m; m &= m - 1) {
          const int a = std::countr_zero(m) + 1;
          ++nodes;
          const double cost = g[i] + (*sp.costs)[static_cast<std::size_t>(a - 1)];
          if (cost + lb_after > cut) continue;
          insert(sp, rest, len - 1, static_cast<std::uint8_t>(a), out);
          offer(parent, static_cast<std::uint8_t>(a), cost);
        }
      }
      if (node_budget && nodes > node_budget) return give_up(k);
    }
    if (next_keys.empty()) return give_up(k);
    if (next_keys.size() > opt_.max_layer_states) return give_up(k);

    // Rank the layer by its best prefix: (parent rank, action) ascending.
    std::vector<std::uint32_t> order(next_keys.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return next_hist[a] < next_hist[b]; });
    keys.resize(order.size());
    g.resize(order.size());
    auto& h = hist[k];
    h.resize(order.size());
    for (std::size_t j = 0; j < order.size(); ++j) {
      keys[j] = next_keys[order[j]];
      g[j] = next_g[order[j]];
      h[j] = next_hist[order[j]];
    }
    peak = std::max(peak, keys.size());
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < g.size(); ++i)
    if (g[i] < g[best]) best = i;

  WindowOutcome w;
  w.actions.resize(n);
  std::uint32_t idx = static_cast<std::uint32_t>(best);
  for (std::size_t k = n; k-- > 0;) {
    const std::uint32_t tag = hist[k][idx];
    const int a = static_cast<int>(tag & 0xFF);
    w.actions[k] = a ? Action::place(PlaceId(a)) : Action::noop();
    idx = tag >> 8;
  }
  w.objective = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    if (steps_[k].decision) w.objective += (*steps_[k].costs)[w.actions[k].target().index()];
  w.lower_bound = w.objective;
  w.optimal = true;
  w.nodes = nodes;
  w.peak = peak;
  return w;
}

}  // namespace

ExactResult solve_iterative(const Instance& inst, int window_size, const ExactOptions& opt) {
  if (window_size < 1) throw std::invalid_argument("window size must be >= 1");
  const DepartureSchedule schedule(inst);
  const int n = inst.horizon();
  ExactResult res;
  res.actions.actions.reserve(static_cast<std::size_t>(n));
  res.proven_optimal = true;
  SystemState s = inst.initial_state;
  std::vector<int> busy = schedule.initial_busy_ends();

  for (int begin = 0; begin < n; begin += window_size) {
    const int end = std::min(n, begin + window_size);
    std::uint64_t budget = 0;
    if (opt.node_budget) {
      if (res.nodes >= opt.node_budget) budget = 1;
      else budget = opt.node_budget - res.nodes;
    }
    WindowSolver solver(inst, schedule, s, begin, end, opt);
    WindowOutcome out = solver.solve(budget);

    WindowReport rep;
    rep.begin = begin;
    rep.end = end;
    rep.big_m = end;
    rep.busy_ends = busy;
    rep.objective = out.objective;
    rep.lower_bound = out.lower_bound;
    rep.proven_optimal = out.optimal;
    rep.nodes = out.nodes;
    rep.peak_states = out.peak;

    for (int t = begin; t < end; ++t) {
      const Action a = out.actions[static_cast<std::size_t>(t - begin)];
      apply_action(s, a, inst.costs);
      if (!a.is_noop()) {
        auto& e = busy[a.target().index()];
        e = std::max(e, schedule.busy_end(t));
      }
      res.actions.actions.push_back(a);
    }
    res.objective += out.objective;
    res.lower_bound += out.lower_bound;
    res.nodes += out.nodes;
    res.peak_states = std::max(res.peak_states, out.peak);
    res.proven_optimal = res.proven_optimal && out.optimal;
    res.windows.push_back(std::move(rep));
  }
  if (res.windows.size() > 1) res.proven_optimal = false;
  res.cost = total_cost(inst, res.actions);
  return res;
}

ExactResult solve_exact(const Instance& inst, const ExactOptions& opt) {
  return solve_iterative(inst, std::max(1, inst.horizon()), opt);
}

}  // namespace prp
