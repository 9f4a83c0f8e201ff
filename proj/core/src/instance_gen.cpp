#include "prp/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "prp/errors.hpp"

namespace prp {

namespace {

constexpr std::uint64_t kDepartureStream = 1;
constexpr std::uint64_t kSeasonStream = 2;
constexpr std::uint64_t kLayoutStream = 3;

// Membership-only co-simulation of the queues: which pods are in storage.
struct StorageTracker {
  std::vector<char> in_storage;
  std::vector<StationQueue> queues;

  StorageTracker(const Layout& layout) : in_storage(static_cast<std::size_t>(layout.pods), 0) {
    for (int p = 1; p <= layout.places; ++p)
      if (auto h = layout.storage.at(PlaceId(p))) in_storage[h->index()] = 1;
    for (std::size_t s = 0; s < layout.capacities.size(); ++s)
      queues.emplace_back(layout.capacities[s], s < layout.queues.size() ? layout.queues[s] : std::deque<PodId>{});
  }

  void apply(const Departure& d) {
    in_storage[d.pod.index()] = 0;
    if (auto out = queues[d.station.index()].push(d.pod)) in_storage[out->index()] = 1;
  }
};

}  // namespace

PodWeights geometric_weights(int n_pods, double ratio) {
  if (n_pods < 1) throw std::invalid_argument("geometric_weights: n_pods must be >= 1");
  if (!(ratio >= 1.0)) throw std::invalid_argument("geometric_weights: ratio must be >= 1");
  PodWeights pw;
  pw.weights.resize(static_cast<std::size_t>(n_pods));
  if (n_pods == 1) {
    pw.weights[0] = 1.0;
    return pw;
  }
  const double q = std::pow(ratio, -1.0 / (n_pods - 1));
  double total = 0.0;
  for (int h = 0; h < n_pods; ++h) total += pw.weights[static_cast<std::size_t>(h)] = std::pow(q, h);
  for (double& w : pw.weights) w /= total;
  return pw;
}

PodWeights uniform_pod_weights(int n_pods) {
  if (n_pods < 1) throw std::invalid_argument("uniform_pod_weights: n_pods must be >= 1");
  return PodWeights{std::vector<double>(static_cast<std::size_t>(n_pods), 1.0 / n_pods)};
}

StationWeights uniform_station_weights(int n_stations) {
  if (n_stations < 1) throw std::invalid_argument("uniform_station_weights: need a station");
  return StationWeights{std::vector<double>(static_cast<std::size_t>(n_stations), 1.0 / n_stations)};
}

StationWeights make_station_weights(std::vector<double> weights) {
  if (weights.empty()) throw std::invalid_argument("station weights: empty");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("station weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("station weights must sum to 1");
  return StationWeights{std::move(weights)};
}

std::string to_string(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::RandomGeometric: return "random-geometric";
    case RegimeKind::RandomUniform: return "random-uniform";
    case RegimeKind::PeriodicRandom: return "periodic-random";
    case RegimeKind::Periodic: return "periodic";
  }
  return "?";
}

RegimeKind parse_regime(const std::string& name) {
  for (auto k : {RegimeKind::RandomGeometric, RegimeKind::RandomUniform, RegimeKind::PeriodicRandom,
                 RegimeKind::Periodic})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown departure regime '" + name + "'");
}

Departure next_departure(std::span<const char> in_storage, const PodWeights& pw,
                         const StationWeights& sw, Rng& rng) {
  if (in_storage.size() != pw.weights.size())
    throw std::invalid_argument("next_departure: pod weight count mismatch");
  const auto s = rng.discrete(sw.weights);
  thread_local std::vector<double> masked;
  masked.assign(pw.weights.size(), 0.0);
  bool any = false;
  for (std::size_t h = 0; h < masked.size(); ++h)
    if (in_storage[h]) {
      masked[h] = pw.weights[h];
      any = true;
    }
  if (!any) throw InvalidState("next_departure: storage is empty");
  const auto h = rng.discrete(masked);
  return {PodId(static_cast<int>(h) + 1), StationId(static_cast<int>(s) + 1)};
}

Departure next_departure(const StorageState& storage, const PodWeights& pw, const StationWeights& sw,
                         Rng& rng) {
  std::vector<char> in(static_cast<std::size_t>(storage.pod_capacity()), 0);
  for (int h = 1; h <= storage.pod_capacity(); ++h) in[static_cast<std::size_t>(h - 1)] = storage.contains(PodId(h));
  return next_departure(in, pw, sw, rng);
}

std::vector<Departure> generate_departures(const Layout& layout, const DepartureRegime& regime,
                                           int horizon) {
  if (horizon < 0) throw std::invalid_argument("generate_departures: negative horizon");
  StorageTracker sim(layout);
  Rng rng(regime.seed, kDepartureStream);
  std::vector<Departure> out;
  out.reserve(static_cast<std::size_t>(horizon));
  const int n = layout.pods;
  const int stations = static_cast<int>(layout.capacities.size());

  if (regime.kind == RegimeKind::RandomGeometric || regime.kind == RegimeKind::RandomUniform) {
    const PodWeights base = regime.kind == RegimeKind::RandomGeometric
                                ? geometric_weights(n, regime.weight_ratio)
                                : uniform_pod_weights(n);
    PodWeights pw = base;
    Rng season_rng(regime.seed, kSeasonStream);
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int t = 0; t < horizon; ++t) {
      if (regime.season_length > 0 && t > 0 && t % regime.season_length == 0) {
        std::iota(perm.begin(), perm.end(), 0);
        season_rng.shuffle(perm.begin(), perm.end());
        for (int h = 0; h < n; ++h)
          pw.weights[static_cast<std::size_t>(h)] = base.weights[static_cast<std::size_t>(perm[static_cast<std::size_t>(h)])];
      }
      const Departure d = next_departure(sim.in_storage, pw, layout.station_weights, rng);
      sim.apply(d);
      out.push_back(d);
    }
    return out;
  }

  // Block regimes: walk a pod block; a scheduled pod that is not in storage is
  // swapped with the next stored pod of the block, or skipped if none is left.
  std::vector<int> block;
  std::size_t pos = 0;
  int station_cursor = 0;
  auto refill = [&] {
    block.resize(static_cast<std::size_t>(n));
    std::iota(block.begin(), block.end(), 0);
    if (regime.kind == RegimeKind::PeriodicRandom) rng.shuffle(block.begin(), block.end());
    pos = 0;
  };
  refill();
  int stalled_blocks = 0;
  while (static_cast<int>(out.size()) < horizon) {
    if (pos == block.size()) {
      refill();
      if (++stalled_blocks > 2) throw InvalidState("generate_departures: storage is empty");
    }
    if (!sim.in_storage[static_cast<std::size_t>(block[pos])]) {
      std::size_t j = pos + 1;
      while (j < block.size() && !sim.in_storage[static_cast<std::size_t>(block[j])]) ++j;
      if (j == block.size()) {
        pos = block.size();
        continue;
      }
      std::swap(block[pos], block[j]);
    }
    StationId s(1);
    if (regime.kind == RegimeKind::Periodic) {
      s = StationId(station_cursor + 1);
      station_cursor = (station_cursor + 1) % stations;
    } else {
      s = StationId(static_cast<int>(rng.discrete(layout.station_weights.weights)) + 1);
    }
    const Departure d{PodId(block[pos] + 1), s};
    ++pos;
    stalled_blocks = 0;
    sim.apply(d);
    out.push_back(d);
  }
  return out;
}

Instance build_instance(const Layout& layout, const DepartureRegime& regime, int horizon) {
  return make_instance(layout.pods, layout.places, layout.capacities, layout.costs, layout.storage,
                       layout.queues, generate_departures(layout, regime, horizon));
}

Layout small_system_layout(int places, int capacity, double cost_offset) {
  if (places < 1 || capacity < 1) throw std::invalid_argument("small_system_layout: bad size");
  Layout l;
  l.pods = places;
  l.places = places;
  l.capacities = {capacity, capacity};
  std::vector<double> to, from;
  for (int p = 1; p <= places; ++p)
    for (int s = 0; s < 2; ++s) to.push_back(p + cost_offset);
  for (int s = 0; s < 2; ++s)
    for (int p = 1; p <= places; ++p) from.push_back(p + cost_offset);
  l.costs = CostModel(places, 2, std::move(to), std::move(from));
  l.storage = StorageState(places, places);
  for (int p = 1; p <= places; ++p) l.storage.put(PlaceId(p), PodId(p));
  l.queues.resize(2);
  l.station_weights = uniform_station_weights(2);
  l.params = {{"system", "small"}, {"places", places}, {"capacity", capacity}, {"cost_offset", cost_offset}};
  return l;
}

Instance build_small_system(const SmallSystemOptions& opt) {
  DepartureRegime regime{opt.kind, opt.seed, opt.weight_ratio, 0};
  return build_instance(small_system_layout(10, opt.capacity), regime, opt.horizon);
}

int medium_grid_width(const MediumLayoutParams& p) { return 1 + p.block_cols * (p.block_width + 1); }
int medium_grid_height(const MediumLayoutParams& p) { return 1 + p.block_rows * (p.block_height + 1); }

Layout medium_system_layout(const MediumLayoutParams& prm, std::uint64_t seed) {
  const int W = medium_grid_width(prm);
  const int H = medium_grid_height(prm);
  auto aisle = [&](int x, int y) { return x % (prm.block_width + 1) == 0 || y % (prm.block_height + 1) == 0; };
  if (prm.station1_row < 0 || prm.station1_row >= H || !aisle(0, prm.station1_row))
    throw std::invalid_argument("medium layout: station 1 must sit on an aisle cell of the left edge");
  if (prm.station2_col < 0 || prm.station2_col >= W || !aisle(prm.station2_col, H - 1))
    throw std::invalid_argument("medium layout: station 2 must sit on an aisle cell of the bottom edge");

  // BFS over aisle cells from each station cell.
  auto bfs = [&](int sx, int sy) {
    std::vector<int> dist(static_cast<std::size_t>(W * H), -1);
    std::queue<std::pair<int, int>> q;
    dist[static_cast<std::size_t>(sy * W + sx)] = 0;
    q.emplace(sx, sy);
    const int dx[] = {1, -1, 0, 0}, dy[] = {0, 0, 1, -1};
    while (!q.empty()) {
      auto [x, y] = q.front();
      q.pop();
      for (int k = 0; k < 4; ++k) {
        const int nx = x + dx[k], ny = y + dy[k];
        if (nx < 0 || ny < 0 || nx >= W || ny >= H || !aisle(nx, ny)) continue;
        auto& d = dist[static_cast<std::size_t>(ny * W + nx)];
        if (d >= 0) continue;
        d = dist[static_cast<std::size_t>(y * W + x)] + 1;
        q.emplace(nx, ny);
      }
    }
    return dist;
  };
  const std::vector<std::vector<int>> dist = {bfs(0, prm.station1_row), bfs(prm.station2_col, H - 1)};

  std::vector<std::pair<int, int>> cells;
  for (int y = 0; y < H; ++y)
    for (int x = 0; x < W; ++x)
      if (!aisle(x, y)) cells.emplace_back(x, y);
  const int places = static_cast<int>(cells.size());
  const int stations = 2;

  std::vector<double> cost(static_cast<std::size_t>(places * stations));
  for (int p = 0; p < places; ++p) {
    auto [x, y] = cells[static_cast<std::size_t>(p)];
    for (int s = 0; s < stations; ++s) {
      int best = -1;
      const int dx[] = {1, -1, 0, 0}, dy[] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int nx = x + dx[k], ny = y + dy[k];
        if (nx < 0 || ny < 0 || nx >= W || ny >= H || !aisle(nx, ny)) continue;
        const int d = dist[static_cast<std::size_t>(s)][static_cast<std::size_t>(ny * W + nx)];
        if (d >= 0 && (best < 0 || d < best)) best = d;
      }
      if (best < 0) throw std::logic_error("medium layout: unreachable place");
      // One step into the place and one from the station cell to the picker.
      cost[static_cast<std::size_t>(p * stations + s)] = best + 2;
    }
  }
  std::vector<double> to = cost, from(cost.size());
  for (int s = 0; s < stations; ++s)
    for (int p = 0; p < places; ++p)
      from[static_cast<std::size_t>(s * places + p)] = cost[static_cast<std::size_t>(p * stations + s)];

  int total_cap = 0;
  for (int c : prm.capacities) total_cap += c;
  if (static_cast<int>(prm.capacities.size()) != stations)
    throw std::invalid_argument("medium layout: need two queue capacities");
  if (prm.pods > places) throw std::invalid_argument("medium layout: more pods than places");

  Layout l;
  l.pods = prm.pods;
  l.places = places;
  l.capacities = prm.capacities;
  l.costs = CostModel(places, stations, std::move(to), std::move(from));
  l.storage = StorageState(places, prm.pods);
  std::vector<int> slots(static_cast<std::size_t>(places));
  std::iota(slots.begin(), slots.end(), 1);
  Rng rng(seed, kLayoutStream);
  rng.shuffle(slots.begin(), slots.end());
  for (int h = 1; h <= prm.pods; ++h) l.storage.put(PlaceId(slots[static_cast<std::size_t>(h - 1)]), PodId(h));
  l.queues.resize(static_cast<std::size_t>(stations));
  l.station_weights = make_station_weights(prm.station_weights);
  l.params = {{"system", "medium"},
              {"block_cols", prm.block_cols},
              {"block_rows", prm.block_rows},
              {"block_width", prm.block_width},
              {"block_height", prm.block_height},
              {"grid", {W, H}},
              {"station_cells", {{0, prm.station1_row}, {prm.station2_col, H - 1}}},
              {"capacities", prm.capacities},
              {"pods", prm.pods},
              {"queue_capacity_total", total_cap}};
  return l;
}

Instance build_medium_system(const MediumSystemOptions& opt) {
  const Layout layout = medium_system_layout(opt.layout, opt.seed);
  DepartureRegime regime{RegimeKind::RandomGeometric, opt.seed, opt.weight_ratio, opt.season_length};
  return build_instance(layout, regime, opt.horizon);
}

Instance build_tiny_system(std::uint64_t seed, const TinyOptions& opt) {
  Rng rng(seed, kLayoutStream);
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1))); };

  const int stations = pick(1, std::max(1, opt.max_stations));
  std::vector<int> caps(static_cast<std::size_t>(stations));
  caps[0] = pick(1, 2);
  for (int s = 1; s < stations; ++s) caps[static_cast<std::size_t>(s)] = opt.equal_capacities ? caps[0] : pick(1, 2);
  const int total_cap = std::accumulate(caps.begin(), caps.end(), 0);
  const int pods = pick(std::min(total_cap + 1, opt.max_pods), opt.max_pods);
  const int queued = opt.prefill_queues ? pick(0, std::min(total_cap, pods - 1)) : 0;
  const int stored = pods - queued;
  const int places = pick(std::max(stored, 1), std::max(stored, opt.max_places));

  std::vector<double> to(static_cast<std::size_t>(places * stations)), from(to.size());
  for (int p = 0; p < places; ++p)
    for (int s = 0; s < stations; ++s) {
      const double c_to = opt.line_costs ? p + 2 : pick(1, opt.max_cost);
      const double c_from = opt.line_costs ? p + 2 : pick(1, opt.max_cost);
      to[static_cast<std::size_t>(p * stations + s)] = c_to;
      from[static_cast<std::size_t>(s * places + p)] = c_from;
    }

  std::vector<int> order(static_cast<std::size_t>(pods));
  std::iota(order.begin(), order.end(), 1);
  rng.shuffle(order.begin(), order.end());
  Layout l;
  l.pods = pods;
  l.places = places;
  l.capacities = caps;
  l.costs = CostModel(places, stations, std::move(to), std::move(from));
  l.queues.resize(static_cast<std::size_t>(stations));
  std::size_t k = 0;
  for (int filled = 0; filled < queued;)
    for (int s = 0; s < stations && filled < queued; ++s)
      if (static_cast<int>(l.queues[static_cast<std::size_t>(s)].size()) < caps[static_cast<std::size_t>(s)]) {
        l.queues[static_cast<std::size_t>(s)].emplace_back(order[k++]);
        ++filled;
      }
  std::vector<int> slots(static_cast<std::size_t>(places));
  std::iota(slots.begin(), slots.end(), 1);
  rng.shuffle(slots.begin(), slots.end());
  l.storage = StorageState(places, pods);
  for (std::size_t i = 0; k < order.size(); ++i, ++k) l.storage.put(PlaceId(slots[i]), PodId(order[k]));
  l.station_weights = uniform_station_weights(stations);

  const int horizon = pick(opt.min_horizon, opt.max_horizon);
  DepartureRegime regime{opt.kind, splitmix64(seed), 20.0, 0};
  return build_instance(l, regime, horizon);
}

nlohmann::json regime_to_json(const DepartureRegime& regime) {
  nlohmann::json j = {{"kind", to_string(regime.kind)}, {"seed", regime.seed}};
  if (regime.kind == RegimeKind::RandomGeometric)
    j["weight_ratio"] = regime.weight_ratio;
  if (regime.season_length > 0) j["season_length"] = regime.season_length;
  return j;
}

}  // namespace prp
