#include "prp/chart.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "prp/errors.hpp"
#include "prp/game.hpp"
#include "prp/schedule.hpp"

namespace prp {

namespace {

void snapshot(RunTrace& tr, const SystemState& s) {
  const auto occ = s.storage().serialize();
  tr.occupancy.insert(tr.occupancy.end(), occ.begin(), occ.end());
  std::vector<std::vector<int>> qs;
  for (const auto& q : s.queues()) {
    std::vector<int> items;
    for (PodId h : q.items()) items.push_back(h.value());
    qs.push_back(std::move(items));
  }
  tr.queues.push_back(std::move(qs));
}

int window_end(const RunTrace& tr, int to) { return to < 0 ? tr.horizon : to; }

}  // namespace

SystemState RunTrace::state_at(const Instance& inst, int t) const {
  if (t < 0 || t > horizon) throw std::out_of_range("trace time out of range");
  std::span<const int> occ(occupancy.data() + static_cast<std::size_t>(t) * static_cast<std::size_t>(places),
                           static_cast<std::size_t>(places));
  std::vector<StationQueue> qs;
  for (std::size_t s = 0; s < queues[static_cast<std::size_t>(t)].size(); ++s) {
    std::deque<PodId> items;
    for (int h : queues[static_cast<std::size_t>(t)][s]) items.emplace_back(h);
    qs.emplace_back(inst.capacities[s], std::move(items));
  }
  return SystemState(StorageState::deserialize(occ, pods), std::move(qs), inst.departures, t);
}

RunTrace record_trace(const Instance& inst, const ActionSequence& y) {
  if (static_cast<int>(y.size()) != inst.horizon())
    throw InvalidAction(static_cast<int>(y.size()), ActionError::NoDeparture, "sequence length does not match horizon");
  RunTrace tr;
  tr.places = inst.places;
  tr.pods = inst.pods;
  tr.horizon = inst.horizon();
  tr.occupancy.reserve(static_cast<std::size_t>(inst.horizon() + 1) * static_cast<std::size_t>(inst.places));
  SystemState s = inst.initial_state;
  snapshot(tr, s);
  tr.cumulative.push_back(0.0);
  for (std::size_t t = 0; t < y.size(); ++t) {
    const double c = apply_action(s, y[t], inst.costs);
    tr.actions.push_back(y[t]);
    tr.step_costs.push_back(c);
    tr.cumulative.push_back(tr.cumulative.back() + c);
    snapshot(tr, s);
  }
  if (inst.costs.terminal() != TerminalCost::Zero || inst.costs.discount() != 1.0)
    tr.cumulative.back() = total_cost(inst, y);
  return tr;
}

std::string ramp_color(double x) {
  static constexpr std::array<std::array<int, 3>, 6> stops = {{
      {0x00, 0x00, 0x7f}, {0x00, 0x00, 0xff}, {0x00, 0xff, 0xff},
      {0xff, 0xff, 0x00}, {0xff, 0x00, 0x00}, {0x7f, 0x00, 0x00},
  }};
  x = std::clamp(x, 0.0, 1.0);
  const int step = static_cast<int>(std::lround(x * 255.0));
  const double pos = step / 255.0 * (stops.size() - 1);
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(pos), stops.size() - 2);
  const double f = pos - static_cast<double>(i);
  char buf[8];
  int rgb[3];
  for (int c = 0; c < 3; ++c)
    rgb[c] = static_cast<int>(std::lround(stops[i][static_cast<std::size_t>(c)] * (1.0 - f) +
                                          stops[i + 1][static_cast<std::size_t>(c)] * f));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

std::vector<std::string> usage_colors(const Instance& inst) {
  std::vector<int> usage(static_cast<std::size_t>(inst.pods), 0);
  for (const auto& d : *inst.departures) ++usage[d.pod.index()];
  std::vector<int> pods(static_cast<std::size_t>(inst.pods));
  std::iota(pods.begin(), pods.end(), 0);
  std::stable_sort(pods.begin(), pods.end(), [&](int a, int b) {
    return usage[static_cast<std::size_t>(a)] < usage[static_cast<std::size_t>(b)];
  });
  std::vector<std::string> colors(static_cast<std::size_t>(inst.pods));
  const double span = inst.pods > 1 ? inst.pods - 1 : 1;
  for (std::size_t r = 0; r < pods.size(); ++r)
    colors[static_cast<std::size_t>(pods[r])] = ramp_color(static_cast<double>(r) / span);
  return colors;
}

std::string render_chart(const Instance& inst, const RunTrace& trace, const ChartSpec& spec) {
  const int from = spec.from;
  const int to = window_end(trace, spec.to);
  if (from < 0 || from >= to || to > trace.horizon)
    throw std::invalid_argument("chart window must satisfy 0 <= from < to <= N");
  const auto colors = usage_colors(inst);
  const int cw = spec.cell_width, ch = spec.cell_height;
  const int left = 36, top = 8, bottom = 24;
  const int cols = to - from;
  const int width = left + cols * cw + 8;
  const int height = top + trace.places * ch + bottom;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n"
     << "<g font-family=\"monospace\" font-size=\"10\" fill=\"#000000\">\n";
  for (int p = 1; p <= trace.places; ++p)
    os << "<text x=\"" << left - 4 << "\" y=\"" << top + (p - 1) * ch + ch - 3 << "\" text-anchor=\"end\">" << p
       << "</text>\n";
  os << "<text x=\"" << left << "\" y=\"" << height - 8 << "\">t=" << from << "</text>\n"
     << "<text x=\"" << left + cols * cw << "\" y=\"" << height - 8 << "\" text-anchor=\"end\">t=" << to - 1
     << "</text>\n</g>\n<g stroke=\"none\">\n";

  for (int p = 1; p <= trace.places; ++p) {
    const int y = top + (p - 1) * ch;
    int t = from;
    while (t < to) {
      const int h = trace.pod_at(t, PlaceId(p));
      int run_end = t + 1;
      while (run_end < to && trace.pod_at(run_end, PlaceId(p)) == h) ++run_end;
      if (h != 0)
        os << "<rect x=\"" << left + (t - from) * cw << "\" y=\"" << y << "\" width=\"" << (run_end - t) * cw
           << "\" height=\"" << ch << "\" fill=\"" << colors[static_cast<std::size_t>(h - 1)] << "\"><title>pod " << h
           << "</title></rect>\n";
      t = run_end;
    }
  }
  os << "</g>\n<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << cols * cw << "\" height=\""
     << trace.places * ch << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n</svg>\n";
  return os.str();
}

void emit_chart(const Instance& inst, const RunTrace& trace, const ChartSpec& spec, const std::filesystem::path& path) {
  const std::string svg = render_chart(inst, trace, spec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << svg;
}

void write_trace_csv(const RunTrace& trace, std::ostream& out, int from, int to) {
  to = window_end(trace, to);
  out << "t,place,pod\n";
  for (int t = from; t < to; ++t)
    for (int p = 1; p <= trace.places; ++p)
      if (const int h = trace.pod_at(t, PlaceId(p))) out << t << ',' << p << ',' << h << '\n';
}

std::vector<int> distinct_pods_per_place(const RunTrace& trace, int from, int to) {
  to = window_end(trace, to);
  std::vector<int> out;
  for (int p = 1; p <= trace.places; ++p) {
    std::set<int> seen;
    for (int t = from; t < to; ++t)
      if (const int h = trace.pod_at(t, PlaceId(p))) seen.insert(h);
    out.push_back(static_cast<int>(seen.size()));
  }
  return out;
}

}  // namespace prp
