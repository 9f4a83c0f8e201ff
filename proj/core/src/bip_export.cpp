#include <fstream>
#include <ostream>
#include <sstream>

#include "prp/errors.hpp"
#include "prp/exact.hpp"

namespace prp {

namespace {

std::string var(int t, int p) { return "x_" + std::to_string(t) + "_" + std::to_string(p); }

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// LP files are line oriented; keep rows readable and below common limits.
class RowWriter {
 public:
  explicit RowWriter(std::ostream* out) : out_(out) {}
  void begin(const std::string& name) {
    if (out_) *out_ << ' ' << name << ':';
    terms_ = 0;
  }
  void term(double coef, const std::string& v) {
    if (!out_) return;
    if (terms_ > 0 && terms_ % 8 == 0) *out_ << "\n   ";
    if (coef < 0) *out_ << " - " << num(-coef) << ' ' << v;
    else *out_ << (terms_ ? " + " : " ") << num(coef) << ' ' << v;
    ++terms_;
  }
  void end(const std::string& sense, double rhs) {
    if (out_) *out_ << ' ' << sense << ' ' << num(rhs) << '\n';
  }

 private:
  std::ostream* out_;
  int terms_ = 0;
};

BipStats write_bip(const Instance& inst, std::ostream* out, const BipExportOptions& opt) {
  const BipParameters bp = derive_bip_parameters(inst);
  const int places = inst.places;
  const double m = bp.big_m;
  BipStats st;
  st.variables = bp.decisions.size() * static_cast<std::size_t>(places);
  RowWriter w(out);

  if (out) {
    *out << "\\ Pod repositioning: one binary x_t_p per decision step t and place p.\n"
         << "\\ horizon " << bp.horizon << ", places " << places << ", decisions " << bp.decisions.size()
         << ", M = " << bp.big_m << '\n'
         << "\\ total cost = objective + " << num(bp.fixed_cost) << " (legs from the initial places)\n"
         << "Minimize\n";
    w.begin("cost");
    if (bp.decisions.empty()) *out << " 0 x_dummy";
    for (const auto& d : bp.decisions)
      for (int p = 1; p <= places; ++p) w.term(decision_cost(inst.costs, d, PlaceId(p)), var(d.step, p));
    *out << "\nSubject To\n";
  }

  for (const auto& d : bp.decisions) {
    w.begin("assign_" + std::to_string(d.step));
    for (int p = 1; p <= places; ++p) w.term(1.0, var(d.step, p));
    w.end("=", 1.0);
    ++st.assign_rows;
  }

  // A place may receive a pod only once its initial pod has left.
  for (const auto& d : bp.decisions)
    for (int p = 1; p <= places; ++p) {
      const int e = bp.initial_busy_end[static_cast<std::size_t>(p - 1)];
      if (!opt.pairwise_all && e <= d.busy_start) continue;
      w.begin("init_" + std::to_string(d.step) + "_" + std::to_string(p));
      w.term(m - d.busy_start, var(d.step, p));
      w.end("<=", m - e);
      ++st.initial_rows;
    }

  // Two stays on one place must not overlap: B_tau x_tau_p + (M - t - 1) x_t_p <= M.
  for (std::size_t j = 0; j < bp.decisions.size(); ++j) {
    const auto& cur = bp.decisions[j];
    for (std::size_t i = 0; i < j; ++i) {
      const auto& prev = bp.decisions[i];
      if (!opt.pairwise_all && prev.busy_end <= cur.busy_start) continue;
      for (int p = 1; p <= places; ++p) {
        w.begin("overlap_" + std::to_string(prev.step) + "_" + std::to_string(cur.step) + "_" + std::to_string(p));
        w.term(prev.busy_end, var(prev.step, p));
        w.term(m - cur.busy_start, var(cur.step, p));
        w.end("<=", m);
        ++st.overlap_rows;
      }
    }
  }

  if (out) {
    *out << "Binary\n";
    int k = 0;
    for (const auto& d : bp.decisions)
      for (int p = 1; p <= places; ++p) {
        *out << ' ' << var(d.step, p);
        if (++k % 10 == 0) *out << '\n';
      }
    if (bp.decisions.empty()) *out << " x_dummy";
    *out << "\nEnd\n";
  }
  return st;
}

}  // namespace

BipStats export_bip(const Instance& inst, std::ostream& out, const BipExportOptions& opt) {
  return write_bip(inst, &out, opt);
}

BipStats export_bip(const Instance& inst, const std::filesystem::path& path, const BipExportOptions& opt) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return export_bip(inst, out, opt);
}

BipStats bip_stats(const Instance& inst, const BipExportOptions& opt) { return write_bip(inst, nullptr, opt); }

}  // namespace prp
