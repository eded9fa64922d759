#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "xdiscord/dimer.hpp"
#include "xdiscord/error.hpp"
#include "xdiscord/oracle.hpp"
#include "xdiscord/phase.hpp"
#include "xdiscord/unimodal.hpp"

namespace xdiscord::cli {

namespace {

struct RunConfig {
  std::optional<double> s1;
  std::optional<double> s2;
  std::optional<double> c1;
  std::optional<double> c2;
  std::optional<double> c3;
  std::optional<double> theta;
  int steps = 181;
  int grid = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
  std::string units = "bit";
  int precision = 10;
  std::string out_path;
  double tol_root = 1e-12;
  double tol_match = 1e-10;
};

class Writer {
 public:
  Writer(const RunConfig& config, std::ostream& fallback) : config_(config), stream_(&fallback) {
    if (!config.out_path.empty() && config.out_path != "-") {
      file_ = std::make_unique<std::ofstream>(config.out_path, std::ios::binary);
      if (!*file_) throw InvalidInput("cannot open output file " + config.out_path);
      stream_ = file_.get();
    }
  }

  std::ostream& stream() { return *stream_; }

  std::string num(double v) const { return fmt::format("{:.{}f}", v, config_.precision); }
  std::string entropy(EntropyValue v) const { return num(v.in(unit())); }

  Unit unit() const { return config_.units == "nat" ? Unit::nat : Unit::bit; }
  std::string unit_suffix() const { return config_.units; }

  void row(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) line += ',';
      line += cells[i];
    }
    line += '\n';
    *stream_ << line;
  }

 private:
  const RunConfig& config_;
  std::ostream* stream_;
  std::unique_ptr<std::ofstream> file_;
};

std::string opt_num(const Writer& w, const std::optional<double>& v) { return v ? w.num(*v) : ""; }

XxzState require_xxz(const RunConfig& c) {
  if (!c.s1 || !c.c1 || !c.c3) throw InvalidInput("--s1, --c1 and --c3 are required");
  const XxzState s{*c.s1, *c.c1, *c.c3};
  check_on_tetrahedron(s);
  return s;
}

bool is_general(const RunConfig& c) {
  return (c.s2 && c.s1 && *c.s2 != *c.s1) || (c.c2 && c.c1 && *c.c2 != *c.c1);
}

GeneralXState require_general(const RunConfig& c) {
  if (!c.s1 || !c.c1 || !c.c3) throw InvalidInput("--s1, --c1 and --c3 are required");
  const GeneralXState g{*c.s1, c.s2.value_or(*c.s1), *c.c1, c.c2.value_or(*c.c1), *c.c3};
  const XStateVerdict v = validate_general_x(g);
  if (v != XStateVerdict::ok) {
    throw DomainError(std::string("X state is not positive semidefinite: ") + std::string(to_string(v)));
  }
  return g;
}

SolveOptions solve_options(const RunConfig& c) {
  SolveOptions o;
  o.x_tolerance = c.tol_root;
  return o;
}

void cmd_eval(const RunConfig& c, Writer& w, bool verify) {
  if (is_general(c)) {
    const GeneralXState g = require_general(c);
    OracleOptions o;
    if (c.grid > 0) o.theta_grid = c.grid;
    const OracleDiscord d = discord_oracle(density_matrix(g), o);
    w.row({"q_" + w.unit_suffix(), "theta_opt", "phi_opt", "s_cond_min_" + w.unit_suffix()});
    w.row({w.entropy(d.q), w.num(d.argmin.theta), w.num(d.argmin.phi), w.entropy(d.s_cond_min)});
    return;
  }
  const XxzState s = require_xxz(c);
  ExtremumOptions eo;
  if (c.grid > 0) eo.grid = c.grid;
  const ExtremumReport e = find_interior_extremum(s, eo);
  const DiscordResult d = discord(s, eo);
  const std::string u = w.unit_suffix();
  w.row({"q_" + u, "branch", "theta_opt", "shape", "crossing", "q0_" + u, "q_pi2_" + u,
         "s_cond_0_" + u, "s_cond_pi2_" + u, "extremum", "theta_star", "s_cond_star_" + u});
  w.row({w.entropy(d.q), std::string(to_string(d.branch)), w.num(d.theta_opt),
         std::string(to_string(shape_from_report(e))), d.crossing ? "1" : "0", w.entropy(d.q_0),
         w.entropy(d.q_pi2), w.entropy(e.value_at_0), w.entropy(e.value_at_pi2),
         std::string(to_string(e.kind)), opt_num(w, e.theta_star),
         e.value_at_star ? w.entropy(*e.value_at_star) : ""});
  if (verify) {
    const DensityMatrix4 rho = density_matrix(s);
    const double closed = s_cond(d.theta_opt, s).nats();
    const double oracle = conditional_entropy_oracle(rho, {d.theta_opt, 0.0}).nats();
    if (std::abs(closed - oracle) > c.tol_match) {
      throw NumericalError(fmt::format("closed-form S_cond differs from the measurement oracle by {:.3e}",
                                       std::abs(closed - oracle)));
    }
  }
}

void cmd_curve(const RunConfig& c, Writer& w, bool full) {
  if (c.steps < 2) throw InvalidInput("--steps must be at least 2");
  const XxzState s = require_xxz(c);
  const double lo = full ? -std::numbers::pi : 0.0;
  const double hi = full ? std::numbers::pi : kHalfPi;
  w.row({"theta", "s_cond_" + w.unit_suffix()});
  for (double t : linspace(lo, hi, static_cast<std::size_t>(c.steps))) {
    w.row({w.num(t), w.entropy(s_cond(t, s))});
  }
}

void cmd_phase(const RunConfig& c, Writer& w, const std::string& boundary_path, int lines) {
  if (!c.c3) throw InvalidInput("--c3 is required");
  const int grid = c.grid > 0 ? c.grid : 1001;
  ExtremumOptions eo;
  w.row({"s1", "c1", "label", "q_" + w.unit_suffix()});
  for (const PhasePoint& p : slice_scan(*c.c3, grid, eo)) {
    w.row({w.num(p.s1), w.num(p.c1), std::string(to_string(p.label)), w.entropy(p.q)});
  }
  if (boundary_path.empty()) return;
  RunConfig bc = c;
  bc.out_path = boundary_path;
  Writer bw(bc, w.stream());
  bw.row({"kind", "s1", "c1"});
  for (const BoundaryPoint& b : slice_boundaries(*c.c3, lines, solve_options(c))) {
    bw.row({std::string(to_string(b.kind)), bw.num(b.s1), bw.num(b.c1)});
  }
}

void cmd_boundary(const RunConfig& c, Writer& w, const std::string& kind_name, int subintervals,
                  std::optional<double> lo, std::optional<double> hi) {
  if (!c.c3) throw InvalidInput("--c3 is required");
  if (c.c1.has_value() == c.s1.has_value()) {
    throw InvalidInput("give exactly one of --c1 (scan s1) or --s1 (scan c1)");
  }
  const ScanLine line = c.c1 ? ScanLine{*c.c3, Coordinate::s1, *c.c1}
                             : ScanLine{*c.c3, Coordinate::c1, *c.s1};
  std::vector<BoundaryKind> kinds;
  if (kind_name == "crossing" || kind_name == "all") kinds.push_back(BoundaryKind::crossing);
  if (kind_name == "d2-0" || kind_name == "all") kinds.push_back(BoundaryKind::d2_at_0);
  if (kind_name == "d2-pi2" || kind_name == "all") kinds.push_back(BoundaryKind::d2_at_pi2);
  SolveOptions o = solve_options(c);
  o.subintervals = subintervals;
  std::optional<Interval> bracket;
  if (lo || hi) {
    const Interval full = line_extent(line);
    bracket = Interval{lo.value_or(full.lo), hi.value_or(full.hi)};
  }
  w.row({"kind", "scanned", "root", "residual", "touching"});
  for (BoundaryKind k : kinds) {
    const BoundarySolution sol = solve_bifurcation(line, k, bracket, o);
    for (std::size_t i = 0; i < sol.roots.size(); ++i) {
      w.row({std::string(to_string(k)), std::string(to_string(line.scanned)), w.num(sol.roots[i]),
             fmt::format("{:.3e}", sol.residuals[i]), sol.touching[i] ? "1" : "0"});
    }
  }
}

void cmd_volume(const RunConfig& c, Writer& w) {
  const std::uint64_t n = c.samples > 0 ? c.samples : 10'000'000;
  if (n < 10'000) throw InvalidInput("--samples must be at least 10000");
  const VolumeEstimate v = theta_star_volume(n, c.seed);
  w.row({"samples", "seed", "type_iv", "type_v", "fraction_iv", "stderr_iv", "fraction_v",
         "type_iv_c3_nonpositive"});
  w.row({std::to_string(v.samples), std::to_string(c.seed), std::to_string(v.type_iv),
         std::to_string(v.type_v), w.num(v.fraction), w.num(v.standard_error), w.num(v.fraction_v),
         std::to_string(v.type_iv_nonpositive_c3)});
}

void cmd_table1(const RunConfig& c, Writer& w) {
  const std::string u = w.unit_suffix();
  w.row({"c3", "s1", "c1_cross", "c1_pi2", "c1_0", "s_cond_end_" + u, "theta_max",
         "s_cond_max_" + u, "excess_percent", "fidelity", "status"});
  for (const MaximumCorridor& r : table1(solve_options(c))) {
    w.row({w.num(r.c3), w.num(r.s1), opt_num(w, r.c1_cross), opt_num(w, r.c1_pi2), opt_num(w, r.c1_0),
           r.ok ? w.entropy(r.s_end) : "", opt_num(w, r.theta_max), r.ok ? w.entropy(r.s_max) : "",
           r.ok ? w.num(r.excess_percent) : "", r.ok ? w.num(r.fidelity) : "",
           r.ok ? "ok" : "root-failure"});
  }
}

void cmd_to_dimer(const RunConfig& c, Writer& w, double T) {
  const XxzState s = require_xxz(c);
  const DimerParams p = state_to_dimer(s, T);
  w.row({"J", "Jz", "B", "T", "delta", "b_over_j", "t_over_j"});
  w.row({w.num(p.J), w.num(p.Jz), w.num(p.B), w.num(p.T), w.num(p.Jz / p.J), w.num(p.B / p.J),
         w.num(p.T / p.J)});
}

void cmd_from_dimer(const RunConfig&, Writer& w, const DimerParams& p) {
  const XxzState s = dimer_to_state(p);
  const ExtremumReport e = find_interior_extremum(s);
  w.row({"s1", "c1", "c3", "shape", "theta_star"});
  w.row({w.num(s.s1), w.num(s.c1), w.num(s.c3), std::string(to_string(shape_from_report(e))),
         opt_num(w, e.theta_star)});
}

void cmd_unimodal(const RunConfig& c, Writer& w, const std::string& which) {
  const std::uint64_t n = c.samples > 0 ? c.samples : 100'000;
  const int grid = c.grid > 0 ? c.grid : 1001;
  std::vector<AppendixFunction> fs;
  if (which == "f1" || which == "both") fs.push_back(AppendixFunction::f1);
  if (which == "f2" || which == "both") fs.push_back(AppendixFunction::f2);
  std::vector<ConjectureReport> reports;
  for (AppendixFunction f : fs) reports.push_back(conjecture_trial(n, c.seed, f, grid));
  w.row({"function", "samples", "seed", "violations", "max_count_seen", "rechecked"});
  for (const ConjectureReport& r : reports) {
    w.row({std::string(to_string(r.which)), std::to_string(r.samples), std::to_string(c.seed),
           std::to_string(r.violations.size()), std::to_string(r.max_count_seen),
           std::to_string(r.rechecked)});
  }
  bool header = false;
  for (const ConjectureReport& r : reports) {
    for (const AppendixParams& p : r.violations) {
      if (!header) {
        w.row({"violation", "p1", "p2", "p3", "p4", "p5"});
        header = true;
      }
      w.row({std::string(to_string(r.which)), w.num(p.p1), w.num(p.p2), w.num(p.p3), w.num(p.p4),
             w.num(p.p5)});
    }
  }
}

void cmd_fidelity(const RunConfig& c, Writer& w, const XxzState& b) {
  const XxzState a = require_xxz(c);
  check_on_tetrahedron(b);
  w.row({"fidelity"});
  w.row({w.num(fidelity(a, b))});
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const ConjectureViolation*>(&e)) return "conjecture-violation";
  if (dynamic_cast<const DomainError*>(&e)) return "domain-error";
  if (dynamic_cast<const InvalidInput*>(&e)) return "invalid-input";
  if (dynamic_cast<const NumericalError*>(&e)) return "numerical-error";
  return "error";
}

void add_state_options(CLI::App* app, RunConfig& c) {
  app->add_option("--s1", c.s1, "Local Bloch component s1");
  app->add_option("--c1", c.c1, "Correlation c1 (xx)");
  app->add_option("--c3", c.c3, "Correlation c3 (zz)");
}

void add_output_options(CLI::App* app, RunConfig& c) {
  app->add_option("--units", c.units, "Entropy units")->check(CLI::IsMember({"bit", "nat"}));
  app->add_option("--precision", c.precision, "Decimal digits")->check(CLI::Range(0, 17));
  app->add_option("--out", c.out_path, "Output CSV path (default stdout)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum discord of two-qubit X states", "xdiscord"};
  app.require_subcommand(1);
  RunConfig c;

  auto* eval = app.add_subcommand("eval", "Discord, branch and shape at one state");
  add_state_options(eval, c);
  eval->add_option("--s2", c.s2, "Bloch component of qubit B (general X, oracle path)");
  eval->add_option("--c2", c.c2, "Correlation c2 (general X, oracle path)");
  eval->add_option("--grid", c.grid, "Theta grid points")->check(CLI::Range(3, 1'000'000));
  eval->add_option("--tol-match", c.tol_match, "Closed form vs oracle tolerance")
      ->check(CLI::PositiveNumber);
  bool verify = false;
  eval->add_flag("--verify", verify, "Check S_cond at the optimum against the measurement oracle");
  add_output_options(eval, c);

  auto* curve = app.add_subcommand("curve", "S_cond(theta) samples");
  add_state_options(curve, c);
  curve->add_option("--steps", c.steps, "Number of theta points")->check(CLI::Range(2, 100'000'000));
  bool full = false;
  curve->add_flag("--full", full, "Sample [-pi, pi] instead of [0, pi/2]");
  add_output_options(curve, c);

  auto* phase = app.add_subcommand("phase", "Phase labels over a c3 slice");
  phase->add_option("--c3", c.c3, "Slice")->required();
  phase->add_option("--grid", c.grid, "Points per axis")->check(CLI::Range(3, 100'000));
  std::string boundary_path;
  int lines = 201;
  phase->add_option("--boundary-out", boundary_path, "CSV path for root-solved boundary polylines");
  phase->add_option("--lines", lines, "Scan lines for the boundary polylines")->check(CLI::Range(2, 100'000));
  phase->add_option("--tol-root", c.tol_root, "Root tolerance")->check(CLI::PositiveNumber);
  add_output_options(phase, c);

  auto* boundary = app.add_subcommand("boundary", "Boundary roots along a line");
  add_state_options(boundary, c);
  std::string kind = "all";
  int subintervals = 1000;
  std::optional<double> lo;
  std::optional<double> hi;
  boundary->add_option("--kind", kind, "Boundary kind")
      ->check(CLI::IsMember({"crossing", "d2-0", "d2-pi2", "all"}));
  boundary->add_option("--subintervals", subintervals, "Scan subintervals")->check(CLI::Range(2, 100'000'000));
  boundary->add_option("--lo", lo, "Bracket start");
  boundary->add_option("--hi", hi, "Bracket end");
  boundary->add_option("--tol-root", c.tol_root, "Root tolerance")->check(CLI::PositiveNumber);
  add_output_options(boundary, c);

  auto* volume = app.add_subcommand("volume", "Monte Carlo share of interior-minimum states");
  volume->add_option("--samples", c.samples, "Tetrahedron samples");
  volume->add_option("--seed", c.seed, "RNG seed");
  add_output_options(volume, c);

  auto* table = app.add_subcommand("table1", "Maximum corridor along s1 = (1 + c3)/2");
  table->add_option("--tol-root", c.tol_root, "Root tolerance")->check(CLI::PositiveNumber);
  add_output_options(table, c);

  auto* spinmap = app.add_subcommand("spinmap", "Map between states and the thermal dimer");
  spinmap->require_subcommand(1);
  double T = 1.0;
  auto* to_dimer = spinmap->add_subcommand("to-dimer", "(s1, c1, c3) to (J, Jz, B)");
  add_state_options(to_dimer, c);
  to_dimer->add_option("--T", T, "Temperature")->check(CLI::PositiveNumber);
  add_output_options(to_dimer, c);
  DimerParams dimer;
  auto* from_dimer = spinmap->add_subcommand("from-dimer", "(J, Jz, B, T) to (s1, c1, c3)");
  from_dimer->add_option("--J", dimer.J, "Transverse exchange")->required();
  from_dimer->add_option("--Jz", dimer.Jz, "Longitudinal exchange")->required();
  from_dimer->add_option("--B", dimer.B, "Field")->required();
  from_dimer->add_option("--T", dimer.T, "Temperature")->check(CLI::PositiveNumber);
  add_output_options(from_dimer, c);

  auto* unimodal = app.add_subcommand("unimodal", "Randomized test of the single-extremum conjecture");
  std::string which = "both";
  unimodal->add_option("--samples", c.samples, "Parameter draws");
  unimodal->add_option("--seed", c.seed, "RNG seed");
  unimodal->add_option("--grid", c.grid, "x grid points")->check(CLI::Range(101, 10'000'000));
  unimodal->add_option("--function", which, "f1, f2 or both")->check(CLI::IsMember({"f1", "f2", "both"}));
  add_output_options(unimodal, c);

  auto* fid = app.add_subcommand("fidelity", "Fidelity of two XXZ states");
  add_state_options(fid, c);
  XxzState other;
  fid->add_option("--s1b", other.s1, "s1 of the second state")->required();
  fid->add_option("--c1b", other.c1, "c1 of the second state")->required();
  fid->add_option("--c3b", other.c3, "c3 of the second state")->required();
  add_output_options(fid, c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream e_out;
    const int code = app.exit(e, o, e_out);
    out << o.str();
    err << e_out.str();
    return code;
  }

  try {
    Writer w(c, out);
    if (*eval) cmd_eval(c, w, verify);
    else if (*curve) cmd_curve(c, w, full);
    else if (*phase) cmd_phase(c, w, boundary_path, lines);
    else if (*boundary) cmd_boundary(c, w, kind, subintervals, lo, hi);
    else if (*volume) cmd_volume(c, w);
    else if (*table) cmd_table1(c, w);
    else if (*to_dimer) cmd_to_dimer(c, w, T);
    else if (*from_dimer) cmd_from_dimer(c, w, dimer);
    else if (*unimodal) cmd_unimodal(c, w, which);
    else if (*fid) cmd_fidelity(c, w, other);
    w.stream().flush();
  } catch (const std::exception& e) {
    err << "error: " << error_kind(e) << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace xdiscord::cli
