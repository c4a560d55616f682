#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <ostream>

#include "peq/config.hpp"
#include "peq/diagnostics.hpp"
#include "peq/errors.hpp"
#include "peq/experiments.hpp"
#include "peq/io.hpp"
#include "peq/tail.hpp"
#include "peq/verification.hpp"

namespace peqlab {

namespace fs = std::filesystem;
using namespace peq;

namespace {

std::string prepare_dir(const RunConfig& c, const std::string& override_dir) {
  const std::string dir = override_dir.empty() ? c.output.dir : override_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  return dir;
}

std::string join(const std::string& dir, const char* name) { return (fs::path(dir) / name).string(); }

int cmd_run(const RunConfig& c, const std::string& dir, std::ostream& out) {
  const Grid g = c.scenario.grid();
  const Stepper stepper(c.scenario.phys, g, c.scenario.step);
  DiagnosticsSink diag(c.scenario.phys, g, c.scenario.checks);
  RunSink* sinks[] = {&diag};
  const RunResult res = run(make_initial_state(c.scenario, g), stepper, sinks);
  write_timeseries(join(dir, "timeseries.csv"), diag.records());
  if (c.output.snapshot) write_snapshot(join(dir, "final.peq"), res.final_state);
  if (c.output.plot && !diag.records().empty()) {
    PlotSpec spec;
    spec.title = "energies";
    PlotSeries T{"l2_T", {}, {}}, v{"l2_v", {}, {}};
    for (const auto& r : diag.records()) {
      T.t.push_back(r.t);
      T.y.push_back(r.l2_T);
      v.t.push_back(r.t);
      v.y.push_back(r.l2_v);
    }
    spec.series = {T, v, envelope_series(T.t, diag.records().front().l2_T, diag.l2_Q(), c.scenario.phys)};
    write_text(join(dir, "energies.svg"), plot_svg(spec));
  }
  out << std::setprecision(6) << "steps " << res.steps << ", t = " << res.final_state.t << "\n"
      << "max Poincare ratio (T, v): " << diag.max_poincare_T() << ", " << diag.max_poincare_v() << "\n"
      << "max envelope ratio: " << diag.max_envelope_ratio() << "\n"
      << "max relative energy increase per step: " << diag.max_energy_increase() << "\n"
      << "max split constant (logged only): " << diag.max_split_constant() << "\n";
  if (!diag.violations().empty()) {
    out << diag.violations().size() << " check violation(s):\n";
    for (const auto& v : diag.violations()) out << "  " << v << "\n";
    return kCheckFailure;
  }
  out << "all checks passed\n";
  return kOk;
}

int cmd_mms(const RunConfig& c, const std::string& dir, std::ostream& out) {
  const MmsReport rep = mms_study(c.scenario.initial.mms, c.scenario.phys, c.mms.levels, c.mms.dt, c.mms.steps);
  Table t;
  t.header = {"n", "delta", "error_v", "error_T"};
  for (const auto& l : rep.levels) t.rows.push_back({double(l.n), l.delta, l.error_v, l.error_T});
  write_table(join(dir, "mms.csv"), t);
  out << std::setprecision(6);
  for (const auto& l : rep.levels)
    out << "n = " << l.n << "  error_v = " << l.error_v << "  error_T = " << l.error_T << "\n";
  out << "observed order v: " << rep.order_v.order << ", T: " << rep.order_T.order << "\n";
  auto ok = [&](const OrderFit& f) { return f.monotone && f.order >= c.mms.order_min && f.order <= c.mms.order_max; };
  if (!ok(rep.order_v) || !ok(rep.order_T)) {
    out << "order outside [" << c.mms.order_min << ", " << c.mms.order_max << "] or errors not monotone\n";
    return kCheckFailure;
  }
  return kOk;
}

int cmd_tail(const RunConfig& c, const std::string& dir, std::ostream& out) {
  const TailReport rep = tail_decay_experiment(c.tail, c.scenario);
  Table t;
  t.header = {"t", "l2_T"};
  for (double r : rep.radii) t.header.push_back("windowed_r" + format_double(r));
  for (const auto& s : rep.samples) {
    std::vector<std::optional<double>> row{s.t, s.total};
    for (double w : s.windowed) row.push_back(w);
    t.rows.push_back(row);
  }
  write_table(join(dir, "tail.csv"), t);
  out << std::setprecision(6);
  for (std::size_t n = 0; n < rep.radii.size(); ++n)
    out << "r = " << rep.radii[n] << "  sup windowed = " << rep.sup_windowed[n]
        << "  sup ratio = " << rep.sup_ratio[n] << "\n";
  out << "monotone in r: " << (rep.monotone_in_r ? "yes" : "no") << "\n";
  if (rep.witness_radius) out << "witness radius: " << *rep.witness_radius << "\n";
  if (!rep.pass) {
    out << "tail check failed (epsilon " << c.tail.epsilon << ")\n";
    return kCheckFailure;
  }
  return kOk;
}

int cmd_truncate(const RunConfig& c, const std::string& dir, std::ostream& out) {
  const TruncationReport rep = truncation_convergence(c.scenario, c.truncate.levels, c.truncate.factor);
  Table t;
  t.header = {"t"};
  for (const auto& p : rep.pairs) t.header.push_back("rel_diff_lx" + format_double(p.lx_small));
  if (!rep.pairs.empty())
    for (std::size_t n = 0; n < rep.pairs.front().times.size(); ++n) {
      std::vector<std::optional<double>> row{rep.pairs.front().times[n]};
      for (const auto& p : rep.pairs) row.push_back(p.rel_diff[n]);
      t.rows.push_back(row);
    }
  write_table(join(dir, "truncate.csv"), t);
  out << std::setprecision(6);
  bool ok = true;
  for (std::size_t n = 0; n < rep.pairs.size(); ++n) {
    const auto& p = rep.pairs[n];
    out << "lx " << p.lx_small << " vs " << p.lx_large << ": max relative difference " << p.max_rel_diff << "\n";
    if (n > 0 && !(p.max_rel_diff < rep.pairs[n - 1].max_rel_diff)) ok = false;
  }
  if (rep.pairs.empty() || rep.pairs.front().max_rel_diff > c.truncate.max_rel_diff) ok = false;
  if (!ok) {
    out << "truncation check failed (threshold " << c.truncate.max_rel_diff << ")\n";
    return kCheckFailure;
  }
  return kOk;
}

int cmd_contract(const RunConfig& c, const std::string& dir, std::ostream& out) {
  const ContractionReport rep = two_trajectory_contraction(c.tail, c.scenario, c.contract.perturbation);
  Table t;
  t.header = {"t", "l2_dv", "l2_dT", "v_distance"};
  for (const auto& s : rep.series) t.rows.push_back({s.t, s.l2_dv, s.l2_dT, s.v_distance});
  write_table(join(dir, "contract.csv"), t);
  out << std::setprecision(6) << "initial distance " << rep.initial_distance << ", final " << rep.final_distance
      << ", monotone: " << (rep.monotone ? "yes" : "no") << "\n";
  const bool ok = c.contract.require_monotone ? rep.monotone : rep.final_distance < rep.initial_distance;
  if (!ok) {
    out << "contraction check failed\n";
    return kCheckFailure;
  }
  return kOk;
}

int cmd_plot(const std::string& csv, const std::vector<std::string>& columns, bool envelope, double l2_q,
             const std::string& config, const std::string& output, std::ostream& out) {
  const Table t = read_table(csv);
  const int tc = t.column("t");
  if (tc < 0) throw ConfigError(csv + " has no 't' column");
  PlotSpec spec;
  spec.title = fs::path(csv).filename().string();
  std::vector<double> times;
  for (const auto& row : t.rows)
    if (row[static_cast<std::size_t>(tc)]) times.push_back(*row[static_cast<std::size_t>(tc)]);
  for (const auto& name : columns) {
    const int c = t.column(name);
    if (c < 0) throw ConfigError("column '" + name + "' not found in " + csv);
    PlotSeries s;
    s.name = name;
    for (const auto& row : t.rows)
      if (row[static_cast<std::size_t>(tc)] && row[static_cast<std::size_t>(c)]) {
        s.t.push_back(*row[static_cast<std::size_t>(tc)]);
        s.y.push_back(*row[static_cast<std::size_t>(c)]);
      }
    spec.series.push_back(std::move(s));
  }
  if (envelope) {
    const int c = t.column("l2_T");
    if (c < 0 || t.rows.empty() || !t.rows.front()[static_cast<std::size_t>(c)])
      throw ConfigError("envelope overlay needs an l2_T column");
    const PhysParams p = config.empty() ? PhysParams{} : load_config(config).scenario.phys;
    spec.series.push_back(envelope_series(times, *t.rows.front()[static_cast<std::size_t>(c)], l2_q, p));
  }
  const std::string path = output.empty() ? (fs::path(csv).replace_extension(".svg")).string() : output;
  write_text(path, plot_svg(spec));
  out << "wrote " << path << "\n";
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"peqlab: primitive-equation channel simulator and diagnostics"};
  app.require_subcommand(1);
  std::string config, out_dir;
  auto add_cfg = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("config", config, "configuration file")->required();
    s->add_option("-o,--out", out_dir, "output directory (overrides [output] dir)");
    return s;
  };
  CLI::App* run_c = add_cfg("run", "physics run with runtime diagnostics");
  CLI::App* mms_c = add_cfg("mms", "manufactured-solution convergence study");
  CLI::App* tail_c = add_cfg("tail", "windowed tail-energy experiment");
  CLI::App* trunc_c = add_cfg("truncate", "domain truncation convergence");
  CLI::App* contract_c = add_cfg("contract", "two-trajectory contraction probe");
  CLI::App* plot_c = app.add_subcommand("plot", "log-scale SVG plot of CSV columns");
  std::string csv, plot_out;
  std::vector<std::string> columns;
  bool envelope = false;
  double l2_q = 0.0;
  plot_c->add_option("csv", csv, "CSV file")->required();
  plot_c->add_option("columns", columns, "columns to plot (space or comma separated)")->required()->delimiter(',');
  plot_c->add_flag("--envelope", envelope, "overlay the temperature envelope");
  plot_c->add_option("--l2-q", l2_q, "squared L2 norm of Q for the envelope");
  plot_c->add_option("--config", config, "configuration providing the physical parameters");
  plot_c->add_option("-o,--out", plot_out, "output SVG path");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (plot_c->parsed()) return cmd_plot(csv, columns, envelope, l2_q, config, plot_out, out);
    const RunConfig c = load_config(config);
    const std::string dir = prepare_dir(c, out_dir);
    if (run_c->parsed()) return cmd_run(c, dir, out);
    if (mms_c->parsed()) return cmd_mms(c, dir, out);
    if (tail_c->parsed()) return cmd_tail(c, dir, out);
    if (trunc_c->parsed()) return cmd_truncate(c, dir, out);
    if (contract_c->parsed()) return cmd_contract(c, dir, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const CheckFailure& e) {
    err << "check failed: " << e.what() << "\n";
    return kCheckFailure;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace peqlab
