#include "nlssh/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "nlssh/bulk.hpp"
#include "nlssh/finite.hpp"
#include "nlssh/io.hpp"
#include "nlssh/local_approx.hpp"

namespace nlssh::cli {

namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<std::string> kSubcommands{"bands", "zak", "approx", "berry", "finite", "edge", "compare-ssh"};

bool is_finite_command(const std::string& s) { return s == "finite" || s == "edge" || s == "compare-ssh"; }

double parse_number(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double x = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorCode::Usage, "config key '" + key + "': not a number: " + text);
  }
}

std::string fmt(double x) { return io::format_double(x); }

std::string band_name(Band b) { return b == Band::plus ? "plus" : "minus"; }

std::string config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw Error(ErrorCode::Usage, "--config needs a file");
      return args[i + 1];
    }
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return {};
}

std::string join_args(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) {
    if (!s.empty()) s += ' ';
    s += a;
  }
  return s;
}

// Comment lines that precede every CSV payload.
std::string csv_envelope(const RunConfig& cfg, const std::vector<std::string>& extra = {}) {
  std::string s = "# nonlocal-ssh schema_version=" + std::to_string(kSchemaVersion) + "\n";
  s += "# input: " + join_args(cfg.to_args()) + "\n";
  for (const auto& line : extra) s += "# " + line + "\n";
  return s;
}

io::Json::Object json_envelope(const RunConfig& cfg) {
  return {{"schema_version", kSchemaVersion}, {"command", cfg.subcommand}, {"input", join_args(cfg.to_args())}};
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> xs(n);
  if (n == 1) {
    xs[0] = lo;
    return xs;
  }
  for (std::size_t i = 0; i < n; ++i)
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return xs;
}

BulkParams bulk_of(const RunConfig& c) { return validate_bulk({c.v, c.w, c.a}); }
FiniteParams finite_of(const RunConfig& c) { return {c.v0, c.w0, c.a, c.L, c.dx}; }

std::string run_bands(const RunConfig& cfg) {
  const BulkParams p = bulk_of(cfg);
  const auto ks = linspace(cfg.kmin, cfg.kmax, cfg.samples);
  const auto bands = band_sweep(p, ks);
  io::CsvTable t({"k", "E_minus", "E_plus", "phi"});
  for (const auto& b : bands) t.add_row({b.k, b.Eminus, b.Eplus, phase_phi(p, b.k)});
  return csv_envelope(cfg) + io::emit_csv(t);
}

std::string run_zak(const RunConfig& cfg) {
  const BulkParams p = bulk_of(cfg);
  const ZakResult z = zak_wilson(p, cfg.band, cfg.nk);
  const bool topological = std::abs(std::abs(z.value) - kPi) < cfg.tolWilson;
  auto o = json_envelope(cfg);
  o.insert(o.end(), {{"v", p.v},
                     {"w", p.w},
                     {"a", p.a},
                     {"band", band_name(cfg.band)},
                     {"Nk", z.kPoints},
                     {"gamma", z.value},
                     {"classification", topological ? "topological" : "trivial"}});
  return io::emit_json(o);
}

std::string run_approx(const RunConfig& cfg) {
  const BulkParams p = bulk_of(cfg);
  const auto ks = linspace(cfg.kmin, cfg.kmax, cfg.samples);
  std::vector<ApproxOrder> orders;
  if (cfg.order == "all") orders = {ApproxOrder::zero, ApproxOrder::one, ApproxOrder::two};
  else orders = {make_order(std::stoi(cfg.order))};

  std::vector<std::string> cols{"k", "ka"};
  std::vector<std::vector<BandPoint>> sweeps;
  for (ApproxOrder n : orders) {
    cols.push_back("E" + std::to_string(to_int(n)) + "_minus");
    cols.push_back("E" + std::to_string(to_int(n)) + "_plus");
    sweeps.push_back(approx_band_sweep(p, n, ks));
  }
  cols.insert(cols.end(), {"E_minus", "E_plus"});
  const auto exact = band_sweep(p, ks);

  io::CsvTable t(cols);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    std::vector<double> row{ks[i], p.a * ks[i]};
    for (const auto& s : sweeps) row.insert(row.end(), {s[i].Eminus, s[i].Eplus});
    row.insert(row.end(), {exact[i].Eminus, exact[i].Eplus});
    t.add_row(std::move(row));
  }
  return csv_envelope(cfg) + io::emit_csv(t);
}

std::string run_berry(const RunConfig& cfg) {
  const BulkParams p = bulk_of(cfg);
  const ApproxOrder n = make_order(std::stoi(cfg.order));
  const auto r = berry_integral(p, n, cfg.band, cfg.cutoffK, cfg.berryPoints);
  auto o = json_envelope(cfg);
  o.insert(o.end(), {{"order", to_int(n)},
                     {"band", band_name(cfg.band)},
                     {"value", r.value},
                     {"cutoffK", r.cutoffK},
                     {"error", r.quadratureError},
                     {"reference_published", berry_reference_published(p, n)}});
  return io::emit_json(o);
}

std::string run_compare(const RunConfig& cfg) {
  const auto cmp = fig3_compare(finite_of(cfg), cfg.tolZero);
  if (cfg.json) {
    auto o = json_envelope(cfg);
    o.insert(o.end(), {{"dimension", cmp.finite.size()},
                       {"kolmogorov_distance", cmp.kolmogorov},
                       {"zero_modes_HL", cmp.zeroFinite},
                       {"zero_modes_SSH", cmp.zeroSsh}});
    return io::emit_json(o);
  }
  io::CsvTable t({"index", "E_HL", "E_SSH"});
  for (std::size_t i = 0; i < cmp.finite.size(); ++i)
    t.add_row({static_cast<double>(i), cmp.finite[i], cmp.ssh[i]});
  return csv_envelope(cfg, {"kolmogorov_distance=" + fmt(cmp.kolmogorov)}) + io::emit_csv(t);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  f << text;
  if (!f) throw Error(ErrorCode::Io, "write to " + path + " failed");
}

std::string run_finite(const RunConfig& cfg) {
  if (cfg.compareSsh) return run_compare(cfg);
  const CheckedFinite checked = validate_finite(finite_of(cfg));
  const FiniteOperator op(checked, make_grid(checked));
  const SpectrumResult s = spectrum(op, cfg.vectors);
  const double tol = cfg.tolZero * std::abs(cfg.w0);

  if (cfg.vectors) {
    io::CsvTable states({"state", "eigenvalue", "x", "abs_psiA", "abs_psiB"});
    for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
      if (std::abs(s.eigenvalues[k]) >= tol) continue;
      for (std::size_t i = 0; i < op.points(); ++i)
        states.add_row({static_cast<double>(k), s.eigenvalues[k], op.grid().x(i), std::abs(s.vectors[k].psiA[i]),
                        std::abs(s.vectors[k].psiB[i])});
    }
    write_text(cfg.vectorsOut, csv_envelope(cfg) + io::emit_csv(states));
  }

  if (cfg.json) {
    const auto sym = symmetry_residuals(op);
    auto o = json_envelope(cfg);
    o.insert(o.end(), {{"dimension", op.dimension()},
                       {"zero_modes", zero_mode_count(s.eigenvalues, tol)},
                       {"residual_bound", s.residualBound},
                       {"pairing_defect", pairing_defect(s.eigenvalues)},
                       {"chiral_residual", sym.chiral},
                       {"parity_residual", sym.parity}});
    return io::emit_json(o);
  }
  io::CsvTable t({"index", "eigenvalue"});
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) t.add_row({static_cast<double>(i), s.eigenvalues[i]});
  return csv_envelope(cfg) + io::emit_csv(t);
}

std::string run_edge(const RunConfig& cfg) {
  const FiniteParams p = finite_of(cfg);
  const CheckedFinite checked = validate_finite(p);
  const ZeroModePair modes = build_zero_mode(p, cfg.labels);
  const SpinorGrid psi = modes.spinor();

  if (cfg.json) {
    const FiniteOperator op(checked, make_grid(checked));
    const Exponents q = exponents(p);
    auto o = json_envelope(cfg);
    o.insert(o.end(), {{"qA", io::Json::Array{q.qA.real(), q.qA.imag()}},
                       {"qB", io::Json::Array{q.qB.real(), q.qB.imag()}},
                       {"residual", residual(op, psi)},
                       {"fittedSlopes", io::Json::Array{localization_fit(psi, Sublattice::A, checked.shift),
                                                        localization_fit(psi, Sublattice::B, checked.shift)}}});
    return io::emit_json(o);
  }
  io::CsvTable t({"x", "abs_psiA", "abs_psiB", "re_psiA", "re_psiB"});
  for (std::size_t i = 0; i < psi.grid.size(); ++i)
    t.add_row({psi.grid.x(i), std::abs(psi.psiA[i]), std::abs(psi.psiB[i]), psi.psiA[i].real(), psi.psiB[i].real()});
  return csv_envelope(cfg) + io::emit_csv(t);
}

}  // namespace

std::vector<std::string> RunConfig::to_args() const {
  std::vector<std::string> a{subcommand};
  auto num = [&](const char* flag, double x) {
    a.emplace_back(flag);
    a.push_back(fmt(x));
  };
  auto integer = [&](const char* flag, long long x) {
    a.emplace_back(flag);
    a.push_back(std::to_string(x));
  };
  num("--v", v);
  num("--w", w);
  num("--a", this->a);
  num("--v0", v0);
  num("--w0", w0);
  num("--L", L);
  num("--dx", dx);

  if (subcommand == "bands" || subcommand == "approx") {
    integer("--samples", static_cast<long long>(samples));
    num("--kmin", kmin);
    num("--kmax", kmax);
  }
  if (subcommand == "approx" || subcommand == "berry") a.insert(a.end(), {"--order", order});
  if (subcommand == "zak" || subcommand == "berry") a.insert(a.end(), {"--band", band == Band::plus ? "plus" : "minus"});
  if (subcommand == "zak") {
    integer("--nk", static_cast<long long>(nk));
    num("--tol-wilson", tolWilson);
  }
  if (subcommand == "berry") {
    num("--cutoff", cutoffK);
    integer("--points", static_cast<long long>(berryPoints));
  }
  if (subcommand == "finite" || subcommand == "compare-ssh") num("--tol-zero", tolZero);
  if (subcommand == "finite") {
    if (vectors) a.emplace_back("--vectors");
    a.insert(a.end(), {"--vectors-out", vectorsOut});
    if (compareSsh) a.emplace_back("--compare-ssh");
  }
  if (subcommand == "edge") {
    integer("--nA", labels.nA);
    integer("--mA", labels.mA);
    integer("--nB", labels.nB);
    integer("--mB", labels.mB);
  }
  if (subcommand != "bands" && subcommand != "approx" && json) a.emplace_back("--json");
  if (!out.empty()) a.insert(a.end(), {"--out", out});
  if (timing) a.emplace_back("--timing");
  return a;
}

std::string synopsis() {
  return "usage: nonlocal-ssh <bands|zak|approx|berry|finite|edge|compare-ssh> [options]\n"
         "       nonlocal-ssh <subcommand> --help   for the options of one subcommand\n";
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  bool a_from_config = false;

  if (const std::string path = config_path(args); !path.empty()) {
    for (const auto& [key, value] : io::load_config(path)) {
      const double x = parse_number(key, value);
      if (key == "v") cfg.v = x;
      else if (key == "w") cfg.w = x;
      else if (key == "a") cfg.a = x, a_from_config = true;
      else if (key == "v0") cfg.v0 = x;
      else if (key == "w0") cfg.w0 = x;
      else if (key == "L") cfg.L = x;
      else if (key == "dx") cfg.dx = x;
      else throw Error(ErrorCode::Usage, "unknown config key '" + key + "'");
    }
  }

  CLI::App app{"Non-local continuous SSH model: bands, topology, finite spectra, edge modes", "nonlocal-ssh"};
  app.require_subcommand(1, 1);
  std::string config_dummy;
  std::string band = "plus";
  std::string order_text;
  std::vector<CLI::Option*> a_opts, kmin_opts, kmax_opts, cutoff_opts, order_opts;

  for (const auto& name : kSubcommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_dummy, "Flat key = value parameter file (flags override it)");
    sub->add_option("--v", cfg.v, "Intra-cell coupling v");
    sub->add_option("--w", cfg.w, "Inter-cell coupling w");
    a_opts.push_back(sub->add_option("--a", cfg.a, "Non-locality scale a > 0"));
    sub->add_option("--v0", cfg.v0, "Box coupling v0");
    sub->add_option("--w0", cfg.w0, "Box coupling w0");
    sub->add_option("--L", cfg.L, "Box length");
    sub->add_option("--dx", cfg.dx, "Grid step (a/dx and L/dx must be integers)");
    sub->add_option("--out", cfg.out, "Write the result here instead of stdout");
    sub->add_flag("--timing", cfg.timing, "Report wall time on stderr");

    if (name == "bands" || name == "approx") {
      sub->add_option("--samples", cfg.samples, "Number of k samples")->check(CLI::PositiveNumber);
      kmin_opts.push_back(sub->add_option("--kmin", cfg.kmin, "First k (default -pi/a)"));
      kmax_opts.push_back(sub->add_option("--kmax", cfg.kmax, "Last k (default +pi/a)"));
    }
    if (name == "approx")
      order_opts.push_back(sub->add_option("--order", order_text, "0, 1, 2 or all")->check(CLI::IsMember({"0", "1", "2", "all"})));
    if (name == "berry")
      order_opts.push_back(sub->add_option("--order", order_text, "1 or 2")->check(CLI::IsMember({"1", "2"})));
    if (name == "zak" || name == "berry")
      sub->add_option("--band", band, "plus or minus")->check(CLI::IsMember({"plus", "minus"}));
    if (name == "zak") {
      sub->add_option("--nk", cfg.nk, "Wilson-loop k points (>= 16)");
      sub->add_option("--tol-wilson", cfg.tolWilson, "Distance from pi that counts as topological")->check(CLI::PositiveNumber);
    }
    if (name == "berry") {
      cutoff_opts.push_back(sub->add_option("--cutoff", cfg.cutoffK, "Momentum cutoff K (default 1e4/a)"));
      sub->add_option("--points", cfg.berryPoints, "Unwrapping samples on [-K, K]");
    }
    if (name == "finite" || name == "compare-ssh")
      sub->add_option("--tol-zero", cfg.tolZero, "Zero-energy tolerance relative to |w0|")->check(CLI::PositiveNumber);
    if (name == "finite") {
      sub->add_flag("--vectors", cfg.vectors, "Write midgap eigenvectors to --vectors-out");
      sub->add_option("--vectors-out", cfg.vectorsOut, "Per-state CSV path");
      sub->add_flag("--compare-ssh", cfg.compareSsh, "Emit the H_L vs discrete SSH comparison table");
    }
    if (name == "edge") {
      sub->add_option("--nA", cfg.labels.nA, "Harmonic n_A");
      sub->add_option("--mA", cfg.labels.mA, "Phase branch m_A");
      sub->add_option("--nB", cfg.labels.nB, "Harmonic n_B");
      sub->add_option("--mB", cfg.labels.mB, "Phase branch m_B");
    }
    if (name != "bands" && name != "approx") sub->add_flag("--json", cfg.json, "Emit the JSON summary");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw;
  } catch (const CLI::CallForAllHelp&) {
    throw;
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorCode::Usage, e.what());
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  auto given = [](const std::vector<CLI::Option*>& opts) {
    for (const auto* o : opts)
      if (o->count() > 0) return true;
    return false;
  };
  if (!given(a_opts) && !a_from_config) cfg.a = is_finite_command(cfg.subcommand) ? 0.2 : 1.0;
  if (!given(kmin_opts)) cfg.kmin = -kPi / cfg.a;
  if (!given(kmax_opts)) cfg.kmax = kPi / cfg.a;
  if (!given(cutoff_opts)) cfg.cutoffK = cfg.subcommand == "berry" ? kDefaultBerryCutoff / cfg.a : 0.0;
  if (given(order_opts)) cfg.order = order_text;
  else cfg.order = cfg.subcommand == "berry" ? "2" : "all";
  cfg.band = band == "plus" ? Band::plus : Band::minus;
  if (cfg.subcommand == "compare-ssh") cfg.compareSsh = true;
  return cfg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const CLI::Error& e) {
    // --help
    err << synopsis();
    return e.get_exit_code() == 0 ? 0 : 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n" << synopsis();
    return is_validation_error(e.code()) ? 2 : 3;
  }

  try {
    std::string text;
    const std::string& s = cfg.subcommand;
    if (s == "bands") text = run_bands(cfg);
    else if (s == "zak") text = run_zak(cfg);
    else if (s == "approx") text = run_approx(cfg);
    else if (s == "berry") text = run_berry(cfg);
    else if (s == "finite" || s == "compare-ssh") text = run_finite(cfg);
    else if (s == "edge") text = run_edge(cfg);

    if (cfg.out.empty()) {
      out << text;
      out.flush();
      if (!out) throw Error(ErrorCode::Io, "write to stdout failed");
    } else {
      write_text(cfg.out, text);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_validation_error(e.code()) ? 2 : 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }

  if (cfg.timing) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    err << "elapsed_seconds=" << dt.count() << "\n";
  }
  return 0;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace nlssh::cli
