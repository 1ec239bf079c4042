// sg-ist: command-line driver for the sine-Gordon inverse-scattering toolkit.
//
// Subcommands:
//   exact      sample a closed-form (or N-soliton) solution to CSV
//   scatter    direct transform: FieldState CSV -> ScatteringData JSON
//   evolve     leapfrog PDE evolution with checkpoints and an energy log
//   invert     inverse transform: ScatteringData JSON -> FieldState CSV
//   asymptote  long-time leading order + corrections along a time slice
//   compare    pointwise error metrics between two states, with decay fits
//   norms      weighted norms / comparison metrics as JSON
//
// A flat key=value config file (--config) supplies defaults; command-line
// flags override it.  --print-config dumps every known key with its default.
// All CSV bodies are written with %.17g so reruns are byte identical.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <sg/sg.hpp>

namespace {

using sg::cx;

struct GridSpec {
  double lo = -30.0, hi = 30.0, h = 0.01;
};

GridSpec parse_grid(const std::string& s) {
  GridSpec g;
  if (std::sscanf(s.c_str(), "%lg:%lg:%lg", &g.lo, &g.hi, &g.h) != 3 || g.h <= 0.0 ||
      g.hi <= g.lo)
    throw CLI::ValidationError("--grid", "expected lo:hi:h with h > 0, got '" + s + "'");
  return g;
}

std::vector<double> grid_points(const GridSpec& g) {
  std::size_t n = static_cast<std::size_t>(std::lround((g.hi - g.lo) / g.h)) + 1;
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = g.lo + g.h * double(i);
  return xs;
}

// flat key=value config: lines "key = value", '#' comments.  Flags that were
// not given on the command line pick up "<command>.<flag>" or "<flag>".
struct FlatConfig {
  std::map<std::string, std::string> kv;

  void load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::FileError("cannot open config file " + path);
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
      if (!key.empty()) kv[key] = val;
    }
  }

  void apply(CLI::App* cmd) {
    for (CLI::Option* opt : cmd->get_options()) {
      if (opt->count() > 0 || opt->get_lnames().empty()) continue;
      std::string name = opt->get_lnames().front();
      auto it = kv.find(cmd->get_name() + "." + name);
      if (it == kv.end()) it = kv.find(name);
      if (it == kv.end()) continue;
      if (opt->get_expected_min() == 0)
        opt->add_result(it->second.empty() ? "true" : it->second);
      else
        opt->add_result(it->second);
      opt->run_callback();
    }
  }
};

void write_metrics(const nlohmann::json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream o(out);
    o << j.dump(2) << "\n";
  }
}

void print_config(const CLI::App& app) {
  for (const CLI::App* cmd : app.get_subcommands({})) {
    for (const CLI::Option* opt : cmd->get_options()) {
      if (opt->get_lnames().empty()) continue;
      std::string def = opt->get_default_str();
      std::printf("%s.%s = %s\n", cmd->get_name().c_str(), opt->get_lnames().front().c_str(),
                  def.empty() ? "<required>" : def.c_str());
    }
  }
}

// ---------------------------------------------------------------------------
// exact
// ---------------------------------------------------------------------------
struct ExactArgs {
  std::string kind;
  double v = 0.0, beta = 0.5, x0 = 0.0, x1 = 0.0, x2 = 0.0, t = 0.0, amp = 0.3;
  int charge = +1, nbumps = 3;
  unsigned seed = 1;
  std::string grid = "-30:30:0.01", spec, out = "exact.csv";
};

int cmd_exact(const ExactArgs& a) {
  GridSpec g = parse_grid(a.grid);
  sg::FieldState st;
  if (a.kind == "kink" || a.kind == "antikink") {
    int q = (a.kind == "antikink") ? -1 : a.charge;
    st = sg::sample(sg::eval_kink({a.v, a.x0, q}), g.lo, g.hi, g.h, a.t);
  } else if (a.kind == "breather") {
    st = sg::sample(sg::eval_breather({a.v, a.beta, a.x1, a.x2}), g.lo, g.hi, g.h, a.t);
  } else if (a.kind == "wobbler") {
    st = sg::sample(sg::eval_wobbler({a.beta}), g.lo, g.hi, g.h, a.t);
  } else if (a.kind == "gaussian") {
    sg::ExactSolution sol{
        [&](double x, double) { return a.amp * std::exp(-(x - a.x0) * (x - a.x0) / 2.0); },
        [](double, double) { return 0.0; }};
    st = sg::sample(sol, g.lo, g.hi, g.h, a.t);
  } else if (a.kind == "random") {
    // reproducible superposition of small Gaussian bumps (test data)
    std::mt19937 rng(a.seed);
    std::uniform_real_distribution<double> pos(0.3 * g.lo, 0.3 * g.hi), amp(-a.amp, a.amp),
        wid(0.7, 2.0);
    std::vector<double> c(a.nbumps), s(a.nbumps), w(a.nbumps);
    for (int i = 0; i < a.nbumps; ++i) { c[i] = pos(rng); s[i] = amp(rng); w[i] = wid(rng); }
    sg::ExactSolution sol{[=](double x, double) {
                            double v = 0.0;
                            for (std::size_t i = 0; i < c.size(); ++i)
                              v += s[i] * std::exp(-(x - c[i]) * (x - c[i]) / (w[i] * w[i]));
                            return v;
                          },
                          [](double, double) { return 0.0; }};
    st = sg::sample(sol, g.lo, g.hi, g.h, a.t);
  } else if (a.kind == "nsoliton") {
    if (a.spec.empty()) throw CLI::ValidationError("--spec", "nsoliton needs --spec data.json");
    sg::ScatteringData d = sg::ScatteringData::load(a.spec);
    st = sg::reconstruct_reflectionless_field(d, grid_points(g), a.t);
  } else {
    throw CLI::ValidationError("kind", "unknown solution '" + a.kind + "'");
  }
  sg::save_csv(st, a.out);
  return 0;
}

// ---------------------------------------------------------------------------
// scatter
// ---------------------------------------------------------------------------
struct ScatterArgs {
  std::string in, out = "scattering.json";
  std::size_t grid_n = 1024;
  double lambda_max = 60.0, tol = 1e-10;
  bool no_discrete = false;
};

int cmd_scatter(const ScatterArgs& a) {
  sg::FieldState st = sg::load_csv(a.in);
  sg::SpectralGrid grid = sg::SpectralGrid::make(a.grid_n, a.lambda_max);
  sg::JostOptions jopt;
  jopt.tol = a.tol;
  sg::ScatteringData d = sg::scatter(st, grid, {}, !a.no_discrete, jopt);
  d.save(a.out);
  std::printf("scatter: %zu grid nodes, %zu kinks, %zu breathers -> %s\n", grid.size(),
              d.kinks.size(), d.breathers.size(), a.out.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// evolve
// ---------------------------------------------------------------------------
struct EvolveArgs {
  std::string in, outdir = "evolve_out";
  double T = 10.0, dt = 0.0, checkpoint_every = 1.0;
};

int cmd_evolve(const EvolveArgs& a) {
  sg::FieldState st = sg::load_csv(a.in);
  sg::PdeOptions opt;
  opt.dt = a.dt;
  sg::LeapfrogSolver solver(st, opt);
  std::filesystem::create_directories(a.outdir);
  std::ofstream elog(a.outdir + "/energy.csv");
  elog << "t,E,P\n";
  char buf[160];
  int ck = 0;
  auto checkpoint = [&](const sg::FieldState& s) {
    std::snprintf(buf, sizeof buf, "%s/checkpoint_%04d.csv", a.outdir.c_str(), ck++);
    sg::save_csv(s, buf);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.t, sg::energy(s), sg::momentum(s));
    elog << buf;
  };
  checkpoint(st);
  double next = a.checkpoint_every;
  while (solver.time() < a.T - 1e-12) {
    solver.step();
    if (solver.time() >= next - 0.5 * solver.dt() || solver.time() >= a.T - 1e-12) {
      checkpoint(solver.state());
      next += a.checkpoint_every;
    }
  }
  std::printf("evolve: %d checkpoints in %s\n", ck, a.outdir.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// invert
// ---------------------------------------------------------------------------
struct InvertArgs {
  std::string in, out = "inverted.csv", grid = "-10:10:0.05";
  double t = 0.0, gmres_tol = 1e-11;
  int l_minus = 0;
  bool reflectionless = false;
};

int cmd_invert(const InvertArgs& a) {
  sg::ScatteringData d = sg::ScatteringData::load(a.in);
  std::vector<double> xs = grid_points(parse_grid(a.grid));
  sg::FieldState st;
  bool no_radiation = true;
  for (cx r : d.r)
    if (std::abs(r) > 1e-14) no_radiation = false;
  if (a.reflectionless || no_radiation || d.r.empty()) {
    st = sg::reconstruct_reflectionless_field(d, xs, a.t, a.l_minus);
  } else {
    sg::BcOptions opt;
    opt.gmres_tol = a.gmres_tol;
    st = sg::reconstruct_full(d, xs, a.t, a.l_minus, opt);
  }
  sg::save_csv(st, a.out);
  return 0;
}

// ---------------------------------------------------------------------------
// asymptote
// ---------------------------------------------------------------------------
struct AsymptoteArgs {
  std::string in, out = "asymptote.csv", grid = "-40:40:1";
  double t = 100.0;
};

int cmd_asymptote(const AsymptoteArgs& a) {
  sg::ScatteringData d = sg::ScatteringData::load(a.in);
  sg::ReflectionInterp r(d);
  std::vector<double> xs = grid_points(parse_grid(a.grid));
  std::ofstream out(a.out);
  out << "x,t,frame,cos_lead,sin_lead,R_cos,R_sin,cos_total,sin_total\n";
  char buf[320];
  for (double x : xs) {
    if (std::abs(x) >= a.t) {
      // outside the light cone the field is exponentially/polynomially small;
      // report the vacuum leading order in the exterior frame
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,exterior,1,0,0,0,1,0\n", x, a.t);
      out << buf;
      continue;
    }
    sg::RadiationLead lead = sg::radiation_solitonless(r, x, a.t);
    sg::PcConstants pc = sg::pc_constants(r, lead.z0, a.t, d.kinks, d.breathers);
    // solitonless global model is the scalar delta^{sigma3}: evaluate at the
    // stationary points and the origin
    sg::Mat2 m_p{pc.delta0_B, 0.0, 0.0, 1.0 / pc.delta0_B};
    sg::Mat2 m_m{pc.delta0_A, 0.0, 0.0, 1.0 / pc.delta0_A};
    sg::Mat2 m0 = sg::Mat2::identity();
    sg::Corrections corr = sg::correction_terms(m_m, m_p, m0, pc.delta0_A, pc.delta0_B,
                                                pc.beta12, pc.beta21, a.t, lead.z0);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,radiation,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  x, a.t, lead.cos_f, lead.sin_f, corr.R_cos, corr.R_sin,
                  lead.cos_f + corr.R_cos, lead.sin_f + corr.R_sin);
    out << buf;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------
struct CompareArgs {
  std::vector<std::string> pairs;  // repeated "a.csv:b.csv"
  std::string window, out;
  double tol_max = -1.0, tol_exponent = 1.0;
  bool fit = false;
};

int cmd_compare(const CompareArgs& a) {
  double wlo = 0.0, whi = -1.0;
  if (!a.window.empty() &&
      std::sscanf(a.window.c_str(), "%lg:%lg", &wlo, &whi) != 2)
    throw CLI::ValidationError("--window", "expected lo:hi");
  nlohmann::json report;
  report["pairs"] = nlohmann::json::array();
  std::vector<double> ts, errs;
  bool pass = true;
  for (const std::string& p : a.pairs) {
    auto colon = p.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--pair", "expected a.csv:b.csv, got '" + p + "'");
    sg::FieldState sa = sg::load_csv(p.substr(0, colon));
    sg::FieldState sb = sg::load_csv(p.substr(colon + 1));
    sg::CompareMetrics m = sg::compare_fields(sa, sb, wlo, whi);
    report["pairs"].push_back({{"t", sa.t},
                               {"max", m.max},
                               {"l2", m.l2},
                               {"windowed_l2", m.windowed_l2}});
    if (a.tol_max > 0.0 && m.max > a.tol_max) pass = false;
    if (sa.t > 0.0 && m.max > 0.0) {
      ts.push_back(sa.t);
      errs.push_back(m.max);
    }
  }
  if (a.fit && ts.size() >= 2) {
    sg::DecayFit fit = sg::fit_decay_exponent(ts, errs);
    report["slope"] = fit.slope;
    report["stderr"] = fit.stderr_slope;
    if (fit.slope > a.tol_exponent) pass = false;
  }
  report["pass"] = pass;
  write_metrics(report, a.out);
  return pass ? 0 : 2;
}

// ---------------------------------------------------------------------------
// norms
// ---------------------------------------------------------------------------
struct NormsArgs {
  std::string in, b, series, window, out;
  double s = 1.0;
};

int cmd_norms(const NormsArgs& a) {
  nlohmann::json j;
  if (!a.in.empty()) {
    sg::FieldState st = sg::load_csv(a.in);
    j["weighted_norm2"] = sg::weighted_norm2(st, a.s);
    j["s"] = a.s;
    j["energy"] = sg::energy(st);
    j["momentum"] = sg::momentum(st);
    if (!a.b.empty()) {
      double wlo = 0.0, whi = -1.0;
      if (!a.window.empty() && std::sscanf(a.window.c_str(), "%lg:%lg", &wlo, &whi) != 2)
        throw CLI::ValidationError("--window", "expected lo:hi");
      sg::CompareMetrics m = sg::compare_fields(st, sg::load_csv(a.b), wlo, whi);
      j["max"] = m.max;
      j["l2"] = m.l2;
      j["windowed_l2"] = m.windowed_l2;
    }
  }
  if (!a.series.empty()) {
    std::ifstream in(a.series);
    if (!in) throw CLI::FileError("cannot open " + a.series);
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> ts, vals;
    double t, v;
    while (std::getline(in, line))
      if (std::sscanf(line.c_str(), "%lg,%lg", &t, &v) == 2) {
        ts.push_back(t);
        vals.push_back(v);
      }
    sg::DecayFit fit = sg::fit_decay_exponent(ts, vals);
    j["slope"] = fit.slope;
    j["stderr"] = fit.stderr_slope;
  }
  write_metrics(j, a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sine-Gordon inverse-scattering toolkit"};
  app.require_subcommand(0, 1);
  std::string config_path;
  bool do_print_config = false;
  app.add_option("--config", config_path, "flat key=value config file");
  app.add_flag("--print-config", do_print_config, "print all known keys with defaults");

  ExactArgs ea;
  CLI::App* exact = app.add_subcommand("exact", "sample a closed-form solution");
  exact->add_option("kind", ea.kind,
                    "kink|antikink|breather|wobbler|gaussian|random|nsoliton")
      ->required();
  exact->add_option("--v", ea.v, "velocity")->capture_default_str();
  exact->add_option("--beta", ea.beta, "breather/wobbler parameter")->capture_default_str();
  exact->add_option("--x0", ea.x0, "center offset")->capture_default_str();
  exact->add_option("--x1", ea.x1, "breather temporal phase")->capture_default_str();
  exact->add_option("--x2", ea.x2, "breather spatial phase")->capture_default_str();
  exact->add_option("--charge", ea.charge, "kink charge +-1")->capture_default_str();
  exact->add_option("--amp", ea.amp, "amplitude (gaussian/random)")->capture_default_str();
  exact->add_option("--nbumps", ea.nbumps, "bump count (random)")->capture_default_str();
  exact->add_option("--seed", ea.seed, "RNG seed (random)")->capture_default_str();
  exact->add_option("--grid", ea.grid, "x grid lo:hi:h")->capture_default_str();
  exact->add_option("--t", ea.t, "time slice")->capture_default_str();
  exact->add_option("--spec", ea.spec, "ScatteringData JSON (nsoliton)");
  exact->add_option("--out", ea.out, "output CSV path")->capture_default_str();

  ScatterArgs sa;
  CLI::App* scat = app.add_subcommand("scatter", "direct scattering transform");
  scat->add_option("--in", sa.in, "input FieldState CSV")->required();
  scat->add_option("--out", sa.out, "output ScatteringData JSON")->capture_default_str();
  scat->add_option("--grid-n", sa.grid_n, "spectral nodes (even)")->capture_default_str();
  scat->add_option("--lambda-max", sa.lambda_max, "spectral window in lambda")
      ->capture_default_str();
  scat->add_option("--tol", sa.tol, "ODE tolerance")->capture_default_str();
  scat->add_flag("--no-discrete", sa.no_discrete, "skip eigenvalue search");

  EvolveArgs ev;
  CLI::App* evo = app.add_subcommand("evolve", "leapfrog PDE evolution");
  evo->add_option("--in", ev.in, "initial FieldState CSV")->required();
  evo->add_option("--T", ev.T, "final time")->capture_default_str();
  evo->add_option("--dt", ev.dt, "time step (0 = 0.5 dx)")->capture_default_str();
  evo->add_option("--checkpoint-every", ev.checkpoint_every, "checkpoint interval")
      ->capture_default_str();
  evo->add_option("--outdir", ev.outdir, "output directory")->capture_default_str();

  InvertArgs iv;
  CLI::App* inv = app.add_subcommand("invert", "inverse scattering transform");
  inv->add_option("--in", iv.in, "input ScatteringData JSON")->required();
  inv->add_option("--out", iv.out, "output FieldState CSV")->capture_default_str();
  inv->add_option("--grid", iv.grid, "x grid lo:hi:h")->capture_default_str();
  inv->add_option("--t", iv.t, "time slice")->capture_default_str();
  inv->add_option("--l-minus", iv.l_minus, "left topological sector")->capture_default_str();
  inv->add_option("--gmres-tol", iv.gmres_tol, "GMRES tolerance")->capture_default_str();
  inv->add_flag("--reflectionless", iv.reflectionless, "force the finite pole system");

  AsymptoteArgs as;
  CLI::App* asym = app.add_subcommand("asymptote", "long-time asymptotic profile");
  asym->add_option("--in", as.in, "input ScatteringData JSON")->required();
  asym->add_option("--out", as.out, "output CSV")->capture_default_str();
  asym->add_option("--grid", as.grid, "x grid lo:hi:h")->capture_default_str();
  asym->add_option("--t", as.t, "time slice")->capture_default_str();

  CompareArgs ca;
  CLI::App* cmp = app.add_subcommand("compare", "error metrics between state pairs");
  cmp->add_option("--pair", ca.pairs, "state pair a.csv:b.csv (repeatable)")->required();
  cmp->add_option("--window", ca.window, "windowed L2 range lo:hi");
  cmp->add_option("--tol-max", ca.tol_max, "max-norm gate (exit 2 on failure)")
      ->capture_default_str();
  cmp->add_option("--tol-exponent", ca.tol_exponent, "fitted-slope gate")->capture_default_str();
  cmp->add_flag("--fit", ca.fit, "fit log err vs log t over the pairs");
  cmp->add_option("--out", ca.out, "report JSON path (default stdout)");

  NormsArgs na;
  CLI::App* nrm = app.add_subcommand("norms", "weighted norms and metrics JSON");
  nrm->add_option("--in", na.in, "FieldState CSV");
  nrm->add_option("--b", na.b, "second state for comparison metrics");
  nrm->add_option("--s", na.s, "weight exponent")->capture_default_str();
  nrm->add_option("--window", na.window, "windowed L2 range lo:hi");
  nrm->add_option("--series", na.series, "CSV t,val series for a decay fit");
  nrm->add_option("--out", na.out, "output JSON path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (do_print_config) {
    print_config(app);
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help() << "\n";
    return 1;
  }

  try {
    FlatConfig cfg;
    if (!config_path.empty()) {
      cfg.load(config_path);
      for (CLI::App* cmd : app.get_subcommands()) cfg.apply(cmd);
    }
    if (exact->parsed()) return cmd_exact(ea);
    if (scat->parsed()) return cmd_scatter(sa);
    if (evo->parsed()) return cmd_evolve(ev);
    if (inv->parsed()) return cmd_invert(iv);
    if (asym->parsed()) return cmd_asymptote(as);
    if (cmp->parsed()) return cmd_compare(ca);
    if (nrm->parsed()) return cmd_norms(na);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
