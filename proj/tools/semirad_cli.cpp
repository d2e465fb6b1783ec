// semirad: figure grids, energies, rates, photon statistics, special-function
// tables and the acceptance suite.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "semirad/figures.hpp"
#include "semirad/io.hpp"
#include "semirad/photon_stats.hpp"
#include "semirad/radiation.hpp"
#include "semirad/specfun.hpp"
#include "semirad/verify.hpp"

using namespace semirad;
using json = io::json;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNotConverged = 3, kInternal = 4 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Globals {
  std::string config;
  std::string out;
  double abs_tol = 1e-12;
  double rel_tol = 1e-9;
  double kperp_max = 0.0;
  double kpar_max = 0.0;
  long max_evals = 20'000'000;
  int threads = 1;
  bool fixed_cutoff = false;
  double cutoff_z = 20.0;
  std::map<std::string, std::optional<double>> overrides;
};

struct Clock {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

// Config file first, then per-key flags on top.
io::Config make_config(const Globals& g) {
  io::Config base;
  if (!g.config.empty()) base = io::load_config(g.config);
  std::ostringstream text;
  const json file_values = io::config_json(base);
  for (const auto& [k, v] : file_values.items()) text << k << " = " << io::format_double(v.get<double>()) << "\n";
  for (const auto& [k, v] : g.overrides)
    if (v) text << k << " = " << io::format_double(*v) << "\n";
  return io::parse_config(text.str());
}

quad::QuadSpec make_spec(const Globals& g) {
  quad::QuadSpec s;
  s.abs_tol = g.abs_tol;
  s.rel_tol = g.rel_tol;
  s.max_evals = g.max_evals;
  s.threads = g.threads;
  s.cutoff.initial_z = g.cutoff_z;
  s.cutoff.grow = !g.fixed_cutoff;
  return s;
}

quad::KGrid make_grid(const Globals& g) {
  quad::KGrid k;
  k.kperp_max = g.kperp_max;
  k.kpar_max = g.kpar_max;
  return k;
}

specfun::Tol make_tol(const Globals& g) { return {g.abs_tol, g.rel_tol, g.max_evals}; }

json grid_params(const Globals& g) { return {{"kperp_max", g.kperp_max}, {"kpar_max", g.kpar_max}}; }

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

Bound parse_bound(const std::string& s) {
  const double v = parse_number(s);
  if (std::isinf(v)) return v > 0 ? Bound::plus_infinity() : Bound::minus_infinity();
  if (std::isnan(v)) throw UsageError("window endpoint is NaN");
  return Bound::at(v);
}

// "a,b,c" or "start:stop:n" (n evenly spaced values).
std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  if (std::count(s.begin(), s.end(), ':') == 2) {
    const auto p1 = s.find(':'), p2 = s.find(':', p1 + 1);
    const double a = parse_number(s.substr(0, p1)), b = parse_number(s.substr(p1 + 1, p2 - p1 - 1));
    const double nd = parse_number(s.substr(p2 + 1));
    if (!(nd >= 1.0) || nd != std::floor(nd)) throw UsageError("range count must be a positive integer: " + s);
    const int n = static_cast<int>(nd);
    for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return out;
  }
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_number(item));
  if (out.empty()) throw UsageError("empty list");
  return out;
}

struct WindowArgs {
  std::string eta_in, eta, t_in, t;

  void add(CLI::App* app) {
    app->add_option("--eta-in", eta_in, "initial rapidity (number, inf, -inf)");
    app->add_option("--eta", eta, "final rapidity");
    app->add_option("--t-in", t_in, "initial time (alternative to --eta-in)");
    app->add_option("--t", t, "final time (alternative to --eta)");
  }

  RapidityWindow resolve(const Source& src) const {
    const bool times = !t_in.empty() || !t.empty();
    const bool etas = !eta_in.empty() || !eta.empty();
    if (times && etas) throw UsageError("give the window either in rapidities or in times, not both");
    if (times) {
      if (t_in.empty() || t.empty()) throw UsageError("--t-in and --t are both required");
      return to_rapidity(src, {parse_bound(t_in), parse_bound(t)});
    }
    if (eta_in.empty() || eta.empty()) throw UsageError("--eta-in and --eta (or --t-in and --t) are required");
    return {parse_bound(eta_in), parse_bound(eta)};
  }
};

void emit_json(const Globals& g, const json& j) {
  if (g.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    io::write_json(g.out, j);
  }
}

void emit_csv(const Globals& g, const io::Table& t) {
  if (g.out.empty()) {
    std::cout << io::to_csv(t);
  } else {
    io::write_csv(g.out, t);
  }
}

// ---------------------------------------------------------------- figure

struct FigureArgs {
  int figure = 1;
  std::optional<double> c_over_eps, q, eta_in, kmax, nodes_d;
  std::string etas;
};

int cmd_figure(const Globals& g, const FigureArgs& a) {
  Clock clock;
  figures::Preset p = figures::preset(a.figure);
  if (a.c_over_eps) p.c_over_eps = *a.c_over_eps;
  if (a.q) p.q = *a.q;
  if (a.eta_in) p.eta_in = *a.eta_in;
  if (a.kmax) p.kmax_over_scale = *a.kmax;
  if (a.nodes_d) {
    if (*a.nodes_d < 3 || *a.nodes_d != std::floor(*a.nodes_d)) throw UsageError("--nodes must be an integer >= 3");
    p.nodes = static_cast<int>(*a.nodes_d);
  }
  if (!(p.c_over_eps > 0.0) || !(p.kmax_over_scale > 0.0)) throw UsageError("--c-over-eps and --kmax must be > 0");
  if (!a.etas.empty()) {
    const auto etas = parse_list(a.etas);
    if (p.figure == 2) {
      if (etas.size() != 1) throw UsageError("figure 2 takes a single eta");
      for (auto& panel : p.panels) panel.eta = etas[0];
    } else {
      if (etas.size() != p.panels.size())
        throw UsageError("figure " + std::to_string(p.figure) + " takes " + std::to_string(p.panels.size()) + " eta values");
      for (std::size_t i = 0; i < etas.size(); ++i) p.panels[i].eta = etas[i];
    }
  }
  for (const auto& panel : p.panels)
    if (!(panel.eta > p.eta_in)) throw UsageError("every panel eta must exceed eta_in");

  const UnitSystem units = make_config(g).units;
  const io::Config cfg{p.source(units).cfg, units};
  const auto panels = figures::compute(p, g.threads, cfg.units);
  const std::string dir = g.out.empty() ? "." : g.out;
  std::filesystem::create_directories(dir);

  auto quantity_name = [](radiation::GridQuantity q) {
    switch (q) {
      case radiation::GridQuantity::energy: return "energy";
      case radiation::GridQuantity::energy_asymptotic: return "energy_asymptotic";
      case radiation::GridQuantity::rate: return "rate";
    }
    return "unknown";
  };
  json files = json::array();
  const json params = {{"figure", p.figure},   {"c_over_eps", p.c_over_eps}, {"q", p.q},
                       {"eta_in", p.eta_in},   {"kmax_over_scale", p.kmax_over_scale},
                       {"kmax", p.kmax()},     {"nodes", p.nodes},           {"ky", 0.0}};
  const json m = io::manifest("figure", cfg, make_spec(g), params, clock.seconds());
  for (const auto& pg : panels) {
    auto meta = io::manifest_metadata(m);
    meta.emplace_back("panel", pg.panel.label);
    meta.emplace_back("eta", io::format_double(pg.panel.eta));
    meta.emplace_back("quantity", quantity_name(pg.panel.quantity));
    const std::string name = "fig" + std::to_string(p.figure) + "_" + pg.panel.label + ".csv";
    io::write_csv((std::filesystem::path(dir) / name).string(), io::grid_table(pg.grid, meta));
    files.push_back({{"file", name}, {"panel", pg.panel.label}, {"eta", pg.panel.eta},
                     {"quantity", quantity_name(pg.panel.quantity)}});
  }
  json full = m;
  full["files"] = files;
  io::write_json((std::filesystem::path(dir) / ("fig" + std::to_string(p.figure) + "_manifest.json")).string(), full);
  for (const auto& f : files) std::cout << (std::filesystem::path(dir) / f["file"].get<std::string>()).string() << "\n";
  return kOk;
}

// ---------------------------------------------------------------- energy

int cmd_energy(const Globals& g, const WindowArgs& wa, const std::string& route_name) {
  Clock clock;
  const auto cfg = make_config(g);
  const Source src(cfg.source, cfg.units);
  const auto w = wa.resolve(src);
  auto route = src.parallel() ? radiation::EnergyRoute::parallel : radiation::EnergyRoute::general;
  if (route_name == "general") route = radiation::EnergyRoute::general;
  if (route_name == "parallel") route = radiation::EnergyRoute::parallel;
  const auto spec = make_spec(g);
  const auto r = radiation::total_energy(src, w, spec, make_grid(g), route);
  json params = grid_params(g);
  params["window"] = io::window_json(w);
  params["route"] = route == radiation::EnergyRoute::parallel ? "parallel" : "general";
  emit_json(g, {{"W", r.W},
                {"error", r.error},
                {"kspace", io::kspace_json(r.k)},
                {"manifest", io::manifest("energy", cfg, spec, params, clock.seconds())}});
  return r.k.converged ? kOk : kNotConverged;
}

// ---------------------------------------------------------------- rate

int cmd_rate(const Globals& g, const WindowArgs& wa, const std::string& variant, const std::string& T_text) {
  Clock clock;
  const auto cfg = make_config(g);
  const Source src(cfg.source, cfg.units);
  const auto spec = make_spec(g);
  const auto grid = make_grid(g);
  json params = grid_params(g);
  params["variant"] = variant;

  radiation::RateResult r;
  bool has_k = true;
  auto single_time = [&]() {
    if (!wa.eta_in.empty() || !wa.t_in.empty()) throw UsageError("variant " + variant + " has t_in = -infinity; drop --eta-in/--t-in");
    if (!wa.t.empty()) return parse_number(wa.t);
    if (!wa.eta.empty()) return t_of_eta(src, parse_number(wa.eta));
    throw UsageError("variant " + variant + " needs --t (or --eta)");
  };
  auto sym_T = [&]() {
    if (T_text.empty()) throw UsageError("variant " + variant + " needs --T");
    return parse_number(T_text);
  };
  if (variant == "general") {
    const auto w = wa.resolve(src);
    params["window"] = io::window_json(w);
    r = radiation::rate_general(src, w, spec, grid);
  } else if (variant == "halfinfinite" || variant == "parallel") {
    const double t = single_time();
    params["t"] = t;
    r = variant == "parallel" ? radiation::rate_parallel(src, t, spec, grid)
                              : radiation::rate_halfinfinite(src, t, spec, grid);
  } else if (variant == "symmetric" || variant == "symmetric-parallel") {
    const double T = sym_T();
    params["T"] = T;
    r = radiation::rate_symmetric(src, T, spec, grid, variant == "symmetric-parallel");
  } else if (variant == "asymptotic") {
    r = radiation::rate_asymptotic(src);
    has_k = false;
  } else if (variant == "classical-nr") {
    r = radiation::rate_classical_NR(src);
    has_k = false;
  } else {
    throw UsageError("unknown rate variant '" + variant + "'");
  }
  json out = {{"w", r.w}, {"error", r.error}, {"variant", radiation::to_string(r.variant)}};
  if (has_k) {
    out["window"] = io::window_json(r.window);
    out["kspace"] = io::kspace_json(r.k);
  } else {
    out["check_integral"] = r.check_integral;
    out["check_error"] = r.check_error;
    out["larmor"] = 2.0 * src.cfg.q * src.cfg.q * src.d.a * src.d.a / (3.0 * std::pow(src.c(), 3));
  }
  out["manifest"] = io::manifest("rate", cfg, spec, params, clock.seconds());
  emit_json(g, out);
  return !has_k || r.k.converged ? kOk : kNotConverged;
}

// ---------------------------------------------------------------- photon-stats

int cmd_photon_stats(const Globals& g, const WindowArgs& wa, int n_max) {
  Clock clock;
  const auto cfg = make_config(g);
  const Source src(cfg.source, cfg.units);
  const auto w = wa.resolve(src);
  const auto spec = make_spec(g);
  const auto s = photon_stats::emission_summary(src, w, spec, make_grid(g), n_max);
  json params = grid_params(g);
  params["window"] = io::window_json(w);
  params["n_max"] = n_max;
  emit_json(g, {{"lambda_bar", s.lambda_bar},
                {"lambda_error", s.lambda_error},
                {"P0", s.P0},
                {"W", s.W},
                {"W_error", s.W_error},
                {"W1", s.W1},
                {"P", s.P},
                {"W_N", s.W_N},
                {"converged", s.converged},
                {"energy_kspace", io::kspace_json(s.energy_k)},
                {"number_kspace", io::kspace_json(s.number_k)},
                {"manifest", io::manifest("photon-stats", cfg, spec, params, clock.seconds())}});
  return s.converged ? kOk : kNotConverged;
}

// ---------------------------------------------------------------- specfun eval

struct SpecfunArgs {
  std::string op = "K";
  std::string nu = "0", z = "1", u_in = "-1", u = "1";
  double kpar_over_k = 0.0;
};

int cmd_specfun(const Globals& g, const SpecfunArgs& a) {
  Clock clock;
  const auto tol = make_tol(g);
  const auto nus = parse_list(a.nu), zs = parse_list(a.z), uins = parse_list(a.u_in), us = parse_list(a.u);
  if (!(std::abs(a.kpar_over_k) <= 1.0)) throw UsageError("--kpar-over-k must lie in [-1, 1]");
  const auto dir = specfun::Direction::from_ratio(a.kpar_over_k);
  auto bound = [](double v) {
    return std::isinf(v) ? (v > 0 ? Bound::plus_infinity() : Bound::minus_infinity()) : Bound::at(v);
  };

  static const std::vector<std::string> ops{"K",         "Kprime",     "Kdot",        "S",     "m0",
                                            "m1",        "m2",         "m0-direct",   "k0-series",
                                            "macdonald", "macdonald-dz", "epsilon",   "epsilon-series",
                                            "epsilon-asymptotic"};
  if (std::find(ops.begin(), ops.end(), a.op) == ops.end()) throw UsageError("unknown specfun op '" + a.op + "'");

  io::Table t;
  t.columns = {"nu", "z", "u_in", "u", "re", "im", "err"};
  bool converged = true;
  for (double nu : nus)
    for (double z : zs)
      for (double ui : uins)
        for (double uf : us) {
          const UWindow w{bound(ui), bound(uf)};
          specfun::cplx v{};
          double err = 0.0;
          if (a.op == "K" || a.op == "Kprime" || a.op == "Kdot" || a.op == "S") {
            const auto sv = specfun::special_values(nu, z, w, dir, tol);
            const auto& pick = a.op == "K" ? sv.K : a.op == "Kprime" ? sv.Kprime : a.op == "S" ? sv.S : sv.Kdot;
            v = pick.value;
            err = pick.err;
            converged = converged && pick.converged;
          } else if (a.op == "m0" || a.op == "m1" || a.op == "m2") {
            const auto m = specfun::window_moments(nu, z, w, dir, tol);
            v = a.op == "m0" ? m.m0 : a.op == "m1" ? m.m1 : m.m2;
            err = m.err;
            converged = converged && m.converged;
          } else if (a.op == "m0-direct") {
            const auto m = specfun::window_moments_direct(nu, z, ui, uf, dir, tol);
            v = m.m0;
            err = m.err;
            converged = converged && m.converged;
          } else if (a.op == "k0-series") {
            if (nu != 0.0) throw UsageError("k0-series is the nu = 0 series");
            const auto s = specfun::k0_series(z, ui, uf);
            v = s.value;
            err = s.tail_bound;
          } else if (a.op == "macdonald") {
            v = specfun::macdonald_imag_order(nu, z, tol);
          } else if (a.op == "macdonald-dz") {
            v = specfun::macdonald_imag_order_dz(nu, z, tol);
          } else {
            // eps_nu(a, z) with a = u; u_in is ignored (the lower limit is 0)
            if (a.op == "epsilon") {
              const auto e = specfun::epsilon_incomplete(nu, uf, z, tol);
              v = e.value;
              err = e.err;
            } else if (a.op == "epsilon-series") {
              const auto e = specfun::epsilon_series(nu, uf, z);
              v = e.value;
              err = e.err;
            } else {
              v = specfun::epsilon_asymptotic(nu, uf, z);
            }
          }
          t.rows.push_back({nu, z, ui, uf, v.real(), v.imag(), err});
        }
  const json params = {{"op", a.op}, {"nu", a.nu}, {"z", a.z}, {"u_in", a.u_in}, {"u", a.u}, {"kpar_over_k", a.kpar_over_k}};
  t.meta = io::manifest_metadata(io::manifest("specfun eval", make_config(g), make_spec(g), params, clock.seconds()));
  emit_csv(g, t);
  return converged ? kOk : kNotConverged;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Globals& g, std::vector<std::string> only, double tighten, bool list) {
  if (list) {
    for (const auto& c : verify::criteria()) {
      std::string tags;
      for (const auto& t : c.tags) tags += (tags.empty() ? "" : ",") + t;
      std::printf("%-22s %-28s %gs\n", c.name.c_str(), tags.c_str(), c.limit_seconds);
    }
    return kOk;
  }
  std::vector<std::string> names;
  for (const auto& o : only) {
    std::stringstream in(o);
    std::string item;
    while (std::getline(in, item, ',')) names.push_back(item);
  }
  if (!(tighten > 0.0)) throw UsageError("--tighten must be > 0");
  verify::Options opt;
  opt.only = names;
  opt.tighten = tighten;
  opt.threads = g.threads;
  Clock clock;
  std::vector<verify::Check> checks;
  try {
    checks = verify::run(opt);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  json report = json::array();
  int failed = 0;
  for (const auto& c : checks) {
    std::printf("%s\n", verify::format_line(c).c_str());
    std::fflush(stdout);
    failed += c.pass ? 0 : 1;
    report.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"seconds", c.seconds},
                      {"limit_seconds", c.limit_seconds}});
  }
  std::printf("%zu checks, %d failed\n", checks.size(), failed);
  if (!g.out.empty()) {
    const json params = {{"only", names}, {"tighten", tighten}};
    io::write_json(g.out, {{"checks", report},
                           {"failed", failed},
                           {"manifest", io::manifest("verify", make_config(g), make_spec(g), params, clock.seconds())}});
  }
  return failed == 0 ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radiation of a charge uniformly accelerated by a constant electric field"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(io::kVersion));

  Globals g;
  app.add_option("--config", g.config, "config file (JSON object or key = value lines)")->check(CLI::ExistingFile);
  app.add_option("--out", g.out, "output file (directory for figure); stdout if omitted");
  app.add_option("--abs-tol", g.abs_tol, "absolute quadrature tolerance")->capture_default_str();
  app.add_option("--rel-tol", g.rel_tol, "relative quadrature tolerance")->capture_default_str();
  app.add_option("--kperp-max", g.kperp_max, "initial k_perp cutoff (0: cutoff-z times eps/(c rho))");
  app.add_option("--kpar-max", g.kpar_max, "initial k_par cutoff (0: cutoff-z times eps/(c rho))");
  app.add_option("--cutoff-z", g.cutoff_z, "initial cutoff in units of eps/(c rho)")->capture_default_str();
  app.add_flag("--fixed-cutoff", g.fixed_cutoff, "integrate at the initial cutoff without growing it");
  app.add_option("--max-evals", g.max_evals, "integrand evaluation budget per adaptive rule")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  for (const char* key : {"q", "m", "E", "u0_perp_x", "u0_perp_y", "u0_par", "c", "hbar"}) {
    std::string flag = std::string("--") + key;
    std::replace(flag.begin() + 2, flag.end(), '_', '-');
    auto& slot = g.overrides[key];
    app.add_option_function<double>(flag, [&slot](double v) { slot = v; }, std::string("override config key ") + key);
  }
  app.fallthrough();

  FigureArgs fa;
  auto* fig = app.add_subcommand("figure", "figure grids: one CSV per panel plus a manifest");
  fig->add_option("n", fa.figure, "figure number")->required()->check(CLI::IsMember({1, 2, 3}));
  fig->add_option("--c-over-eps", fa.c_over_eps, "scale c/eps (default 0.1)");
  fig->add_option("--charge", fa.q, "charge (default 2)");
  fig->add_option("--eta-in", fa.eta_in, "initial rapidity (default 0)");
  fig->add_option("--etas", fa.etas, "panel rapidities, comma separated");
  fig->add_option("--kmax", fa.kmax, "grid half-width in units of eps/c (default 10)");
  fig->add_option("--nodes", fa.nodes_d, "nodes per axis, odd (default 201)");

  WindowArgs ew;
  std::string route = "auto";
  auto* energy = app.add_subcommand("energy", "total radiated energy over a window");
  ew.add(energy);
  energy->add_option("--route", route, "auto, general or parallel")->check(CLI::IsMember({"auto", "general", "parallel"}));

  WindowArgs rw;
  std::string variant = "general", T_text;
  auto* rate = app.add_subcommand("rate", "emission rate");
  rw.add(rate);
  rate->add_option("--variant", variant,
                   "general, halfinfinite, parallel, symmetric, symmetric-parallel, asymptotic, classical-nr")
      ->capture_default_str();
  rate->add_option("--T", T_text, "symmetric window duration");

  WindowArgs pw;
  int n_max = 0;
  auto* photons = app.add_subcommand("photon-stats", "mean photon number, P(N), W(N)");
  pw.add(photons);
  photons->add_option("--n-max", n_max, "largest N (0: automatic)");

  SpecfunArgs sa;
  auto* specfun_cmd = app.add_subcommand("specfun", "special-function tables");
  specfun_cmd->require_subcommand(1);
  auto* eval = specfun_cmd->add_subcommand("eval", "CSV table over the product of the value lists");
  eval->add_option("--op", sa.op,
                   "K, Kprime, Kdot, S, m0, m1, m2, m0-direct, k0-series, macdonald, macdonald-dz, epsilon, "
                   "epsilon-series, epsilon-asymptotic")
      ->capture_default_str();
  eval->add_option("--nu", sa.nu, "list 'a,b' or range 'start:stop:n'")->capture_default_str();
  eval->add_option("--z", sa.z, "list or range")->capture_default_str();
  eval->add_option("--u-in", sa.u_in, "list or range (inf allowed)")->capture_default_str();
  eval->add_option("--u", sa.u, "list or range (inf allowed); the upper limit a for epsilon")->capture_default_str();
  eval->add_option("--kpar-over-k", sa.kpar_over_k, "direction for S and m2");

  std::vector<std::string> only;
  double tighten = 1.0;
  bool list = false;
  auto* ver = app.add_subcommand("verify", "acceptance suite");
  ver->add_option("--only", only, "criterion names or module tags");
  ver->add_option("--tighten", tighten, "divide every tolerance by this factor")->capture_default_str();
  ver->add_flag("--list", list, "list criteria and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (fig->parsed()) return cmd_figure(g, fa);
    if (energy->parsed()) return cmd_energy(g, ew, route);
    if (rate->parsed()) return cmd_rate(g, rw, variant, T_text);
    if (photons->parsed()) return cmd_photon_stats(g, pw, n_max);
    if (eval->parsed()) return cmd_specfun(g, sa);
    if (ver->parsed()) return cmd_verify(g, only, tighten, list);
  } catch (const radiation::DivergenceError& e) {
    std::fprintf(stderr, "semirad: %s\n", e.what());
    return kUsage;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "semirad: config: %s\n", e.what());
    return kUsage;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "semirad: %s\n", e.what());
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "semirad: %s\n", e.what());
    return kUsage;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "semirad: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "semirad: internal error: %s\n", e.what());
    return kInternal;
  }
  return kUsage;
}
