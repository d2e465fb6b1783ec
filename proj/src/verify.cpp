#include "semirad/verify.hpp"

#include <algorithm>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/tools/minima.hpp>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "semirad/figures.hpp"
#include "semirad/photon_stats.hpp"
#include "semirad/radiation.hpp"
#include "semirad/specfun.hpp"

namespace semirad::verify {

namespace {

std::string fmt(const char* f, ...) {
  char buf[4096];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// Least-squares slope of log(err) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(err[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Source unit_source(double q = 1.0, double E = 1.0, double u_par = 0.0) {
  SourceConfig cfg;
  cfg.q = q;
  cfg.E_field = E;
  cfg.u0_par = u_par;
  return Source(cfg, {});
}

struct Result {
  bool pass;
  std::string detail;
};

Result larmor(const Options& o) {
  SourceConfig cfg;
  cfg.q = 1.5;
  cfg.E_field = 0.8;
  const Source src(cfg, {});
  const auto r = radiation::rate_asymptotic(src);
  const double a = cfg.q * cfg.E_field / cfg.m, c = src.c();
  const double expected = 2.0 * cfg.q * cfg.q * a * a / (c * c * c);
  const double closed_dev = std::abs(r.w / expected - 1.0);
  const double int_dev = std::abs(r.check_integral - 2.0);
  const double tol = 1e-8 / o.tighten;
  const bool pass = closed_dev <= 4.0 * std::numeric_limits<double>::epsilon() && int_dev <= tol;
  return {pass, fmt("w = %.17g vs 2q^2a^2/c^3 = %.17g (rel %.1e); int K1 z^2 = %.15f vs 2 (|dev| %.2e, tol %.0e); "
                    "ratio to Larmor %.15g",
                    r.w, expected, closed_dev, r.check_integral, int_dev, tol, r.w / (expected / 3.0))};
}

Result nikishov_ritus(const Options& o) {
  const Source src = unit_source(1.2, 0.9);
  const auto cl = radiation::rate_classical_NR(src);
  const auto as = radiation::rate_asymptotic(src);
  const double target = 3.0 * M_PI * M_PI / 32.0;
  const double int_dev = std::abs(cl.check_integral - target);
  const double ratio = cl.w / as.w, ratio_dev = std::abs(ratio / (3.0 * M_PI / 32.0) - 1.0);
  const double tol_int = 1e-8 / o.tighten, tol_ratio = 1e-10 / o.tighten;
  const double larmor = 2.0 / 3.0 * src.cfg.q * src.cfg.q * src.d.a * src.d.a / std::pow(src.c(), 3);
  return {int_dev <= tol_int && ratio_dev <= tol_ratio,
          fmt("int K1^2 z^2 = %.15f vs 3pi^2/32 = %.15f (|dev| %.2e, tol %.0e); w_cl/w = %.15f vs 3pi/32 (rel %.2e, "
              "tol %.0e); w_cl/Larmor = %.12f vs 9pi/32 = %.12f",
              cl.check_integral, target, int_dev, tol_int, ratio, ratio_dev, tol_ratio, cl.w / larmor,
              9.0 * M_PI / 32.0)};
}

Result symmetric_rate(const Options& o) {
  const Source src = unit_source();
  quad::QuadSpec spec;
  spec.rel_tol = 1e-5;
  spec.abs_tol = 1e-10;
  spec.cutoff.grow = false;  // the documented initial cutoff, z <= 20
  const double target = radiation::rate_asymptotic(src).w;
  const double tol = 0.02 / o.tighten;
  std::string detail = fmt("target 2q^2a^2/c^3 = %g, cutoff z <= %g;", target, spec.cutoff.initial_z);
  bool within = true, monotone = true;
  double prev_dev = INFINITY;
  for (double eT : {0.01, 0.1, 1.0, 10.0}) {
    const auto r = radiation::rate_symmetric(src, eT / src.eps(), spec, {}, true);
    const double dev = std::abs(r.w / target - 1.0);
    within = within && dev <= tol;
    monotone = monotone && dev <= prev_dev;
    prev_dev = dev;
    detail += fmt(" eps T=%g: w=%.6g (rel dev %.3f);", eT, r.w, dev);
  }
  quad::QuadSpec wide = spec;
  wide.cutoff.initial_z *= 1.5;
  const auto r1 = radiation::rate_symmetric(src, 1.0 / src.eps(), wide, {}, true);
  detail += fmt(" cutoff x1.5 at eps T=1: w=%.6g; tol %.0e, monotone approach %s", r1.w, tol, monotone ? "yes" : "no");
  return {within && monotone, detail};
}

Result series_quadrature(const Options& o) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> Z(1e-3, 1.0), U(-3.0, 3.0);
  const specfun::Tol tight{1e-15, 1e-14, 10'000'000};
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double z = Z(rng), a = U(rng), b = U(rng);
    const auto s = specfun::k0_series(z, a, b);
    const auto d = specfun::window_moments_direct(0.0, z, a, b, specfun::Direction{}, tight);
    worst = std::max(worst, std::abs(s.value - 0.5 * d.m0));
  }
  const double tol = 1e-9 / o.tighten;
  return {worst <= tol, fmt("100 random (z <= 1, |u| <= 3): max |series - quadrature| = %.2e (tol %.0e)", worst, tol)};
}

Result asymptotic_order(const Options& o) {
  // Incomplete cylindrical function: error of the three-term expansion
  // measured against the exponential scale of the endpoint term.
  const std::complex<double> nu(0.5, 0.0);
  const double a = 1.0;
  const specfun::Tol tight{0.0, 1e-14, 20'000'000};
  std::vector<double> zs{10.0, 20.0, 40.0}, e1;
  for (double z : zs) {
    const auto ex = specfun::epsilon_incomplete(nu, a, z, tight).value;
    const auto as = specfun::epsilon_asymptotic(nu, a, z);
    const double scale = std::max(1.0, std::abs(std::exp(z * std::sinh(a) - nu * a)));
    e1.push_back(std::abs(ex - as) / scale);
  }
  const double s1 = loglog_slope(zs, e1);

  // Stationary phase: RMS of |I2 - I_as| over one beat period in Lambda.
  const double theta = M_PI / 3.0;
  const RapidityWindow w{Bound::at(0.0), Bound::at(2.0)};
  const auto g = [&](double x) { return std::sinh(x) - std::cos(theta) * std::cosh(x); };
  const double period = 2.0 * M_PI / std::abs(g(2.0) - g(0.0));
  const specfun::Tol qt{1e-15, 1e-13, 10'000'000};
  std::vector<double> lams{10.0, 20.0, 40.0, 80.0}, e2;
  for (double L : lams) {
    double acc = 0.0;
    const int n = 16;
    for (int j = 0; j < n; ++j) {
      const double Lj = L + period * j / n;
      const auto ex = radiation::i2_theta(theta, Lj, w, qt).value;
      acc += std::norm(ex - radiation::stationary_phase_I2(theta, Lj, w));
    }
    e2.push_back(std::sqrt(acc / n));
  }
  const double s2 = loglog_slope(lams, e2);
  const double tol = 0.5 / o.tighten;
  return {std::abs(s1 + 4.0) <= tol && std::abs(s2 + 2.0) <= tol,
          fmt("expansion error slope %.3f vs -4 (errors %.2e %.2e %.2e); stationary-phase slope %.3f vs -2 "
              "(errors %.2e %.2e %.2e %.2e); tol %.2g",
              s1, e1[0], e1[1], e1[2], s2, e2[0], e2[1], e2[2], e2[3], tol)};
}

Result theta_max(const Options& o) {
  const Source src = unit_source();
  const double tol = 1e-6 / o.tighten;
  double worst = 0.0;
  std::string detail;
  for (double eta : {1.0, 2.0, 3.0, 4.0}) {
    const RapidityWindow w{Bound::at(0.0), Bound::at(eta)};
    auto neg = [&](double th) { return -radiation::asymptotic_distribution(src, 1.0, th, w); };
    const auto r = boost::math::tools::brent_find_minima(neg, 1e-9, M_PI - 1e-9, std::numeric_limits<double>::digits);
    const double dev = std::abs(r.first - radiation::theta_max(eta));
    worst = std::max(worst, dev);
    detail += fmt(" eta=%g: argmax %.10f vs %.10f;", eta, r.first, radiation::theta_max(eta));
  }
  return {worst <= tol, detail + fmt(" max |dev| %.2e (tol %.0e)", worst, tol)};
}

Result rate_energy(const Options& o) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> Upar(-0.5, 0.5), Ein(-1.0, 0.5), Dlen(0.2, 1.2);
  quad::QuadSpec spec;
  spec.rel_tol = 1e-7;
  spec.abs_tol = 1e-14;
  spec.threads = o.threads;
  spec.cutoff.grow = false;
  spec.cutoff.initial_z = 10.0;
  const double tol = 1e-3 / o.tighten;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Source src = unit_source(1.0, 1.0, Upar(rng));
    const double eta_in = Ein(rng), eta = eta_in + Dlen(rng);
    const double t = t_of_eta(src, eta);
    const double h = 1e-3 * src.rho() * std::cosh(eta) / src.eps();
    const auto Wp = radiation::total_energy(src, {Bound::at(eta_in), Bound::at(eta_of_t(src, t + h))}, spec);
    const auto Wm = radiation::total_energy(src, {Bound::at(eta_in), Bound::at(eta_of_t(src, t - h))}, spec);
    const auto r = radiation::rate_general(src, {Bound::at(eta_in), Bound::at(eta)}, spec);
    const double fd = (Wp.W - Wm.W) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - r.w) / std::abs(r.w));
  }
  return {worst <= tol, fmt("20 random windows at fixed cutoff z <= %g: max |dW/dt - w|/|w| = %.2e (tol %.0e)",
                            spec.cutoff.initial_z, worst, tol)};
}

Result photon_statistics(const Options& o) {
  double worst_norm = 0.0;
  for (double lam : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
    const int n = static_cast<int>(std::ceil(lam + 12.0 * std::sqrt(lam) + 20.0));
    double sum = 0.0;
    for (int N = 0; N <= n; ++N) sum += photon_stats::n_photon_probability(N, lam);
    worst_norm = std::max(worst_norm, std::abs(sum - 1.0));
  }

  const Source src = unit_source();
  quad::QuadSpec spec;
  spec.rel_tol = 1e-6;
  spec.cutoff.grow = false;
  spec.cutoff.initial_z = 5.0;
  const auto s = photon_stats::emission_summary(src, {Bound::at(0.0), Bound::at(0.5)}, spec);
  double sumW = 0.0;
  for (double x : s.W_N) sumW += x;
  const double chain = std::abs(s.W1 * std::exp(s.lambda_bar) / s.W - 1.0);
  const double partial = std::abs(sumW / (s.W1 * std::exp(s.lambda_bar)) - 1.0);

  const double hc = 1.0, h = 1e-4;
  auto f = [&](double W) { return photon_stats::one_photon_energy_classical(W, hc); };
  const double slope = (f(hc + h) - f(hc - h)) / (2.0 * h);
  const bool is_max = f(hc) >= f(hc + h) && f(hc) >= f(hc - h);

  const double t_norm = 1e-12 / o.tighten, t_alg = 1e-10 / o.tighten, t_fd = 1e-6 / o.tighten;
  return {worst_norm <= t_norm && chain <= t_alg && partial <= t_alg && std::abs(slope) <= t_fd && is_max &&
              s.lambda_bar > 0.0,
          fmt("|sum P(N) - 1| = %.1e (tol %.0e); lambda = %.6g, W = %.6g: |W1 e^lambda/W - 1| = %.1e, "
              "|sum W(N)/(W1 e^lambda) - 1| = %.1e (tol %.0e); dW1/dW at W = hbar c: %.1e (tol %.0e), maximum %s",
              worst_norm, t_norm, s.lambda_bar, s.W, chain, partial, t_alg, slope, t_fd, is_max ? "yes" : "no")};
}

Result infrared(const Options& o) {
  const specfun::Tol tol{1e-14, 1e-13};
  const RapidityWindow w{Bound::at(-0.5), Bound::at(1.2)};
  const double kpar = 1.5;
  std::string detail;
  bool pass = true;

  SourceConfig tcfg;
  tcfg.u0_perp = {0.6, -0.3};
  const Source transverse(tcfg, {});
  for (const Source* src : {&transverse}) {
    const double f0 = radiation::energy_density(*src, {0.0, 0.0, kpar}, w, tol).value;
    double prev = INFINITY, last = 0.0;
    bool finite = std::isfinite(f0), shrinking = true;
    for (int j = 1; j <= 8; ++j) {
      const double kp = std::pow(10.0, -j);
      const double f = radiation::energy_density(*src, {kp, 0.0, kpar}, w, tol).value;
      finite = finite && std::isfinite(f);
      const double d = std::abs(f - f0);
      shrinking = shrinking && (d <= prev || d <= 1e-14 * f0);
      prev = d;
      last = d / f0;
    }
    const bool ok = finite && shrinking && last <= 1e-6 / o.tighten;
    pass = pass && ok;
    detail += fmt("u_perp != 0: on-axis %.12g, |f(1e-8) - f(0)|/f(0) = %.1e;", f0, last);
  }

  const Source parallel = unit_source();
  const double p1 = radiation::energy_density(parallel, {1e-1, 0.0, kpar}, w, tol).value;
  const double p8 = radiation::energy_density(parallel, {1e-8, 0.0, kpar}, w, tol).value;
  const double p0 = radiation::energy_density(parallel, {0.0, 0.0, kpar}, w, tol).value;
  const bool par_ok = std::isfinite(p8) && p0 == 0.0 && p8 <= 1e-12 * p1;
  pass = pass && par_ok;
  detail += fmt(" parallel: f(0.1) = %.3e, f(1e-8) = %.3e, on-axis %.1g;", p1, p8, p0);

  const double z = 1e-8;
  const auto K = specfun::k0_series(z, -1.0, 1.0).value;
  const double kdev = std::abs(K - 1.0);
  pass = pass && kdev <= 1e-6 / o.tighten;
  detail += fmt(" K_0(z=1e-8; -1, 1) = %.12f (-> 1), classical K_0(1e-8) = %.6f", K.real(),
                boost::math::cyl_bessel_k(0, z));
  return {pass, detail};
}

Result figures_check(const Options& o) {
  bool pass = true;
  std::string detail;
  for (int fig : {1, 3}) {
    const auto p = figures::preset(fig);
    for (const auto& pg : figures::compute(p, o.threads)) {
      const auto m = figures::half_masses(pg.grid);
      const bool ok = m.forward > m.backward;
      pass = pass && ok;
      detail += fmt(" fig%d%s eta=%g fwd/bwd %.3g/%.3g;", fig, pg.panel.label.c_str(), pg.panel.eta, m.forward,
                    m.backward);
    }
  }
  const auto p2 = figures::compute(figures::preset(2), o.threads);
  const int need = 2;
  for (auto [dx, dz] : std::vector<std::pair<int, int>>{{1, 0}, {1, 1}, {1, -1}, {1, 2}, {2, 1}}) {
    const int n = figures::sign_changes_along_ray(p2[0].grid, p2[1].grid, dx, dz);
    pass = pass && n >= need;
    detail += fmt(" fig2 ray (%d,%d): %d sign changes;", dx, dz, n);
  }
  return {pass, detail + fmt(" need forward > backward and >= %d changes per ray", need)};
}

using Fn = Result (*)(const Options&);

struct Entry {
  Criterion c;
  Fn fn;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e{
      {{"larmor-limit", {"radiation", "specfun"}, 1.0}, larmor},
      {{"nikishov-ritus", {"radiation", "specfun"}, 1.0}, nikishov_ritus},
      {{"symmetric-rate", {"radiation"}, 300.0}, symmetric_rate},
      {{"series-quadrature", {"specfun"}, 10.0}, series_quadrature},
      {{"asymptotic-order", {"specfun", "radiation"}, 30.0}, asymptotic_order},
      {{"theta-max", {"radiation"}, 10.0}, theta_max},
      {{"rate-energy", {"radiation", "quadrature"}, 300.0}, rate_energy},
      {{"photon-stats", {"photon_stats"}, 10.0}, photon_statistics},
      {{"infrared-regularity", {"specfun", "radiation"}, 10.0}, infrared},
      {{"figures", {"radiation", "io_cli"}, 600.0}, figures_check},
  };
  return e;
}

bool selected(const Criterion& c, const std::vector<std::string>& only) {
  if (only.empty()) return true;
  for (const auto& s : only) {
    if (s == c.name) return true;
    if (std::find(c.tags.begin(), c.tags.end(), s) != c.tags.end()) return true;
  }
  return false;
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c = [] {
    std::vector<Criterion> out;
    for (const auto& e : entries()) out.push_back(e.c);
    return out;
  }();
  return c;
}

std::vector<Check> run(const Options& opt) {
  if (!(opt.tighten > 0.0)) throw std::invalid_argument("tighten factor must be > 0");
  for (const auto& s : opt.only) {
    const bool known = std::any_of(entries().begin(), entries().end(), [&](const Entry& e) {
      return e.c.name == s || std::find(e.c.tags.begin(), e.c.tags.end(), s) != e.c.tags.end();
    });
    if (!known) throw std::invalid_argument("unknown criterion or module '" + s + "'");
  }
  std::vector<Check> out;
  for (const auto& e : entries()) {
    if (!selected(e.c, opt.only)) continue;
    Check ch;
    ch.name = e.c.name;
    ch.limit_seconds = e.c.limit_seconds;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Result r = e.fn(opt);
      ch.pass = r.pass;
      ch.detail = r.detail;
    } catch (const std::exception& ex) {
      ch.pass = false;
      ch.detail = std::string("exception: ") + ex.what();
    }
    ch.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ch.seconds > ch.limit_seconds) {
      ch.pass = false;
      ch.detail += fmt(" [runtime %.1fs exceeds %.0fs]", ch.seconds, ch.limit_seconds);
    }
    out.push_back(ch);
  }
  return out;
}

std::string format_line(const Check& c) {
  return fmt("%s %-20s (%.1fs / %.0fs) %s", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.seconds, c.limit_seconds,
             c.detail.c_str());
}

}  // namespace semirad::verify
