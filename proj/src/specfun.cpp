#include "semirad/specfun.hpp"

#include <cmath>
#include <stdexcept>

#include "semirad/quadrature.hpp"

namespace semirad::specfun {

using quad::CVec;
using V3 = CVec<3>;
constexpr cplx I{0.0, 1.0};

Direction Direction::from_xi(double xi) {
  Direction d;
  if (std::isinf(xi)) {
    d.t = xi > 0 ? 1.0 : -1.0;
    d.one_minus_t = xi > 0 ? 0.0 : 2.0;
    d.one_plus_t = xi > 0 ? 2.0 : 0.0;
    return d;
  }
  d.t = std::tanh(xi);
  if (xi >= 0.0) {
    d.one_minus_t = 2.0 / (1.0 + std::exp(2.0 * xi));
    d.one_plus_t = 1.0 + d.t;
  } else {
    d.one_plus_t = 2.0 / (1.0 + std::exp(-2.0 * xi));
    d.one_minus_t = 1.0 - d.t;
  }
  return d;
}

Direction Direction::from_ratio(double r) {
  if (!(r >= -1.0 && r <= 1.0)) throw std::domain_error("k_par/|k| must lie in [-1, 1]");
  return {r, 1.0 - r, 1.0 + r};
}

Direction Direction::from_k(double kperp, double kpar) {
  const double k = std::hypot(kperp, kpar);
  if (k == 0.0) return {};
  Direction d;
  d.t = kpar / k;
  const double small = kperp * kperp / (k * (k + std::abs(kpar)));
  d.one_minus_t = kpar > 0 ? small : 1.0 - d.t;
  d.one_plus_t = kpar < 0 ? small : 1.0 + d.t;
  return d;
}

namespace {

// sinh u + t cosh u, written so that t -> +-1 with u -> -+inf does not cancel.
double a2_real(double u, const Direction& d) {
  return 0.5 * (d.one_plus_t * std::exp(u) - d.one_minus_t * std::exp(-u));
}

V3 u_integrand(double nu, double z, const Direction& d, double u) {
  const cplx e = std::polar(1.0, phase(z, nu, u));
  V3 r;
  r[0] = e;
  r[1] = std::sinh(u) * e;
  r[2] = a2_real(u, d) * e;
  return r;
}

// Amplitudes 1/w, s/w, s/w + t times exp(-i nu asinh s), at complex s (w = sqrt(1+s^2)).
V3 s_amplitudes(double nu, const Direction& d, cplx s) {
  const cplx w = std::sqrt(1.0 + s * s);
  V3 r;
  r[0] = 1.0 / w;
  r[1] = s / w;
  r[2] = s.real() < 0.0 ? -d.one_minus_t + 1.0 / (w * (w - s)) : d.one_plus_t - 1.0 / (w * (w + s));
  if (nu != 0.0) {
    const cplx as = s.real() < 0.0 ? -std::asinh(-s) : std::asinh(s);
    r *= std::exp(-I * nu * as);
  }
  return r;
}

// Q(sigma) = int_0^inf e^{-x} A(sigma + i x/z) dx; the rays give
// int_sigma^inf g ds = (i e^{i z sigma}/z) Q and int_-inf^sigma g ds = -(i e^{i z sigma}/z) Q.
quad::Estimate<V3> ray(double nu, double z, const Direction& d, double sigma, const Tol& tol) {
  constexpr double X = 46.0;
  std::vector<double> br{0.0, 0.5, 2.0, 6.0, 15.0, X};
  if (z > 0.05 && z < X) {
    br.push_back(z);
    std::sort(br.begin(), br.end());
  }
  auto f = [&](double x) { return std::exp(-x) * s_amplitudes(nu, d, cplx(sigma, x / z)); };
  return quad::adaptive(f, br, tol.abs * z * 0.25, tol.rel * 0.25, tol.max_evals);
}

std::vector<double> phi_breaks(double nu, double z, double ua, double ub);

quad::Estimate<V3> direct_u(double nu, double z, const Direction& d, double ua, double ub, const Tol& tol) {
  if (ua == ub) return {};
  auto f = [&](double u) { return u_integrand(nu, z, d, u); };
  return quad::adaptive(f, phi_breaks(nu, z, ua, ub), tol.abs * 0.25, tol.rel * 0.25, tol.max_evals);
}

Moments closed_form_z0(double nu, double u_in, double u, const Direction& d) {
  Moments m;
  m.path = "closed-form";
  if (nu == 0.0) {
    m.m0 = u - u_in;
    m.m1 = std::cosh(u) - std::cosh(u_in);
    m.m2 = 0.5 * d.one_plus_t * (std::exp(u) - std::exp(u_in)) +
           0.5 * d.one_minus_t * (std::exp(-u) - std::exp(-u_in));
    return m;
  }
  auto prim = [&](double x) {
    const cplx ep = std::exp(cplx(1.0, -nu) * x), em = std::exp(cplx(-1.0, -nu) * x);
    const cplx a = ep / (2.0 * cplx(1.0, -nu)), b = em / (2.0 * cplx(1.0, nu));
    return std::array<cplx, 3>{I * std::exp(-I * nu * x) / nu, a + b, d.one_plus_t * a + d.one_minus_t * b};
  };
  const auto hi = prim(u), lo = prim(u_in);
  m.m0 = hi[0] - lo[0];
  m.m1 = hi[1] - lo[1];
  m.m2 = hi[2] - lo[2];
  return m;
}

// log of J_m = int_{u_in}^{u} e^{m x} dx (> 0 for u > u_in).
long double log_J(int m, long double u_in, long double u) {
  const long double delta = u - u_in;
  if (m == 0) return std::log(delta);
  if (m > 0) return m * u + std::log(-std::expm1(-m * delta) / m);
  return m * u_in + std::log(std::expm1(m * delta) / m);
}

const std::vector<long double>& log_factorials() {
  static const std::vector<long double> table = [] {
    std::vector<long double> t(1024);
    t[0] = 0.0L;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] + std::log(static_cast<long double>(i));
    return t;
  }();
  return table;
}

struct SeriesMoments {
  std::complex<long double> m0, m1, m2;
  long double tail = 0.0L;
  long double peak = 0.0L;
  int terms = 0;
  bool converged = false;
};

// nu = 0 power series in z of the three moments; every term is formed in
// log space so huge |u| with tiny z (near-axis modes) stays finite.
SeriesMoments series_moments(double z, double u_in, double u, const Direction& d, bool want_all,
                             long double tol, int n_max) {
  using LD = long double;
  SeriesMoments out;
  const auto& lf = log_factorials();
  n_max = std::min<int>(n_max, static_cast<int>(lf.size()) - 3);
  const LD lz2 = std::log(static_cast<LD>(z) / 2.0L);
  const LD lp = d.one_plus_t > 0 ? std::log(static_cast<LD>(d.one_plus_t) / 2.0L) : -INFINITY;
  const LD lm = d.one_minus_t > 0 ? std::log(static_cast<LD>(d.one_minus_t) / 2.0L) : -INFINITY;
  const LD ln2 = std::log(2.0L);
  // log J_m for m in [-(n_max+2), n_max+2], filled on demand
  const int off = n_max + 2;
  std::vector<LD> lj(2 * off + 1, NAN);
  auto LJ = [&](int m) {
    LD& v = lj[m + off];
    if (std::isnan(v)) v = log_J(m, u_in, u);
    return v;
  };
  const std::complex<LD> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  LD prev_block = INFINITY;
  for (int n = 0; n <= n_max; ++n) {
    LD s0 = 0, s1 = 0, s2 = 0, block = 0;
    // (iz)^n/n! sinh^n = i^n (z/2)^n sum_l (-1)^l e^{(n-2l)u} / (l! (n-l)!)
    for (int l = 0; l <= n; ++l) {
      const LD lc = n * lz2 - lf[l] - lf[n - l];
      const LD sg = (l % 2) ? -1 : 1;
      const LD t0 = sg * std::exp(lc + LJ(n - 2 * l));
      s0 += t0;
      block += std::abs(t0);
      if (want_all) {
        const LD t2p = sg * std::exp(lc + lp + LJ(n - 2 * l + 1));
        const LD t2m = sg * std::exp(lc + lm + LJ(n - 2 * l - 1));
        s2 += t2p - t2m;
        block += std::abs(t2p) + std::abs(t2m);
      }
    }
    if (want_all) {
      // (iz)^n/n! sinh^{n+1}
      for (int l = 0; l <= n + 1; ++l) {
        const LD lc = n * lz2 - ln2 + std::log(static_cast<LD>(n + 1)) - lf[l] - lf[n + 1 - l];
        const LD sg = (l % 2) ? -1 : 1;
        const LD t1 = sg * std::exp(lc + LJ(n + 1 - 2 * l));
        s1 += t1;
        block += std::abs(t1);
      }
    }
    const auto ph = ipow[n % 4];
    out.m0 += ph * s0;
    out.m1 += ph * s1;
    out.m2 += ph * s2;
    out.peak = std::max(out.peak, block);
    out.terms = n + 1;
    const LD scale = std::max<LD>(1.0L, std::abs(out.m0) + std::abs(out.m1) + std::abs(out.m2));
    if (n > 3 && block < prev_block && block < tol * scale) {
      const LD ratio = block / prev_block;
      out.tail = ratio < 0.5L ? block * ratio / (1.0L - ratio) : block;
      out.converged = true;
      break;
    }
    prev_block = block;
  }
  return out;
}

// Panel breaks for phi(u) = z sinh u - nu u with at most pi of phase per
// panel; exact inversion for nu = 0, monotone-piece sampling otherwise.
std::vector<double> phi_breaks(double nu, double z, double ua, double ub) {
  if (nu == 0.0) {
    const double sa = std::sinh(ua), sb = std::sinh(ub);
    const double n = std::ceil(z * (sb - sa) / M_PI);
    std::vector<double> br{ua};
    if (n > 1 && n < 1e7) {
      const double step = (sb - sa) / n;
      for (int k = 1; k < static_cast<int>(n); ++k) br.push_back(std::asinh(sa + k * step));
    }
    br.push_back(ub);
    return br;
  }
  std::vector<double> cuts{ua};
  if (z > 0.0 && nu / z >= 1.0) {
    const double us = std::acosh(nu / z);
    for (double c : {-us, us})
      if (c > ua && c < ub) cuts.push_back(c);
  }
  cuts.push_back(ub);
  std::vector<double> br{ua};
  auto ph = [&](double u) { return phase(z, nu, u); };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto piece = quad::phase_breaks(ph, cuts[i], cuts[i + 1], M_PI, 64);
    br.insert(br.end(), piece.begin() + 1, piece.end());
  }
  return br;
}

double phi_variation(double nu, double z, double ua, double ub) {
  if (nu == 0.0) return z * (std::sinh(ub) - std::sinh(ua));
  double var = 0.0, prev = ua;
  std::vector<double> cuts;
  if (z > 0.0 && nu / z >= 1.0) {
    const double us = std::acosh(nu / z);
    for (double c : {-us, us})
      if (c > ua && c < ub) cuts.push_back(c);
  }
  cuts.push_back(ub);
  for (double c : cuts) {
    var += std::abs(phase(z, nu, c) - phase(z, nu, prev));
    prev = c;
  }
  return var;
}

Moments moments_impl(double nu, double z, UWindow w, const Direction& d, const Tol& tol) {
  Moments m;
  if (!(z >= 0.0) || !std::isfinite(z)) throw std::domain_error("z must be finite and >= 0");
  if (w.u_in.inf == 1 || w.u.inf == -1) throw std::domain_error("window endpoints out of order");
  double sign = 1.0;
  if (w.u_in.finite() && w.u.finite() && w.u.value < w.u_in.value) {
    std::swap(w.u_in, w.u);
    sign = -1.0;
  }
  // Far endpoints behave as infinite ones once sinh overflows.
  if (z > 0.0) {
    if (w.u_in.finite() && w.u_in.value < -700.0) w.u_in = Bound::minus_infinity();
    if (w.u.finite() && w.u.value > 700.0) w.u = Bound::plus_infinity();
  }
  if (w.empty()) {
    m.path = "closed-form";
    return m;
  }
  const bool finite = w.u_in.finite() && w.u.finite();

  if (z == 0.0) {
    if (!finite) throw std::domain_error("infinite window at z = 0 diverges");
    m = closed_form_z0(nu, w.u_in.value, w.u.value, d);
  } else if (finite && series_applicable(nu, z, w.u_in.value, w.u.value)) {
    auto s = series_moments(z, w.u_in.value, w.u.value, d, true, 1e-19L, 600);
    m.m0 = cplx(static_cast<double>(s.m0.real()), static_cast<double>(s.m0.imag()));
    m.m1 = cplx(static_cast<double>(s.m1.real()), static_cast<double>(s.m1.imag()));
    m.m2 = cplx(static_cast<double>(s.m2.real()), static_cast<double>(s.m2.imag()));
    m.err = static_cast<double>(s.tail + s.peak * 1e-18L);
    m.converged = s.converged;
    m.path = "series";
  } else {
    if (finite && phi_variation(nu, z, w.u_in.value, w.u.value) <= 25.0 * M_PI) {
      auto e = direct_u(nu, z, d, w.u_in.value, w.u.value, tol);
      m.m0 = e.value[0];
      m.m1 = e.value[1];
      m.m2 = e.value[2];
      m.err = e.error;
      m.evals = e.evals;
      m.converged = e.converged;
      m.path = "quadrature";
    } else {
      const double sigma0 = z < 6.0 ? 6.0 / z : (z < 30.0 ? 1.0 : 30.0 / z);
      const double s_a = w.u_in.finite() ? std::sinh(w.u_in.value) : -INFINITY;
      const double s_b = w.u.finite() ? std::sinh(w.u.value) : INFINITY;
      V3 total;
      auto add = [&](const quad::Estimate<V3>& e, cplx factor) {
        total += e.value * factor;
        m.err += e.error * std::abs(factor);
        m.evals += e.evals;
        if (!e.converged) m.converged = false;
      };
      auto phase_factor = [&](double sigma) { return I * std::polar(1.0, z * sigma) / z; };
      if (s_a < -sigma0) {
        const double hi = std::min(s_b, -sigma0);
        // L(hi) - L(s_a), L(sigma) = -(i e^{i z sigma}/z) Q(sigma), L(-inf) = 0
        add(ray(nu, z, d, hi, tol), -phase_factor(hi));
        if (std::isfinite(s_a)) add(ray(nu, z, d, s_a, tol), phase_factor(s_a));
      }
      if (s_b > sigma0) {
        const double lo = std::max(s_a, sigma0);
        // R(lo) - R(s_b), R(sigma) = (i e^{i z sigma}/z) Q(sigma), R(+inf) = 0
        add(ray(nu, z, d, lo, tol), phase_factor(lo));
        if (std::isfinite(s_b)) add(ray(nu, z, d, s_b, tol), -phase_factor(s_b));
      }
      const double c = std::asinh(sigma0);
      const double ua = w.u_in.finite() ? std::max(w.u_in.value, -c) : -c;
      const double ub = w.u.finite() ? std::min(w.u.value, c) : c;
      if (ub > ua) add(direct_u(nu, z, d, ua, ub, tol), 1.0);
      m.m0 = total[0];
      m.m1 = total[1];
      m.m2 = total[2];
      m.path = "quadrature+rays";
    }
  }
  m.m0 *= sign;
  m.m1 *= sign;
  m.m2 *= sign;
  return m;
}

}  // namespace

bool series_applicable(double nu, double z, double u_in, double u) {
  if (nu != 0.0 || !(z > 0.0) || z > kZSwitch) return false;
  if (!std::isfinite(u_in) || !std::isfinite(u)) return false;
  const double U = std::max(std::abs(u_in), std::abs(u));
  const double log_cosh = U + std::log1p(std::exp(-2.0 * U)) - std::log(2.0);
  return std::log(z) + log_cosh <= std::log(kSeriesConditioning);
}

Moments window_moments(double nu, double z, const UWindow& w, const Direction& dir, const Tol& tol) {
  return moments_impl(nu, z, w, dir, tol);
}

Moments window_moments_direct(double nu, double z, double u_in, double u, const Direction& dir, const Tol& tol) {
  Moments m;
  const double lo = std::min(u_in, u), hi = std::max(u_in, u);
  auto e = direct_u(nu, z, dir, lo, hi, tol);
  const double sign = u >= u_in ? 1.0 : -1.0;
  m.m0 = sign * e.value[0];
  m.m1 = sign * e.value[1];
  m.m2 = sign * e.value[2];
  m.err = e.error;
  m.evals = e.evals;
  m.converged = e.converged;
  m.path = "quadrature";
  return m;
}

cplx incomplete_macdonald_dxi(double nu, double z, const UWindow& w) {
  const double pref = 0.5 * std::exp(-M_PI * nu / 2.0);
  auto term = [&](const Bound& b) { return b.finite() ? std::polar(1.0, phase(z, nu, b.value)) : cplx{}; };
  if (w.empty()) return {};
  return pref * (term(w.u_in) - term(w.u));
}

SpecialValue special_values(double nu, double z, const UWindow& w, const Direction& dir, const Tol& tol) {
  SpecialValue sv;
  const Moments m = moments_impl(nu, z, w, dir, tol);
  const double pref = 0.5 * std::exp(-M_PI * nu / 2.0);
  sv.path = m.path;
  sv.K = {pref * m.m0, pref * m.err, m.converged};
  sv.Kprime = {I * pref * m.m1, pref * m.err, m.converged};
  sv.Kdot = {incomplete_macdonald_dxi(nu, z, w), 0.0, true};
  cplx S = I * pref * m.m2;
  double serr = pref * m.err;
  if (nu != 0.0) {
    if (z == 0.0) throw std::domain_error("S is undefined at z = 0 with nu != 0");
    S -= I * (nu * dir.t / z) * sv.K.value;
    serr += std::abs(nu * dir.t / z) * sv.K.err;
  }
  sv.S = {S, serr, m.converged};
  return sv;
}

Value incomplete_macdonald(double nu, double z, const UWindow& w, const Tol& tol) {
  return special_values(nu, z, w, Direction{}, tol).K;
}

Value incomplete_macdonald_dz(double nu, double z, const UWindow& w, const Tol& tol) {
  return special_values(nu, z, w, Direction{}, tol).Kprime;
}

Value s_combination(double nu, double z, const Direction& dir, const UWindow& w, const Tol& tol) {
  return special_values(nu, z, w, dir, tol).S;
}

Value s_combination(double nu, double z, double k_par_over_k, const UWindow& w, const Tol& tol) {
  return s_combination(nu, z, Direction::from_ratio(k_par_over_k), w, tol);
}

SeriesResult k0_series(double z, double u_in, double u, double tol, int n_max) {
  if (!(z >= 0.0)) throw std::domain_error("k0_series needs z >= 0");
  if (!std::isfinite(u_in) || !std::isfinite(u)) throw std::domain_error("k0_series needs a finite window");
  SeriesResult r;
  if (u == u_in) return r;
  if (z == 0.0) {
    r.value = 0.5 * (u - u_in);
    r.terms = 1;
    return r;
  }
  const double sign = u >= u_in ? 1.0 : -1.0;
  auto s = series_moments(z, std::min(u_in, u), std::max(u_in, u), Direction{}, false,
                          static_cast<long double>(tol), n_max);
  if (!s.converged) throw std::runtime_error("k0_series: not converged within n_max terms");
  r.value = 0.5 * sign * cplx(static_cast<double>(s.m0.real()), static_cast<double>(s.m0.imag()));
  r.tail_bound = 0.5 * static_cast<double>(s.tail + s.peak * 1e-18L);
  r.terms = s.terms;
  return r;
}

namespace {

cplx expm1_over(cplx w, double a) {
  // (e^{w a} - 1)/w with the w -> 0 limit a
  const cplx x = w * a;
  if (std::abs(x) < 1e-5) return a * (1.0 + x / 2.0 + x * x / 6.0);
  return (std::exp(x) - 1.0) / w;
}

}  // namespace

EpsilonValue epsilon_incomplete(cplx nu, double a, cplx z, const Tol& tol) {
  EpsilonValue out;
  out.path = "quadrature";
  if (a == 0.0) return out;
  auto expo = [&](double t) { return z * std::sinh(t) - nu * t; };
  auto amp = [&](double t) { return cplx(std::exp(expo(t).real()), 0.0); };
  auto ph = [&](double t) { return expo(t).imag(); };
  quad::QuadSpec spec;
  spec.abs_tol = tol.abs;
  spec.rel_tol = tol.rel;
  spec.max_evals = tol.max_evals;
  auto e = quad::integrate_oscillatory(amp, ph, 0.0, a, spec);
  out.value = e.value / (M_PI * I);
  out.err = e.error / M_PI;
  return out;
}

EpsilonValue epsilon_series(cplx nu, double a, cplx z, double tol, int n_max) {
  EpsilonValue out;
  out.path = "series";
  if (a == 0.0) return out;
  cplx sum = 0.0, zpow_over_fact = 1.0;
  double prev = INFINITY;
  for (int n = 0; n <= n_max; ++n) {
    cplx Rn = 0.0;
    double binom = 1.0;  // C(n, l)
    for (int l = 0; l <= n; ++l) {
      if (l > 0) binom *= static_cast<double>(n - l + 1) / l;
      const cplx w = static_cast<double>(n - 2 * l) - nu;
      Rn += ((l % 2) ? -binom : binom) * expm1_over(w, a);
    }
    Rn *= std::ldexp(1.0, -n) / (I * M_PI);
    out.R.push_back(Rn);
    const cplx term = Rn * zpow_over_fact;
    sum += term;
    const double mag = std::abs(term);
    if (n > 3 && mag < prev && mag <= tol * std::max(1.0, std::abs(sum))) {
      out.err = mag;
      out.value = sum;
      return out;
    }
    prev = mag;
    zpow_over_fact *= z / static_cast<double>(n + 1);
  }
  throw std::runtime_error("epsilon_series: not converged within n_max terms");
}

cplx epsilon_asymptotic(cplx nu, double a, cplx z) {
  const double ch = std::cosh(a), th = std::tanh(a);
  const cplx E = std::exp(z * std::sinh(a) - nu * a);
  const cplx pi_i = M_PI * I;
  const cplx t1 = (E / ch - 1.0) / (pi_i * z);
  const cplx t2 = (E / (ch * ch) * (nu + th) - nu) / (pi_i * z * z);
  const cplx t3 = (E / (ch * ch * ch) * (nu * nu - 1.0 + 3.0 * nu * th + 3.0 * th * th) - (nu * nu - 1.0)) /
                  (pi_i * z * z * z);
  return t1 + t2 + t3;
}

namespace {

double decaying_macdonald(double nu, double z, bool derivative, const Tol& tol) {
  if (!(z > 0.0)) throw std::domain_error("Macdonald function needs z > 0");
  // e^{-z cosh s} = e^{-z} e^{-z (cosh s - 1)}; cut where the second factor < e^{-60}.
  const double S = std::acosh(1.0 + 60.0 / z);
  auto f = [&](double s) {
    const double w = std::exp(-z * (std::cosh(s) - 1.0)) * std::cos(nu * s);
    return derivative ? -std::cosh(s) * w : w;
  };
  std::vector<double> br;
  if (nu != 0.0) {
    br = quad::phase_breaks([&](double s) { return nu * s; }, 0.0, S);
  } else {
    br = {0.0, 0.25 * S, 0.5 * S, S};
  }
  auto e = quad::adaptive(f, br, tol.abs * std::exp(z), tol.rel, tol.max_evals);
  return e.value * std::exp(-z);
}

}  // namespace

double macdonald_imag_order(double nu, double z, const Tol& tol) { return decaying_macdonald(nu, z, false, tol); }

double macdonald_imag_order_dz(double nu, double z, const Tol& tol) { return decaying_macdonald(nu, z, true, tol); }

}  // namespace semirad::specfun
