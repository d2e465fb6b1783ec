#include "semirad/radiation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace semirad::radiation {

namespace {

constexpr cplx I{0.0, 1.0};

specfun::Tol point_tol(const quad::QuadSpec& spec) {
  specfun::Tol t;
  t.rel = std::max(1e-14, 1e-2 * spec.rel_tol);
  t.abs = t.rel;
  return t;
}

void require_finite(const RapidityWindow& w, const char* what) {
  if (!w.eta_in.finite() || !w.eta.finite())
    throw DivergenceError(std::string(what) + ": the window must be finite");
}

void require_parallel(const Source& src, const char* what) {
  if (!src.parallel()) throw std::invalid_argument(std::string(what) + " needs u0_perp = 0");
}

// sin^2(theta/2) e^x - cos^2(theta/2) e^{-x} = sinh x - cos(theta) cosh x,
// without the cancellation near theta = 0.
double g_stable(double theta, double x) {
  const double s = std::sin(0.5 * theta), c = std::cos(0.5 * theta);
  return s * s * std::exp(x) - c * c * std::exp(-x);
}

// Phase of the eta' integrals: (c rho/eps)(|k| sinh eta' - k_par cosh eta') - nu eta'.
struct EtaPhase {
  double scale, theta, nu;
  double operator()(double x) const { return scale * g_stable(theta, x) - nu * x; }
};

EtaPhase eta_phase(const Source& src, const WaveVector& k) {
  const ReducedMode m = reduce_mode(src, k);
  return {src.c() * src.rho() * k.k0() / src.eps(), k.theta(), m.nu};
}

// Quadrature of (1, sinh) e^{i phase} over a finite eta' window.
quad::Estimate<quad::CVec<2>> eta_integrals(const std::function<double(double)>& phi, double a, double b,
                                            const specfun::Tol& tol) {
  const double sign = b >= a ? 1.0 : -1.0;
  const double lo = std::min(a, b), hi = std::max(a, b);
  auto f = [&](double x) {
    const cplx e = std::polar(1.0, phi(x));
    quad::CVec<2> v;
    v[0] = e;
    v[1] = std::sinh(x) * e;
    return v;
  };
  auto est = quad::adaptive(f, quad::phase_breaks(phi, lo, hi, M_PI, 1024), tol.abs, tol.rel, tol.max_evals);
  est.value *= sign;
  return est;
}

double density_coefficient(const Source& src) {
  const double r = src.cfg.q * src.c() / (M_PI * src.eps());
  return r * r;
}

// |I|^2 - |n.I|^2 for I = (u_perp/c I1, rho I2).
double transverse_norm(const Source& src, const WaveVector& k, cplx I1, cplx I2) {
  const double c = src.c();
  const std::array<cplx, 3> v{src.cfg.u0_perp[0] / c * I1, src.cfg.u0_perp[1] / c * I1, src.rho() * I2};
  const double k0 = k.k0();
  const std::array<double, 3> n{k.kx / k0, k.ky / k0, k.kpar / k0};
  const cplx nv = n[0] * v[0] + n[1] * v[1] + n[2] * v[2];
  return std::max(0.0, std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]) - std::norm(nv));
}

// nu/z = (k_perp . u_perp)/(c rho |k_perp|) and the squared cross product
// (|u_perp| sin vartheta / c)^2 = (1 - nu^2/z^2) rho^2 - 1, evaluated without
// the subtraction.
struct Transverse {
  double nu_over_z;
  double bracket;
};

Transverse transverse(const Source& src, const WaveVector& k) {
  const double kp = k.kperp(), c = src.c();
  const double dot = (k.kx * src.cfg.u0_perp[0] + k.ky * src.cfg.u0_perp[1]) / (kp * c);
  const double cross = (k.kx * src.cfg.u0_perp[1] - k.ky * src.cfg.u0_perp[0]) / (kp * c);
  return {dot / src.rho(), cross * cross};
}

struct ModeMoments {
  ReducedMode mode;
  specfun::Direction dir;
  specfun::Moments m;
  cplx S;  // e^{pi nu/2} S = (i/2)(m2 - (nu t/z) m0)
  double nu_over_z;
  double bracket;
};

ModeMoments mode_moments(const Source& src, const WaveVector& k, const RapidityWindow& w, const specfun::Tol& tol) {
  ModeMoments r;
  r.mode = reduce_mode(src, k);
  r.dir = specfun::Direction::from_k(k.kperp(), k.kpar);
  r.m = specfun::window_moments(r.mode.nu, r.mode.z, shift_window(w, r.mode.xi), r.dir, tol);
  const Transverse tr = transverse(src, k);
  r.nu_over_z = tr.nu_over_z;
  r.bracket = tr.bracket;
  r.S = 0.5 * I * (r.m.m2 - r.nu_over_z * r.dir.t * r.m.m0);
  return r;
}

// z sinh u - nu u at u = eta - xi, with z sinh u taken from the stable form.
double phi_at(const Source& src, const WaveVector& k, const ReducedMode& mode, double eta) {
  const double zs = src.c() * src.rho() * k.k0() / src.eps() * g_stable(k.theta(), eta);
  return zs - mode.nu * (eta - mode.xi);
}

// One endpoint term of dW/dt (upper) or -dW/dt_in (lower); e^{pi nu/2} is
// absorbed into the moments.
double endpoint_density(const Source& src, const WaveVector& k, const ModeMoments& mm, double eta) {
  const double rho = src.rho();
  const cplx e = std::polar(1.0, phi_at(src, k, mm.mode, eta));
  const cplx K = 0.5 * mm.m.m0;
  const double kp_over_k = k.kperp() / k.k0();
  const double sinh_xi = k.kpar / k.kperp();
  const double first = mm.bracket * std::real(e * std::conj(K));
  const double second =
      rho * rho * kp_over_k * (std::sinh(eta) - mm.nu_over_z * sinh_xi) * std::real(I * e * std::conj(mm.S));
  const double pre = (src.cfg.q * src.c() / M_PI) * (src.cfg.q * src.c() / M_PI) / (src.eps() * rho * std::cosh(eta));
  return pre * (first + second);
}

// On the axis only the transverse part (u_perp/c) I1 radiates.
// Same form at either endpoint (the lower one enters dW/dt_in with a minus sign).
double on_axis_rate(const Source& src, const WaveVector& k, const RapidityWindow& w, double eta,
                    const specfun::Tol& tol) {
  if (src.parallel()) return 0.0;
  require_finite(w, "on-axis rate density");
  const EtaPhase phi = eta_phase(src, k);
  const auto est = eta_integrals(phi, w.eta_in.value, w.eta.value, tol);
  const double up = src.d.u_perp / src.c();
  const double coeff = 0.25 * density_coefficient(src) * up * up;
  const double deta_dt = src.eps() / (src.rho() * std::cosh(eta));
  return coeff * 2.0 * std::real(std::conj(est.value[0]) * std::polar(1.0, phi(eta))) * deta_dt;
}

quad::KSpaceResult k_integral(const Source& src, const quad::KIntegrand& f, const quad::QuadSpec& spec,
                              quad::KGrid grid) {
  return quad::integrate_k_space(f, grid_for(src, grid), spec);
}

// int_0^inf f(z) dz for the Macdonald checks; the integrands decay like e^{-z}.
double macdonald_moment(const std::function<double(double)>& f, double& err) {
  const std::vector<double> br{0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0};
  auto est = quad::adaptive(f, br, 1e-15, 1e-12, 200'000);
  err = est.error;
  return est.value;
}

}  // namespace

AmplitudeVector amplitude_integrals(const Source& src, const WaveVector& k, const RapidityWindow& w,
                                    const specfun::Tol& tol) {
  require_field(src);
  AmplitudeVector out;
  out.path = "special-functions";
  if (w.empty()) return out;
  if (!(k.kperp() > 0.0)) throw std::domain_error("amplitude_integrals: on-axis mode, use the eta' route");
  const ReducedMode mode = reduce_mode(src, k);
  const auto dir = specfun::Direction::from_k(k.kperp(), k.kpar);
  const auto sv = specfun::special_values(mode.nu, mode.z, shift_window(w, mode.xi), dir, tol);
  const cplx pre = 2.0 * std::polar(std::exp(M_PI * mode.nu / 2.0), -mode.nu * mode.xi);
  const double cosh_xi = k.k0() / k.kperp();
  const double nu_t_over_z = transverse(src, k).nu_over_z * dir.t;
  out.I1 = pre * sv.K.value;
  out.I2 = pre * cosh_xi * (nu_t_over_z * sv.K.value - I * sv.S.value);
  out.err = std::abs(pre) * (sv.K.err + cosh_xi * (std::abs(nu_t_over_z) * sv.K.err + sv.S.err));
  out.y2_sum = 0.25 * density_coefficient(src) * transverse_norm(src, k, out.I1, out.I2) /
               (src.units.hbar * src.c() * k.k0());
  return out;
}

AmplitudeVector amplitude_integrals_direct(const Source& src, const WaveVector& k, const RapidityWindow& w,
                                           const specfun::Tol& tol) {
  require_field(src);
  require_finite(w, "amplitude_integrals_direct");
  AmplitudeVector out;
  out.path = "eta-quadrature";
  if (w.empty() || k.k0() == 0.0) return out;
  const auto est = eta_integrals(eta_phase(src, k), w.eta_in.value, w.eta.value, tol);
  out.I1 = est.value[0];
  out.I2 = est.value[1];
  out.err = est.error;
  out.y2_sum = 0.25 * density_coefficient(src) * transverse_norm(src, k, out.I1, out.I2) /
               (src.units.hbar * src.c() * k.k0());
  return out;
}

DistributionValue energy_density(const Source& src, const WaveVector& k, const RapidityWindow& w,
                                 const specfun::Tol& tol) {
  require_field(src);
  if (w.empty() || k.k0() == 0.0) return {};
  if (k.kperp() == 0.0) {
    const auto a = amplitude_integrals_direct(src, k, w, tol);
    return {a.y2_sum * src.units.hbar * src.c() * k.k0(), 0.25 * density_coefficient(src) * 2.0 * a.err * std::abs(a.I1)};
  }
  const ModeMoments mm = mode_moments(src, k, w, tol);
  const double rho = src.rho();
  const double K2 = 0.25 * std::norm(mm.m.m0);
  const double S2 = std::norm(mm.S);
  const double value = density_coefficient(src) * (mm.bracket * K2 + rho * rho * S2);
  const double dS = 0.5 * mm.m.err * (1.0 + std::abs(mm.nu_over_z * mm.dir.t));
  const double err =
      density_coefficient(src) * (mm.bracket * std::abs(mm.m.m0) * 0.5 * mm.m.err + rho * rho * 2.0 * std::sqrt(S2) * dS);
  return {value, err};
}

DistributionValue energy_density_parallel(const Source& src, const WaveVector& k, const RapidityWindow& w,
                                          const specfun::Tol& tol) {
  require_parallel(src, "energy_density_parallel");
  if (w.empty() || k.kperp() == 0.0) return {};
  const auto a = amplitude_integrals_direct(src, k, w, tol);
  const double r = k.kperp() / k.k0();
  const double pre = 0.25 * density_coefficient(src) * r * r;
  return {pre * std::norm(a.I2), pre * 2.0 * std::abs(a.I2) * a.err};
}

specfun::Value i2_theta(double theta, double Lambda, const RapidityWindow& w, const specfun::Tol& tol) {
  require_finite(w, "i2_theta");
  if (w.empty()) return {};
  auto phi = [theta, Lambda](double x) { return Lambda * g_stable(theta, x); };
  const auto est = eta_integrals(phi, w.eta_in.value, w.eta.value, tol);
  return {est.value[1], est.error, est.converged};
}

cplx stationary_phase_I2(double theta, double Lambda, const RapidityWindow& w) {
  require_finite(w, "stationary_phase_I2");
  if (!(Lambda > 0.0)) throw std::domain_error("stationary_phase_I2 needs Lambda > 0");
  const double ct = std::cos(theta);
  auto term = [&](double x) {
    const double den = std::cosh(x) - ct * std::sinh(x);
    if (!(den > 0.0)) throw std::logic_error("stationary_phase_I2: non-positive denominator");
    return std::sinh(x) / den * std::polar(1.0, Lambda * g_stable(theta, x));
  };
  return (term(w.eta.value) - term(w.eta_in.value)) / (I * Lambda);
}

DistributionValue spectral_angular_energy(const Source& src, double k0, double theta, const RapidityWindow& w,
                                          const specfun::Tol& tol) {
  require_field(src);
  require_parallel(src, "spectral_angular_energy");
  const double Lambda = src.c() * k0 / src.eps();
  const auto v = i2_theta(theta, Lambda, w, tol);
  const double s = std::sin(theta);
  const double pre = 0.25 * density_coefficient(src) * s * s;
  return {pre * std::norm(v.value), pre * 2.0 * std::abs(v.value) * v.err};
}

double asymptotic_distribution(const Source& src, double k0, double theta, const RapidityWindow& w) {
  require_field(src);
  require_finite(w, "asymptotic_distribution");
  if (w.eta_in.value != 0.0) throw std::invalid_argument("asymptotic_distribution assumes eta_in = 0");
  const double eta = w.eta.value;
  const double den = std::cosh(eta) - std::cos(theta) * std::sinh(eta);
  const double r = src.cfg.q / (2.0 * M_PI * k0) * std::sin(theta) * std::sinh(eta) / den;
  return r * r;
}

quad::KGrid grid_for(const Source& src, quad::KGrid grid) {
  require_field(src);
  grid.scale = src.eps() / (src.c() * src.rho());
  if (src.parallel()) grid.azimuthal_symmetry = true;
  return grid;
}

EnergyResult total_energy(const Source& src, const RapidityWindow& w, const quad::QuadSpec& spec, quad::KGrid grid,
                          EnergyRoute route) {
  require_field(src);
  if (!w.eta_in.finite() || !w.eta.finite())
    throw DivergenceError("classical divergence: the total energy over an infinite window does not exist");
  EnergyResult out;
  out.route = route;
  if (w.empty()) return out;
  const auto tol = point_tol(spec);
  quad::KIntegrand f;
  if (route == EnergyRoute::parallel) {
    require_parallel(src, "the parallel energy route");
    f = [&](const WaveVector& k) { return energy_density_parallel(src, k, w, tol).value; };
  } else {
    f = [&](const WaveVector& k) { return energy_density(src, k, w, tol).value; };
  }
  out.k = k_integral(src, f, spec, grid);
  out.W = out.k.value;
  out.error = out.k.error;
  return out;
}

EnergyResult photon_number_integral(const Source& src, const RapidityWindow& w, const quad::QuadSpec& spec,
                                    quad::KGrid grid) {
  require_field(src);
  if (!w.eta_in.finite() || !w.eta.finite())
    throw DivergenceError("the mean photon number over an infinite window does not exist");
  EnergyResult out;
  if (w.empty()) return out;
  quad::QuadSpec s = spec;
  s.cutoff.rel_change = std::min(s.cutoff.rel_change, 1e-5);
  const auto tol = point_tol(s);
  const double hc = src.units.hbar * src.c();
  auto f = [&](const WaveVector& k) { return energy_density(src, k, w, tol).value / (hc * k.k0()); };
  out.k = k_integral(src, f, s, grid);
  out.W = out.k.value;
  out.error = out.k.error;
  return out;
}

std::string to_string(RateVariant v) {
  switch (v) {
    case RateVariant::general: return "general";
    case RateVariant::halfinfinite: return "halfinfinite";
    case RateVariant::parallel: return "parallel";
    case RateVariant::symmetric: return "symmetric";
    case RateVariant::symmetric_parallel: return "symmetric-parallel";
    case RateVariant::asymptotic: return "asymptotic";
    case RateVariant::classical_nr: return "classical-nr";
  }
  return "unknown";
}

double rate_density(const Source& src, const WaveVector& k, const RapidityWindow& w, const specfun::Tol& tol) {
  require_field(src);
  if (!w.eta.finite()) throw std::domain_error("rate_density: the upper endpoint must be finite");
  if (w.empty() || k.k0() == 0.0) return 0.0;
  if (k.kperp() == 0.0) return on_axis_rate(src, k, w, w.eta.value, tol);
  return endpoint_density(src, k, mode_moments(src, k, w, tol), w.eta.value);
}

double rate_density_lower(const Source& src, const WaveVector& k, const RapidityWindow& w, const specfun::Tol& tol) {
  require_field(src);
  if (!w.eta_in.finite()) throw std::domain_error("rate_density_lower: the lower endpoint must be finite");
  if (w.empty() || k.k0() == 0.0) return 0.0;
  if (k.kperp() == 0.0) return on_axis_rate(src, k, w, w.eta_in.value, tol);
  return endpoint_density(src, k, mode_moments(src, k, w, tol), w.eta_in.value);
}

double rate_density_parallel(const Source& src, const WaveVector& k, double eta, const specfun::Tol& tol) {
  require_parallel(src, "rate_density_parallel");
  if (k.kperp() == 0.0) return 0.0;
  const ReducedMode mode = reduce_mode(src, k);
  const RapidityWindow w{Bound::minus_infinity(), Bound::at(eta)};
  const auto m = specfun::window_moments(0.0, mode.z, shift_window(w, mode.xi), specfun::Direction{}, tol);
  const cplx Kp = 0.5 * I * m.m1;
  const double phi = phi_at(src, k, mode, eta);
  const double x = std::cos(phi) * Kp.imag() - std::sin(phi) * Kp.real();
  const double qc = src.cfg.q * src.c();
  return qc * qc / (M_PI * M_PI * src.eps()) * std::tanh(eta) * k.kperp() / k.k0() * x;
}

double rate_density_symmetric_parallel(const Source& src, const WaveVector& k, const RapidityWindow& w,
                                       const specfun::Tol& tol) {
  require_parallel(src, "rate_density_symmetric_parallel");
  require_finite(w, "rate_density_symmetric_parallel");
  if (w.empty() || k.kperp() == 0.0) return 0.0;
  const ModeMoments mm = mode_moments(src, k, w, tol);
  double sum = 0.0;
  for (double eta : {w.eta.value, w.eta_in.value}) {
    const double phi = phi_at(src, k, mm.mode, eta);
    sum += std::tanh(eta) * (std::cos(phi) * mm.S.imag() - std::sin(phi) * mm.S.real());
  }
  const double qc = src.cfg.q * src.c();
  return qc * qc / (2.0 * src.eps() * M_PI * M_PI) * k.kperp() / k.k0() * sum;
}

RateResult rate_general(const Source& src, const RapidityWindow& w, const quad::QuadSpec& spec, quad::KGrid grid) {
  require_field(src);
  if (!w.eta.finite()) throw std::domain_error("rate_general: the upper endpoint must be finite");
  RateResult out;
  out.window = w;
  out.variant = w.eta_in.finite() ? RateVariant::general : RateVariant::halfinfinite;
  if (w.empty()) return out;
  const auto tol = point_tol(spec);
  out.k = k_integral(src, [&](const WaveVector& k) { return rate_density(src, k, w, tol); }, spec, grid);
  out.w = out.k.value;
  out.error = out.k.error;
  return out;
}

RateResult rate_halfinfinite(const Source& src, double t, const quad::QuadSpec& spec, quad::KGrid grid) {
  return rate_general(src, {Bound::minus_infinity(), Bound::at(eta_of_t(src, t))}, spec, grid);
}

RateResult rate_parallel(const Source& src, double t, const quad::QuadSpec& spec, quad::KGrid grid) {
  require_parallel(src, "rate_parallel");
  RateResult out;
  const double eta = eta_of_t(src, t);
  out.window = {Bound::minus_infinity(), Bound::at(eta)};
  out.variant = RateVariant::parallel;
  const auto tol = point_tol(spec);
  out.k = k_integral(src, [&](const WaveVector& k) { return rate_density_parallel(src, k, eta, tol); }, spec, grid);
  out.w = out.k.value;
  out.error = out.k.error;
  return out;
}

RateResult rate_symmetric(const Source& src, double T, const quad::QuadSpec& spec, quad::KGrid grid,
                          bool parallel_form) {
  require_field(src);
  if (!(T >= 0.0)) throw std::invalid_argument("rate_symmetric needs T >= 0");
  if (std::isinf(T))
    throw DivergenceError("rate_symmetric: T = infinity has no pointwise k-space integrand; use rate_asymptotic");
  RateResult out;
  out.window = to_rapidity(src, symmetric_window(T));
  out.variant = parallel_form ? RateVariant::symmetric_parallel : RateVariant::symmetric;
  if (T == 0.0) return out;
  const auto tol = point_tol(spec);
  const RapidityWindow w = out.window;
  quad::KIntegrand f;
  if (parallel_form) {
    f = [&](const WaveVector& k) { return rate_density_symmetric_parallel(src, k, w, tol); };
  } else {
    f = [&](const WaveVector& k) {
      if (k.kperp() == 0.0) return 0.5 * (rate_density(src, k, w, tol) + rate_density_lower(src, k, w, tol));
      const ModeMoments mm = mode_moments(src, k, w, tol);
      return 0.5 * (endpoint_density(src, k, mm, w.eta.value) + endpoint_density(src, k, mm, w.eta_in.value));
    };
  }
  out.k = k_integral(src, f, spec, grid);
  out.w = out.k.value;
  out.error = out.k.error;
  return out;
}

RateResult rate_asymptotic(const Source& src) {
  require_field(src);
  RateResult out;
  out.variant = RateVariant::asymptotic;
  out.window = {Bound::minus_infinity(), Bound::plus_infinity()};
  const double q = src.cfg.q, a = src.d.a, c = src.c();
  out.w = 2.0 * q * q * a * a / (c * c * c);
  const specfun::Tol tight{0.0, 1e-12, 1'000'000};
  out.check_integral = macdonald_moment(
      [&](double z) { return z == 0.0 ? 0.0 : -specfun::macdonald_imag_order_dz(0.0, z, tight) * z * z; },
      out.check_error);
  return out;
}

RateResult rate_classical_NR(const Source& src) {
  require_field(src);
  require_parallel(src, "rate_classical_NR");
  RateResult out;
  out.variant = RateVariant::classical_nr;
  out.window = {Bound::minus_infinity(), Bound::plus_infinity()};
  const specfun::Tol tight{0.0, 1e-12, 1'000'000};
  out.check_integral = macdonald_moment(
      [&](double z) {
        if (z == 0.0) return 0.0;
        const double k1 = specfun::macdonald_imag_order_dz(0.0, z, tight);
        return k1 * k1 * z * z;
      },
      out.check_error);
  const double r = src.cfg.q * src.eps() / M_PI;
  out.w = r * r / src.c() * 2.0 * M_PI * out.check_integral;
  out.error = r * r / src.c() * 2.0 * M_PI * out.check_error;
  return out;
}

double dw_cl(const Source& src, double z, double vartheta) {
  require_field(src);
  if (!(z > 0.0)) throw std::domain_error("dw_cl needs z > 0");
  const double rho = src.rho(), up = src.d.u_perp / src.c();
  const double nu = z * up * std::cos(vartheta) / rho;
  const double sv = up * std::sin(vartheta);
  const double K = specfun::macdonald_imag_order(nu, z), Kp = specfun::macdonald_imag_order_dz(nu, z);
  const double r = src.cfg.q * src.eps() / (M_PI * rho * rho);
  return r * r * std::exp(M_PI * nu) / src.c() * (sv * sv * K * K + rho * rho * Kp * Kp) * z * z;
}

double delta_parameter(double theta, const RapidityWindow& w) {
  require_finite(w, "delta_parameter");
  const double e = w.eta.value, e0 = w.eta_in.value;
  return std::sinh(e) - std::sinh(e0) - (std::cosh(e) - std::cosh(e0)) * std::cos(theta);
}

double rate_spectral_angular(const Source& src, double k0, double theta, const RapidityWindow& w,
                             const specfun::Tol& tol) {
  require_field(src);
  require_parallel(src, "rate_spectral_angular");
  const double Lambda = src.c() * k0 / src.eps();
  const auto v = i2_theta(theta, Lambda, w, tol);
  const double eta = w.eta.value, s = std::sin(theta);
  const double qc = src.cfg.q * src.c() / M_PI;
  return qc * qc / (2.0 * src.eps()) * s * s * std::tanh(eta) *
         std::real(v.value * std::polar(1.0, -Lambda * g_stable(theta, eta)));
}

double rate_spectral_angular_asymptotic(const Source& src, double k0, double theta, const RapidityWindow& w) {
  require_field(src);
  require_parallel(src, "rate_spectral_angular_asymptotic");
  const double Lambda = src.c() * k0 / src.eps();
  const double ti = std::tanh(w.eta_in.value), s = std::sin(theta);
  const double q = src.cfg.q;
  return q * q * src.c() / (2.0 * M_PI * M_PI * k0) * s * s * std::tanh(w.eta.value) * ti /
         (1.0 - ti * std::cos(theta)) * std::sin(Lambda * delta_parameter(theta, w));
}

Grid2D figure_grid(const Source& src, GridQuantity what, const RapidityWindow& w, double kmax, int nodes,
                   int threads, const specfun::Tol& tol) {
  require_parallel(src, "figure_grid");
  require_finite(w, "figure_grid");
  if (nodes < 2 || !(kmax > 0.0)) throw std::invalid_argument("figure_grid needs nodes >= 2 and kmax > 0");
  Grid2D g;
  for (int i = 0; i < nodes; ++i) {
    const double x = -kmax + 2.0 * kmax * i / (nodes - 1);
    g.kx.push_back(x);
    g.kpar.push_back(x);
  }
  g.value.assign(static_cast<std::size_t>(nodes) * nodes, 0.0);
  quad::parallel_for(nodes, threads, [&](std::size_t ip) {
    for (int ix = 0; ix < nodes; ++ix) {
      const double kx = g.kx[ix], kz = g.kpar[ip];
      const double k0 = std::hypot(kx, kz), theta = std::atan2(std::abs(kx), kz);
      double v = std::numeric_limits<double>::quiet_NaN();  // direction-dependent limit at k = 0
      if (k0 > 0.0) {
        switch (what) {
          case GridQuantity::energy: v = spectral_angular_energy(src, k0, theta, w, tol).value; break;
          case GridQuantity::energy_asymptotic: v = asymptotic_distribution(src, k0, theta, w); break;
          case GridQuantity::rate: v = rate_spectral_angular(src, k0, theta, w, tol); break;
        }
      }
      g.value[ip * nodes + ix] = v;
    }
  });
  return g;
}

}  // namespace semirad::radiation
