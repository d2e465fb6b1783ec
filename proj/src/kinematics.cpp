#include "semirad/kinematics.hpp"

#include <cmath>

namespace semirad {

namespace {

// s(t) = eps t + u_par/c; the longitudinal proper velocity over c.
double s_of_t(const Source& src, double t) { return src.eps() * t + src.cfg.u0_par / src.c(); }

}  // namespace

Trajectory trajectory(const Source& src, double t) {
  require_field(src);
  const double c = src.c(), eps = src.eps(), rho = src.rho();
  const double s = s_of_t(src, t), s0 = src.cfg.u0_par / c;
  const double gamma = std::hypot(rho, s), gamma0 = std::hypot(rho, s0);
  const double drift = std::asinh(s / rho) - std::asinh(s0 / rho);

  Trajectory tr;
  tr.beta = {src.cfg.u0_perp[0] / (c * gamma), src.cfg.u0_perp[1] / (c * gamma), s / gamma};
  tr.r = {src.cfg.r0[0] + src.cfg.u0_perp[0] / eps * drift,
          src.cfg.r0[1] + src.cfg.u0_perp[1] / eps * drift,
          src.cfg.r0[2] + c / eps * (gamma - gamma0)};
  return tr;
}

double eta_of_t(const Source& src, double t) {
  require_field(src);
  return std::asinh(s_of_t(src, t) / src.rho());
}

double t_of_eta(const Source& src, double eta) {
  require_field(src);
  return (src.rho() * std::sinh(eta) - src.cfg.u0_par / src.c()) / src.eps();
}

RapidityWindow to_rapidity(const Source& src, const TimeWindow& w) {
  auto map = [&](const Bound& b) { return b.finite() ? Bound::at(eta_of_t(src, b.value)) : b; };
  require_field(src);
  return {map(w.t_in), map(w.t)};
}

UWindow shift_window(const RapidityWindow& w, double xi) {
  auto map = [&](const Bound& b) { return b.finite() ? Bound::at(b.value - xi) : b; };
  return {map(w.eta_in), map(w.eta)};
}

TimeWindow symmetric_window(double T) {
  if (std::isinf(T)) return {Bound::minus_infinity(), Bound::plus_infinity()};
  return {Bound::at(-0.5 * T), Bound::at(0.5 * T)};
}

ReducedMode reduce_mode(const Source& src, const WaveVector& k) {
  require_field(src);
  const double c = src.c(), eps = src.eps(), rho = src.rho();
  const double kp = k.kperp();
  ReducedMode m;
  m.z = c * rho * kp / eps;
  m.nu = (k.kx * src.cfg.u0_perp[0] + k.ky * src.cfg.u0_perp[1]) / eps;
  m.Lambda = c * c * k.k0() / src.d.a;
  if (kp > 0.0) {
    m.xi = std::asinh(k.kpar / kp);
  } else if (k.kpar != 0.0) {
    m.on_axis = true;
    m.xi = std::copysign(std::numeric_limits<double>::infinity(), k.kpar);
  }
  return m;
}

std::array<double, 2> kperp_kpar_from(const Source& src, double z, double xi) {
  const double scale = src.eps() / (src.c() * src.rho());
  return {z * scale, z * std::sinh(xi) * scale};
}

}  // namespace semirad
