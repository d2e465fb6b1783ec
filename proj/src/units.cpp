#include "semirad/units.hpp"

#include <cmath>

namespace semirad {

namespace {

void check_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw ConfigError(std::string(name) + " must be finite");
}

}  // namespace

DerivedConstants derive_constants(const SourceConfig& cfg, const UnitSystem& units) {
  check_finite(cfg.q, "q");
  check_finite(cfg.m, "m");
  check_finite(cfg.E_field, "E");
  check_finite(cfg.u0_perp[0], "u0_perp_x");
  check_finite(cfg.u0_perp[1], "u0_perp_y");
  check_finite(cfg.u0_par, "u0_par");
  for (double r : cfg.r0) check_finite(r, "r0");
  if (!(units.c > 0.0) || !std::isfinite(units.c)) throw ConfigError("c must be positive");
  if (!(units.hbar > 0.0) || !std::isfinite(units.hbar)) throw ConfigError("hbar must be positive");
  if (!(cfg.m > 0.0)) throw ConfigError("m must be positive");
  if (cfg.E_field < 0.0) throw ConfigError("E is a magnitude along +z and must be >= 0");

  const double c = units.c;
  DerivedConstants d;
  d.eps = cfg.q * cfg.E_field / (cfg.m * c);
  if (d.eps == 0.0) throw ConfigError("field-free case unsupported: eps = qE/(mc) is zero");
  d.a = d.eps * c;
  d.u_perp = std::hypot(cfg.u0_perp[0], cfg.u0_perp[1]);
  d.rho = std::hypot(1.0, d.u_perp / c);
  const double gamma0 = std::sqrt(1.0 + (d.u_perp * d.u_perp + cfg.u0_par * cfg.u0_par) / (c * c));
  d.beta0 = {cfg.u0_perp[0] / (c * gamma0), cfg.u0_perp[1] / (c * gamma0), cfg.u0_par / (c * gamma0)};
  return d;
}

void require_field(const Source& src) {
  if (src.d.eps == 0.0)
    throw ConfigError("field-free case unsupported: eps = qE/(mc) is zero");
  if (src.d.eps < 0.0)
    throw ConfigError("qE must be positive (observables are even in q; flip the sign of q)");
}

Source source_for_scale(double q, double c_over_eps, const UnitSystem& units) {
  if (!(c_over_eps > 0.0)) throw ConfigError("c/eps must be positive");
  if (!(q > 0.0)) throw ConfigError("q must be positive to fix the scale c/eps");
  SourceConfig cfg;
  cfg.q = q;
  cfg.m = 1.0;
  // eps = qE/(mc) = c/(c/eps)  =>  E = eps*m*c/q.
  const double eps = units.c / c_over_eps;
  cfg.E_field = eps * cfg.m * units.c / q;
  return Source(cfg, units);
}

}  // namespace semirad
