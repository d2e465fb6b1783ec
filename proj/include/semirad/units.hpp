#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace semirad {

// Natural units by default: c = hbar = 1.
struct UnitSystem {
  double c = 1.0;
  double hbar = 1.0;
};

// Charge in a constant field E along +z.  u0_* are proper-velocity
// components (gamma * v) at t = 0, r0 the position at t = 0.
struct SourceConfig {
  double q = 1.0;
  double m = 1.0;
  double E_field = 1.0;
  std::array<double, 2> u0_perp{0.0, 0.0};
  double u0_par = 0.0;
  std::array<double, 3> r0{0.0, 0.0, 0.0};
};

struct DerivedConstants {
  double eps = 0.0;   // qE/(mc), inverse time
  double rho = 1.0;   // sqrt(1 + |u0_perp|^2/c^2)
  double a = 0.0;     // qE/m = eps*c
  double u_perp = 0.0;
  std::array<double, 3> beta0{0.0, 0.0, 0.0};
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

DerivedConstants derive_constants(const SourceConfig& cfg, const UnitSystem& units);

// Validated bundle handed to everything downstream.
struct Source {
  SourceConfig cfg;
  UnitSystem units;
  DerivedConstants d;

  Source() : Source(SourceConfig{}, UnitSystem{}) {}
  Source(const SourceConfig& c, const UnitSystem& u)
      : cfg(c), units(u), d(derive_constants(c, u)) {}

  double c() const { return units.c; }
  double eps() const { return d.eps; }
  double rho() const { return d.rho; }
  bool parallel() const { return d.u_perp == 0.0; }
};

// Operations built on the rapidity variables divide by eps and assume the
// field accelerates the charge toward +z.
void require_field(const Source& src);

// Source with m = 1 whose field strength yields the requested c/eps; used
// for the figure presets.
Source source_for_scale(double q, double c_over_eps, const UnitSystem& units = {});

}  // namespace semirad
