#pragma once

#include <array>
#include <cmath>
#include <limits>

#include "semirad/units.hpp"

namespace semirad {

// A window endpoint; infinite endpoints are flagged, never encoded as big floats.
struct Bound {
  double value = 0.0;
  int inf = 0;  // 0 finite, -1 at -infinity, +1 at +infinity

  static Bound at(double v) { return {v, 0}; }
  static Bound minus_infinity() { return {-std::numeric_limits<double>::infinity(), -1}; }
  static Bound plus_infinity() { return {std::numeric_limits<double>::infinity(), 1}; }
  bool finite() const { return inf == 0; }
};

struct TimeWindow {
  Bound t_in;
  Bound t;
};

struct RapidityWindow {
  Bound eta_in;
  Bound eta;
  bool empty() const { return eta_in.finite() && eta.finite() && eta_in.value == eta.value; }
};

// u = eta - xi for one mode.
struct UWindow {
  Bound u_in;
  Bound u;
  bool empty() const { return u_in.finite() && u.finite() && u_in.value == u.value; }
};

struct Trajectory {
  std::array<double, 3> r;
  std::array<double, 3> beta;
};

Trajectory trajectory(const Source& src, double t);
double eta_of_t(const Source& src, double t);
double t_of_eta(const Source& src, double eta);

RapidityWindow to_rapidity(const Source& src, const TimeWindow& w);
UWindow shift_window(const RapidityWindow& w, double xi);
// t = -t_in = T/2; T = +infinity gives the doubly infinite window.
TimeWindow symmetric_window(double T);

struct WaveVector {
  double kx = 0.0;
  double ky = 0.0;
  double kpar = 0.0;

  double kperp() const { return std::hypot(kx, ky); }
  double k0() const { return std::hypot(kperp(), kpar); }
  double theta() const { return std::atan2(kperp(), kpar); }
  double phi_polar() const { return std::atan2(ky, kx); }
};

struct ReducedMode {
  double z = 0.0;
  double xi = 0.0;
  double nu = 0.0;
  double Lambda = 0.0;
  bool on_axis = false;  // k_perp = 0 with k_par != 0: xi is +-infinity
};

ReducedMode reduce_mode(const Source& src, const WaveVector& k);

// Inverse of reduce_mode for the (|k_perp|, k_par) pair.
std::array<double, 2> kperp_kpar_from(const Source& src, double z, double xi);

// phi(u) = z sinh u - nu u and its derivative.
inline double phase(double z, double nu, double u) { return z * std::sinh(u) - nu * u; }
inline double phase_rate(double z, double nu, double u) { return z * std::cosh(u) - nu; }

}  // namespace semirad
