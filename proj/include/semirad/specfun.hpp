#pragma once

#include <complex>
#include <string>
#include <vector>

#include "semirad/kinematics.hpp"

namespace semirad::specfun {

using cplx = std::complex<double>;

struct Tol {
  double abs = 1e-12;
  double rel = 1e-10;
  long max_evals = 5'000'000;
};

// k_par/|k| = tanh(xi) together with 1 -+ tanh(xi) kept to full relative
// accuracy; the S combination cancels catastrophically without them.
struct Direction {
  double t = 0.0;
  double one_minus_t = 1.0;
  double one_plus_t = 1.0;

  static Direction from_xi(double xi);
  static Direction from_ratio(double k_par_over_k);
  static Direction from_k(double kperp, double kpar);
};

struct Value {
  cplx value{};
  double err = 0.0;
  bool converged = true;
};

// K, dK/dz, dK/dxi and S for one (nu, z, window, direction).
struct SpecialValue {
  Value K, Kprime, Kdot, S;
  std::string path;  // "closed-form", "series", "quadrature", "quadrature+rays"
};

// Window moments m0 = int e^{i phi}, m1 = int sinh u e^{i phi},
// m2 = int (sinh u + t cosh u) e^{i phi} over the u-window.
struct Moments {
  cplx m0{}, m1{}, m2{};
  double err = 0.0;
  long evals = 0;
  bool converged = true;
  std::string path;
};

Moments window_moments(double nu, double z, const UWindow& w, const Direction& dir, const Tol& tol = {});

// Everything at once; the individual operations below are thin wrappers.
SpecialValue special_values(double nu, double z, const UWindow& w, const Direction& dir, const Tol& tol = {});

Value incomplete_macdonald(double nu, double z, const UWindow& w, const Tol& tol = {});
Value incomplete_macdonald_dz(double nu, double z, const UWindow& w, const Tol& tol = {});
cplx incomplete_macdonald_dxi(double nu, double z, const UWindow& w);
Value s_combination(double nu, double z, double k_par_over_k, const UWindow& w, const Tol& tol = {});
Value s_combination(double nu, double z, const Direction& dir, const UWindow& w, const Tol& tol = {});

// Reference: plain panel-adaptive quadrature of the u-integrals on a finite
// window, no contour deformation and no series (cross-checks only).
Moments window_moments_direct(double nu, double z, double u_in, double u, const Direction& dir,
                              const Tol& tol = {});

// Power series of K_0 in z on a finite window; throws if it does not
// converge in n_max terms.
struct SeriesResult {
  cplx value{};
  double tail_bound = 0.0;
  int terms = 0;
};
SeriesResult k0_series(double z, double u_in, double u, double tol = 1e-15, int n_max = 400);

// Series path usable when z cosh(max|u|) is moderate (the terms peak near
// n ~ z cosh U, and the partial sums lose about that many e-folds).
bool series_applicable(double nu, double z, double u_in, double u);
inline constexpr double kZSwitch = 1.0;
inline constexpr double kSeriesConditioning = 12.0;

// Incomplete cylindrical function of Bessel form,
// eps_nu(a, z) = (1/(pi i)) int_0^a exp(z sinh t - nu t) dt.
struct EpsilonValue {
  cplx value{};
  double err = 0.0;
  std::vector<cplx> R;  // series coefficients when the series path is used
  std::string path;
};
EpsilonValue epsilon_incomplete(cplx nu, double a, cplx z, const Tol& tol = {});
EpsilonValue epsilon_series(cplx nu, double a, cplx z, double tol = 1e-16, int n_max = 400);
// Three-term large-z expansion (endpoint integration by parts).
cplx epsilon_asymptotic(cplx nu, double a, cplx z);

// Classical Macdonald function of imaginary order and its z-derivative from
// the decaying representations int_0^inf e^{-z cosh s} cos(nu s) (cosh s) ds.
double macdonald_imag_order(double nu, double z, const Tol& tol = {});
double macdonald_imag_order_dz(double nu, double z, const Tol& tol = {});

}  // namespace semirad::specfun
