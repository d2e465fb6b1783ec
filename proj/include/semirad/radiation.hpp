#pragma once

#include <complex>
#include <string>
#include <vector>

#include "semirad/kinematics.hpp"
#include "semirad/quadrature.hpp"
#include "semirad/specfun.hpp"

namespace semirad::radiation {

using cplx = std::complex<double>;

// Thrown when an observable is requested over a window on which it does not
// exist (e.g. the total energy over an infinite window).
class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// I1 = int e^{i Phi} d eta', I2 = int sinh eta' e^{i Phi} d eta' and the
// polarization-summed |y|^2 built from the vector (u_perp/c I1, rho I2).
struct AmplitudeVector {
  cplx I1{}, I2{};
  double err = 0.0;
  double y2_sum = 0.0;
  std::string path;
};

// Through the special functions; needs k_perp > 0.
AmplitudeVector amplitude_integrals(const Source& src, const WaveVector& k, const RapidityWindow& w,
                                    const specfun::Tol& tol = {});
// Plain quadrature over eta' on a finite window; valid on the axis as well.
AmplitudeVector amplitude_integrals_direct(const Source& src, const WaveVector& k, const RapidityWindow& w,
                                           const specfun::Tol& tol = {});

struct DistributionValue {
  double value = 0.0;
  double err = 0.0;
};

// d^3W/d^3k in the K, S form; on-axis points go through the eta' amplitudes.
DistributionValue energy_density(const Source& src, const WaveVector& k, const RapidityWindow& w,
                                 const specfun::Tol& tol = {});
// Parallel motion only: (qc/(2 pi eps))^2 (k_perp/k)^2 |I2|^2 with I2 by direct quadrature.
DistributionValue energy_density_parallel(const Source& src, const WaveVector& k, const RapidityWindow& w,
                                          const specfun::Tol& tol = {});

// I2 for parallel motion in spherical variables:
// int sinh eta' exp(i Lambda (sinh eta' - cos theta cosh eta')) d eta'.
specfun::Value i2_theta(double theta, double Lambda, const RapidityWindow& w, const specfun::Tol& tol = {});
// Boundary-term (large Lambda) approximation of i2_theta.
cplx stationary_phase_I2(double theta, double Lambda, const RapidityWindow& w);

// d^2W/(k0^2 dk0 dOmega) for parallel motion.
DistributionValue spectral_angular_energy(const Source& src, double k0, double theta, const RapidityWindow& w,
                                          const specfun::Tol& tol = {});
// Leading large-Lambda form of the above; requires eta_in = 0.
double asymptotic_distribution(const Source& src, double k0, double theta, const RapidityWindow& w);
// Angle of the maximum of asymptotic_distribution.
inline double theta_max(double eta) { return std::acos(std::tanh(eta)); }

enum class EnergyRoute { general, parallel };

struct EnergyResult {
  double W = 0.0;
  double error = 0.0;
  quad::KSpaceResult k;
  EnergyRoute route = EnergyRoute::general;
};

// Grid defaults are filled from the source (scale eps/(c rho), azimuthal
// symmetry for parallel motion) unless set explicitly.
quad::KGrid grid_for(const Source& src, quad::KGrid grid = {});

EnergyResult total_energy(const Source& src, const RapidityWindow& w, const quad::QuadSpec& spec,
                          quad::KGrid grid = {}, EnergyRoute route = EnergyRoute::general);

// Mean photon number: the k0^{-1}-weighted energy integral over hbar c.
EnergyResult photon_number_integral(const Source& src, const RapidityWindow& w, const quad::QuadSpec& spec,
                                    quad::KGrid grid = {});

enum class RateVariant { general, halfinfinite, parallel, symmetric, symmetric_parallel, asymptotic, classical_nr };
std::string to_string(RateVariant v);

struct RateResult {
  double w = 0.0;
  double error = 0.0;
  RateVariant variant = RateVariant::general;
  RapidityWindow window;
  quad::KSpaceResult k;
  double check_integral = 0.0;  // closed-form variants: the Macdonald integral behind them
  double check_error = 0.0;
};

// Rate densities, d^3w/d^3k.
// dW/dt for the window (eta_in may be -infinity).
double rate_density(const Source& src, const WaveVector& k, const RapidityWindow& w, const specfun::Tol& tol = {});
// -dW/dt_in, the lower-endpoint counterpart.
double rate_density_lower(const Source& src, const WaveVector& k, const RapidityWindow& w,
                          const specfun::Tol& tol = {});
// Parallel motion, eta_in = -infinity, in terms of K' alone.
double rate_density_parallel(const Source& src, const WaveVector& k, double eta, const specfun::Tol& tol = {});
// Parallel motion, symmetric window, written out with tanh(eta_+-).
double rate_density_symmetric_parallel(const Source& src, const WaveVector& k, const RapidityWindow& w,
                                       const specfun::Tol& tol = {});

RateResult rate_general(const Source& src, const RapidityWindow& w, const quad::QuadSpec& spec,
                        quad::KGrid grid = {});
RateResult rate_halfinfinite(const Source& src, double t, const quad::QuadSpec& spec, quad::KGrid grid = {});
RateResult rate_parallel(const Source& src, double t, const quad::QuadSpec& spec, quad::KGrid grid = {});
// d/dT W(T/2, -T/2); the general route averages both endpoint densities,
// the parallel route uses the explicit tanh(eta_+-) form.
RateResult rate_symmetric(const Source& src, double T, const quad::QuadSpec& spec, quad::KGrid grid = {},
                          bool parallel_form = false);

// 2 q^2 a^2 / c^3 together with int_0^inf K_1(z) z^2 dz.
RateResult rate_asymptotic(const Source& src);
// Classical total for parallel motion, (1/c)(q eps/pi)^2 2 pi int K_1^2 z^2 dz.
RateResult rate_classical_NR(const Source& src);
// Differential classical rate per dz d(vartheta).
double dw_cl(const Source& src, double z, double vartheta);

// Rate distribution d^3w/(k0^2 dk0 dOmega) for parallel motion, and its
// large-Lambda form with delta = sinh eta - sinh eta_in - (cosh eta - cosh eta_in) cos theta.
double rate_spectral_angular(const Source& src, double k0, double theta, const RapidityWindow& w,
                             const specfun::Tol& tol = {});
double rate_spectral_angular_asymptotic(const Source& src, double k0, double theta, const RapidityWindow& w);
double delta_parameter(double theta, const RapidityWindow& w);

// Figure grids over (kx, kpar) at ky = 0, row-major in kpar.
enum class GridQuantity { energy, energy_asymptotic, rate };

struct Grid2D {
  std::vector<double> kx, kpar;
  std::vector<double> value;  // value[i_par * kx.size() + i_x]
  double at(std::size_t ix, std::size_t ipar) const { return value[ipar * kx.size() + ix]; }
};

Grid2D figure_grid(const Source& src, GridQuantity what, const RapidityWindow& w, double kmax, int nodes,
                   int threads = 1, const specfun::Tol& tol = {});

}  // namespace semirad::radiation
