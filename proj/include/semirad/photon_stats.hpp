#pragma once

#include <vector>

#include "semirad/radiation.hpp"

namespace semirad::photon_stats {

// Poisson law of the mode-integrated photon number.
double n_photon_probability(int N, double lambda_bar);

// Energy carried by the N-photon events, W1 lambda^{N-1}/(N-1)!.
double n_photon_energy(int N, double W1, double lambda_bar);

// General window: W1 = P0 * W (hbar c sum k0 |y|^2 is W itself).
double one_photon_energy(double W, double lambda_bar);
// Classical (+inf, -inf) form W exp(-W/(hbar c)).
double one_photon_energy_classical(double W, double hbar_c);

struct MeanPhotonNumber {
  double value = 0.0;
  double error = 0.0;
  quad::KSpaceResult k;
};

MeanPhotonNumber mean_photon_number(const Source& src, const RapidityWindow& w, const quad::QuadSpec& spec,
                                    quad::KGrid grid = {});

struct EmissionSummary {
  RapidityWindow window;
  double lambda_bar = 0.0, lambda_error = 0.0;
  double P0 = 1.0;
  double W = 0.0, W_error = 0.0;
  double W1 = 0.0;
  std::vector<double> P;    // P(N), N = 0..n_max
  std::vector<double> W_N;  // W(N), N = 1..n_max
  bool converged = true;
  quad::KSpaceResult energy_k, number_k;
};

// Enough terms for the Poisson tail below 1e-12 unless n_max > 0.
int default_n_max(double lambda_bar);

EmissionSummary emission_summary(const Source& src, const RapidityWindow& w, const quad::QuadSpec& spec,
                                 quad::KGrid grid = {}, int n_max = 0);

}  // namespace semirad::photon_stats
