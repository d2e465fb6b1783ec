#include "semirad/photon_stats.hpp"

#include <cmath>
#include <stdexcept>

namespace semirad::photon_stats {

namespace {

void check_lambda(double lambda_bar) {
  if (!(lambda_bar >= 0.0) || !std::isfinite(lambda_bar)) throw std::domain_error("mean photon number must be >= 0");
}

}  // namespace

double n_photon_probability(int N, double lambda_bar) {
  check_lambda(lambda_bar);
  if (N < 0) throw std::domain_error("photon number must be >= 0");
  if (lambda_bar == 0.0) return N == 0 ? 1.0 : 0.0;
  return std::exp(-lambda_bar + N * std::log(lambda_bar) - std::lgamma(N + 1.0));
}

double n_photon_energy(int N, double W1, double lambda_bar) {
  check_lambda(lambda_bar);
  if (N < 1) throw std::domain_error("n_photon_energy needs N >= 1");
  if (N == 1) return W1;
  if (lambda_bar == 0.0) return 0.0;
  return W1 * std::exp((N - 1) * std::log(lambda_bar) - std::lgamma(static_cast<double>(N)));
}

double one_photon_energy(double W, double lambda_bar) {
  check_lambda(lambda_bar);
  if (!(W >= 0.0)) throw std::domain_error("energy must be >= 0");
  return W * std::exp(-lambda_bar);
}

double one_photon_energy_classical(double W, double hbar_c) {
  if (!(W >= 0.0)) throw std::domain_error("energy must be >= 0");
  if (!(hbar_c > 0.0)) throw std::domain_error("hbar c must be > 0");
  return W * std::exp(-W / hbar_c);
}

MeanPhotonNumber mean_photon_number(const Source& src, const RapidityWindow& w, const quad::QuadSpec& spec,
                                    quad::KGrid grid) {
  const auto r = radiation::photon_number_integral(src, w, spec, grid);
  return {r.W, r.error, r.k};
}

int default_n_max(double lambda_bar) {
  check_lambda(lambda_bar);
  return static_cast<int>(std::ceil(lambda_bar + 12.0 * std::sqrt(lambda_bar) + 20.0));
}

EmissionSummary emission_summary(const Source& src, const RapidityWindow& w, const quad::QuadSpec& spec,
                                 quad::KGrid grid, int n_max) {
  EmissionSummary s;
  s.window = w;
  const auto W = radiation::total_energy(src, w, spec, grid);
  const auto lam = mean_photon_number(src, w, spec, grid);
  s.W = W.W;
  s.W_error = W.error;
  s.energy_k = W.k;
  s.lambda_bar = std::max(0.0, lam.value);
  s.lambda_error = lam.error;
  s.number_k = lam.k;
  s.converged = W.k.converged && lam.k.converged;
  s.P0 = std::exp(-s.lambda_bar);
  s.W1 = one_photon_energy(s.W, s.lambda_bar);
  const int n = n_max > 0 ? n_max : default_n_max(s.lambda_bar);
  for (int N = 0; N <= n; ++N) s.P.push_back(n_photon_probability(N, s.lambda_bar));
  for (int N = 1; N <= n; ++N) s.W_N.push_back(n_photon_energy(N, s.W1, s.lambda_bar));
  return s;
}

}  // namespace semirad::photon_stats
