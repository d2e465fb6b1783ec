#include <cmath>

#include "doctest.h"
#include "semirad/photon_stats.hpp"

using namespace semirad;
using namespace semirad::photon_stats;

namespace {

Source make(double q, double hbar = 1.0) {
  SourceConfig c;
  c.q = q;
  c.u0_par = 0.1;
  return Source(c, {1.0, hbar});
}

quad::QuadSpec fixed_spec() {
  quad::QuadSpec s;
  s.rel_tol = 1e-8;
  s.abs_tol = 1e-15;
  s.cutoff.grow = false;
  s.cutoff.initial_z = 5.0;
  return s;
}

const RapidityWindow kWin{Bound::at(0.0), Bound::at(0.6)};

}  // namespace

TEST_CASE("Poisson law") {
  CHECK(n_photon_probability(0, 0.0) == 1.0);
  for (int N = 1; N < 5; ++N) CHECK(n_photon_probability(N, 0.0) == 0.0);
  CHECK(n_photon_probability(1, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  for (double lam : {0.01, 0.7, 3.0, 25.0, 140.0}) {
    double sum = 0.0;
    for (int N = 0; N <= default_n_max(lam); ++N) sum += n_photon_probability(N, lam);
    CHECK(sum >= 1.0 - 1e-12);
    CHECK(sum <= 1.0 + 1e-12);
  }
}

TEST_CASE("energy carried by N-photon events") {
  CHECK(n_photon_energy(1, 0.37, 2.5) == doctest::Approx(0.37).epsilon(1e-15));
  for (double lam : {0.5, 2.0, 10.0}) {
    const double W1 = 1.3;
    double sum = 0.0;
    int best = 1;
    for (int N = 1; N <= default_n_max(lam) + 40; ++N) {
      sum += n_photon_energy(N, W1, lam);
      if (n_photon_energy(N, W1, lam) > n_photon_energy(best, W1, lam)) best = N;
    }
    CHECK(sum == doctest::Approx(W1 * std::exp(lam)).epsilon(1e-12));
    // enumeration of lambda^n / n! by repeated multiplication
    double term = 1.0, top = 1.0;
    int arg = 0;
    for (int n = 1; n < 60; ++n) {
      term *= lam / n;
      if (term > top) {
        top = term;
        arg = n;
      }
    }
    CHECK(best == arg + 1);
    CHECK(std::abs(best - (lam + 1.0)) <= 1.0);
  }
}

TEST_CASE("one-photon energy") {
  CHECK(one_photon_energy(0.0, 0.4) == 0.0);
  CHECK(one_photon_energy(2.0, 0.5) == doctest::Approx(2.0 * std::exp(-0.5)));
  CHECK(one_photon_energy_classical(0.0, 1.0) == 0.0);
  CHECK(one_photon_energy_classical(1e-6, 1.0) == doctest::Approx(1e-6).epsilon(1e-6));
  const double hc = 0.7, h = 1e-5;
  const double d = (one_photon_energy_classical(hc + h, hc) - one_photon_energy_classical(hc - h, hc)) / (2 * h);
  CHECK(std::abs(d) <= 1e-6);
  CHECK(one_photon_energy_classical(hc, hc) > one_photon_energy_classical(0.9 * hc, hc));
  CHECK(one_photon_energy_classical(hc, hc) > one_photon_energy_classical(1.1 * hc, hc));
}

TEST_CASE("mean photon number") {
  const auto spec = fixed_spec();
  const auto e = mean_photon_number(make(1.0), {Bound::at(0.3), Bound::at(0.3)}, spec);
  CHECK(e.value == 0.0);
  const auto s = emission_summary(make(1.0), {Bound::at(0.3), Bound::at(0.3)}, spec);
  CHECK(s.P0 == 1.0);

  const double l1 = mean_photon_number(make(1.0), kWin, spec).value;
  const double lh = mean_photon_number(make(0.5), kWin, spec).value;
  CHECK(l1 > 0.0);
  CHECK(lh / l1 == doctest::Approx(0.25).epsilon(1e-10));

  // hbar c int k0 |y|^2 d^3k reproduces W
  const Source src = make(1.0, 0.5);
  const auto W = radiation::total_energy(src, kWin, spec, {}, radiation::EnergyRoute::parallel);
  const auto n = quad::integrate_k_space(
      [&](const WaveVector& k) {
        const double y2 = radiation::energy_density_parallel(src, k, kWin, {1e-15, 1e-10}).value /
                          (src.units.hbar * src.c() * k.k0());
        return src.units.hbar * src.c() * k.k0() * y2;
      },
      radiation::grid_for(src), spec);
  CHECK(n.value == doctest::Approx(W.W).epsilon(1e-6));
}
