#include <cmath>
#include <random>

#include "doctest.h"
#include "semirad/kinematics.hpp"

using namespace semirad;

namespace {

Source make(double upar, double ux = 0.0, double uy = 0.0) {
  SourceConfig c;
  c.u0_par = upar;
  c.u0_perp = {ux, uy};
  return Source(c, {});
}

}  // namespace

TEST_CASE("derived constants") {
  CHECK(make(0.3).rho() == 1.0);
  const Source s = make(0.0, 0.6, -0.8);
  CHECK(s.rho() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(s.eps() == 1.0);
  CHECK(s.d.a == 1.0);

  const Source fig = source_for_scale(2.0, 0.1);
  CHECK(fig.eps() == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(fig.cfg.q == 2.0);

  const Source rest = make(0.0);
  for (double b : rest.d.beta0) CHECK(b == 0.0);
  CHECK(trajectory(rest, 0.0).beta[2] == 0.0);
}

TEST_CASE("derive_constants rejects a vanishing field and is pure") {
  SourceConfig c;
  c.E_field = 0.0;
  CHECK_THROWS_AS(derive_constants(c, {}), ConfigError);
  SourceConfig d;
  d.u0_perp = {0.3, 0.7};
  d.u0_par = -0.2;
  const auto a = derive_constants(d, {2.0, 0.5}), b = derive_constants(d, {2.0, 0.5});
  CHECK(a.eps == b.eps);
  CHECK(a.rho == b.rho);
  CHECK(a.beta0 == b.beta0);
}

TEST_CASE("velocity zero and initial condition") {
  const Source s = make(0.7, 0.2, 0.1);
  const double t0 = -s.cfg.u0_par / (s.eps() * s.c());
  CHECK(std::abs(trajectory(s, t0).beta[2]) < 1e-15);
  CHECK(eta_of_t(s, t0) == doctest::Approx(0.0).epsilon(1e-15));
  const auto tr = trajectory(s, 0.0);
  for (int i = 0; i < 3; ++i) CHECK(tr.beta[i] == doctest::Approx(s.d.beta0[i]).epsilon(1e-15));
  for (int i = 0; i < 3; ++i) CHECK(tr.r[i] == s.cfg.r0[i]);
}

TEST_CASE("hyperbolic motion from rest") {
  const Source s = make(0.0);
  double prev = -1.0;
  for (int i = 1; i <= 10; ++i) {
    const double t = 0.5 * i;
    const auto tr = trajectory(s, t);
    CHECK(tr.beta[2] > prev);
    CHECK(tr.beta[2] < 1.0);
    prev = tr.beta[2];
    // (r_par + c/eps)^2 - (ct)^2 = (c/eps)^2 with r(0) = 0
    const double x = tr.r[2] + 1.0;
    CHECK(x * x - t * t == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eta_of_t(s, t) == doctest::Approx(std::asinh(t)).epsilon(1e-15));
  }
}

TEST_CASE("rapidity round trip") {
  const Source s = make(-0.4, 0.5, 0.0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> T(-20.0, 20.0);
  for (int i = 0; i < 100; ++i) {
    const double t = T(rng);
    CHECK(t_of_eta(s, eta_of_t(s, t)) == doctest::Approx(t).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("reduced mode variables") {
  const Source par = make(0.3);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> K(-5.0, 5.0);
  for (int i = 0; i < 20; ++i) CHECK(reduce_mode(par, {K(rng), K(rng), K(rng)}).nu == 0.0);

  const Source s = make(0.2, 0.4, -0.3);
  const auto m0 = reduce_mode(s, {1.5, -0.5, 0.0});
  CHECK(m0.xi == 0.0);
  CHECK(m0.z == doctest::Approx(s.c() * s.rho() / s.eps() * std::hypot(1.5, 0.5)).epsilon(1e-15));

  for (int i = 0; i < 100; ++i) {
    const WaveVector k{K(rng), K(rng), K(rng)};
    const auto m = reduce_mode(s, k);
    CHECK(m.z * std::cosh(m.xi) == doctest::Approx(s.rho() * s.c() / s.eps() * k.k0()).epsilon(1e-12));
    const auto back = kperp_kpar_from(s, m.z, m.xi);
    CHECK(back[0] == doctest::Approx(k.kperp()).epsilon(1e-12));
    CHECK(back[1] == doctest::Approx(k.kpar).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("symmetric windows") {
  const auto w = symmetric_window(3.0);
  CHECK(w.t.value == 1.5);
  CHECK(w.t_in.value == -1.5);
  const auto inf = symmetric_window(INFINITY);
  CHECK(inf.t.inf == 1);
  CHECK(inf.t_in.inf == -1);
}
