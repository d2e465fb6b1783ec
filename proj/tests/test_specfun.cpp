#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <random>

#include "doctest.h"
#include "semirad/specfun.hpp"

using namespace semirad;
using namespace semirad::specfun;

namespace {

const UWindow kFull{Bound::minus_infinity(), Bound::plus_infinity()};

UWindow finite(double a, double b) { return {Bound::at(a), Bound::at(b)}; }

// int_0^inf e^{-z cosh s} cosh(m s) ds, independent of the library's quadrature
double decaying_oracle(double z, double m) {
  boost::math::quadrature::exp_sinh<double> q;
  return q.integrate(
      [&](double s) {
        const double x = z * std::cosh(s);
        return x > 700.0 ? 0.0 : std::exp(-x) * std::cosh(m * s);
      },
      1e-15);
}

double cdist(cplx a, cplx b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("incomplete Macdonald: empty window and z = 0") {
  CHECK(std::abs(incomplete_macdonald(0.3, 1.2, finite(0.7, 0.7)).value) == 0.0);
  CHECK(cdist(incomplete_macdonald(0.0, 0.0, finite(-0.5, 1.25)).value, 0.875) < 1e-15);
}

TEST_CASE("incomplete Macdonald: full window gives K_0 and -K_1") {
  const double K0 = decaying_oracle(1.0, 0.0), K1 = decaying_oracle(1.0, 1.0);
  CHECK(K0 == doctest::Approx(0.4210244382407083).epsilon(1e-13));
  CHECK(cdist(incomplete_macdonald(0.0, 1.0, kFull).value, K0) <= 1e-10);
  CHECK(cdist(incomplete_macdonald_dz(0.0, 1.0, kFull).value, -K1) <= 1e-10);
  CHECK(macdonald_imag_order(0.0, 1.0) == doctest::Approx(K0).epsilon(1e-10));
  CHECK(macdonald_imag_order_dz(0.0, 1.0) == doctest::Approx(-K1).epsilon(1e-10));
  CHECK(K1 == doctest::Approx(boost::math::cyl_bessel_k(1, 1.0)).epsilon(1e-13));
}

TEST_CASE("incomplete Macdonald: imaginary order on the full window") {
  for (double nu : {0.25, 1.0, 2.5})
    for (double z : {0.3, 2.0, 7.0}) {
      const double ref = macdonald_imag_order(nu, z);
      CHECK(cdist(incomplete_macdonald(nu, z, kFull).value, ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("window moments agree with plain quadrature on finite windows") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> Nu(-2.0, 2.0), Z(0.05, 15.0), U(-3.0, 3.0), T(-0.95, 0.95);
  for (int i = 0; i < 40; ++i) {
    const double nu = Nu(rng), z = Z(rng), a = U(rng), b = U(rng);
    const auto dir = Direction::from_ratio(T(rng));
    const auto m = window_moments(nu, z, finite(a, b), dir);
    const auto d = window_moments_direct(nu, z, a, b, dir, {1e-13, 1e-12});
    const double scale = std::max(1.0, std::abs(d.m2));
    CHECK(cdist(m.m0, d.m0) <= 1e-8 * scale);
    CHECK(cdist(m.m1, d.m1) <= 1e-8 * scale);
    CHECK(cdist(m.m2, d.m2) <= 1e-8 * scale);
  }
}

TEST_CASE("dK/dz on a symmetric window, nu = 0, against an independent quadrature") {
  // K' = (i/2) int sinh u e^{i z sinh u} du; coded here with Boost's node set
  const double z = 1.7, U = 1.4;
  const auto m = window_moments_direct(0.0, z, -U, U, {}, {1e-14, 1e-13});
  // trapezoid oracle: only the odd part survives, (i/2)(2i) int_0^U sinh u sin(z sinh u) du
  double acc = 0.0;
  const int n = 20000;
  for (int j = 0; j <= n; ++j) {
    const double u = U * j / n, w = (j == 0 || j == n) ? 0.5 : 1.0;
    acc += w * std::sinh(u) * std::sin(z * std::sinh(u));
  }
  acc *= U / n;
  const cplx expect = -acc;  // (i/2)(2i) = -1
  CHECK(cdist(incomplete_macdonald_dz(0.0, z, finite(-U, U)).value, expect) <= 1e-6);
  CHECK(cdist(0.5 * cplx(0, 1) * m.m1, expect) <= 1e-6);
}

TEST_CASE("dK/dxi") {
  const double z = 0.8;
  const cplx i(0, 1);
  const auto fin = finite(-0.3, 1.1);
  const cplx expect = 0.5 * (std::exp(i * z * std::sinh(-0.3)) - std::exp(i * z * std::sinh(1.1)));
  CHECK(cdist(incomplete_macdonald_dxi(0.0, z, fin), expect) < 1e-15);
  CHECK(std::abs(incomplete_macdonald_dxi(0.0, z, kFull)) == 0.0);
  CHECK(std::abs(incomplete_macdonald_dxi(0.7, z, kFull)) == 0.0);

  // finite difference in xi at fixed (eta_in, eta), u = eta - xi
  const double nu = 0.6, eta_in = -0.4, eta = 1.3, xi = 0.2, h = 1e-4;
  auto K = [&](double x) { return incomplete_macdonald(nu, z, finite(eta_in - x, eta - x), {1e-14, 1e-13}).value; };
  const cplx fd = (K(xi + h) - K(xi - h)) / (2.0 * h);
  CHECK(cdist(fd, incomplete_macdonald_dxi(nu, z, finite(eta_in - xi, eta - xi))) <= 1e-6);
}

TEST_CASE("S combination") {
  for (double nu : {0.0, 0.8}) {
    const double z = 1.3;
    const auto kp = incomplete_macdonald_dz(nu, z, kFull).value;
    CHECK(cdist(s_combination(nu, z, 0.6, kFull).value, kp) <= 1e-10);
    const auto w = finite(-0.5, 2.0);
    CHECK(cdist(s_combination(nu, z, 0.0, w).value, incomplete_macdonald_dz(nu, z, w).value) <= 1e-12);
  }
}

TEST_CASE("incomplete cylindrical function of Bessel form") {
  CHECK(std::abs(epsilon_incomplete({0.5, 0.0}, 0.0, {3.0, 0.0}).value) == 0.0);
  CHECK(std::abs(epsilon_series({0.5, 0.0}, 0.0, {3.0, 0.0}).value) == 0.0);
  CHECK(std::abs(epsilon_asymptotic({0.5, 0.0}, 0.0, {3.0, 0.0})) == 0.0);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> Nu(-1.0, 1.0), A(0.0, 2.0), Z(-2.0, 2.0);
  for (int i = 0; i < 30; ++i) {
    const cplx nu(Nu(rng), 0.0), z(Z(rng), Z(rng));
    const double a = A(rng);
    if (std::abs(z) > 2.0) continue;
    const auto s = epsilon_series(nu, a, z);
    const auto q = epsilon_incomplete(nu, a, z, {1e-14, 1e-13});
    CHECK(cdist(s.value, q.value) <= 1e-10 * std::max(1.0, std::abs(q.value)));
  }

  // nu = 0 specialization of the three-term expansion
  const double a = 0.9, z = 12.0;
  const double ch = std::cosh(a), th = std::tanh(a);
  const cplx E = std::exp(z * std::sinh(a)), pi_i(0.0, M_PI);
  const cplx hand = (E / ch - 1.0) / (pi_i * z) + (E / (ch * ch) * th) / (pi_i * z * z) +
                    (E / (ch * ch * ch) * (-1.0 + 3.0 * th * th) + 1.0) / (pi_i * z * z * z);
  CHECK(cdist(epsilon_asymptotic(0.0, a, z), hand) <= 1e-14 * std::abs(hand));

  // remainder falls like z^-4 on the exponential scale
  std::vector<double> err;
  for (double zz : {10.0, 20.0, 40.0}) {
    const auto ex = epsilon_incomplete(0.5, 1.0, zz, {0.0, 1e-12}).value;
    err.push_back(std::abs(ex - epsilon_asymptotic(0.5, 1.0, zz)) / std::exp(zz * std::sinh(1.0) - 0.5));
  }
  const double slope = (std::log(err[2]) - std::log(err[0])) / std::log(4.0);
  CHECK(slope == doctest::Approx(-4.0).epsilon(0.125));
}

TEST_CASE("K_0 series") {
  CHECK(cdist(k0_series(0.0, -0.4, 1.6).value, 1.0) == 0.0);
  CHECK(std::abs(k0_series(0.5, 1.0, 1.0).value) == 0.0);
  const auto s = k0_series(0.1, 0.0, 2.0);
  const auto q = window_moments_direct(0.0, 0.1, 0.0, 2.0, {}, {1e-15, 1e-13});
  CHECK(cdist(s.value, 0.5 * q.m0) <= 1e-10);
  CHECK(cdist(s.value, incomplete_macdonald(0.0, 0.1, finite(0.0, 2.0)).value) <= 1e-10);

  // bounded as z -> 0 while K_0(z) grows like -ln z
  double prev = 0.0;
  for (double z : {1e-2, 1e-4, 1e-6, 1e-8}) {
    const double v = std::abs(k0_series(z, -1.0, 1.0).value);
    CHECK(v <= 1.0 + 1e-12);
    CHECK(std::abs(v - 1.0) <= 2.0 * z);
    CHECK(boost::math::cyl_bessel_k(0, z) > -std::log(z / 2.0) - 0.58);
    prev = v;
  }
  CHECK(prev == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Macdonald integrals") {
  // integrands fall like e^{-z} and e^{-2z}; the tails beyond z = 80 are below 1e-30
  boost::math::quadrature::tanh_sinh<double> q;
  const double i1 = q.integrate([](double z) { return -macdonald_imag_order_dz(0.0, z) * z * z; }, 0.0, 80.0, 1e-12);
  CHECK(i1 == doctest::Approx(2.0).epsilon(1e-8));
  const double i2 = q.integrate(
      [](double z) {
        const double k1z = macdonald_imag_order_dz(0.0, z) * z;
        return k1z * k1z;
      },
      0.0, 80.0, 1e-12);
  CHECK(i2 == doctest::Approx(3.0 * M_PI * M_PI / 32.0).epsilon(1e-8));
}
