#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "semirad/kinematics.hpp"

namespace semirad::quad {

using cplx = std::complex<double>;

// Small fixed-size complex vector so several moments share one set of nodes.
template <std::size_t N>
struct CVec {
  std::array<cplx, N> v{};

  cplx& operator[](std::size_t i) { return v[i]; }
  const cplx& operator[](std::size_t i) const { return v[i]; }
  CVec& operator+=(const CVec& o) {
    for (std::size_t i = 0; i < N; ++i) v[i] += o.v[i];
    return *this;
  }
  CVec& operator-=(const CVec& o) {
    for (std::size_t i = 0; i < N; ++i) v[i] -= o.v[i];
    return *this;
  }
  CVec& operator*=(double s) {
    for (auto& x : v) x *= s;
    return *this;
  }
  CVec& operator*=(cplx s) {
    for (auto& x : v) x *= s;
    return *this;
  }
  friend CVec operator+(CVec a, const CVec& b) { return a += b; }
  friend CVec operator-(CVec a, const CVec& b) { return a -= b; }
  friend CVec operator*(CVec a, double s) { return a *= s; }
  friend CVec operator*(double s, CVec a) { return a *= s; }
  friend CVec operator*(CVec a, cplx s) { return a *= s; }
  friend CVec operator*(cplx s, CVec a) { return a *= s; }
};

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const cplx& x) { return std::abs(x); }
template <std::size_t N>
double magnitude(const CVec<N>& x) {
  double m = 0.0;
  for (const auto& c : x.v) m = std::max(m, std::abs(c));
  return m;
}

// Compensated accumulation; works component-wise for complex and CVec.
template <class T>
class KahanSum {
 public:
  void add(const T& x) {
    T y = x - comp_;
    T t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  const T& value() const { return sum_; }

 private:
  T sum_{};
  T comp_{};
};

struct CutoffPolicy {
  double initial_z = 20.0;   // initial k_perp, k_par cutoffs in units of eps/(c rho)
  double growth = 1.5;
  double rel_change = 1e-4;
  int max_steps = 4;         // enlargements before declaring non-convergence
  bool grow = true;          // false: integrate once at the initial cutoffs
};

struct QuadSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-9;
  long max_evals = 20'000'000;
  CutoffPolicy cutoff;
  int threads = 1;
};

template <class T>
struct Estimate {
  T value{};
  double error = 0.0;
  long evals = 0;
  bool converged = true;
};

namespace detail {

struct GK21Table {
  std::array<double, 11> xk;
  std::array<double, 11> wk;
  std::array<double, 5> wg;  // Gauss weights for xk[1], xk[3], ..., xk[9]
};
const GK21Table& gk21_table();

template <class T>
struct Panel {
  double a, b;
  T value;
  double err;
  double floor;  // roundoff part of err; bisection cannot push the sum below it
};

template <class T, class F>
Panel<T> gk21(F& f, double a, double b) {
  const auto& tab = gk21_table();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  std::array<T, 21> fv;
  fv[0] = f(c);
  for (int j = 1; j <= 10; ++j) {
    fv[2 * j - 1] = f(c - h * tab.xk[j]);
    fv[2 * j] = f(c + h * tab.xk[j]);
  }
  T resk = fv[0] * tab.wk[0];
  T resg{};
  double resabs = tab.wk[0] * magnitude(fv[0]);
  for (int j = 1; j <= 10; ++j) {
    T pair = fv[2 * j - 1] + fv[2 * j];
    resk += pair * tab.wk[j];
    resabs += tab.wk[j] * (magnitude(fv[2 * j - 1]) + magnitude(fv[2 * j]));
    if (j % 2 == 1) resg += pair * tab.wg[(j - 1) / 2];
  }
  const T mean = resk * 0.5;
  double resasc = tab.wk[0] * magnitude(fv[0] - mean);
  for (int j = 1; j <= 10; ++j)
    resasc += tab.wk[j] * (magnitude(fv[2 * j - 1] - mean) + magnitude(fv[2 * j] - mean));
  const double ah = std::abs(h);
  resasc *= ah;
  resabs *= ah;
  double err = magnitude(resk - resg) * ah;
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double epmach = std::numeric_limits<double>::epsilon();
  double floor = 0.0;
  if (resabs > std::numeric_limits<double>::min() / (50.0 * epmach)) {
    floor = 50.0 * epmach * resabs;
    err = std::max(floor, err);
  }
  return {a, b, resk * h, err, floor};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (21/10) over the partition given by
// `breaks` (sorted, at least two points).  Any value type with +, -, *double
// and magnitude() works.  Stops unconverged once the error is dominated by
// roundoff, so a tolerance below it does not exhaust max_evals.
template <class F>
auto adaptive(F&& f, std::vector<double> breaks, double abs_tol, double rel_tol, long max_evals)
    -> Estimate<std::decay_t<decltype(f(0.0))>> {
  using T = std::decay_t<decltype(f(0.0))>;
  using P = detail::Panel<T>;
  Estimate<T> out;
  if (breaks.size() < 2 || breaks.front() == breaks.back()) return out;

  std::vector<P> panels;
  panels.reserve(2 * breaks.size() + 64);
  auto cmp = [&panels](std::size_t i, std::size_t j) { return panels[i].err < panels[j].err; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> heap(cmp);

  T total{};
  double total_err = 0.0, total_floor = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i] == breaks[i + 1]) continue;
    panels.push_back(detail::gk21<T>(f, breaks[i], breaks[i + 1]));
    out.evals += 21;
    total += panels.back().value;
    total_err += panels.back().err;
    total_floor += panels.back().floor;
    heap.push(panels.size() - 1);
  }

  while (!heap.empty()) {
    if (total_err <= std::max(abs_tol, rel_tol * magnitude(total))) break;
    if (out.evals >= max_evals || total_err <= 1.5 * total_floor) {
      out.converged = false;
      break;
    }
    const std::size_t worst = heap.top();
    const P p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > std::min(p.a, p.b) && mid < std::max(p.a, p.b)) ||
        std::abs(p.b - p.a) < 64.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::abs(p.a), std::abs(p.b))) {
      out.converged = false;
      break;
    }
    heap.pop();
    P left = detail::gk21<T>(f, p.a, mid);
    P right = detail::gk21<T>(f, mid, p.b);
    out.evals += 42;
    total += left.value + right.value - p.value;
    total_err += left.err + right.err - p.err;
    total_floor += left.floor + right.floor - p.floor;
    panels[worst] = left;
    heap.push(worst);
    panels.push_back(right);
    heap.push(panels.size() - 1);
  }

  std::sort(panels.begin(), panels.end(), [](const P& x, const P& y) { return x.a < y.a; });
  KahanSum<T> sum;
  double err = 0.0;
  for (const auto& p : panels) {
    sum.add(p.value);
    err += p.err;
  }
  out.value = sum.value();
  out.error = err;
  if (out.converged) out.converged = err <= std::max(abs_tol, rel_tol * magnitude(out.value)) * 1.0000001;
  return out;
}

template <class F>
auto adaptive(F&& f, double a, double b, const QuadSpec& spec) {
  return adaptive(std::forward<F>(f), std::vector<double>{a, b}, spec.abs_tol, spec.rel_tol, spec.max_evals);
}

// Breakpoints on [a, b] such that the unwrapped phase changes by at most
// `max_step` radians per panel (estimated from `samples` phase samples).
std::vector<double> phase_breaks(const std::function<double(double)>& phase, double a, double b,
                                 double max_step = M_PI, int samples = 1024);

// integral of amplitude(x) * exp(i phase(x)) over [a, b].
Estimate<cplx> integrate_oscillatory(const std::function<cplx(double)>& amplitude,
                                     const std::function<double(double)>& phase, double a, double b,
                                     const QuadSpec& spec);

// Convergence-factor regularization of an integral over [a, infinity):
// I(eps) = integral of amplitude * exp(i phase) * damping(eps, s - a), then eps -> 0 by
// polynomial (Neville) extrapolation over eps_k = eps0 * ratio^k.
struct DampingFamily {
  std::function<double(double eps, double x)> weight = [](double eps, double x) { return std::exp(-eps * x); };
  // length beyond which the damped integrand is negligible
  std::function<double(double eps)> support = [](double eps) { return 40.0 / eps; };
  double eps0 = 0.1;
  double ratio = 0.5;
  int points = 8;
};

struct Extrapolated {
  cplx value{};
  double error = 0.0;       // spread of the last two extrapolants
  std::vector<cplx> sequence;  // raw I(eps_k)
  bool converged = true;
  long evals = 0;
};

Extrapolated integrate_semi_infinite_regularized(const std::function<cplx(double)>& amplitude,
                                                 const std::function<double(double)>& phase, double a,
                                                 const DampingFamily& family, const QuadSpec& spec);

// Neville extrapolation of f(h_k) to h = 0.
cplx neville_at_zero(const std::vector<double>& h, const std::vector<cplx>& f);

// k-space integration with d^3k = |k_perp| d|k_perp| dk_par dtheta.  The inner
// k_par integral runs over xi = asinh(k_par/|k_perp|), dk_par = |k_perp| cosh xi dxi.
struct KGrid {
  double kperp_max = 0.0;  // 0: use the cutoff policy's initial value (needs `scale`)
  double kpar_max = 0.0;
  double scale = 1.0;      // eps/(c rho): k-units of the reduced variable z
  int n_theta = 16;        // trapezoid nodes over the azimuth
  bool azimuthal_symmetry = false;
  int kperp_panels = 8;
  int xi_panels = 8;
};

struct CutoffStep {
  double kperp_max;
  double kpar_max;
  double value;
};

struct KSpaceResult {
  double value = 0.0;
  double error = 0.0;
  long evals = 0;
  bool converged = true;        // quadrature and cutoff convergence
  bool cutoff_converged = true;
  double kperp_max = 0.0;
  double kpar_max = 0.0;
  std::vector<CutoffStep> trend;
};

using KIntegrand = std::function<double(const WaveVector&)>;

KSpaceResult integrate_k_space(const KIntegrand& integrand, const KGrid& grid, const QuadSpec& spec);

// Runs fn(i) for i in [0, n) on up to `threads` workers; results must be
// written to per-index slots so the reduction order stays fixed.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace semirad::quad
