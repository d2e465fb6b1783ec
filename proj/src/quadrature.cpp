#include "semirad/quadrature.hpp"

#include <atomic>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <stdexcept>
#include <thread>

namespace semirad::quad {

namespace detail {

const GK21Table& gk21_table() {
  static const GK21Table table = [] {
    GK21Table t{};
    const auto& x = boost::math::quadrature::gauss_kronrod<double, 21>::abscissa();
    const auto& w = boost::math::quadrature::gauss_kronrod<double, 21>::weights();
    const auto& g = boost::math::quadrature::gauss<double, 10>::weights();
    for (std::size_t i = 0; i < 11; ++i) {
      t.xk[i] = x[i];
      t.wk[i] = w[i];
    }
    for (std::size_t i = 0; i < 5; ++i) t.wg[i] = g[i];
    return t;
  }();
  return table;
}

}  // namespace detail

std::vector<double> phase_breaks(const std::function<double(double)>& phase, double a, double b,
                                 double max_step, int samples) {
  std::vector<double> breaks{a};
  if (a == b) {
    breaks.push_back(b);
    return breaks;
  }
  const double h = (b - a) / samples;
  double prev = phase(a), acc = 0.0, next_mark = max_step;
  for (int i = 1; i <= samples; ++i) {
    const double x1 = (i == samples) ? b : a + i * h;
    const double cur = phase(x1);
    const double d = std::abs(cur - prev);
    if (!std::isfinite(d)) throw std::domain_error("phase_breaks: non-finite phase");
    while (acc + d >= next_mark) {
      const double frac = (next_mark - acc) / d;
      const double x = x1 - h + frac * h;
      if (x > breaks.back() && x < b) breaks.push_back(x);
      next_mark += max_step;
    }
    acc += d;
    prev = cur;
  }
  breaks.push_back(b);
  return breaks;
}

Estimate<cplx> integrate_oscillatory(const std::function<cplx(double)>& amplitude,
                                     const std::function<double(double)>& phase, double a, double b,
                                     const QuadSpec& spec) {
  if (a == b) return {};
  const double sign = b > a ? 1.0 : -1.0;
  const double lo = std::min(a, b), hi = std::max(a, b);
  auto f = [&](double x) { return amplitude(x) * std::polar(1.0, phase(x)); };
  auto est = adaptive(f, phase_breaks(phase, lo, hi), spec.abs_tol, spec.rel_tol, spec.max_evals);
  est.value *= sign;
  return est;
}

cplx neville_at_zero(const std::vector<double>& h, const std::vector<cplx>& f) {
  std::vector<cplx> p(f);
  const std::size_t n = p.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i)
      p[i] = (h[i + m] * p[i] - h[i] * p[i + 1]) / (h[i + m] - h[i]);
  return p[0];
}

Extrapolated integrate_semi_infinite_regularized(const std::function<cplx(double)>& amplitude,
                                                 const std::function<double(double)>& phase, double a,
                                                 const DampingFamily& family, const QuadSpec& spec) {
  if (family.points < 2 || !(family.ratio > 0.0 && family.ratio < 1.0) || !(family.eps0 > 0.0))
    throw std::invalid_argument("damping family needs >= 2 points and 0 < ratio < 1");
  Extrapolated out;
  std::vector<double> eps;
  QuadSpec inner = spec;
  inner.rel_tol = std::min(spec.rel_tol, 1e-12);
  for (int k = 0; k < family.points; ++k) {
    const double e = family.eps0 * std::pow(family.ratio, k);
    auto amp = [&](double x) { return amplitude(x) * family.weight(e, x - a); };
    // Blocks of doubling length so features near the lower limit are not
    // lost inside one panel spanning the whole damped support.
    const double L = family.support(e);
    KahanSum<cplx> sum;
    for (double x0 = 0.0, x1 = std::min(1.0, L); x0 < L; x0 = x1, x1 = std::min(2.0 * x1, L)) {
      auto est = integrate_oscillatory(amp, phase, a + x0, a + x1, inner);
      sum.add(est.value);
      out.evals += est.evals;
      if (!est.converged) out.converged = false;
    }
    eps.push_back(e);
    out.sequence.push_back(sum.value());
  }
  // Extrapolants from the leading subsequences; the spread of the last two
  // is the reported error, and it must shrink along the sequence.
  std::vector<cplx> ext;
  for (std::size_t n = 2; n <= eps.size(); ++n)
    ext.push_back(neville_at_zero({eps.begin(), eps.begin() + n}, {out.sequence.begin(), out.sequence.begin() + n}));
  out.value = ext.back();
  out.error = ext.size() > 1 ? std::abs(ext[ext.size() - 1] - ext[ext.size() - 2]) : std::abs(out.value);
  if (ext.size() > 2) {
    const double before = std::abs(ext[ext.size() - 2] - ext[ext.size() - 3]);
    if (out.error > before && out.error > 1e3 * spec.abs_tol) out.converged = false;
  }
  return out;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

struct XiInterval {
  double lo, hi;
};

// Integral over k_perp in [kpa, kpb] and, for each k_perp, over the xi
// intervals returned by `xi_ranges`.  The azimuth is a trapezoid sum.
Estimate<double> region(const KIntegrand& integrand, const KGrid& grid, const QuadSpec& spec,
                        double kpa, double kpb,
                        const std::function<std::vector<XiInterval>(double)>& xi_ranges, double abs_tol) {
  const int n_theta = grid.azimuthal_symmetry ? 1 : std::max(2, grid.n_theta);
  const double w_theta = 2.0 * M_PI / n_theta;
  std::vector<Estimate<double>> per_theta(n_theta);

  parallel_for(n_theta, spec.threads, [&](std::size_t j) {
    const double th = w_theta * j;
    const double ct = std::cos(th), st = std::sin(th);
    long evals = 0;
    auto inner = [&](double kp) {
      double acc = 0.0;
      for (const auto& iv : xi_ranges(kp)) {
        if (!(iv.hi > iv.lo)) continue;
        std::vector<double> br;
        const int np = std::max(1, grid.xi_panels);
        for (int i = 0; i <= np; ++i) br.push_back(iv.lo + (iv.hi - iv.lo) * i / np);
        auto f = [&](double xi) {
          const double ch = std::cosh(xi);
          WaveVector k{kp * ct, kp * st, kp * std::sinh(xi)};
          return integrand(k) * kp * kp * ch;
        };
        auto est = adaptive(f, br, abs_tol / (kpb - kpa + 1e-300) * 1e-2, spec.rel_tol * 0.1,
                            spec.max_evals);
        evals += est.evals;
        acc += est.value;
      }
      return acc;
    };
    std::vector<double> br;
    const int np = std::max(1, grid.kperp_panels);
    for (int i = 0; i <= np; ++i) br.push_back(kpa + (kpb - kpa) * i / np);
    auto est = adaptive(inner, br, abs_tol, spec.rel_tol, spec.max_evals / 21 + 1);
    est.evals = evals;
    per_theta[j] = est;
  });

  Estimate<double> out;
  KahanSum<double> sum;
  for (const auto& e : per_theta) {
    sum.add(e.value * w_theta);
    out.error += e.error * w_theta;
    out.evals += e.evals;
    if (!e.converged) out.converged = false;
  }
  out.value = sum.value();
  return out;
}

}  // namespace

KSpaceResult integrate_k_space(const KIntegrand& integrand, const KGrid& grid, const QuadSpec& spec) {
  const auto& pol = spec.cutoff;
  if (!(pol.growth > 1.0)) throw std::invalid_argument("cutoff growth factor must exceed 1");
  double kp = grid.kperp_max > 0.0 ? grid.kperp_max : pol.initial_z * grid.scale;
  double kz = grid.kpar_max > 0.0 ? grid.kpar_max : pol.initial_z * grid.scale;
  if (!(kp > 0.0) || !(kz > 0.0)) throw std::invalid_argument("k-space cutoffs must be positive");

  auto full = [](double kz_max) {
    return [kz_max](double k) {
      const double X = std::asinh(kz_max / k);
      return std::vector<XiInterval>{{-X, X}};
    };
  };

  KSpaceResult res;
  auto base = region(integrand, grid, spec, 0.0, kp, full(kz), spec.abs_tol);
  res.value = base.value;
  res.error = base.error;
  res.evals = base.evals;
  res.converged = base.converged;
  res.trend.push_back({kp, kz, res.value});

  if (pol.grow) {
    res.cutoff_converged = false;
    for (int step = 0; step < pol.max_steps; ++step) {
      const double kp2 = kp * pol.growth, kz2 = kz * pol.growth;
      const double tol = std::max(spec.abs_tol, 0.1 * spec.rel_tol * std::abs(res.value));
      auto outer_shell = region(integrand, grid, spec, kp, kp2, full(kz2), tol);
      auto par_shell = region(
          integrand, grid, spec, 0.0, kp,
          [kz, kz2](double k) {
            const double X1 = std::asinh(kz / k), X2 = std::asinh(kz2 / k);
            return std::vector<XiInterval>{{-X2, -X1}, {X1, X2}};
          },
          tol);
      const double inc = outer_shell.value + par_shell.value;
      res.value += inc;
      res.error += outer_shell.error + par_shell.error;
      res.evals += outer_shell.evals + par_shell.evals;
      if (!outer_shell.converged || !par_shell.converged) res.converged = false;
      kp = kp2;
      kz = kz2;
      res.trend.push_back({kp, kz, res.value});
      if (std::abs(inc) <= pol.rel_change * std::abs(res.value)) {
        res.cutoff_converged = true;
        break;
      }
    }
    if (!res.cutoff_converged) res.converged = false;
  }
  res.kperp_max = kp;
  res.kpar_max = kz;
  return res;
}

}  // namespace semirad::quad
