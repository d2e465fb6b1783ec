// Python bindings: sources, windows, energies, rates, photon statistics,
// special functions, figure grids and the acceptance suite.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>

#include "semirad/figures.hpp"
#include "semirad/io.hpp"
#include "semirad/photon_stats.hpp"
#include "semirad/radiation.hpp"
#include "semirad/specfun.hpp"
#include "semirad/verify.hpp"

namespace py = pybind11;
using namespace semirad;

namespace {

Bound to_bound(double v) {
  if (std::isnan(v)) throw std::invalid_argument("window endpoint is NaN");
  if (std::isinf(v)) return v > 0 ? Bound::plus_infinity() : Bound::minus_infinity();
  return Bound::at(v);
}

RapidityWindow to_window(std::pair<double, double> w) { return {to_bound(w.first), to_bound(w.second)}; }

py::tuple from_window(const RapidityWindow& w) { return py::make_tuple(w.eta_in.value, w.eta.value); }

quad::QuadSpec make_spec(double abs_tol, double rel_tol, double cutoff_z, bool fixed_cutoff, int threads) {
  quad::QuadSpec s;
  s.abs_tol = abs_tol;
  s.rel_tol = rel_tol;
  s.cutoff.initial_z = cutoff_z;
  s.cutoff.grow = !fixed_cutoff;
  s.threads = threads;
  return s;
}

py::dict kspace(const quad::KSpaceResult& r) {
  py::list trend;
  for (const auto& s : r.trend) trend.append(py::make_tuple(s.kperp_max, s.kpar_max, s.value));
  py::dict d;
  d["value"] = r.value;
  d["error"] = r.error;
  d["evals"] = r.evals;
  d["converged"] = r.converged;
  d["cutoff_converged"] = r.cutoff_converged;
  d["kperp_max"] = r.kperp_max;
  d["kpar_max"] = r.kpar_max;
  d["trend"] = trend;
  return d;
}

py::dict rate_dict(const radiation::RateResult& r) {
  py::dict d;
  d["w"] = r.w;
  d["error"] = r.error;
  d["variant"] = radiation::to_string(r.variant);
  d["window"] = from_window(r.window);
  d["kspace"] = kspace(r.k);
  d["check_integral"] = r.check_integral;
  d["check_error"] = r.check_error;
  return d;
}

py::array_t<double> grid_values(const radiation::Grid2D& g) {
  py::array_t<double> a({g.kpar.size(), g.kx.size()});
  std::copy(g.value.begin(), g.value.end(), a.mutable_data());
  return a;
}

py::dict grid_dict(const radiation::Grid2D& g) {
  py::dict d;
  d["kx"] = py::array_t<double>(g.kx.size(), g.kx.data());
  d["kpar"] = py::array_t<double>(g.kpar.size(), g.kpar.data());
  d["value"] = grid_values(g);
  return d;
}

UWindow uwin(double a, double b) { return {to_bound(a), to_bound(b)}; }

}  // namespace

PYBIND11_MODULE(_semirad, m) {
  m.doc() = "Radiation of a charge uniformly accelerated by a constant electric field";
  m.attr("__version__") = io::kVersion;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<radiation::DivergenceError>(m, "DivergenceError", PyExc_ArithmeticError);

  py::class_<Source>(m, "Source")
      .def(py::init([](double q, double mass, double E, std::pair<double, double> u0_perp, double u0_par, double c,
                       double hbar) {
             SourceConfig cfg;
             cfg.q = q;
             cfg.m = mass;
             cfg.E_field = E;
             cfg.u0_perp = {u0_perp.first, u0_perp.second};
             cfg.u0_par = u0_par;
             return Source(cfg, {c, hbar});
           }),
           py::arg("q") = 1.0, py::arg("m") = 1.0, py::arg("E") = 1.0,
           py::arg("u0_perp") = std::pair<double, double>{0.0, 0.0}, py::arg("u0_par") = 0.0, py::arg("c") = 1.0,
           py::arg("hbar") = 1.0)
      .def_property_readonly("eps", &Source::eps)
      .def_property_readonly("rho", &Source::rho)
      .def_property_readonly("a", [](const Source& s) { return s.d.a; })
      .def_property_readonly("c", &Source::c)
      .def_property_readonly("hbar", [](const Source& s) { return s.units.hbar; })
      .def_property_readonly("q", [](const Source& s) { return s.cfg.q; })
      .def_property_readonly("parallel", &Source::parallel)
      .def("__repr__", [](const Source& s) {
        return "Source(q=" + io::format_double(s.cfg.q) + ", eps=" + io::format_double(s.eps()) +
               ", rho=" + io::format_double(s.rho()) + ")";
      });

  m.def("source_for_scale", [](double q, double c_over_eps) { return source_for_scale(q, c_over_eps); },
        py::arg("q"), py::arg("c_over_eps"));
  m.def("eta_of_t", &eta_of_t, py::arg("src"), py::arg("t"));
  m.def("t_of_eta", &t_of_eta, py::arg("src"), py::arg("eta"));
  m.def(
      "trajectory",
      [](const Source& s, double t) {
        const auto tr = trajectory(s, t);
        return py::make_tuple(tr.r, tr.beta);
      },
      py::arg("src"), py::arg("t"));
  m.def(
      "window_from_times",
      [](const Source& s, double t_in, double t) { return from_window(to_rapidity(s, {to_bound(t_in), to_bound(t)})); },
      py::arg("src"), py::arg("t_in"), py::arg("t"));

  m.def(
      "energy_density",
      [](const Source& s, std::array<double, 3> k, std::pair<double, double> w, double abs_tol, double rel_tol) {
        const auto v = radiation::energy_density(s, {k[0], k[1], k[2]}, to_window(w), {abs_tol, rel_tol});
        return py::make_tuple(v.value, v.err);
      },
      py::arg("src"), py::arg("k"), py::arg("window"), py::arg("abs_tol") = 1e-12, py::arg("rel_tol") = 1e-10);
  m.def(
      "rate_density",
      [](const Source& s, std::array<double, 3> k, std::pair<double, double> w) {
        return radiation::rate_density(s, {k[0], k[1], k[2]}, to_window(w));
      },
      py::arg("src"), py::arg("k"), py::arg("window"));
  m.def(
      "total_energy",
      [](const Source& s, std::pair<double, double> w, double abs_tol, double rel_tol, double cutoff_z,
         bool fixed_cutoff, int threads) {
        const auto route = s.parallel() ? radiation::EnergyRoute::parallel : radiation::EnergyRoute::general;
        const auto r = radiation::total_energy(s, to_window(w), make_spec(abs_tol, rel_tol, cutoff_z, fixed_cutoff, threads),
                                               {}, route);
        py::dict d;
        d["W"] = r.W;
        d["error"] = r.error;
        d["kspace"] = kspace(r.k);
        return d;
      },
      py::arg("src"), py::arg("window"), py::arg("abs_tol") = 1e-12, py::arg("rel_tol") = 1e-9,
      py::arg("cutoff_z") = 20.0, py::arg("fixed_cutoff") = false, py::arg("threads") = 1);

  m.def(
      "rate",
      [](const Source& s, const std::string& variant, std::optional<std::pair<double, double>> window,
         std::optional<double> t, std::optional<double> T, double abs_tol, double rel_tol, double cutoff_z,
         bool fixed_cutoff, int threads) {
        const auto spec = make_spec(abs_tol, rel_tol, cutoff_z, fixed_cutoff, threads);
        auto need = [&](bool ok, const char* what) {
          if (!ok) throw std::invalid_argument("variant " + variant + " needs " + what);
        };
        if (variant == "general") {
          need(window.has_value(), "window");
          return rate_dict(radiation::rate_general(s, to_window(*window), spec));
        }
        if (variant == "halfinfinite") {
          need(t.has_value(), "t");
          return rate_dict(radiation::rate_halfinfinite(s, *t, spec));
        }
        if (variant == "parallel") {
          need(t.has_value(), "t");
          return rate_dict(radiation::rate_parallel(s, *t, spec));
        }
        if (variant == "symmetric" || variant == "symmetric-parallel") {
          need(T.has_value(), "T");
          return rate_dict(radiation::rate_symmetric(s, *T, spec, {}, variant == "symmetric-parallel"));
        }
        if (variant == "asymptotic") return rate_dict(radiation::rate_asymptotic(s));
        if (variant == "classical-nr") return rate_dict(radiation::rate_classical_NR(s));
        throw std::invalid_argument("unknown rate variant '" + variant + "'");
      },
      py::arg("src"), py::arg("variant") = "general", py::arg("window") = py::none(), py::arg("t") = py::none(),
      py::arg("T") = py::none(), py::arg("abs_tol") = 1e-12, py::arg("rel_tol") = 1e-9, py::arg("cutoff_z") = 20.0,
      py::arg("fixed_cutoff") = false, py::arg("threads") = 1);

  m.def("dw_cl", &radiation::dw_cl, py::arg("src"), py::arg("z"), py::arg("vartheta"));
  m.def("theta_max", &radiation::theta_max, py::arg("eta"));
  m.def(
      "spectral_angular_energy",
      [](const Source& s, double k0, double theta, std::pair<double, double> w) {
        return radiation::spectral_angular_energy(s, k0, theta, to_window(w)).value;
      },
      py::arg("src"), py::arg("k0"), py::arg("theta"), py::arg("window"));
  m.def(
      "asymptotic_distribution",
      [](const Source& s, double k0, double theta, std::pair<double, double> w) {
        return radiation::asymptotic_distribution(s, k0, theta, to_window(w));
      },
      py::arg("src"), py::arg("k0"), py::arg("theta"), py::arg("window"));
  m.def(
      "rate_spectral_angular",
      [](const Source& s, double k0, double theta, std::pair<double, double> w) {
        return radiation::rate_spectral_angular(s, k0, theta, to_window(w));
      },
      py::arg("src"), py::arg("k0"), py::arg("theta"), py::arg("window"));

  // photon statistics
  m.def("n_photon_probability", &photon_stats::n_photon_probability, py::arg("N"), py::arg("lambda_bar"));
  m.def("n_photon_energy", &photon_stats::n_photon_energy, py::arg("N"), py::arg("W1"), py::arg("lambda_bar"));
  m.def("one_photon_energy", &photon_stats::one_photon_energy, py::arg("W"), py::arg("lambda_bar"));
  m.def("one_photon_energy_classical", &photon_stats::one_photon_energy_classical, py::arg("W"), py::arg("hbar_c"));
  m.def(
      "emission_summary",
      [](const Source& s, std::pair<double, double> w, double abs_tol, double rel_tol, double cutoff_z,
         bool fixed_cutoff, int n_max, int threads) {
        const auto r = photon_stats::emission_summary(
            s, to_window(w), make_spec(abs_tol, rel_tol, cutoff_z, fixed_cutoff, threads), {}, n_max);
        py::dict d;
        d["lambda_bar"] = r.lambda_bar;
        d["lambda_error"] = r.lambda_error;
        d["P0"] = r.P0;
        d["W"] = r.W;
        d["W_error"] = r.W_error;
        d["W1"] = r.W1;
        d["P"] = r.P;
        d["W_N"] = r.W_N;
        d["converged"] = r.converged;
        return d;
      },
      py::arg("src"), py::arg("window"), py::arg("abs_tol") = 1e-12, py::arg("rel_tol") = 1e-9,
      py::arg("cutoff_z") = 20.0, py::arg("fixed_cutoff") = false, py::arg("n_max") = 0, py::arg("threads") = 1);

  // special functions
  auto sf = m.def_submodule("specfun", "incomplete cylindrical functions");
  sf.def(
      "incomplete_macdonald",
      [](double nu, double z, double u_in, double u) { return specfun::incomplete_macdonald(nu, z, uwin(u_in, u)).value; },
      py::arg("nu"), py::arg("z"), py::arg("u_in"), py::arg("u"));
  sf.def(
      "incomplete_macdonald_dz",
      [](double nu, double z, double u_in, double u) {
        return specfun::incomplete_macdonald_dz(nu, z, uwin(u_in, u)).value;
      },
      py::arg("nu"), py::arg("z"), py::arg("u_in"), py::arg("u"));
  sf.def(
      "incomplete_macdonald_dxi",
      [](double nu, double z, double u_in, double u) { return specfun::incomplete_macdonald_dxi(nu, z, uwin(u_in, u)); },
      py::arg("nu"), py::arg("z"), py::arg("u_in"), py::arg("u"));
  sf.def(
      "s_combination",
      [](double nu, double z, double kpar_over_k, double u_in, double u) {
        return specfun::s_combination(nu, z, kpar_over_k, uwin(u_in, u)).value;
      },
      py::arg("nu"), py::arg("z"), py::arg("kpar_over_k"), py::arg("u_in"), py::arg("u"));
  sf.def(
      "k0_series", [](double z, double u_in, double u) { return specfun::k0_series(z, u_in, u).value; }, py::arg("z"),
      py::arg("u_in"), py::arg("u"));
  sf.def(
      "macdonald_imag_order", [](double nu, double z) { return specfun::macdonald_imag_order(nu, z); }, py::arg("nu"),
      py::arg("z"));
  sf.def(
      "macdonald_imag_order_dz", [](double nu, double z) { return specfun::macdonald_imag_order_dz(nu, z); },
      py::arg("nu"), py::arg("z"));
  sf.def(
      "epsilon_incomplete",
      [](std::complex<double> nu, double a, std::complex<double> z) { return specfun::epsilon_incomplete(nu, a, z).value; },
      py::arg("nu"), py::arg("a"), py::arg("z"));
  sf.def("epsilon_asymptotic", &specfun::epsilon_asymptotic, py::arg("nu"), py::arg("a"), py::arg("z"));

  // figures
  m.def(
      "figure",
      [](int n, int nodes, double kmax_over_scale, double c_over_eps, int threads) {
        auto p = figures::preset(n);
        p.nodes = nodes;
        p.kmax_over_scale = kmax_over_scale;
        p.c_over_eps = c_over_eps;
        py::list out;
        for (const auto& pg : figures::compute(p, threads)) {
          py::dict d = grid_dict(pg.grid);
          d["panel"] = pg.panel.label;
          d["eta"] = pg.panel.eta;
          d["quantity"] = pg.panel.quantity == radiation::GridQuantity::rate                ? "rate"
                          : pg.panel.quantity == radiation::GridQuantity::energy_asymptotic ? "energy_asymptotic"
                                                                                              : "energy";
          out.append(d);
        }
        return out;
      },
      py::arg("n"), py::arg("nodes") = 201, py::arg("kmax_over_scale") = 10.0, py::arg("c_over_eps") = 0.1,
      py::arg("threads") = 1);
  m.def(
      "read_grid",
      [](const std::string& path) {
        const auto t = io::read_csv(path);
        py::dict d = grid_dict(io::table_grid(t));
        py::dict meta;
        for (const auto& [k, v] : t.meta) meta[py::str(k)] = v;
        d["meta"] = meta;
        return d;
      },
      py::arg("path"));

  // acceptance suite
  m.def(
      "verify",
      [](std::vector<std::string> only, double tighten) {
        verify::Options o;
        o.only = std::move(only);
        o.tighten = tighten;
        py::list out;
        for (const auto& c : verify::run(o)) {
          py::dict d;
          d["name"] = c.name;
          d["pass"] = c.pass;
          d["detail"] = c.detail;
          d["seconds"] = c.seconds;
          d["limit_seconds"] = c.limit_seconds;
          out.append(d);
        }
        return out;
      },
      py::arg("only") = std::vector<std::string>{}, py::arg("tighten") = 1.0);
}
