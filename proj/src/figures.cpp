#include "semirad/figures.hpp"

#include <cmath>
#include <stdexcept>

namespace semirad::figures {

Source Preset::source(const UnitSystem& units) const { return source_for_scale(q, c_over_eps, units); }

Preset preset(int figure) {
  using Q = radiation::GridQuantity;
  Preset p;
  p.figure = figure;
  switch (figure) {
    case 1:
      p.panels = {{"a", 3.0, Q::energy}, {"b", 3.6, Q::energy}, {"c", 4.0, Q::energy}, {"d", 4.5, Q::energy}};
      break;
    case 2:
      p.panels = {{"a", 3.8, Q::energy}, {"b", 3.8, Q::energy_asymptotic}};
      break;
    case 3:
      p.panels = {{"a", 3.0, Q::rate}, {"b", 3.5, Q::rate}, {"c", 4.0, Q::rate}, {"d", 4.5, Q::rate}};
      break;
    default:
      throw std::invalid_argument("figure must be 1, 2 or 3");
  }
  return p;
}

std::vector<PanelGrid> compute(const Preset& p, int threads, const UnitSystem& units) {
  const Source src = p.source(units);
  std::vector<PanelGrid> out;
  for (const auto& panel : p.panels) {
    const RapidityWindow w{Bound::at(p.eta_in), Bound::at(panel.eta)};
    out.push_back({panel, radiation::figure_grid(src, panel.quantity, w, p.kmax(), p.nodes, threads)});
  }
  return out;
}

HalfMasses half_masses(const radiation::Grid2D& g) {
  HalfMasses m;
  for (std::size_t ip = 0; ip < g.kpar.size(); ++ip)
    for (std::size_t ix = 0; ix < g.kx.size(); ++ix) {
      const double v = g.at(ix, ip);
      if (std::isnan(v)) continue;
      if (g.kpar[ip] > 0.0) m.forward += v * std::abs(g.kx[ix]);
      if (g.kpar[ip] < 0.0) m.backward += v * std::abs(g.kx[ix]);
    }
  return m;
}

int sign_changes_along_ray(const radiation::Grid2D& a, const radiation::Grid2D& b, int dx, int dz) {
  if (a.kx.size() != b.kx.size() || a.kpar.size() != b.kpar.size()) throw std::invalid_argument("grid shapes differ");
  if (a.kx.size() % 2 == 0 || a.kpar.size() != a.kx.size()) throw std::invalid_argument("rays need an odd square grid");
  const long c = static_cast<long>(a.kx.size() / 2), n = static_cast<long>(a.kx.size());
  int changes = 0, last = 0;
  for (long s = 1;; ++s) {
    const long ix = c + s * dx, iz = c + s * dz;
    if (ix < 0 || iz < 0 || ix >= n || iz >= n) break;
    const double d = a.at(ix, iz) - b.at(ix, iz);
    if (std::isnan(d) || d == 0.0) continue;
    const int sg = d > 0.0 ? 1 : -1;
    if (last != 0 && sg != last) ++changes;
    last = sg;
  }
  return changes;
}

}  // namespace semirad::figures
