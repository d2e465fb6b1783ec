#pragma once

#include <string>
#include <vector>

#include "semirad/radiation.hpp"

namespace semirad::figures {

struct Panel {
  std::string label;  // "a", "b", ...
  double eta;
  radiation::GridQuantity quantity;
};

// All three figures are parallel motion with eta_in = 0 at the scale c/eps.
struct Preset {
  int figure = 1;
  double c_over_eps = 0.1;
  double q = 2.0;
  double eta_in = 0.0;
  double kmax_over_scale = 10.0;  // kmax in units of eps/c
  int nodes = 201;
  std::vector<Panel> panels;

  double kmax() const { return kmax_over_scale / c_over_eps; }
  Source source(const UnitSystem& units = {}) const;
};

Preset preset(int figure);

struct PanelGrid {
  Panel panel;
  radiation::Grid2D grid;
};

std::vector<PanelGrid> compute(const Preset& p, int threads = 1, const UnitSystem& units = {});

// Axisymmetric mass sum value * |kx| over the half planes kpar > 0 and kpar < 0.
struct HalfMasses {
  double forward = 0.0;
  double backward = 0.0;
};
HalfMasses half_masses(const radiation::Grid2D& g);

// Sign changes of (a - b) along grid rays from the origin with integer
// direction (dx, dz); nodes where either value is NaN are skipped.
int sign_changes_along_ray(const radiation::Grid2D& a, const radiation::Grid2D& b, int dx, int dz);

}  // namespace semirad::figures
