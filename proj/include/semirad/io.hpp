#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "semirad/quadrature.hpp"
#include "semirad/radiation.hpp"
#include "semirad/units.hpp"

namespace semirad::io {

using json = nlohmann::json;
using Metadata = std::vector<std::pair<std::string, std::string>>;

inline constexpr const char* kVersion = "0.1.0";

// Values are written with 17 significant digits so a parse reproduces them.
std::string format_double(double x);

struct Table {
  Metadata meta;                  // '#'-prefixed "key: value" lines
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_csv(const std::string& path, const Table& t);
std::string to_csv(const Table& t);
Table parse_csv(const std::string& text);
Table read_csv(const std::string& path);

// Figure grids: columns kx, kpar, value, kpar-major.
Table grid_table(const radiation::Grid2D& g, Metadata meta);
radiation::Grid2D table_grid(const Table& t);

// Config: JSON object or "key = value" lines with keys q, m, E, u0_perp_x,
// u0_perp_y, u0_par, c, hbar.  Unknown keys are rejected.
struct Config {
  SourceConfig source;
  UnitSystem units;
};
Config parse_config(const std::string& text);
Config load_config(const std::string& path);
json config_json(const Config& c);

json spec_json(const quad::QuadSpec& s);
json kspace_json(const quad::KSpaceResult& r);
json window_json(const RapidityWindow& w);

// Run manifest embedded in every output: command, parameters after
// defaults, tolerances, cutoffs, version, wall time.
json manifest(const std::string& command, const Config& cfg, const quad::QuadSpec& spec, const json& params,
              double wall_seconds);
Metadata manifest_metadata(const json& m);

void write_json(const std::string& path, const json& j);

}  // namespace semirad::io
