#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <random>

#include "doctest.h"
#include "semirad/io.hpp"

using namespace semirad;
using namespace semirad::io;

TEST_CASE("format_double round-trips") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double x = U(rng) * std::pow(10.0, static_cast<int>(U(rng)) % 200);
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("CSV grid round trip is exact") {
  radiation::Grid2D g;
  g.kx = {-1.0 / 3.0, 0.0, 1.0 / 3.0};
  g.kpar = {-0.1, 0.0, std::nextafter(0.1, 1.0)};
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 9; ++i) g.value.push_back(U(rng) * 1e-17);
  g.value[4] = std::nan("");
  const Table t = grid_table(g, {{"command", "figure"}, {"eta", "3.6"}});
  const Table back = parse_csv(to_csv(t));
  CHECK(back.meta == t.meta);
  CHECK(back.columns == std::vector<std::string>{"kx", "kpar", "value"});
  const auto h = table_grid(back);
  CHECK(h.kx == g.kx);
  CHECK(h.kpar == g.kpar);
  for (std::size_t i = 0; i < g.value.size(); ++i) {
    if (std::isnan(g.value[i]))
      CHECK(std::isnan(h.value[i]));
    else
      CHECK(h.value[i] == g.value[i]);
  }

  const std::string path = (std::filesystem::temp_directory_path() / "semirad_io_roundtrip.csv").string();
  write_csv(path, t);
  CHECK(to_csv(read_csv(path)) == to_csv(t));
  std::remove(path.c_str());
}

TEST_CASE("config parsing") {
  const auto kv = parse_config("# comment\nq = 2\nE=0.5  # field\nu0_perp_x = 0.3\nhbar = 0.25\n");
  CHECK(kv.source.q == 2.0);
  CHECK(kv.source.E_field == 0.5);
  CHECK(kv.source.u0_perp[0] == 0.3);
  CHECK(kv.units.hbar == 0.25);
  CHECK(kv.units.c == 1.0);

  const auto js = parse_config(R"({"q": 2, "E": 0.5, "u0_perp_x": 0.3, "hbar": 0.25})");
  CHECK(config_json(js) == config_json(kv));
  CHECK(parse_config(config_json(js).dump()).source.q == 2.0);

  CHECK_THROWS_AS(parse_config("q = 1\ncharge = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("q 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"q": "two"})"), ConfigError);
  CHECK_THROWS_AS(parse_config("E = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("c = -1\n"), ConfigError);
}

TEST_CASE("manifest carries every knob") {
  Config cfg;
  quad::QuadSpec spec;
  spec.rel_tol = 3e-7;
  const json m = manifest("energy", cfg, spec, {{"window", window_json({Bound::at(0.0), Bound::plus_infinity()})}}, 1.5);
  for (const char* key : {"command", "version", "config", "derived", "quadrature", "params", "wall_seconds"})
    CHECK(m.contains(key));
  CHECK(m["quadrature"]["rel_tol"] == 3e-7);
  for (const char* key : {"abs_tol", "rel_tol", "max_evals", "threads", "cutoff"}) CHECK(m["quadrature"].contains(key));
  CHECK(m["params"]["window"]["eta"] == "inf");
  CHECK(m["version"] == kVersion);
  const auto meta = manifest_metadata(m);
  CHECK(meta.size() == m.size());
}
