#include "semirad/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace semirad::io {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  if (s == "nan" || s == "NaN") return std::nan("");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::runtime_error("not a number: '" + s + "'");
  }
  if (used != s.size()) throw std::runtime_error("not a number: '" + s + "'");
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void set_key(Config& c, const std::string& key, double v) {
  if (key == "q") c.source.q = v;
  else if (key == "m") c.source.m = v;
  else if (key == "E") c.source.E_field = v;
  else if (key == "u0_perp_x") c.source.u0_perp[0] = v;
  else if (key == "u0_perp_y") c.source.u0_perp[1] = v;
  else if (key == "u0_par") c.source.u0_par = v;
  else if (key == "c") c.units.c = v;
  else if (key == "hbar") c.units.hbar = v;
  else throw ConfigError("unknown config key '" + key + "'");
}

std::string bound_string(const Bound& b) {
  if (b.inf < 0) return "-inf";
  if (b.inf > 0) return "inf";
  return format_double(b.value);
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const Table& t) {
  std::ostringstream out;
  for (const auto& [k, v] : t.meta) out << "# " << k << ": " << v << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const auto& r : t.rows) {
    if (r.size() != t.columns.size()) throw std::logic_error("row width does not match the header");
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_double(r[i]);
    out << "\n";
  }
  return out.str();
}

void write_csv(const std::string& path, const Table& t) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_csv(t);
}

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = trim(line.substr(1));
      const auto colon = body.find(':');
      if (colon == std::string::npos) t.meta.emplace_back(body, "");
      else t.meta.emplace_back(trim(body.substr(0, colon)), trim(body.substr(colon + 1)));
      continue;
    }
    auto cells = split(line, ',');
    if (t.columns.empty()) {
      t.columns = cells;
      continue;
    }
    if (cells.size() != t.columns.size())
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected " + std::to_string(t.columns.size()) +
                               " fields");
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_double(c));
    t.rows.push_back(std::move(row));
  }
  if (t.columns.empty()) throw std::runtime_error("CSV has no header line");
  return t;
}

Table read_csv(const std::string& path) { return parse_csv(slurp(path)); }

Table grid_table(const radiation::Grid2D& g, Metadata meta) {
  Table t;
  t.meta = std::move(meta);
  t.meta.emplace_back("nodes", std::to_string(g.kx.size()) + "x" + std::to_string(g.kpar.size()));
  t.columns = {"kx", "kpar", "value"};
  for (std::size_t ip = 0; ip < g.kpar.size(); ++ip)
    for (std::size_t ix = 0; ix < g.kx.size(); ++ix) t.rows.push_back({g.kx[ix], g.kpar[ip], g.at(ix, ip)});
  return t;
}

radiation::Grid2D table_grid(const Table& t) {
  if (t.columns != std::vector<std::string>{"kx", "kpar", "value"})
    throw std::runtime_error("grid CSV must have columns kx,kpar,value");
  radiation::Grid2D g;
  for (const auto& r : t.rows) {
    if (g.kpar.empty() || r[1] != g.kpar.back()) g.kpar.push_back(r[1]);
    if (g.kpar.size() == 1) g.kx.push_back(r[0]);
    g.value.push_back(r[2]);
  }
  if (g.kx.size() * g.kpar.size() != g.value.size()) throw std::runtime_error("grid CSV is not rectangular");
  return g;
}

Config parse_config(const std::string& text) {
  Config c;
  const std::string body = trim(text);
  if (!body.empty() && body[0] == '{') {
    const json j = json::parse(body);
    for (const auto& [k, v] : j.items()) {
      if (!v.is_number()) throw ConfigError("config key '" + k + "' must be a number");
      set_key(c, k, v.get<double>());
    }
  } else {
    std::istringstream in(body);
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ConfigError("expected key = value, got '" + line + "'");
      set_key(c, trim(line.substr(0, eq)), parse_double(trim(line.substr(eq + 1))));
    }
  }
  derive_constants(c.source, c.units);  // validate early
  return c;
}

Config load_config(const std::string& path) { return parse_config(slurp(path)); }

json config_json(const Config& c) {
  return {{"q", c.source.q},
          {"m", c.source.m},
          {"E", c.source.E_field},
          {"u0_perp_x", c.source.u0_perp[0]},
          {"u0_perp_y", c.source.u0_perp[1]},
          {"u0_par", c.source.u0_par},
          {"c", c.units.c},
          {"hbar", c.units.hbar}};
}

json spec_json(const quad::QuadSpec& s) {
  return {{"abs_tol", s.abs_tol},
          {"rel_tol", s.rel_tol},
          {"max_evals", s.max_evals},
          {"threads", s.threads},
          {"cutoff",
           {{"initial_z", s.cutoff.initial_z},
            {"growth", s.cutoff.growth},
            {"rel_change", s.cutoff.rel_change},
            {"max_steps", s.cutoff.max_steps},
            {"grow", s.cutoff.grow}}}};
}

json kspace_json(const quad::KSpaceResult& r) {
  json trend = json::array();
  for (const auto& s : r.trend) trend.push_back({{"kperp_max", s.kperp_max}, {"kpar_max", s.kpar_max}, {"value", s.value}});
  return {{"value", r.value},
          {"error", r.error},
          {"evals", r.evals},
          {"converged", r.converged},
          {"cutoff_converged", r.cutoff_converged},
          {"kperp_max", r.kperp_max},
          {"kpar_max", r.kpar_max},
          {"trend", trend}};
}

json window_json(const RapidityWindow& w) {
  return {{"eta_in", bound_string(w.eta_in)}, {"eta", bound_string(w.eta)}};
}

json manifest(const std::string& command, const Config& cfg, const quad::QuadSpec& spec, const json& params,
              double wall_seconds) {
  const auto d = derive_constants(cfg.source, cfg.units);
  return {{"command", command},
          {"version", kVersion},
          {"config", config_json(cfg)},
          {"derived", {{"eps", d.eps}, {"rho", d.rho}, {"a", d.a}}},
          {"quadrature", spec_json(spec)},
          {"params", params},
          {"wall_seconds", wall_seconds}};
}

Metadata manifest_metadata(const json& m) {
  Metadata meta;
  for (const auto& [k, v] : m.items()) meta.emplace_back(k, v.is_string() ? v.get<std::string>() : v.dump());
  return meta;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace semirad::io
