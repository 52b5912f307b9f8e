#include "run_config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "mirrorflux/scenarios.hpp"

namespace mirrorflux::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

double to_double(const KeyValues& kv, const std::string& key) {
  const std::string& s = kv.at(key);
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(x)) {
    throw ConfigError("field '" + key + "': expected a finite number, got '" + s + "'");
  }
  return x;
}

int to_int(const KeyValues& kv, const std::string& key) {
  const std::string& s = kv.at(key);
  char* end = nullptr;
  errno = 0;
  const long x = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || x > 1000000 || x < -1000000) {
    throw ConfigError("field '" + key + "': expected an integer, got '" + s + "'");
  }
  return static_cast<int>(x);
}

std::vector<double> axis(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  return out;
}

}  // namespace

const std::vector<std::string>& run_keys() {
  static const std::vector<std::string> keys = {"scenario", "a",      "chart",  "c1_min",
                                                "c1_max",   "n1",     "c2_min", "c2_max",
                                                "n2",       "frame",  "output", "format"};
  return keys;
}

KeyValues parse_key_values(const std::string& text, const std::string& source) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw ConfigError(source + ":" + std::to_string(lineno) + ": empty key");
    kv[key] = trim(t.substr(eq + 1));
  }
  return kv;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str(), path);
}

RunConfig parse_run_config(const KeyValues& kv) {
  const auto& keys = run_keys();
  for (const auto& [k, v] : kv) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
      throw ConfigError("unknown field '" + k + "'");
    }
  }
  for (const char* k : {"scenario", "c1_min", "c1_max", "n1", "c2_min", "c2_max", "n2"}) {
    if (!kv.count(k)) throw ConfigError(std::string("missing field '") + k + "'");
  }
  RunConfig c;
  c.scenario = kv.at("scenario");
  if (kv.count("a")) c.a = to_double(kv, "a");
  if (!(c.a > 0.0)) throw ConfigError("field 'a': must be positive");
  if (kv.count("chart")) c.chart = kv.at("chart");
  c.c1_min = to_double(kv, "c1_min");
  c.c1_max = to_double(kv, "c1_max");
  c.n1 = to_int(kv, "n1");
  c.c2_min = to_double(kv, "c2_min");
  c.c2_max = to_double(kv, "c2_max");
  c.n2 = to_int(kv, "n2");
  if (c.n1 < 2) throw ConfigError("field 'n1': must be at least 2");
  if (c.n2 < 2) throw ConfigError("field 'n2': must be at least 2");
  if (!(c.c1_max > c.c1_min)) throw ConfigError("field 'c1_max': must exceed c1_min");
  if (!(c.c2_max > c.c2_min)) throw ConfigError("field 'c2_max': must exceed c2_min");
  if (kv.count("frame")) c.frame = kv.at("frame");
  if (c.frame != "null" && c.frame != "orthonormal") {
    throw ConfigError("field 'frame': expected null or orthonormal, got '" + c.frame + "'");
  }
  if (kv.count("output")) c.output = kv.at("output");
  if (c.output.empty()) throw ConfigError("field 'output': empty path");
  if (kv.count("format")) c.format = kv.at("format");
  if (c.format != "csv" && c.format != "json") {
    throw ConfigError("field 'format': expected csv or json, got '" + c.format + "'");
  }
  return c;
}

std::string render_run(const RunConfig& config) {
  const Scenario s = build_scenario(config.scenario, {config.a});
  const std::string chart_name = config.chart.empty() ? s.observation_chart : config.chart;
  const ConformalChart& chart = s.chart(chart_name);
  const bool orthonormal = config.frame == "orthonormal";
  const std::vector<std::string> columns =
      orthonormal ? std::vector<std::string>{"c1", "c2", "energy_density", "pressure", "flux",
                                             "singular"}
                  : std::vector<std::string>{"c1", "c2", "T_uu", "T_vv", "T_uv", "singular"};

  struct Row {
    double c1, c2;
    bool singular;
    double x, y, z;
  };
  std::vector<Row> rows;
  for (double c1 : axis(config.c1_min, config.c1_max, config.n1)) {
    for (double c2 : axis(config.c2_min, config.c2_max, config.n2)) {
      const Point p{c1, c2, chart_name};
      Row r{c1, c2, true, 0.0, 0.0, 0.0};
      if (!near_singular_ray(s, p)) {
        try {
          const StressSample t = evaluate(s, p);
          if (orthonormal) {
            const OrthonormalStress o = to_orthonormal_frame(t, chart);
            r = {c1, c2, false, o.energy_density, o.pressure, o.flux};
          } else {
            r = {c1, c2, false, t.T_uu, t.T_vv, t.T_uv};
          }
          if (!std::isfinite(r.x) || !std::isfinite(r.y) || !std::isfinite(r.z)) r.singular = true;
        } catch (const SingularityError&) {
          r.singular = true;
        }
      }
      rows.push_back(r);
    }
  }

  std::ostringstream out;
  if (config.format == "csv") {
    out << "# mirrorflux run\n";
    out << "# scenario: " << s.name << "\n";
    out << "# state: " << s.state.label << "\n";
    out << "# chart: " << chart.name << "\n";
    out << "# frame: " << config.frame << "\n";
    out << "# a: " << fmt(config.a) << "\n";
    out << "# grid: c1 " << fmt(config.c1_min) << " " << fmt(config.c1_max) << " " << config.n1
        << "; c2 " << fmt(config.c2_min) << " " << fmt(config.c2_max) << " " << config.n2 << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const Row& r : rows) {
      out << fmt(r.c1) << "," << fmt(r.c2) << ",";
      if (r.singular) {
        out << ",,,1\n";
      } else {
        out << fmt(r.x) << "," << fmt(r.y) << "," << fmt(r.z) << ",0\n";
      }
    }
  } else {
    auto str = [](const std::string& v) { return nlohmann::json(v).dump(); };
    out << "{\n";
    out << "  \"scenario\": " << str(s.name) << ",\n";
    out << "  \"state\": " << str(s.state.label) << ",\n";
    out << "  \"chart\": " << str(chart.name) << ",\n";
    out << "  \"frame\": " << str(config.frame) << ",\n";
    out << "  \"params\": {\"a\": " << fmt(config.a) << "},\n";
    out << "  \"columns\": [";
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? ", " : "") << str(columns[i]);
    out << "],\n  \"rows\": [";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row& r = rows[i];
      out << (i ? ",\n    " : "\n    ") << "[" << fmt(r.c1) << ", " << fmt(r.c2) << ", ";
      if (r.singular) {
        out << "null, null, null, 1]";
      } else {
        out << fmt(r.x) << ", " << fmt(r.y) << ", " << fmt(r.z) << ", 0]";
      }
    }
    out << "\n  ]\n}\n";
  }
  return out.str();
}

void write_run(const RunConfig& config, const std::string& text) {
  if (config.output == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("cannot write to standard output");
    return;
  }
  std::ofstream f(config.output, std::ios::binary);
  if (!f) throw IoError("cannot open output file " + config.output);
  f << text;
  f.close();
  if (!f) throw IoError("cannot write output file " + config.output);
}

}  // namespace mirrorflux::cli
