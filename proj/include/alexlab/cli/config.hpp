#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "alexlab/hyperbolic/point.hpp"
#include "alexlab/surfaces/profile.hpp"
#include "alexlab/surfaces/surface.hpp"
#include "json.hpp"

namespace alexlab::cli {

/// Bad configuration; the command exits with status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat run configuration. Every key of the config file maps to one field;
/// see README for the key list.
struct RunConfig {
  int n = 3;
  std::string surface = "perturbed_sphere";  // or "sphere"
  std::vector<double> center;                // empty means e_n
  double r0 = 1.0;
  surfaces::Profile profile = surfaces::Profile::Mixed;
  double eps = 0.0;
  std::vector<double> eps_grid;
  int samples = 10000;
  int directions = 12;
  double tol_s = 1e-9;
  double containment_tol = 1e-8;
  bool center_of_mass = false;
  int mc_samples = 100000;
  int graph_samples = 0;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string output_dir = "out";
  // check-props
  int configs = 200;
  int section_points = 512;
  double margin = 0.05;
  double rel_tol = 1e-6;
  double c = 0.2;
  double negative_control_tilt = 0.2;
  int property_cases = 2000;
  int transport_cases = 500;
  int transport_steps = 400;

  hyperbolic::Point center_point() const {
    if (center.empty()) return hyperbolic::base_point(n);
    Vec x(static_cast<int>(center.size()));
    for (int i = 0; i < x.size(); ++i) x[i] = center[i];
    return hyperbolic::half_space_point(x);
  }

  surfaces::PerturbedSphereSpec family(double e) const {
    return surfaces::PerturbedSphereSpec{center_point(), r0, profile, e};
  }

  surfaces::Surface build_surface() const {
    if (surface == "sphere") return surfaces::Surface::sphere(center_point(), r0);
    return surfaces::Surface::perturbed_sphere(family(eps));
  }
};

namespace detail {

inline int line_of_offset(const std::string& text, std::size_t offset) {
  int line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

inline int line_of_key(const std::string& text, const std::string& key) {
  const std::size_t pos = text.find("\"" + key + "\"");
  return pos == std::string::npos ? 0 : line_of_offset(text, pos);
}

}  // namespace detail

/// Parses a flat JSON object. Unknown keys, wrong types and out-of-range
/// values raise ConfigError naming the line and the field.
inline RunConfig parse_config(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("line " + std::to_string(detail::line_of_offset(text, e.byte)) + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("line 1: configuration must be a JSON object");
  RunConfig cfg;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const json& v = it.value();
    const std::string where = "line " + std::to_string(detail::line_of_key(text, key)) + ", field '" + key + "': ";
    auto need = [&](bool ok, const char* what) {
      if (!ok) throw ConfigError(where + "expected " + what);
    };
    auto integer = [&](int& out, int lo) {
      need(v.is_number_integer(), "an integer");
      need(v.get<long long>() >= lo, ("a value >= " + std::to_string(lo)).c_str());
      out = v.get<int>();
    };
    auto real = [&](double& out) {
      need(v.is_number(), "a number");
      out = v.get<double>();
    };
    auto positive = [&](double& out) {
      real(out);
      need(out > 0, "a positive number");
    };
    auto reals = [&](std::vector<double>& out) {
      need(v.is_array(), "an array of numbers");
      out.clear();
      for (const json& x : v) {
        need(x.is_number(), "an array of numbers");
        out.push_back(x.get<double>());
      }
    };
    if (key == "n") {
      integer(cfg.n, 2);
      need(cfg.n <= kMaxDim, ("n <= " + std::to_string(kMaxDim)).c_str());
    } else if (key == "surface") {
      need(v.is_string() && (v == "sphere" || v == "perturbed_sphere"), "\"sphere\" or \"perturbed_sphere\"");
      cfg.surface = v.get<std::string>();
    } else if (key == "center") {
      reals(cfg.center);
    } else if (key == "r0") {
      positive(cfg.r0);
    } else if (key == "profile") {
      need(v.is_string(), "a profile name");
      try {
        cfg.profile = surfaces::parse_profile(v.get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ConfigError(where + e.what());
      }
    } else if (key == "eps") {
      real(cfg.eps);
      need(cfg.eps >= 0, "a nonnegative number");
    } else if (key == "eps_grid") {
      reals(cfg.eps_grid);
    } else if (key == "samples") {
      integer(cfg.samples, 100);
    } else if (key == "directions") {
      integer(cfg.directions, 1);
    } else if (key == "tol_s") {
      positive(cfg.tol_s);
    } else if (key == "containment_tol") {
      positive(cfg.containment_tol);
    } else if (key == "center_of_mass") {
      need(v.is_boolean(), "true or false");
      cfg.center_of_mass = v.get<bool>();
    } else if (key == "mc_samples") {
      integer(cfg.mc_samples, 1);
    } else if (key == "graph_samples") {
      integer(cfg.graph_samples, 0);
    } else if (key == "seed") {
      need(v.is_number_unsigned(), "a nonnegative integer");
      cfg.seed = v.get<std::uint64_t>();
    } else if (key == "threads") {
      integer(cfg.threads, 1);
    } else if (key == "output_dir") {
      need(v.is_string(), "a string");
      cfg.output_dir = v.get<std::string>();
    } else if (key == "configs") {
      integer(cfg.configs, 1);
    } else if (key == "section_points") {
      integer(cfg.section_points, 16);
    } else if (key == "margin") {
      positive(cfg.margin);
    } else if (key == "rel_tol") {
      positive(cfg.rel_tol);
    } else if (key == "c") {
      positive(cfg.c);
    } else if (key == "negative_control_tilt") {
      positive(cfg.negative_control_tilt);
    } else if (key == "property_cases") {
      integer(cfg.property_cases, 1);
    } else if (key == "transport_cases") {
      integer(cfg.transport_cases, 1);
    } else if (key == "transport_steps") {
      integer(cfg.transport_steps, 16);
    } else {
      throw ConfigError(where + "unknown key");
    }
  }
  if (!cfg.center.empty()) {
    if (static_cast<int>(cfg.center.size()) != cfg.n) {
      throw ConfigError("line " + std::to_string(detail::line_of_key(text, "center")) +
                        ", field 'center': expected n = " + std::to_string(cfg.n) + " coordinates");
    }
    if (!(cfg.center.back() > 0)) {
      throw ConfigError("line " + std::to_string(detail::line_of_key(text, "center")) +
                        ", field 'center': last coordinate must be positive");
    }
  }
  if (!cfg.eps_grid.empty() && !(cfg.eps_grid.size() == 1 && cfg.eps_grid[0] == 0.0)) {
    for (std::size_t i = 0; i < cfg.eps_grid.size(); ++i) {
      if (!(cfg.eps_grid[i] > 0) || (i > 0 && !(cfg.eps_grid[i] < cfg.eps_grid[i - 1]))) {
        throw ConfigError("line " + std::to_string(detail::line_of_key(text, "eps_grid")) +
                          ", field 'eps_grid': values must be positive and strictly decreasing, or exactly [0]");
      }
    }
  }
  if (cfg.directions < cfg.n) {
    throw ConfigError("line " + std::to_string(detail::line_of_key(text, "directions")) +
                      ", field 'directions': need at least n directions");
  }
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace alexlab::cli
