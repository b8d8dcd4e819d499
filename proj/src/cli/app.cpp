#include "alexlab/cli/app.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "alexlab/cli/output.hpp"
#include "alexlab/hyperbolic/properties.hpp"
#include "alexlab/projection/checks.hpp"

namespace alexlab::cli {

namespace fs = std::filesystem;
using hyperbolic::Point;
using hyperbolic::TangentVector;

RunConfig resolve(const std::string& config_path, const Overrides& o) {
  RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
  if (o.out) cfg.output_dir = *o.out;
  if (o.seed) cfg.seed = *o.seed;
  if (o.threads) {
    cfg.threads = *o.threads;
  } else if (std::getenv("ALEXLAB_THREADS") != nullptr) {
    cfg.threads = threads_from_env();
  }
  return cfg;
}

stability::AnalysisOptions analysis_options(const RunConfig& cfg) {
  stability::AnalysisOptions o;
  o.samples = cfg.samples;
  o.directions = cfg.directions;
  o.tol_s = cfg.tol_s;
  o.containment_tol = cfg.containment_tol;
  o.center_of_mass = cfg.center_of_mass;
  o.mc_samples = cfg.mc_samples;
  o.graph_samples = cfg.graph_samples;
  o.seed = cfg.seed;
  o.threads = cfg.threads;
  o.base = hyperbolic::base_point(cfg.n);
  return o;
}

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols{"eps", "osc_H", "r", "R", "gap", "C_emp", "max_plane_dist", "sup_defect",
                                             "slope_so_far"};
  return cols;
}

std::string report_csv(const std::vector<stability::StabilityReport>& rows) {
  CsvTable t{report_columns(), {}};
  for (const auto& r : rows) {
    t.rows.push_back({fmt(r.eps), fmt(r.osc_H), fmt(r.r), fmt(r.R), fmt(r.gap), fmt(r.C_emp), fmt(r.max_plane_dist),
                      fmt(r.sup_defect), fmt(r.slope_so_far)});
  }
  return t.str();
}

static json vec_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json report_json(const stability::StabilityReport& r) {
  json d = json::array();
  for (const auto& x : r.directions) {
    d.push_back({{"omega", vec_json(x.omega)},
                 {"m", x.m},
                 {"tangency", moving_planes::to_string(x.kind)},
                 {"plane_dist", x.plane_dist},
                 {"sup_defect", x.sup_defect},
                 {"neighborhood_defect", x.neighborhood_defect},
                 {"margin_min", x.margin_min},
                 {"monotone", x.monotone},
                 {"flagged", x.flagged}});
  }
  return {{"eps", r.eps},
          {"osc_H", r.osc_H},
          {"O", vec_json(r.O.x)},
          {"center_residual", r.center_residual},
          {"r", r.r},
          {"R", r.R},
          {"gap", r.gap},
          {"C_emp", r.C_emp},
          {"max_plane_dist", r.max_plane_dist},
          {"sup_defect", r.sup_defect},
          {"neighborhood_defect", r.neighborhood_defect},
          {"slope_so_far", r.slope_so_far},
          {"cm_distance", r.cm_distance},
          {"cm_standard_error", r.cm_standard_error},
          {"psi_sup", r.psi_sup},
          {"psi_lipschitz", r.psi_lipschitz},
          {"flagged", r.flagged},
          {"directions", d}};
}

json config_json(const RunConfig& c) {
  return {{"n", c.n},
          {"surface", c.surface},
          {"center", vec_json(c.center_point().x)},
          {"r0", c.r0},
          {"profile", surfaces::to_string(c.profile)},
          {"eps", c.eps},
          {"eps_grid", c.eps_grid},
          {"samples", c.samples},
          {"directions", c.directions},
          {"tol_s", c.tol_s},
          {"containment_tol", c.containment_tol},
          {"center_of_mass", c.center_of_mass},
          {"mc_samples", c.mc_samples},
          {"graph_samples", c.graph_samples},
          {"seed", c.seed}};
}

/// Scatter of gap against osc_H read back from report.csv text.
static std::string svg_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::vector<double> osc;
  std::vector<double> gap;
  double slope = stability::kNaN;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != report_columns().size()) continue;
    osc.push_back(std::stod(cells[1]));
    gap.push_back(std::stod(cells[4]));
    slope = std::stod(cells[8]);
  }
  return loglog_svg(osc, gap, slope, "osc(H)", "R - r");
}

int cmd_analyze(const RunConfig& cfg) {
  const stability::StabilityReport rep =
      stability::analyze_surface(cfg.build_surface(), cfg.surface == "sphere" ? 0.0 : cfg.eps, analysis_options(cfg));
  const fs::path dir(cfg.output_dir);
  write_atomic(dir / "report.csv", report_csv({rep}));
  write_atomic(dir / "report.json", json{{"config", config_json(cfg)}, {"rows", json::array({report_json(rep)})}}.dump(2) + "\n");
  std::cout << "analyze: osc_H " << fmt(rep.osc_H) << ", gap " << fmt(rep.gap) << ", max d(O, pi) "
            << fmt(rep.max_plane_dist) << ", sup defect " << fmt(rep.sup_defect) << "\n";
  return 0;
}

int cmd_sweep(const RunConfig& cfg, const Overrides& o) {
  if (cfg.eps_grid.empty()) throw ConfigError("field 'eps_grid': sweep needs a nonempty grid");
  const auto rows = stability::run_sweep(cfg.family(0.0), cfg.eps_grid, analysis_options(cfg));
  const fs::path dir(cfg.output_dir);
  const std::string csv = report_csv(rows);
  json all = json::array();
  for (const auto& r : rows) all.push_back(report_json(r));
  write_atomic(dir / "report.csv", csv);
  write_atomic(dir / "report.json", json{{"config", config_json(cfg)}, {"rows", all}}.dump(2) + "\n");
  if (o.svg) write_atomic(dir / "gap_vs_osc.svg", svg_from_csv(csv));
  std::cout << "sweep: " << rows.size() << " rows, slope " << fmt(rows.back().slope_so_far) << "\n";
  return 0;
}

/// Curvature bound batch, core property suite and the transport oracle.
/// Exit status 1 when anything is violated.
int cmd_check_props(const RunConfig& cfg, const Overrides& o) {
  projection::CheckOptions opt;
  opt.rel_tol = cfg.rel_tol;
  opt.c = cfg.c;
  if (o.negative_control) opt.tilt = cfg.negative_control_tilt;
  const projection::BatchReport batch =
      projection::random_batch(cfg.configs, cfg.seed, opt, cfg.section_points, cfg.margin, cfg.threads);
  const auto core = hyperbolic::core_properties(cfg.property_cases, cfg.seed);
  const auto transport = hyperbolic::transport_properties(cfg.transport_cases, cfg.seed, cfg.transport_steps);

  CsvTable t{{"config_id", "bound_id", "worst_slack", "n_samples", "violated", "max_discrepancy"}, {}};
  auto bound_row = [&](const std::string& id, const std::string& bound, const projection::BoundReport& b) {
    t.rows.push_back({id, bound, fmt(b.worst_slack), std::to_string(b.samples), b.violated() ? "1" : "0", ""});
  };
  int violated = 0;
  for (const auto& c : batch.configs) {
    const std::string id = std::to_string(c.id);
    bound_row(id, "I", c.section.normal_ratio);
    bound_row(id, "I'", c.section.angle_form);
    bound_row(id, "III", c.in_surface);
    if (c.projected.trivial) {
      t.rows.push_back({id, "II", "inf", "0", "0", ""});
    } else {
      bound_row(id, "II", c.projected.general);
      bound_row(id, "II.c", c.projected.simplified);
    }
  }
  violated += batch.any_violation();
  for (const auto& group : {core, transport}) {
    for (const auto& p : group) {
      t.rows.push_back({"core", p.id, fmt(p.tol - p.worst), std::to_string(p.cases), p.passed() ? "0" : "1", fmt(p.worst)});
      violated += !p.passed();
    }
  }
  write_atomic(fs::path(cfg.output_dir) / "props.csv", t.str());
  std::cout << "check-props: " << batch.accepted << " configurations (" << batch.skipped << " skipped), "
            << (violated ? "VIOLATIONS" : "no violations") << "\n";
  return violated ? 1 : 0;
}

static Vec parse_vec(const std::string& s, const std::string& what) {
  std::vector<double> xs;
  std::stringstream ss(s);
  std::string cell;
  try {
    while (std::getline(ss, cell, ',')) xs.push_back(std::stod(cell));
  } catch (const std::exception&) {
    throw ConfigError("--" + what + ": expected comma-separated numbers");
  }
  if (xs.size() < 2 || static_cast<int>(xs.size()) > kMaxDim) throw ConfigError("--" + what + ": bad dimension");
  Vec v(static_cast<int>(xs.size()));
  for (int i = 0; i < v.size(); ++i) v[i] = xs[i];
  return v;
}

/// Parallel transport of one vector, closed form and ODE, printed as JSON.
int cmd_transport(const std::string& from, const std::string& to, const std::string& vec, int steps) {
  Point q;
  Point p;
  Vec v;
  try {
    q = hyperbolic::half_space_point(parse_vec(from, "from"));
    p = hyperbolic::half_space_point(parse_vec(to, "to"));
    v = parse_vec(vec, "vector");
  } catch (const hyperbolic::InvalidPoint& e) {
    throw ConfigError(e.what());
  }
  if (q.dim() != p.dim() || v.size() != q.dim()) throw ConfigError("transport: dimensions differ");
  const TangentVector tv{q, v};
  const TangentVector a = hyperbolic::parallel_transport(q, p, tv);
  const TangentVector b = hyperbolic::parallel_transport_ode(q, p, tv, steps);
  const json out{{"from", vec_json(q.x)},
                 {"to", vec_json(p.x)},
                 {"vector", vec_json(v)},
                 {"closed_form", vec_json(a.v)},
                 {"ode", vec_json(b.v)},
                 {"ode_steps", steps},
                 {"discrepancy", hyperbolic::hyperbolic_norm(p, a.v - b.v)},
                 {"norm_in", hyperbolic::hyperbolic_norm(tv)},
                 {"norm_out", hyperbolic::hyperbolic_norm(a)}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"alexlab: moving planes and stability experiments for hypersurfaces of hyperbolic space"};
  app.require_subcommand(1);
  std::string config;
  Overrides o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--seed", o.seed, "master RNG seed");
    sub->add_option("--threads", o.threads, "worker threads (default: ALEXLAB_THREADS, then config)")
        ->check(CLI::PositiveNumber);
  };
  CLI::App* analyze = app.add_subcommand("analyze", "moving planes, approximate center and radii for one surface");
  CLI::App* sweep = app.add_subcommand("sweep", "stability sweep over an eps grid");
  CLI::App* props = app.add_subcommand("check-props", "curvature bound batch and core property suites");
  CLI::App* transport = app.add_subcommand("transport", "parallel transport of one vector");
  common(analyze);
  common(sweep);
  common(props);
  sweep->add_flag("--svg", o.svg, "also write gap_vs_osc.svg");
  props->add_flag("--negative-control", o.negative_control, "tilt the surface normals; must report violations");
  std::string from;
  std::string to;
  std::string vec;
  int steps = 400;
  transport->add_option("--from", from, "base point q, comma separated")->required();
  transport->add_option("--to", to, "target point p")->required();
  transport->add_option("--vector", vec, "vector at q")->required();
  transport->add_option("--steps", steps, "RK4 steps for the ODE")->check(CLI::Range(16, 1 << 24));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*transport) return cmd_transport(from, to, vec, steps);
    const RunConfig cfg = resolve(config, o);
    if (*analyze) return cmd_analyze(cfg);
    if (*sweep) return cmd_sweep(cfg, o);
    return cmd_check_props(cfg, o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const stability::SweepFailure& e) {
    std::cerr << "engine failure: " << e.what() << "\n";
    return 1;
  } catch (const moving_planes::EngineFailure& e) {
    std::cerr << "engine failure: " << e.what() << " (margin profile has " << e.profile().size() << " points)\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "engine failure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace alexlab::cli
