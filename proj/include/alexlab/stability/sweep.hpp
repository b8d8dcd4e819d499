#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alexlab/moving_planes/engine.hpp"
#include "alexlab/stability/center.hpp"
#include "alexlab/stability/center_of_mass.hpp"
#include "alexlab/stability/sphere_graph.hpp"
#include "alexlab/surfaces/metrics.hpp"

namespace alexlab::stability {

using moving_planes::Tangency;

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct AnalysisOptions {
  int samples = 10000;
  int directions = 12;
  double tol_s = 1e-9;
  double containment_tol = 1e-8;
  bool center_of_mass = false;
  int mc_samples = 100000;
  int graph_samples = 0;  // 0 skips the sphere graph
  std::uint64_t seed = 1;
  int threads = 1;
  Point base = hyperbolic::base_point(3);
};

struct DirectionRecord {
  Vec omega;  // Euclidean components of the unit direction at the base point
  double m = 0.0;
  Tangency kind = Tangency::Interior;
  double plane_dist = 0.0;
  double sup_defect = 0.0;
  double neighborhood_defect = 0.0;
  double margin_min = 0.0;
  bool monotone = true;
  int flagged = 0;
};

/// Stability pipeline for one surface.
struct StabilityReport {
  double eps = 0.0;
  double osc_H = 0.0;
  Point O;
  double center_residual = 0.0;  // max d(O, pi_{e_i})
  double r = 0.0;
  double R = 0.0;
  double gap = 0.0;
  double C_emp = kNaN;  // gap / osc_H; undefined when osc_H vanishes
  double max_plane_dist = 0.0;
  double sup_defect = 0.0;
  double neighborhood_defect = 0.0;
  double slope_so_far = kNaN;
  double cm_distance = kNaN;  // d(O_cm, O)
  double cm_standard_error = kNaN;
  double psi_sup = kNaN;
  double psi_lipschitz = kNaN;
  int flagged = 0;
  std::vector<DirectionRecord> directions;
};

/// Runs the moving planes in the coordinate directions e_1..e_n at the base
/// point (giving O) and in `directions` quasi-uniform directions (giving the
/// plane distances and symmetry defects), then the radii about O.
inline StabilityReport analyze_surface(const surfaces::Surface& s, double eps, const AnalysisOptions& opt) {
  if (opt.directions < s.dim()) throw std::invalid_argument("analyze: need at least n directions");
  moving_planes::EngineOptions eo;
  eo.tol_s = opt.tol_s;
  eo.containment_tol = opt.containment_tol;
  eo.threads = opt.threads;
  const moving_planes::Engine engine(s, opt.samples, eo);

  StabilityReport rep;
  rep.eps = eps;
  rep.osc_H = surfaces::osc_H(engine.samples());

  std::vector<Hyperplane> planes;
  for (const TangentVector& w : moving_planes::coordinate_directions(opt.base)) {
    planes.push_back(engine.critical_value(moving_planes::PlaneFamily(w)).plane());
  }
  CenterResult center;
  try {
    center = approximate_center(planes, opt.base);
  } catch (const NonIntersectingPlanes& e) {
    throw NonIntersectingPlanes(e.first, e.second, rep.osc_H);
  }
  rep.O = center.O;
  rep.center_residual = center.max_residual;

  const auto dirs = moving_planes::quasi_uniform_directions(opt.base, opt.directions);
  const std::vector<moving_planes::DirectionReport> runs = engine.analyze_all(dirs);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& d = runs[i];
    DirectionRecord rec;
    rec.omega = dirs[i].v / opt.base.height();
    rec.m = d.critical.m;
    rec.kind = d.critical.kind;
    rec.plane_dist = plane_distance(rep.O, d.critical.plane());
    rec.sup_defect = d.defects.sup_defect;
    rec.neighborhood_defect = d.defects.neighborhood_defect;
    rec.margin_min = d.critical.margin_min;
    rec.monotone = d.critical.monotone;
    rec.flagged = d.defects.flagged;
    rep.max_plane_dist = std::max(rep.max_plane_dist, rec.plane_dist);
    rep.sup_defect = std::max(rep.sup_defect, rec.sup_defect);
    rep.neighborhood_defect = std::max(rep.neighborhood_defect, rec.neighborhood_defect);
    rep.flagged += rec.flagged;
    rep.directions.push_back(rec);
  }

  const Radii rr = radii(engine.samples(), rep.O);
  rep.r = rr.r;
  rep.R = rr.R;
  rep.gap = rr.gap();
  if (rep.osc_H > 1e-12) rep.C_emp = rep.gap / rep.osc_H;

  if (opt.center_of_mass) {
    CenterOfMassOptions co;
    co.samples = opt.mc_samples;
    co.seed = opt.seed;
    co.threads = opt.threads;
    const CenterOfMassResult cm = center_of_mass(s, rep.O, co);
    rep.cm_distance = hyperbolic::dist(cm.O_cm, rep.O);
    rep.cm_standard_error = cm.standard_error;
  }
  if (opt.graph_samples > 0) {
    const SphereGraphReport g = sphere_graph(s, rep.O, rep.r, opt.graph_samples, opt.threads);
    rep.psi_sup = g.sup_norm;
    rep.psi_lipschitz = g.lipschitz;
  }
  return rep;
}

/// Least-squares slope of log(gap) against log(osc_H) over rows with a
/// positive oscillation and gap. NaN with fewer than two such rows.
inline double loglog_slope(const std::vector<StabilityReport>& rows, std::size_t upto) {
  std::vector<std::pair<double, double>> xy;
  for (std::size_t i = 0; i < upto && i < rows.size(); ++i) {
    if (rows[i].osc_H > 1e-12 && rows[i].gap > 0) xy.emplace_back(std::log(rows[i].osc_H), std::log(rows[i].gap));
  }
  if (xy.size() < 2) return kNaN;
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : xy) {
    mx += x;
    my += y;
  }
  mx /= xy.size();
  my /= xy.size();
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& [x, y] : xy) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxx > 0 ? sxy / sxx : kNaN;
}

/// Thrown for a failing sweep row; names the offending eps.
class SweepFailure : public std::runtime_error {
 public:
  SweepFailure(double eps, const std::string& what)
      : std::runtime_error("sweep failed at eps = " + std::to_string(eps) + ": " + what), eps(eps) {}
  double eps;
};

/// One row per eps of the family; rows run in parallel (each with its own
/// seed derived from the master seed) and are reported in grid order.
inline std::vector<StabilityReport> run_sweep(const surfaces::PerturbedSphereSpec& family,
                                              const std::vector<double>& eps_grid, const AnalysisOptions& opt) {
  if (eps_grid.empty()) throw std::invalid_argument("run_sweep: empty eps grid");
  if (opt.directions < family.center.dim()) throw std::invalid_argument("run_sweep: need at least n directions");
  const bool zero_only = eps_grid.size() == 1 && eps_grid[0] == 0.0;
  if (!zero_only) {
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
      if (!(eps_grid[i] > 0)) throw std::invalid_argument("run_sweep: eps values must be positive");
      if (i > 0 && !(eps_grid[i] < eps_grid[i - 1])) throw std::invalid_argument("run_sweep: eps grid must decrease");
    }
  }
  const int rows = static_cast<int>(eps_grid.size());
  std::vector<std::optional<StabilityReport>> out(rows);
  std::vector<std::string> errors(rows);
  AnalysisOptions inner = opt;
  inner.threads = 1;
  parallel_for(rows, opt.threads, [&](int i) {
    AnalysisOptions o = inner;
    o.seed = opt.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(i + 1);
    surfaces::PerturbedSphereSpec spec = family;
    spec.eps = eps_grid[i];
    try {
      out[i] = analyze_surface(surfaces::Surface::perturbed_sphere(spec), eps_grid[i], o);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  std::vector<StabilityReport> table;
  for (int i = 0; i < rows; ++i) {
    if (!out[i]) throw SweepFailure(eps_grid[i], errors[i]);
    table.push_back(std::move(*out[i]));
  }
  for (std::size_t i = 0; i < table.size(); ++i) table[i].slope_so_far = loglog_slope(table, i + 1);
  return table;
}

}  // namespace alexlab::stability
