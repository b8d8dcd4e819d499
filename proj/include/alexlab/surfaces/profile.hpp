#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "alexlab/core/jet.hpp"

namespace alexlab::surfaces {

/// Smooth perturbation profiles on the unit sphere S^{n-1}. Each one is a
/// low-degree harmonic-like polynomial with zero mean.
enum class Profile { Zonal2, Cubic, Tesseral, Mixed };

inline Profile parse_profile(const std::string& s) {
  if (s == "zonal2") return Profile::Zonal2;
  if (s == "cubic") return Profile::Cubic;
  if (s == "tesseral") return Profile::Tesseral;
  if (s == "mixed") return Profile::Mixed;
  throw std::invalid_argument("unknown profile '" + s + "' (expected zonal2, cubic, tesseral or mixed)");
}

inline std::string to_string(Profile p) {
  switch (p) {
    case Profile::Zonal2: return "zonal2";
    case Profile::Cubic: return "cubic";
    case Profile::Tesseral: return "tesseral";
    case Profile::Mixed: return "mixed";
  }
  return "?";
}

/// f(u) for a unit vector u of R^n.
template <class T>
T profile_value(Profile p, const SmallVec<T>& u) {
  const int n = u.size();
  const T zonal = u[n - 1] * u[n - 1] - T(1.0 / n);
  const T cubic = u[0] * u[0] * u[0] - T(3.0 / (n + 2)) * u[0];
  const T tesseral = u[0] * u[1];
  switch (p) {
    case Profile::Zonal2: return zonal;
    case Profile::Cubic: return cubic;
    case Profile::Tesseral: return tesseral;
    case Profile::Mixed: return zonal + T(0.8) * tesseral + T(0.5) * cubic;
  }
  return T(0);
}

/// Area of the unit sphere S^{n-1} in R^n.
inline double unit_sphere_area(int n) { return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n); }

/// Quasi-uniform unit vectors of R^n: equispaced angles for n = 2, a
/// Fibonacci spiral for n = 3 and seeded Gaussian directions above.
inline std::vector<Vec> sphere_directions(int n, int count, std::uint64_t seed = 1) {
  if (count <= 0) throw std::invalid_argument("sphere_directions: count must be positive");
  std::vector<Vec> out;
  out.reserve(count);
  if (n == 2) {
    for (int i = 0; i < count; ++i) {
      const double t = 2.0 * std::numbers::pi * (i + 0.5) / count;
      out.push_back(Vec{std::cos(t), std::sin(t)});
    }
  } else if (n == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / count;
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * i;
      out.push_back(Vec{s * std::cos(phi), s * std::sin(phi), z});
    }
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    while (static_cast<int>(out.size()) < count) {
      Vec v(n);
      for (auto& c : v) c = gauss(rng);
      const double l = norm(v);
      if (l > 1e-12) out.push_back(v / l);
    }
  }
  return out;
}

}  // namespace alexlab::surfaces
