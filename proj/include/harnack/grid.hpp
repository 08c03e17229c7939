#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "harnack/core.hpp"

namespace harnack {

/// Sampling plan for the closed unit disk: concentric circles at the given
/// interior radii (angles points each) plus a boundary circle.
struct GridSpec {
  std::vector<double> radii;
  int angles = 0;
  int boundary_angles = 0;
};

inline void validate_grid(const GridSpec& g) {
  double prev = 0.0;
  for (double r : g.radii) {
    if (!(r > 0.0) || !(r < 1.0)) throw InputError("GridSpec: interior radii must lie in (0, 1)");
    if (!(r > prev)) throw InputError("GridSpec: interior radii must be strictly ascending");
    prev = r;
  }
  if (!g.radii.empty() && g.angles < 1)
    throw InputError("GridSpec: angles must be at least 1 when interior radii are present");
  if (g.angles < 0 || g.boundary_angles < 0)
    throw InputError("GridSpec: sample counts cannot be negative");
  if (g.radii.empty() && g.boundary_angles < 1)
    throw InputError("GridSpec: grid must contain at least one sample point");
}

inline GridSpec default_disk_grid() {
  GridSpec g;
  for (int k = 0; k < 10; ++k) g.radii.push_back(0.05 + 0.1 * k);
  g.angles = 64;
  g.boundary_angles = 256;
  return g;
}

inline GridSpec default_harnack_grid() {
  GridSpec g;
  for (int k = 0; k < 9; ++k) g.radii.push_back(0.1 + 0.1 * k);
  g.angles = 32;
  g.boundary_angles = 128;
  return g;
}

inline std::vector<Complex> interior_samples(const GridSpec& g) {
  std::vector<Complex> pts;
  pts.reserve(g.radii.size() * static_cast<size_t>(std::max(g.angles, 0)));
  for (double r : g.radii)
    for (int k = 0; k < g.angles; ++k)
      pts.push_back(std::polar(r, 2.0 * std::numbers::pi * k / g.angles));
  return pts;
}

inline std::vector<Complex> boundary_samples(const GridSpec& g) {
  std::vector<Complex> pts;
  pts.reserve(static_cast<size_t>(std::max(g.boundary_angles, 0)));
  for (int k = 0; k < g.boundary_angles; ++k)
    pts.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / g.boundary_angles));
  return pts;
}

}  // namespace harnack
