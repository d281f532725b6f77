#pragma once

#include <vector>

#include "symcartan/connection/connection.hpp"

namespace symcartan {

/// Fixed-step RK4 trajectory of the geodesic system x' = v, v'^k = -G^k_ij v^i v^j.
struct GeodesicRun {
  ChartPtr chart;
  double h = 1e-3;
  double T = 1;
  int steps = 0;
  // Samples at t = 0, h, ..., T (steps + 1 entries).
  std::vector<std::vector<double>> x;
  std::vector<std::vector<double>> v;
};

// T / h must be a positive integer up to rounding.  Throws PoleError if a
// symbol cannot be evaluated along the way.
GeodesicRun integrate_geodesic(const Connection& nabla, const NumericPoint& start, const std::vector<double>& velocity,
                               double h = 1e-3, double T = 1);

// max - min of K~(x(t), v(t)) over the run.
double conserved_quantity(const GeodesicRun& run, const SymField& k);

struct SprayReport {
  double max_residual = 0;
  int evaluated = 0;
  int skipped = 0;
};

/// Central difference (step 1e-6) of phi~ along the geodesic spray against
/// the exact nabla^s phi, at Halton points with velocities in [-1, 1]^n.
/// Residuals are absolute, divided by max(1, |exact|).
SprayReport spray_correspondence(const Connection& nabla, const SymField& phi, int samples = 50, unsigned seed = 0);

/// Flows phi forward along X, transports it back with the torsion-free part
/// of nabla, and central-differences in t (step delta) against the exact
/// L^s_X phi at m.  Returns the largest component error.
double sym_lie_flow_check(const Connection& nabla, const VecSymField& x, const SymField& phi, const NumericPoint& m,
                          double delta = 1e-3, int steps = 50);

}  // namespace symcartan
