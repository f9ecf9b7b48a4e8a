#pragma once

#include <functional>
#include <string>
#include <vector>

#include "burgers/grid.hpp"
#include "burgers/weak.hpp"

namespace burgers {

using RealFn = std::function<double(double)>;

// Entropy/flux pair: eta with q(u) = ∫_0^u v eta'(v) dv, so q(0) = 0.
struct EntropyPair {
  std::string name;
  RealFn eta;
  RealFn eta_prime;
  RealFn eta_second;
  RealFn q;

  // Checks q(0)=0 and q'(u) = u*eta'(u) at sample nodes of [lo,hi].
  void check(double lo, double hi, double tol = 1e-8) const;
};

// Builds the flux by adaptive quadrature of v*eta'(v).
RealFn entropy_flux(const RealFn& eta_prime, double tol = 1e-12);

// Built-ins: "quadratic" (u^2/2, u^3/3), "linear" (u, u^2/2),
// "quartic" (u^4, 4u^5/5).
EntropyPair builtin_entropy(const std::string& name);

// Tabulated entropy from CSV lines "v,eta" via monotone cubic interpolation;
// the flux comes from entropy_flux.
EntropyPair tabulated_entropy(const std::string& name,
                              const std::vector<double>& v,
                              const std::vector<double>& eta);
EntropyPair load_entropy_csv(const std::string& name, std::istream& is);

// Exact chain-rule production: one line segment per front, density per unit
// t equal to -s*(eta(u_r)-eta(u_l)) + q(u_r)-q(u_l). Smooth regions (constants
// and exact fans) produce nothing.
DiscreteMeasure production_exact(const PiecewiseSolution& sol, const EntropyPair& pair);

// Closed-form density of the quadratic pair: (u_r - u_l)^3 / 12.
double quadratic_front_density(double u_l, double u_r);

// Discrete weak-form production: one atom per grid cell, weight equal to the
// boundary flux of (eta(u), q(u)) through the cell with trapezoidal edge
// quadrature. Total mass telescopes to the domain boundary flux.
DiscreteMeasure production_field(const ScalarField& field, const EntropyPair& pair);

// Kinetic measure of one front: density per unit t-length and unit v, carried
// on the state interval. Sign fixed by the production identity
//   ∫ eta''(v) m(v) dv = chain-rule density,
// so m <= 0 exactly on entropic shocks.
struct KineticProfile {
  Front front;
  std::vector<double> v_grid;    // increasing, spans [min(ul,ur), max(ul,ur)]
  std::vector<double> m_values;  // samples of m on v_grid

  double v_lo() const { return v_grid.front(); }
  double v_hi() const { return v_grid.back(); }
  // closed form m(v) = sign(u_r-u_l) * [ (du/2)^2 - (v-s)^2 ] / 2 inside
  double m_at(double v) const;
  // ∫ eta''(v) m(v) dv by adaptive quadrature (exact polynomials integrate
  // to quadrature tolerance)
  double integrate_against(const EntropyPair& pair, double tol = 1e-10) const;
  double integral() const;      // ∫ m dv  (quadratic production density)
  double abs_integral() const;  // ∫ |m| dv = |u_r-u_l|^3/12
};

KineticProfile kinetic_measure(const Front& front, std::size_t v_samples = 129);

// Supremal production measure: line density |u_r-u_l|^3/12 per front.
DiscreteMeasure nu_exact(const PiecewiseSolution& sol);

// Log-log fit of square masses around a point.
struct DensityFitReport {
  Point center;
  std::vector<double> radii;   // decreasing
  std::vector<double> masses;  // |m|(Q_r(center))
  double alpha_hat = 0.0;      // slope of log mass vs log r, minus 1
  double K_hat = 0.0;          // max over radii of mass / r^(1+alpha_hat)
  bool all_zero = false;       // alpha_hat = +inf sentinel; member of every set

  // exact pointwise check of mass <= K r^(1+alpha) at the probed radii
  bool is_member(double alpha, double K) const;
};

DensityFitReport density_fit(const DiscreteMeasure& m, Point z,
                             std::vector<double> radii);

}  // namespace burgers
