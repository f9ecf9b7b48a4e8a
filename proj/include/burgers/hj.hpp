#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "burgers/grid.hpp"

namespace burgers {

// Lipschitz potential with discrete d_x h = u and d_t h = -u^2/2.
struct Potential {
  ScalarField h;
  double lipschitz_x = 0.0;  // = max |u|
  std::size_t anchor_i = 0, anchor_j = 0;  // h = 0 there
  double loop_defect = 0.0;  // max circulation of (-u^2/2, u) over rectangles
  double residual = 0.0;     // weak-form residual of the input field
};

struct ReconstructOptions {
  // Negative values select mesh-aware defaults.
  double weak_residual_threshold = -1.0;
  double loop_defect_threshold = -1.0;
};

// Integrates (-u^2/2, u) along the canonical path (first in t at x_min, then
// in x). Fails when the field is not (numerically) curl-free.
Potential reconstruct_potential(const ScalarField& u, ReconstructOptions opts = {});

// Sampled data on the parabolic boundary: initial edge plus lateral edges.
struct BoundaryData {
  GridSpec spec;
  std::vector<double> initial;  // h(t_min, x_j), size nx
  std::vector<double> left;     // h(t_i, x_min), size nt
  std::vector<double> right;    // h(t_i, x_max), size nt
};

BoundaryData boundary_from(const ScalarField& h);

struct ViscositySolution {
  ScalarField h_bar;
  std::vector<double> argmin_s, argmin_y;  // per node
  BoundaryData boundary;

  void write_csv(std::ostream& os) const;  // t, x, h_bar, s*, y*
};

// Exact minimization of h(s,y) + (x-y)^2/(2(t-s)) over all sampled boundary
// points with s < t. Ties broken by smallest s, then smallest y. Nodes on the
// parabolic boundary copy the data.
ViscositySolution hopf_lax(const BoundaryData& boundary);

// zeta = d_x h_bar by central differences (one-sided at lateral edges).
ScalarField entropy_solution_from(const ViscositySolution& v);

// Exact node-wise maximization of f(s,y) - ((t-s)^2 + (x-y)^2)/(2 rho).
ScalarField sup_convolution(const ScalarField& f, double rho);

// Max over grid-aligned and diagonal three-point midpoint configurations of
//   f(mid) - (f(a)+f(b))/2 - |a-b|^2/(8r).
// Nonpositive (up to rounding) iff (1/r)-semiconvex on the sampled family.
double semiconvexity_defect(const ScalarField& f, double r);

struct SubsolutionReport {
  double defect = 0.0;       // max over clean nodes of d_t z + (d_x z)^2/2 + delta
  double clean_fraction = 0.0;
  std::size_t clean_nodes = 0;
};

// Probes d_t zeta + (d_x zeta)^2/2 <= -delta at nodes admitting a clean
// second-order fit (3x3 least-squares quadratic, residual gated by the local
// oscillation) -- the numerical Alexandrov points.
SubsolutionReport subsolution_defect(const ScalarField& zeta, double delta);

// Affine comparison function zeta_a(z) = value + vt*(t-base.t) + wx*(x-base.x).
struct AffineFn {
  double value = 0.0;
  double vt = 0.0, wx = 0.0;
  Point base;

  double operator()(double t, double x) const {
    return value + vt * (t - base.t) + wx * (x - base.x);
  }
};

struct ProbeConfig {
  double delta = 0.5;
  double r = 0.5;
  double rho = 0.25;
  double eta = 0.01;
  Point center;
};

struct OmegaRegion {
  std::vector<std::size_t> nodes;  // flat indices into the grid
  Point center;                    // snapped to a node
  double inner_radius = 0.0;       // eta/3
  double outer_radius = 0.0;       // 2 sqrt(r eta / delta)
  bool empty = false;
  std::size_t inner_node_count = 0;  // nodes inside B_{eta/3}
  bool lower_inclusion_ok = false;   // B_{eta/3} nodes all inside the region
  bool lower_testable = false;       // more than the center node available
  bool upper_inclusion_ok = false;   // region inside B_{outer}
};

// Sublevel region B_rho ∩ { zeta_tilde + eta >= h } with
// zeta_tilde = zeta_a - (1+delta)/(2r) |z - center|^2, plus the inclusion
// radii report.
OmegaRegion omega_eta_region(const Potential& h, const AffineFn& zeta_a,
                             const ProbeConfig& cfg);

struct DivCurlResult {
  double lhs = 0.0;  // (mean of (u - <u>)^2 over the region)^2
  double rhs = 0.0;  // sqrt(eta/(delta r)) + mu_plus_mass/eta, no constant
};

DivCurlResult div_curl_probe(const Potential& h, const ScalarField& u,
                             const std::vector<std::size_t>& region, double eta,
                             double delta, double r, double mu_plus_mass);

// Node-aligned restriction of a field to a sub-rectangle.
ScalarField crop(const ScalarField& f, const Rect& rect);

}  // namespace burgers
