#pragma once

#include <optional>
#include <vector>

#include "burgers/grid.hpp"

namespace burgers {

enum class AdmissibilityPolicy {
  entropic,       // u_l < u_r resolved as a rarefaction
  anti_entropic,  // u_l < u_r kept as a jump (alias of keep_jump for forward
                  // Riemann data; u_l > u_r admits no forward anti-entropic wave)
  keep_jump,      // u_l < u_r kept as a (non-entropic) jump
};

// One jump discontinuity x(t) = x_start + speed*(t - t_start) with constant
// one-sided states. Rankine-Hugoniot for flux u^2/2 forces speed = (l+r)/2.
struct Front {
  double t_start = 0.0, t_end = 0.0;
  double x_start = 0.0;
  double speed = 0.0;
  double left_state = 0.0, right_state = 0.0;
  bool open_end = false;  // true when terminated by a collision (t_end excluded)

  Front() = default;
  Front(double ts, double te, double xs, double ul, double ur, bool open = false);

  double x_at(double t) const { return x_start + speed * (t - t_start); }
  bool active_at(double t) const {
    return t >= t_start && (open_end ? t < t_end : t <= t_end);
  }
};

// Centered rarefaction u = clamp((x-x_c)/(t-t_c), lo, hi) for t > t_c.
struct Fan {
  Point center;
  double lo = 0.0, hi = 0.0;  // lo < hi
};

// Exact weak solution: constant states separated by polygonal fronts, plus
// optional exact rarefaction fans. Single-valued off the fronts.
struct PiecewiseSolution {
  Rect domain;
  std::vector<Front> fronts;
  std::vector<Fan> fans;
  double left_background = 0.0;  // state left of all active interfaces
  std::size_t interactions = 0;  // collisions resolved during construction

  double operator()(double t, double x) const { return eval(t, x); }
  double eval(double t, double x) const;
  double bound() const;  // sup |u|
  // inf-norm distance from z to the union of front segments (fans excluded).
  double front_distance(const Point& z) const;

  // Affine reparametrization (t,x) -> (scale*t + t_shift, scale*x + x_shift).
  // States and speeds are unchanged (Burgers is invariant under uniform
  // space-time dilation and translation).
  PiecewiseSolution affine(double scale, double t_shift, double x_shift) const;

  // Galilean frame change: (t,x) -> (t, x - c t) with states shifted by -c.
  // The sheared field is again a weak solution with the same production
  // densities.
  PiecewiseSolution galilean(double c) const;
};

// Rankine-Hugoniot speed for flux u^2/2. Equal states are a degenerate front.
double shock_speed(double u_l, double u_r);

// Self-similar solution of the Riemann problem centered at `center`.
// u_l > u_r: single shock for any policy. u_l < u_r: exact fan (entropic) or
// a single non-entropic jump (keep_jump / anti_entropic). Equal states give a
// constant solution.
PiecewiseSolution riemann_solution(double u_l, double u_r,
                                   AdmissibilityPolicy policy, Point center,
                                   Rect domain);

struct FrontTrackingOptions {
  double fan_step = 0.05;          // max jump size used to approximate fans
  std::size_t max_interactions = 20000;
};

// Piecewise-constant weak solution from multi-state initial data
// (breaks[i] separates states[i] | states[i+1]) evolved to t = horizon.
// Collisions are resolved with the same policy; rarefactions become fans of
// small non-entropic jumps of size <= fan_step. Simultaneous collisions are
// processed in ascending x order.
PiecewiseSolution front_tracking(const std::vector<double>& states,
                                 const std::vector<double>& breaks,
                                 AdmissibilityPolicy policy, Rect domain,
                                 FrontTrackingOptions opts = {});

// Pointwise sampling; nodes exactly on a front take the trace average.
ScalarField sample_field(const PiecewiseSolution& sol, const GridSpec& spec);

// Max over a fixed family of tensor-product bump test functions phi
// (3 scales x interior translates) of |∫ u phi_t + (u^2/2) phi_x| by
// trapezoidal quadrature, each normalized by ∫|grad phi|.
double weak_residual(const ScalarField& u);

}  // namespace burgers
