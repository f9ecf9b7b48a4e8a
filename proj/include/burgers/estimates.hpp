#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "burgers/entropy.hpp"
#include "burgers/grid.hpp"
#include "burgers/hj.hpp"

namespace burgers {

// One verified inequality: left side, right side without its constant, the
// implied empirical constant, and a pass flag against a declared ceiling.
struct EstimateReport {
  std::string name;
  std::string scenario;
  std::string grid;
  double lhs = 0.0;
  double rhs_raw = 0.0;
  double empirical_constant = std::numeric_limits<double>::quiet_NaN();
  double ceiling = std::numeric_limits<double>::infinity();
  bool pass = true;
  bool inconsistent = false;
  std::vector<std::pair<std::string, double>> params;
  std::string notes;

  // Fills empirical_constant (unless a verifier already set it) and pass.
  void finalize();
  std::string to_json() const;
};

// Oscillation (or mass) decay series with a fitted log-log slope.
struct DecayReport {
  std::string name;
  std::string scenario;
  std::vector<std::pair<double, double>> samples;  // (r, value), r decreasing
  double fitted_slope = 0.0;
  double slope_floor = 0.0;
  double alpha_hat = 0.0;
  double K_hat = 0.0;
  bool pass = true;
  bool zero_oscillation = false;
  bool resolution_limited = false;
  bool member_all = false;  // measure vanished at every probed radius

  std::string to_json() const;
  void write_csv(std::ostream& os) const;
};

// sup_{t<=t1} |h - h_bar|  vs  ||mu_+||^{1/8} on the grid rectangle.
EstimateReport verify_errorvisc(const ScalarField& u, double t1,
                                const DiscreteMeasure& mu);
EstimateReport verify_errorvisc(const ScalarField& u, double t1);

// ∫_{Q_{3/4}} |u - zeta|  vs  (1+|mu|(Q_1))^{1/5} mu_+(Q_1)^{1/64} with zeta
// rebuilt through the Hopf-Lax pipeline. The grid must cover the centered
// square Q_1 = (-1,1)^2.
EstimateReport verify_errorentropy(const ScalarField& u, const DiscreteMeasure& mu);

// sup_{|xi| <= r/4} ∫_{Q_{3/4}} (u(.+xi) - u)^4  vs
// r (1+|mu|(Q_1)) + mu_+(Q_1)^{1/8} / r, shifts realized on the grid.
EstimateReport quartic_compactness(const ScalarField& u, double r,
                                   const DiscreteMeasure& mu);

// max over rows t > t_origin and x-pairs spaced >= 4*mesh of
//   (zeta(t,x)-zeta(t,y))/(x-y) - 1/(t - t_origin).
double oleinik_defect(const ScalarField& zeta, double t_origin);

// Mean-oscillation decay at z with slope floor alpha_hat/256 taken from the
// density fit of |mu| at z. front_dist < 4*mesh flags the report
// resolution-limited.
DecayReport campanato_decay(const ScalarField& u, const DiscreteMeasure& mu,
                            Point z, const std::vector<double>& radii,
                            double front_dist = std::numeric_limits<double>::infinity());

// Time-regularity transfer: windowed moment differences against the spatial
// oscillation functional D(r).
EstimateReport time_transfer_check(const ScalarField& u, double r);

}  // namespace burgers
