#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace burgers {

struct Point {
  double t = 0.0;
  double x = 0.0;
};

inline double dist_inf(const Point& a, const Point& b) {
  return std::max(std::abs(a.t - b.t), std::abs(a.x - b.x));
}

inline double dist_2(const Point& a, const Point& b) {
  return std::hypot(a.t - b.t, a.x - b.x);
}

// Axis-aligned rectangle in (t,x).
struct Rect {
  double t_min = 0.0, t_max = 1.0;
  double x_min = 0.0, x_max = 1.0;

  bool contains(const Point& p, double slack = 0.0) const {
    return p.t >= t_min - slack && p.t <= t_max + slack &&
           p.x >= x_min - slack && p.x <= x_max + slack;
  }
  double t_extent() const { return t_max - t_min; }
  double x_extent() const { return x_max - x_min; }
};

// Thrown when an operation's stated precondition is violated.
class PreconditionError : public std::invalid_argument {
 public:
  PreconditionError(const std::string& op, const std::string& what)
      : std::invalid_argument(op + ": " + what), operation(op) {}
  std::string operation;
};

// Thrown when a numerical gate fails (e.g. a field is not a solution).
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& op, const std::string& what)
      : std::runtime_error(op + ": " + what), operation(op) {}
  std::string operation;
};

// Compensated left-to-right summation. Fixed order, bit-reproducible for a
// given array regardless of thread count (callers may not split a sum across
// threads).
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

inline double kahan_total(const std::vector<double>& xs) {
  KahanSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

// Worker count used by data-parallel loops (each output element is computed
// independently, so results do not depend on the value).
int jobs();
void set_jobs(int n);

// Runs fn(i) for i in [0, n). Outputs must be independent per index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Least-squares slope of log(y) vs log(x); requires xs, ys > 0 and same size.
double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

// Adaptive Simpson quadrature on [a,b].
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12, int max_depth = 40);

}  // namespace burgers
