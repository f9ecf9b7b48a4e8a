#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "burgers/common.hpp"

namespace burgers {

// Uniform node-centered grid on [t_min,t_max] x [x_min,x_max].
// Node j of the t-axis sits at t_min + j*(t_max-t_min)/(nt-1).
struct GridSpec {
  double t_min = 0.0, t_max = 1.0;
  double x_min = 0.0, x_max = 1.0;
  std::size_t nt = 2, nx = 2;

  GridSpec() = default;
  GridSpec(double tmin, double tmax, double xmin, double xmax, std::size_t nt_,
           std::size_t nx_);

  double dt() const { return (t_max - t_min) / static_cast<double>(nt - 1); }
  double dx() const { return (x_max - x_min) / static_cast<double>(nx - 1); }
  double mesh() const { return std::max(dt(), dx()); }
  double t(std::size_t i) const { return t_min + static_cast<double>(i) * dt(); }
  double x(std::size_t j) const { return x_min + static_cast<double>(j) * dx(); }
  std::size_t size() const { return nt * nx; }
  Rect rect() const { return Rect{t_min, t_max, x_min, x_max}; }

  bool operator==(const GridSpec&) const = default;
};

// Scalar samples on a GridSpec, row-major with x fastest.
struct ScalarField {
  GridSpec spec;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const GridSpec& s, double fill = 0.0);
  ScalarField(const GridSpec& s, std::vector<double> vals);

  double& at(std::size_t i, std::size_t j) { return values[i * spec.nx + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * spec.nx + j]; }

  double max_abs() const;
  void validate() const;  // finite values, matching length

  // CSV: header "t,x,value", rows at 17 significant digits, x fastest.
  void write_csv(std::ostream& os) const;
  static ScalarField read_csv(std::istream& is);
};

// Open square Q_r(z) = (t-r,t+r) x (x-r,x+r).
struct Square {
  Point center;
  double radius = 0.0;

  Square() = default;
  Square(Point c, double r);
  Rect rect() const {
    return Rect{center.t - radius, center.t + radius, center.x - radius,
                center.x + radius};
  }
};

// Signed measure surrogate: point atoms plus straight line segments carrying
// a signed density per unit t-length.
struct MeasureAtom {
  double t = 0.0, x = 0.0;
  double weight = 0.0;
};

struct MeasureSegment {
  Point a, b;           // endpoints; density applies per unit |b.t - a.t|
  double density = 0.0; // signed, per unit t-length
};

struct DiscreteMeasure {
  Rect bounding;
  std::vector<MeasureAtom> atoms;
  std::vector<MeasureSegment> segments;

  void validate() const;  // finite weights, support inside bounding rect

  std::string to_json() const;
  static DiscreteMeasure from_json(const std::string& text);
};

// Mass of m restricted to the open square q: atoms strictly inside plus
// density * (t-extent of each segment clipped to q).
double square_mass(const DiscreteMeasure& m, const Square& q);

// Drops atoms/segments with nonpositive weight/density.
DiscreteMeasure positive_part(const DiscreteMeasure& m);

// Sum of |weights| plus sum of |density| * t-extent.
double total_variation(const DiscreteMeasure& m);

}  // namespace burgers
