#include "burgers/grid.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace burgers {

GridSpec::GridSpec(double tmin, double tmax, double xmin, double xmax,
                   std::size_t nt_, std::size_t nx_)
    : t_min(tmin), t_max(tmax), x_min(xmin), x_max(xmax), nt(nt_), nx(nx_) {
  if (!(t_max > t_min) || !(x_max > x_min))
    throw PreconditionError("GridSpec", "degenerate extents");
  if (nt < 2 || nx < 2) throw PreconditionError("GridSpec", "need >= 2 nodes per axis");
}

ScalarField::ScalarField(const GridSpec& s, double fill)
    : spec(s), values(s.size(), fill) {}

ScalarField::ScalarField(const GridSpec& s, std::vector<double> vals)
    : spec(s), values(std::move(vals)) {
  validate();
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

void ScalarField::validate() const {
  if (values.size() != spec.size())
    throw PreconditionError("ScalarField", "value count does not match grid");
  for (double v : values)
    if (!std::isfinite(v))
      throw PreconditionError("ScalarField", "non-finite value");
}

void ScalarField::write_csv(std::ostream& os) const {
  os << "t,x,value\n";
  char buf[96];
  for (std::size_t i = 0; i < spec.nt; ++i) {
    for (std::size_t j = 0; j < spec.nx; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", spec.t(i), spec.x(j),
                    at(i, j));
      os << buf;
    }
  }
}

ScalarField ScalarField::read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("t,x,value", 0) != 0)
    throw PreconditionError("ScalarField::read_csv", "missing header");
  std::vector<double> ts, xs, vs;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    double t, x, v;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &x, &v) != 3)
      throw PreconditionError("ScalarField::read_csv", "bad row: " + line);
    ts.push_back(t);
    xs.push_back(x);
    vs.push_back(v);
  }
  if (vs.empty()) throw PreconditionError("ScalarField::read_csv", "no rows");
  // x fastest: count nx as the length of the first t-block.
  std::size_t nx = 1;
  while (nx < ts.size() && ts[nx] == ts[0]) ++nx;
  if (ts.size() % nx != 0)
    throw PreconditionError("ScalarField::read_csv", "ragged rows");
  std::size_t nt = ts.size() / nx;
  GridSpec spec(ts.front(), ts.back(), xs.front(), xs[nx - 1], nt, nx);
  return ScalarField(spec, std::move(vs));
}

Square::Square(Point c, double r) : center(c), radius(r) {
  if (!(r > 0.0)) throw PreconditionError("Square", "radius must be positive");
}

void DiscreteMeasure::validate() const {
  const double slack = 1e-9 * (1.0 + std::max(bounding.t_extent(), bounding.x_extent()));
  for (const auto& a : atoms) {
    if (!std::isfinite(a.weight))
      throw PreconditionError("DiscreteMeasure", "non-finite atom weight");
    if (!bounding.contains(Point{a.t, a.x}, slack))
      throw PreconditionError("DiscreteMeasure", "atom outside bounding rect");
  }
  for (const auto& s : segments) {
    if (!std::isfinite(s.density))
      throw PreconditionError("DiscreteMeasure", "non-finite segment density");
    if (!bounding.contains(s.a, slack) || !bounding.contains(s.b, slack))
      throw PreconditionError("DiscreteMeasure", "segment outside bounding rect");
  }
}

std::string DiscreteMeasure::to_json() const {
  nlohmann::ordered_json j;
  j["bounding"] = {{"t_min", bounding.t_min},
                   {"t_max", bounding.t_max},
                   {"x_min", bounding.x_min},
                   {"x_max", bounding.x_max}};
  j["atoms"] = nlohmann::ordered_json::array();
  for (const auto& a : atoms) j["atoms"].push_back({a.t, a.x, a.weight});
  j["segments"] = nlohmann::ordered_json::array();
  for (const auto& s : segments)
    j["segments"].push_back({s.a.t, s.a.x, s.b.t, s.b.x, s.density});
  return j.dump();
}

DiscreteMeasure DiscreteMeasure::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  DiscreteMeasure m;
  m.bounding = Rect{j["bounding"]["t_min"], j["bounding"]["t_max"],
                    j["bounding"]["x_min"], j["bounding"]["x_max"]};
  for (const auto& a : j["atoms"])
    m.atoms.push_back(MeasureAtom{a[0], a[1], a[2]});
  for (const auto& s : j["segments"])
    m.segments.push_back(MeasureSegment{{s[0], s[1]}, {s[2], s[3]}, s[4]});
  m.validate();
  return m;
}

namespace {

// t-extent of the part of segment s inside the open square q. Endpoints have
// zero length so open/closed does not matter for the measure.
double clipped_t_extent(const MeasureSegment& s, const Square& q) {
  double t0 = s.a.t, t1 = s.b.t;
  double x0 = s.a.x, x1 = s.b.x;
  if (t1 < t0) {
    std::swap(t0, t1);
    std::swap(x0, x1);
  }
  double lo = std::max(t0, q.center.t - q.radius);
  double hi = std::min(t1, q.center.t + q.radius);
  if (!(hi > lo)) return 0.0;
  if (t1 == t0) return 0.0;  // zero t-extent carries no mass
  // x(t) is affine along the segment; intersect |x(t) - cx| < r.
  double slope = (x1 - x0) / (t1 - t0);
  auto x_at = [&](double t) { return x0 + slope * (t - t0); };
  double xl = q.center.x - q.radius, xr = q.center.x + q.radius;
  if (slope == 0.0) {
    if (x0 <= xl || x0 >= xr) return 0.0;
    return hi - lo;
  }
  double ta = t0 + (xl - x0) / slope;
  double tb = t0 + (xr - x0) / slope;
  if (ta > tb) std::swap(ta, tb);
  lo = std::max(lo, ta);
  hi = std::min(hi, tb);
  if (!(hi > lo)) return 0.0;
  (void)x_at;
  return hi - lo;
}

}  // namespace

double square_mass(const DiscreteMeasure& m, const Square& q) {
  if (!(q.radius > 0.0)) throw PreconditionError("square_mass", "radius must be positive");
  KahanSum sum;
  for (const auto& a : m.atoms) {
    if (a.t > q.center.t - q.radius && a.t < q.center.t + q.radius &&
        a.x > q.center.x - q.radius && a.x < q.center.x + q.radius)
      sum.add(a.weight);
  }
  for (const auto& s : m.segments) {
    double ext = clipped_t_extent(s, q);
    if (ext > 0.0) sum.add(s.density * ext);
  }
  return sum.value();
}

DiscreteMeasure positive_part(const DiscreteMeasure& m) {
  DiscreteMeasure out;
  out.bounding = m.bounding;
  for (const auto& a : m.atoms)
    if (a.weight > 0.0) out.atoms.push_back(a);
  for (const auto& s : m.segments)
    if (s.density > 0.0) out.segments.push_back(s);
  return out;
}

double total_variation(const DiscreteMeasure& m) {
  KahanSum sum;
  for (const auto& a : m.atoms) sum.add(std::abs(a.weight));
  for (const auto& s : m.segments)
    sum.add(std::abs(s.density) * std::abs(s.b.t - s.a.t));
  return sum.value();
}

}  // namespace burgers
