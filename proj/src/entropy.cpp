#include "burgers/entropy.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <memory>

namespace burgers {

void EntropyPair::check(double lo, double hi, double tol) const {
  if (std::abs(q(0.0)) > tol)
    throw NumericError("EntropyPair", name + ": q(0) != 0");
  const int n = 17;
  for (int k = 0; k <= n; ++k) {
    double u = lo + (hi - lo) * k / n;
    double h = 1e-5 * std::max(1.0, std::abs(u));
    double qp = (q(u + h) - q(u - h)) / (2.0 * h);
    double target = u * eta_prime(u);
    if (std::abs(qp - target) > tol + 1e-6 * std::abs(target))
      throw NumericError("EntropyPair", name + ": q' != u*eta' at u=" + std::to_string(u));
  }
}

RealFn entropy_flux(const RealFn& eta_prime, double tol) {
  return [eta_prime, tol](double u) {
    if (u == 0.0) return 0.0;
    return adaptive_simpson([&](double v) { return v * eta_prime(v); }, 0.0, u, tol);
  };
}

EntropyPair builtin_entropy(const std::string& name) {
  if (name == "quadratic") {
    return EntropyPair{
        name,
        [](double u) { return 0.5 * u * u; },
        [](double u) { return u; },
        [](double) { return 1.0; },
        [](double u) { return u * u * u / 3.0; },
    };
  }
  if (name == "linear") {
    return EntropyPair{
        name,
        [](double u) { return u; },
        [](double) { return 1.0; },
        [](double) { return 0.0; },
        [](double u) { return 0.5 * u * u; },
    };
  }
  if (name == "quartic") {
    return EntropyPair{
        name,
        [](double u) { return u * u * u * u; },
        [](double u) { return 4.0 * u * u * u; },
        [](double u) { return 12.0 * u * u; },
        [](double u) { return 0.8 * u * u * u * u * u; },
    };
  }
  throw PreconditionError("builtin_entropy", "unknown entropy: " + name);
}

namespace {

// Fritsch-Carlson monotone cubic interpolant.
struct MonotoneCubic {
  std::vector<double> x, y, m;  // nodes, values, node slopes

  MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
      : x(std::move(xs)), y(std::move(ys)) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n)
      throw PreconditionError("tabulated_entropy", "need >= 2 (v,eta) rows");
    if (!std::is_sorted(x.begin(), x.end()))
      throw PreconditionError("tabulated_entropy", "v column must be increasing");
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      double h = x[i + 1] - x[i];
      if (!(h > 0.0)) throw PreconditionError("tabulated_entropy", "repeated v node");
      d[i] = (y[i + 1] - y[i]) / h;
    }
    m.assign(n, 0.0);
    m[0] = d[0];
    m[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i)
      m[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (d[i] == 0.0) {
        m[i] = m[i + 1] = 0.0;
        continue;
      }
      double a = m[i] / d[i], b = m[i + 1] / d[i];
      double s = a * a + b * b;
      if (s > 9.0) {
        double tau = 3.0 / std::sqrt(s);
        m[i] = tau * a * d[i];
        m[i + 1] = tau * b * d[i];
      }
    }
  }

  std::size_t segment(double v) const {
    auto it = std::upper_bound(x.begin(), x.end(), v);
    std::size_t i = static_cast<std::size_t>(it - x.begin());
    if (i == 0) return 0;
    if (i >= x.size()) return x.size() - 2;
    return i - 1;
  }

  double eval(double v) const {
    std::size_t i = segment(v);
    double h = x[i + 1] - x[i], s = (v - x[i]) / h;
    double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    double h10 = s * (1 - s) * (1 - s);
    double h01 = s * s * (3 - 2 * s);
    double h11 = s * s * (s - 1);
    return h00 * y[i] + h * h10 * m[i] + h01 * y[i + 1] + h * h11 * m[i + 1];
  }

  double deriv(double v) const {
    std::size_t i = segment(v);
    double h = x[i + 1] - x[i], s = (v - x[i]) / h;
    double d00 = 6 * s * (s - 1) / h;
    double d10 = (1 - s) * (1 - 3 * s);
    double d01 = -d00;
    double d11 = s * (3 * s - 2);
    return d00 * y[i] + d10 * m[i] + d01 * y[i + 1] + d11 * m[i + 1];
  }

  double second(double v) const {
    std::size_t i = segment(v);
    double h = x[i + 1] - x[i], s = (v - x[i]) / h;
    double d00 = (12 * s - 6) / (h * h);
    double d10 = (6 * s - 4) / h;
    double d01 = -d00;
    double d11 = (6 * s - 2) / h;
    return d00 * y[i] + d10 * m[i] + d01 * y[i + 1] + d11 * m[i + 1];
  }
};

}  // namespace

EntropyPair tabulated_entropy(const std::string& name,
                              const std::vector<double>& v,
                              const std::vector<double>& eta) {
  auto interp = std::make_shared<MonotoneCubic>(v, eta);
  RealFn e = [interp](double u) { return interp->eval(u); };
  RealFn ep = [interp](double u) { return interp->deriv(u); };
  RealFn es = [interp](double u) { return interp->second(u); };
  return EntropyPair{name, e, ep, es, entropy_flux(ep)};
}

EntropyPair load_entropy_csv(const std::string& name, std::istream& is) {
  std::vector<double> vs, es;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("v,", 0) == 0) continue;
    double v, e;
    if (std::sscanf(line.c_str(), "%lf,%lf", &v, &e) != 2)
      throw PreconditionError("load_entropy_csv", "bad row: " + line);
    vs.push_back(v);
    es.push_back(e);
  }
  return tabulated_entropy(name, vs, es);
}

double quadratic_front_density(double u_l, double u_r) {
  double d = u_r - u_l;
  return d * d * d / 12.0;
}

DiscreteMeasure production_exact(const PiecewiseSolution& sol,
                                 const EntropyPair& pair) {
  DiscreteMeasure m;
  m.bounding = sol.domain;
  for (const auto& f : sol.fronts) {
    double density = -f.speed * (pair.eta(f.right_state) - pair.eta(f.left_state)) +
                     pair.q(f.right_state) - pair.q(f.left_state);
    m.segments.push_back(MeasureSegment{{f.t_start, f.x_start},
                                        {f.t_end, f.x_at(f.t_end)},
                                        density});
  }
  return m;
}

DiscreteMeasure production_field(const ScalarField& field, const EntropyPair& pair) {
  const GridSpec& g = field.spec;
  if (g.nt < 16 || g.nx < 16)
    throw PreconditionError("production_field", "grid must be at least 16x16");
  const double dt = g.dt(), dx = g.dx();

  std::vector<double> eta_v(g.size()), q_v(g.size());
  parallel_for(g.size(), [&](std::size_t k) {
    eta_v[k] = pair.eta(field.values[k]);
    q_v[k] = pair.q(field.values[k]);
  });

  DiscreteMeasure m;
  m.bounding = g.rect();
  m.atoms.resize((g.nt - 1) * (g.nx - 1));
  parallel_for(g.nt - 1, [&](std::size_t i) {
    for (std::size_t j = 0; j + 1 < g.nx; ++j) {
      auto idx = [&](std::size_t a, std::size_t b) { return a * g.nx + b; };
      // boundary flux of (eta, q) through the cell, trapezoid on each edge
      double top = 0.5 * (eta_v[idx(i + 1, j)] + eta_v[idx(i + 1, j + 1)]) * dx;
      double bottom = 0.5 * (eta_v[idx(i, j)] + eta_v[idx(i, j + 1)]) * dx;
      double right = 0.5 * (q_v[idx(i, j + 1)] + q_v[idx(i + 1, j + 1)]) * dt;
      double left = 0.5 * (q_v[idx(i, j)] + q_v[idx(i + 1, j)]) * dt;
      double w = (top - bottom) + (right - left);
      m.atoms[i * (g.nx - 1) + j] =
          MeasureAtom{g.t(i) + 0.5 * dt, g.x(j) + 0.5 * dx, w};
    }
  });
  return m;
}

double KineticProfile::m_at(double v) const {
  double lo = std::min(front.left_state, front.right_state);
  double hi = std::max(front.left_state, front.right_state);
  if (v <= lo || v >= hi) return 0.0;
  double s = front.speed;
  double half = 0.5 * (hi - lo);
  double val = 0.5 * (half * half - (v - s) * (v - s));
  return front.right_state > front.left_state ? val : -val;
}

double KineticProfile::integrate_against(const EntropyPair& pair, double tol) const {
  return adaptive_simpson([&](double v) { return pair.eta_second(v) * m_at(v); },
                          v_lo(), v_hi(), tol);
}

double KineticProfile::integral() const {
  // ∫ m dv for the closed-form parabola
  double d = front.right_state - front.left_state;
  return d * d * d / 12.0;
}

double KineticProfile::abs_integral() const { return std::abs(integral()); }

KineticProfile kinetic_measure(const Front& front, std::size_t v_samples) {
  if (front.left_state == front.right_state)
    throw PreconditionError("kinetic_measure", "front must have distinct states");
  if (v_samples < 3) v_samples = 3;
  KineticProfile p;
  p.front = front;
  double lo = std::min(front.left_state, front.right_state);
  double hi = std::max(front.left_state, front.right_state);
  p.v_grid.resize(v_samples);
  p.m_values.resize(v_samples);
  for (std::size_t k = 0; k < v_samples; ++k) {
    double v = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(v_samples - 1);
    p.v_grid[k] = v;
    p.m_values[k] = 0.0;
  }
  for (std::size_t k = 1; k + 1 < v_samples; ++k) p.m_values[k] = p.m_at(p.v_grid[k]);
  return p;
}

DiscreteMeasure nu_exact(const PiecewiseSolution& sol) {
  DiscreteMeasure m;
  m.bounding = sol.domain;
  for (const auto& f : sol.fronts) {
    double d = std::abs(f.right_state - f.left_state);
    m.segments.push_back(MeasureSegment{{f.t_start, f.x_start},
                                        {f.t_end, f.x_at(f.t_end)},
                                        d * d * d / 12.0});
  }
  return m;
}

bool DensityFitReport::is_member(double alpha, double K) const {
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (masses[i] > K * std::pow(radii[i], 1.0 + alpha)) return false;
  return true;
}

DensityFitReport density_fit(const DiscreteMeasure& m, Point z,
                             std::vector<double> radii) {
  if (radii.size() < 4)
    throw PreconditionError("density_fit", "need at least 4 radii");
  std::sort(radii.begin(), radii.end(), std::greater<double>());
  for (double r : radii) {
    Rect qr = Square(z, r).rect();
    if (qr.t_min < m.bounding.t_min - 1e-12 || qr.t_max > m.bounding.t_max + 1e-12 ||
        qr.x_min < m.bounding.x_min - 1e-12 || qr.x_max > m.bounding.x_max + 1e-12)
      throw PreconditionError("density_fit", "Q_r(z) leaves the bounding rectangle");
  }

  DiscreteMeasure abs_m;
  abs_m.bounding = m.bounding;
  for (const auto& a : m.atoms)
    abs_m.atoms.push_back(MeasureAtom{a.t, a.x, std::abs(a.weight)});
  for (const auto& s : m.segments)
    abs_m.segments.push_back(MeasureSegment{s.a, s.b, std::abs(s.density)});

  DensityFitReport rep;
  rep.center = z;
  rep.radii = radii;
  for (double r : radii) rep.masses.push_back(square_mass(abs_m, Square(z, r)));

  std::vector<double> rs, ms;
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (rep.masses[i] > 0.0) {
      rs.push_back(radii[i]);
      ms.push_back(rep.masses[i]);
    }
  if (rs.size() < 2) {
    rep.all_zero = true;
    rep.alpha_hat = std::numeric_limits<double>::infinity();
    rep.K_hat = 0.0;
    return rep;
  }
  rep.alpha_hat = loglog_slope(rs, ms) - 1.0;
  double K = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i)
    K = std::max(K, ms[i] / std::pow(rs[i], 1.0 + rep.alpha_hat));
  rep.K_hat = K;
  return rep;
}

}  // namespace burgers
