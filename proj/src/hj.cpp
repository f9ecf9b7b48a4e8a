#include "burgers/hj.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "burgers/weak.hpp"

namespace burgers {

namespace {

// Largest |sum| over axis-aligned rectangles of per-cell circulations of the
// field (-u^2/2, u). Cell circulations use trapezoid edge quadrature, so the
// rectangle sum telescopes to the outer boundary quadrature. The quadratic
// t-edge flux takes the median of u^2 over the three x-neighbors: a node that
// sits exactly on a front carries the trace average, whose square would be
// wrong by (du)^2/8 along the whole front line; the median restores the
// one-sided flux there and is second-order consistent on smooth data.
double max_loop_circulation(const ScalarField& u) {
  const GridSpec& g = u.spec;
  const double dt = g.dt(), dx = g.dx();
  const std::size_t ct = g.nt - 1, cx = g.nx - 1;

  std::vector<double> ft(g.size());
  parallel_for(g.nt, [&](std::size_t i) {
    for (std::size_t j = 0; j < g.nx; ++j) {
      double c = u.at(i, j) * u.at(i, j);
      if (j > 0 && j + 1 < g.nx) {
        double l = u.at(i, j - 1) * u.at(i, j - 1);
        double r = u.at(i, j + 1) * u.at(i, j + 1);
        c = std::max(std::min(l, r), std::min(c, std::max(l, r)));
      }
      ft[i * g.nx + j] = -0.5 * c;
    }
  });

  std::vector<double> cell(ct * cx);
  parallel_for(ct, [&](std::size_t i) {
    for (std::size_t j = 0; j < cx; ++j) {
      auto f = [&](std::size_t a, std::size_t b) { return u.at(a, b); };
      auto fe = [&](std::size_t a, std::size_t b) { return ft[a * g.nx + b]; };
      // counterclockwise: bottom (t-edge at x_j), right, top, left
      double bottom = 0.5 * (fe(i, j) + fe(i + 1, j)) * dt;
      double right = 0.5 * (f(i + 1, j) + f(i + 1, j + 1)) * dx;
      double top = -0.5 * (fe(i + 1, j + 1) + fe(i, j + 1)) * dt;
      double left = -0.5 * (f(i, j + 1) + f(i, j)) * dx;
      cell[i * cx + j] = bottom + right + top + left;
    }
  });

  // prefix sums over rows of cells
  std::vector<double> prefix((ct + 1) * cx, 0.0);
  for (std::size_t i = 0; i < ct; ++i)
    for (std::size_t j = 0; j < cx; ++j)
      prefix[(i + 1) * cx + j] = prefix[i * cx + j] + cell[i * cx + j];

  std::vector<double> best_per_top(ct, 0.0);
  parallel_for(ct, [&](std::size_t top) {
    double best = 0.0;
    std::vector<double> col(cx);
    for (std::size_t bottom = top; bottom < ct; ++bottom) {
      for (std::size_t j = 0; j < cx; ++j)
        col[j] = prefix[(bottom + 1) * cx + j] - prefix[top * cx + j];
      // Kadane for max and min subarray
      double cur_max = 0.0, cur_min = 0.0;
      for (std::size_t j = 0; j < cx; ++j) {
        cur_max = std::max(col[j], cur_max + col[j]);
        cur_min = std::min(col[j], cur_min + col[j]);
        best = std::max({best, cur_max, -cur_min});
      }
    }
    best_per_top[top] = best;
  });
  double best = 0.0;
  for (double b : best_per_top) best = std::max(best, b);
  return best;
}

}  // namespace

Potential reconstruct_potential(const ScalarField& u, ReconstructOptions opts) {
  u.validate();
  const GridSpec& g = u.spec;
  const double umax = u.max_abs();
  const double mesh = g.mesh();

  double res_threshold = opts.weak_residual_threshold;
  if (res_threshold < 0.0) res_threshold = 0.08 * (1.0 + umax) * (1.0 + umax);
  double loop_threshold = opts.loop_defect_threshold;
  if (loop_threshold < 0.0) loop_threshold = 8.0 * mesh * (1.0 + umax) * (1.0 + umax);

  double res = weak_residual(u);
  if (res > res_threshold)
    throw NumericError("reconstruct_potential",
                       "weak residual " + std::to_string(res) +
                           " exceeds threshold " + std::to_string(res_threshold));

  double defect = max_loop_circulation(u);
  if (defect > loop_threshold)
    throw NumericError("reconstruct_potential",
                       "not a weak-solution gradient field (loop defect " +
                           std::to_string(defect) + " > " +
                           std::to_string(loop_threshold) + ")");

  Potential p;
  p.h = ScalarField(g);
  p.lipschitz_x = umax;
  p.loop_defect = defect;
  p.residual = res;

  const double dt = g.dt(), dx = g.dx();
  // canonical path: up the x_min column, then along each row
  for (std::size_t i = 1; i < g.nt; ++i) {
    double f0 = -0.5 * u.at(i - 1, 0) * u.at(i - 1, 0);
    double f1 = -0.5 * u.at(i, 0) * u.at(i, 0);
    p.h.at(i, 0) = p.h.at(i - 1, 0) + 0.5 * (f0 + f1) * dt;
  }
  parallel_for(g.nt, [&](std::size_t i) {
    for (std::size_t j = 1; j < g.nx; ++j)
      p.h.at(i, j) = p.h.at(i, j - 1) + 0.5 * (u.at(i, j - 1) + u.at(i, j)) * dx;
  });
  // The right lateral column is integrated along the edge instead. Row-path
  // values there inherit the quadrature phase of whichever cell a moving
  // front occupies, leaving an O(mesh) sawtooth whose t-slope is O(1); the
  // parabolic-boundary consumers (Hopf-Lax) need the clean edge values. The
  // two routes differ by the loop circulation, which the gate above bounds.
  for (std::size_t i = 1; i < g.nt; ++i) {
    double f0 = -0.5 * u.at(i - 1, g.nx - 1) * u.at(i - 1, g.nx - 1);
    double f1 = -0.5 * u.at(i, g.nx - 1) * u.at(i, g.nx - 1);
    p.h.at(i, g.nx - 1) = p.h.at(i - 1, g.nx - 1) + 0.5 * (f0 + f1) * dt;
  }
  return p;
}

BoundaryData boundary_from(const ScalarField& h) {
  BoundaryData b;
  b.spec = h.spec;
  b.initial.resize(h.spec.nx);
  b.left.resize(h.spec.nt);
  b.right.resize(h.spec.nt);
  for (std::size_t j = 0; j < h.spec.nx; ++j) b.initial[j] = h.at(0, j);
  for (std::size_t i = 0; i < h.spec.nt; ++i) {
    b.left[i] = h.at(i, 0);
    b.right[i] = h.at(i, h.spec.nx - 1);
  }
  return b;
}

ViscositySolution hopf_lax(const BoundaryData& boundary) {
  const GridSpec& g = boundary.spec;
  if (boundary.initial.size() != g.nx || boundary.left.size() != g.nt ||
      boundary.right.size() != g.nt)
    throw PreconditionError("hopf_lax", "boundary arrays do not match the grid");

  ViscositySolution out;
  out.h_bar = ScalarField(g);
  out.argmin_s.assign(g.size(), 0.0);
  out.argmin_y.assign(g.size(), 0.0);
  out.boundary = boundary;

  // parabolic boundary copies
  for (std::size_t j = 0; j < g.nx; ++j) {
    out.h_bar.at(0, j) = boundary.initial[j];
    out.argmin_s[j] = g.t_min;
    out.argmin_y[j] = g.x(j);
  }
  for (std::size_t i = 0; i < g.nt; ++i) {
    out.h_bar.at(i, 0) = boundary.left[i];
    out.argmin_s[i * g.nx] = g.t(i);
    out.argmin_y[i * g.nx] = g.x_min;
    out.h_bar.at(i, g.nx - 1) = boundary.right[i];
    out.argmin_s[i * g.nx + g.nx - 1] = g.t(i);
    out.argmin_y[i * g.nx + g.nx - 1] = g.x_max;
  }

  // Exact minimization over the piecewise-linear interpolant of the sampled
  // boundary: on each data segment the objective's interior minimum has a
  // closed form, so the catalog's piecewise-affine data is handled exactly
  // and the stiff small-(t-s) parabola leaves no sampling artifact.
  const double dt = g.dt(), dx = g.dx();
  parallel_for(g.nt - 1, [&](std::size_t row) {
    std::size_t i = row + 1;
    double t = g.t(i);
    for (std::size_t j = 1; j + 1 < g.nx; ++j) {
      double x = g.x(j);
      double best = std::numeric_limits<double>::infinity();
      double bs = g.t_min, by = g.x_min;
      auto consider = [&](double val, double s, double y) {
        if (val < best) {
          best = val;
          bs = s;
          by = y;
        }
      };
      // initial edge, segments in increasing y
      {
        const double tau = t - g.t_min;
        for (std::size_t k = 0; k + 1 < g.nx; ++k) {
          double y0 = g.x(k);
          double b = (boundary.initial[k + 1] - boundary.initial[k]) / dx;
          double d0 = x - y0;
          consider(boundary.initial[k] + d0 * d0 / (2.0 * tau), g.t_min, y0);
          double ystar = x - b * tau;
          if (ystar > y0 && ystar < y0 + dx) {
            double val = boundary.initial[k] + b * (ystar - y0) + 0.5 * b * b * tau;
            consider(val, g.t_min, ystar);
          }
        }
        double yl = g.x_max;
        double dl = x - yl;
        consider(boundary.initial[g.nx - 1] + dl * dl / (2.0 * tau), g.t_min, yl);
      }
      // lateral edges, segments in increasing s
      auto lateral = [&](const std::vector<double>& data, double y_edge) {
        double d2 = (x - y_edge) * (x - y_edge);
        for (std::size_t k = 0; k < i; ++k) {
          double s0 = g.t(k);
          if (k > 0)  // s0 = t_min belongs to the initial edge
            consider(data[k] + d2 / (2.0 * (t - s0)), s0, y_edge);
          if (k + 1 >= g.nt) continue;
          double b = (data[k + 1] - data[k]) / dt;
          if (b < 0.0) {
            double sstar = t - std::sqrt(d2 / (-2.0 * b));
            if (sstar > s0 && sstar < std::min(s0 + dt, t)) {
              double val = data[k] + b * (sstar - s0) + d2 / (2.0 * (t - sstar));
              consider(val, sstar, y_edge);
            }
          }
        }
      };
      lateral(boundary.left, g.x_min);
      lateral(boundary.right, g.x_max);
      out.h_bar.at(i, j) = best;
      out.argmin_s[i * g.nx + j] = bs;
      out.argmin_y[i * g.nx + j] = by;
    }
  });
  return out;
}

void ViscositySolution::write_csv(std::ostream& os) const {
  os << "t,x,h_bar,s_star,y_star\n";
  const GridSpec& g = h_bar.spec;
  char buf[160];
  for (std::size_t i = 0; i < g.nt; ++i)
    for (std::size_t j = 0; j < g.nx; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", g.t(i),
                    g.x(j), h_bar.at(i, j), argmin_s[i * g.nx + j],
                    argmin_y[i * g.nx + j]);
      os << buf;
    }
}

ScalarField entropy_solution_from(const ViscositySolution& v) {
  const GridSpec& g = v.h_bar.spec;
  if (g.nt < 16 || g.nx < 16)
    throw PreconditionError("entropy_solution_from", "grid must be at least 16x16");
  ScalarField zeta(g);
  const double dx = g.dx();
  parallel_for(g.nt, [&](std::size_t i) {
    zeta.at(i, 0) = (v.h_bar.at(i, 1) - v.h_bar.at(i, 0)) / dx;
    for (std::size_t j = 1; j + 1 < g.nx; ++j)
      zeta.at(i, j) = (v.h_bar.at(i, j + 1) - v.h_bar.at(i, j - 1)) / (2.0 * dx);
    zeta.at(i, g.nx - 1) =
        (v.h_bar.at(i, g.nx - 1) - v.h_bar.at(i, g.nx - 2)) / dx;
  });
  return zeta;
}

ScalarField sup_convolution(const ScalarField& f, double rho) {
  if (!(rho > 0.0)) throw PreconditionError("sup_convolution", "rho must be positive");
  const GridSpec& g = f.spec;
  // exact and separable: max over (s,y) splits into an x-pass then a t-pass
  ScalarField gx(g);
  parallel_for(g.nt, [&](std::size_t i) {
    for (std::size_t j = 0; j < g.nx; ++j) {
      double x = g.x(j);
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t jj = 0; jj < g.nx; ++jj) {
        double d = x - g.x(jj);
        double val = f.at(i, jj) - d * d / (2.0 * rho);
        if (val > best) best = val;
      }
      gx.at(i, j) = best;
    }
  });
  ScalarField out(g);
  parallel_for(g.nx, [&](std::size_t j) {
    for (std::size_t i = 0; i < g.nt; ++i) {
      double t = g.t(i);
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t ii = 0; ii < g.nt; ++ii) {
        double d = t - g.t(ii);
        double val = gx.at(ii, j) - d * d / (2.0 * rho);
        if (val > best) best = val;
      }
      out.at(i, j) = best;
    }
  });
  return out;
}

double semiconvexity_defect(const ScalarField& f, double r) {
  if (!(r > 0.0)) throw PreconditionError("semiconvexity_defect", "r must be positive");
  const GridSpec& g = f.spec;
  if (g.nt < 3 || g.nx < 3)
    throw PreconditionError("semiconvexity_defect", "grid must be at least 3x3");
  const double dt = g.dt(), dx = g.dx();
  struct Dir {
    int di, dj;
  };
  const Dir dirs[4] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  const int seps[3] = {1, 2, 4};

  std::vector<double> row_best(g.nt, -std::numeric_limits<double>::infinity());
  parallel_for(g.nt, [&](std::size_t i) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& d : dirs) {
      for (int k : seps) {
        long di = static_cast<long>(d.di) * k, dj = static_cast<long>(d.dj) * k;
        long ia = static_cast<long>(i) - di, ib = static_cast<long>(i) + di;
        if (ia < 0 || ib < 0 || ia >= static_cast<long>(g.nt) ||
            ib >= static_cast<long>(g.nt))
          continue;
        double ab2 = (2.0 * di * dt) * (2.0 * di * dt) +
                     (2.0 * dj * dx) * (2.0 * dj * dx);
        double gap = ab2 / (8.0 * r);
        for (long j = std::max(0L, dj > 0 ? dj : -dj);
             j < static_cast<long>(g.nx) - std::abs(dj); ++j) {
          double mid = f.at(i, static_cast<std::size_t>(j));
          double fa = f.at(static_cast<std::size_t>(ia), static_cast<std::size_t>(j - dj));
          double fb = f.at(static_cast<std::size_t>(ib), static_cast<std::size_t>(j + dj));
          best = std::max(best, mid - 0.5 * (fa + fb) - gap);
        }
      }
    }
    row_best[i] = best;
  });
  double best = -std::numeric_limits<double>::infinity();
  for (double b : row_best) best = std::max(best, b);
  return best;
}

namespace {

// Least-squares quadratic on the 3x3 stencil; closed-form normal equations.
struct QuadFit {
  double c0, c1, c2, c3, c4, c5;  // 1, a, b, a^2, ab, b^2
  double rms;
  double osc;
};

QuadFit fit3x3(const ScalarField& f, std::size_t i, std::size_t j) {
  const double dt = f.spec.dt(), dx = f.spec.dx();
  double v[3][3];
  double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) {
      double val = f.at(i + static_cast<std::size_t>(a + 1) - 1,
                        j + static_cast<std::size_t>(b + 1) - 1);
      v[a + 1][b + 1] = val;
      vmin = std::min(vmin, val);
      vmax = std::max(vmax, val);
    }
  double S0 = 0, Sa = 0, Sb = 0, Sab = 0, Saa = 0, Sbb = 0;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) {
      double val = v[a + 1][b + 1];
      S0 += val;
      Sa += val * a;
      Sb += val * b;
      Sab += val * a * b;
      Saa += val * a * a;
      Sbb += val * b * b;
    }
  QuadFit q{};
  q.c1 = Sa / (6.0 * dt);
  q.c2 = Sb / (6.0 * dx);
  q.c4 = Sab / (4.0 * dt * dx);
  double c0 = (5.0 * S0 - 3.0 * Saa - 3.0 * Sbb) / 9.0;
  double P = 0.5 * (S0 - Sbb - 3.0 * c0);  // = c3*dt^2
  double Q = 0.5 * (S0 - Saa - 3.0 * c0);  // = c5*dx^2
  q.c0 = c0;
  q.c3 = P / (dt * dt);
  q.c5 = Q / (dx * dx);
  double ss = 0.0;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) {
      double at = a * dt, bx = b * dx;
      double fit = q.c0 + q.c1 * at + q.c2 * bx + q.c3 * at * at +
                   q.c4 * at * bx + q.c5 * bx * bx;
      double e = v[a + 1][b + 1] - fit;
      ss += e * e;
    }
  q.rms = std::sqrt(ss / 9.0);
  q.osc = vmax - vmin;
  return q;
}

}  // namespace

SubsolutionReport subsolution_defect(const ScalarField& zeta, double delta) {
  const GridSpec& g = zeta.spec;
  if (g.nt < 16 || g.nx < 16)
    throw PreconditionError("subsolution_defect", "grid must be at least 16x16");
  const double scale = zeta.max_abs();

  std::vector<double> row_best(g.nt, -std::numeric_limits<double>::infinity());
  std::vector<std::size_t> row_clean(g.nt, 0);
  parallel_for(g.nt - 2, [&](std::size_t r) {
    std::size_t i = r + 1;
    double best = -std::numeric_limits<double>::infinity();
    std::size_t clean = 0;
    for (std::size_t j = 1; j + 1 < g.nx; ++j) {
      QuadFit q = fit3x3(zeta, i, j);
      if (q.rms > 1e-3 * q.osc + 1e-12 * (1.0 + scale)) continue;
      ++clean;
      best = std::max(best, q.c1 + 0.5 * q.c2 * q.c2 + delta);
    }
    row_best[i] = best;
    row_clean[i] = clean;
  });
  SubsolutionReport rep;
  double best = -std::numeric_limits<double>::infinity();
  std::size_t clean = 0;
  for (std::size_t i = 0; i < g.nt; ++i) {
    best = std::max(best, row_best[i]);
    clean += row_clean[i];
  }
  std::size_t interior = (g.nt - 2) * (g.nx - 2);
  rep.clean_nodes = clean;
  rep.clean_fraction = static_cast<double>(clean) / static_cast<double>(interior);
  if (rep.clean_fraction < 0.10)
    throw NumericError("subsolution_defect", "field too rough to probe");
  rep.defect = best;
  return rep;
}

OmegaRegion omega_eta_region(const Potential& h, const AffineFn& zeta_a,
                             const ProbeConfig& cfg) {
  const GridSpec& g = h.h.spec;
  if (!(cfg.eta > 0.0) || !(cfg.delta > 0.0) || !(cfg.r > 0.0) || !(cfg.rho > 0.0))
    throw PreconditionError("omega_eta_region", "parameters must be positive");

  // snap the probe center to the nearest node
  std::size_t ci = static_cast<std::size_t>(
      std::llround((cfg.center.t - g.t_min) / g.dt()));
  std::size_t cj = static_cast<std::size_t>(
      std::llround((cfg.center.x - g.x_min) / g.dx()));
  ci = std::min(ci, g.nt - 1);
  cj = std::min(cj, g.nx - 1);
  Point c{g.t(ci), g.x(cj)};

  OmegaRegion reg;
  reg.center = c;
  reg.inner_radius = cfg.eta / 3.0;
  reg.outer_radius = 2.0 * std::sqrt(cfg.r * cfg.eta / cfg.delta);

  const double coef = (1.0 + cfg.delta) / (2.0 * cfg.r);
  bool lower_ok = true;
  bool upper_ok = true;
  for (std::size_t i = 0; i < g.nt; ++i) {
    double t = g.t(i);
    for (std::size_t j = 0; j < g.nx; ++j) {
      double x = g.x(j);
      double d2 = (t - c.t) * (t - c.t) + (x - c.x) * (x - c.x);
      double dist = std::sqrt(d2);
      if (dist >= cfg.rho) continue;
      double tilde = zeta_a(t, x) - coef * d2;
      bool inside = tilde + cfg.eta >= h.h.at(i, j);
      if (inside) {
        reg.nodes.push_back(i * g.nx + j);
        if (dist > reg.outer_radius) upper_ok = false;
      }
      if (dist < reg.inner_radius) {
        ++reg.inner_node_count;
        if (!inside) lower_ok = false;
      }
    }
  }
  reg.empty = reg.nodes.empty();
  reg.lower_testable = reg.inner_node_count > 1;
  reg.lower_inclusion_ok = !reg.empty && lower_ok && reg.inner_node_count > 0;
  reg.upper_inclusion_ok = upper_ok;
  return reg;
}

DivCurlResult div_curl_probe(const Potential& h, const ScalarField& u,
                             const std::vector<std::size_t>& region, double eta,
                             double delta, double r, double mu_plus_mass) {
  (void)h;
  if (region.empty()) throw PreconditionError("div_curl_probe", "region is empty");
  KahanSum s1;
  for (std::size_t k : region) s1.add(u.values[k]);
  double mean = s1.value() / static_cast<double>(region.size());
  KahanSum s2;
  for (std::size_t k : region) {
    double d = u.values[k] - mean;
    s2.add(d * d);
  }
  double var = s2.value() / static_cast<double>(region.size());
  DivCurlResult res;
  res.lhs = var * var;
  res.rhs = std::sqrt(eta / (delta * r)) + mu_plus_mass / eta;
  return res;
}

ScalarField crop(const ScalarField& f, const Rect& rect) {
  const GridSpec& g = f.spec;
  const double eps = 1e-9 * (1.0 + g.mesh());
  auto clamp_idx = [](double v, std::size_t n) {
    long i = std::lround(v);
    if (i < 0) i = 0;
    if (i >= static_cast<long>(n)) i = static_cast<long>(n) - 1;
    return static_cast<std::size_t>(i);
  };
  std::size_t i0 = clamp_idx(std::ceil((rect.t_min - g.t_min) / g.dt() - eps), g.nt);
  std::size_t i1 = clamp_idx(std::floor((rect.t_max - g.t_min) / g.dt() + eps), g.nt);
  std::size_t j0 = clamp_idx(std::ceil((rect.x_min - g.x_min) / g.dx() - eps), g.nx);
  std::size_t j1 = clamp_idx(std::floor((rect.x_max - g.x_min) / g.dx() + eps), g.nx);
  if (i1 <= i0 + 1 || j1 <= j0 + 1)
    throw PreconditionError("crop", "rectangle too small for the grid");
  GridSpec sub(g.t(i0), g.t(i1), g.x(j0), g.x(j1), i1 - i0 + 1, j1 - j0 + 1);
  ScalarField out(sub);
  for (std::size_t i = i0; i <= i1; ++i)
    for (std::size_t j = j0; j <= j1; ++j)
      out.at(i - i0, j - j0) = f.at(i, j);
  return out;
}

}  // namespace burgers
