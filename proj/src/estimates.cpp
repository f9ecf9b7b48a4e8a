#include "burgers/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace burgers {

void EstimateReport::finalize() {
  if (std::isnan(empirical_constant)) {
    if (rhs_raw > 0.0)
      empirical_constant = lhs / rhs_raw;
    else
      empirical_constant = lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  pass = !inconsistent && empirical_constant <= ceiling;
}

std::string EstimateReport::to_json() const {
  nlohmann::ordered_json j;
  j["type"] = "estimate";
  j["name"] = name;
  j["scenario"] = scenario;
  j["grid"] = grid;
  j["lhs"] = lhs;
  j["rhs_raw"] = rhs_raw;
  j["empirical_constant"] = empirical_constant;
  j["ceiling"] = ceiling;
  j["pass"] = pass;
  j["inconsistent"] = inconsistent;
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  for (const auto& kv : params) p[kv.first] = kv.second;
  j["params"] = p;
  j["notes"] = notes;
  return j.dump();
}

std::string DecayReport::to_json() const {
  nlohmann::ordered_json j;
  j["type"] = "decay";
  j["name"] = name;
  j["scenario"] = scenario;
  nlohmann::ordered_json s = nlohmann::ordered_json::array();
  for (const auto& rv : samples) s.push_back({rv.first, rv.second});
  j["samples"] = s;
  j["fitted_slope"] = fitted_slope;
  j["slope_floor"] = slope_floor;
  j["alpha_hat"] = alpha_hat;
  j["K_hat"] = K_hat;
  j["pass"] = pass;
  j["zero_oscillation"] = zero_oscillation;
  j["resolution_limited"] = resolution_limited;
  j["member_all"] = member_all;
  return j.dump();
}

void DecayReport::write_csv(std::ostream& os) const {
  os << "r,value\n";
  char buf[64];
  for (const auto& rv : samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", rv.first, rv.second);
    os << buf;
  }
}

namespace {

std::string grid_tag(const GridSpec& g) {
  return std::to_string(g.nt) + "x" + std::to_string(g.nx);
}

struct Window {
  std::size_t i0, i1, j0, j1;  // inclusive node range
};

// Node range covering [rect] (nodes within the closed rectangle).
Window window_for(const GridSpec& g, const Rect& rect) {
  const double et = 1e-9 * g.dt(), ex = 1e-9 * g.dx();
  auto lo_t = static_cast<std::size_t>(std::max(0.0, std::ceil((rect.t_min - g.t_min) / g.dt() - et)));
  auto hi_t = static_cast<std::size_t>(std::min<double>(static_cast<double>(g.nt - 1), std::floor((rect.t_max - g.t_min) / g.dt() + et)));
  auto lo_x = static_cast<std::size_t>(std::max(0.0, std::ceil((rect.x_min - g.x_min) / g.dx() - ex)));
  auto hi_x = static_cast<std::size_t>(std::min<double>(static_cast<double>(g.nx - 1), std::floor((rect.x_max - g.x_min) / g.dx() + ex)));
  if (hi_t <= lo_t || hi_x <= lo_x)
    throw PreconditionError("window_for", "window too small for the grid");
  return Window{lo_t, hi_t, lo_x, hi_x};
}

// Trapezoid integral of fn(i,j) over the window.
template <typename F>
double trapz_window(const GridSpec& g, const Window& w, F&& fn) {
  KahanSum sum;
  for (std::size_t i = w.i0; i <= w.i1; ++i) {
    double wt = (i == w.i0 || i == w.i1) ? 0.5 : 1.0;
    for (std::size_t j = w.j0; j <= w.j1; ++j) {
      double wx = (j == w.j0 || j == w.j1) ? 0.5 : 1.0;
      sum.add(wt * wx * fn(i, j));
    }
  }
  return sum.value() * g.dt() * g.dx();
}

void require_centered_q1(const GridSpec& g, const std::string& op) {
  const double tol = 1e-9;
  if (std::abs(g.t_min + 1.0) > tol || std::abs(g.t_max - 1.0) > tol ||
      std::abs(g.x_min + 1.0) > tol || std::abs(g.x_max - 1.0) > tol)
    throw PreconditionError(op, "grid must cover the centered square (-1,1)^2");
}

double mu_plus_mass(const DiscreteMeasure& mu) {
  return total_variation(positive_part(mu));
}

}  // namespace

EstimateReport verify_errorvisc(const ScalarField& u, double t1,
                                const DiscreteMeasure& mu) {
  const GridSpec& g = u.spec;
  if (!(t1 > g.t_min) || !(t1 < g.t_max))
    throw PreconditionError("verify_errorvisc", "t1 must lie inside the time range");

  Potential p = reconstruct_potential(u);
  ViscositySolution vs = hopf_lax(boundary_from(p.h));

  double lhs = 0.0;
  for (std::size_t i = 0; i < g.nt; ++i) {
    if (g.t(i) > t1 + 1e-12) break;
    for (std::size_t j = 0; j < g.nx; ++j)
      lhs = std::max(lhs, std::abs(p.h.at(i, j) - vs.h_bar.at(i, j)));
  }
  double mp = mu_plus_mass(mu);

  EstimateReport rep;
  rep.name = "errorvisc";
  rep.grid = grid_tag(g);
  rep.lhs = lhs;
  rep.rhs_raw = std::pow(mp, 1.0 / 8.0);
  rep.params = {{"t1", t1}, {"mu_plus", mp}, {"L", p.lipschitz_x}};
  const double L = p.lipschitz_x;
  double tol = 1e-9 * (1.0 + p.h.max_abs()) + 8.0 * g.mesh() * (1.0 + L) * (1.0 + L);
  if (mp == 0.0) {
    if (lhs > tol) {
      rep.inconsistent = true;
      rep.notes = "mu_+ = 0 but h deviates from its viscosity solution";
    } else {
      rep.empirical_constant = 0.0;
      rep.notes = "mu_+ = 0 and h matches its viscosity solution within mesh tolerance";
    }
  }
  rep.finalize();
  return rep;
}

EstimateReport verify_errorvisc(const ScalarField& u, double t1) {
  return verify_errorvisc(u, t1, production_field(u, builtin_entropy("quadratic")));
}

EstimateReport verify_errorentropy(const ScalarField& u, const DiscreteMeasure& mu) {
  const GridSpec& g = u.spec;
  require_centered_q1(g, "verify_errorentropy");

  Potential p = reconstruct_potential(u);
  ViscositySolution vs = hopf_lax(boundary_from(p.h));
  ScalarField zeta = entropy_solution_from(vs);

  Window w = window_for(g, Rect{-0.75, 0.75, -0.75, 0.75});
  double lhs = trapz_window(g, w, [&](std::size_t i, std::size_t j) {
    return std::abs(u.at(i, j) - zeta.at(i, j));
  });

  Square q1{Point{0.0, 0.0}, 1.0};
  double abs_mu = square_mass(
      [&] {
        DiscreteMeasure am;
        am.bounding = mu.bounding;
        for (const auto& a : mu.atoms) am.atoms.push_back({a.t, a.x, std::abs(a.weight)});
        for (const auto& s : mu.segments)
          am.segments.push_back({s.a, s.b, std::abs(s.density)});
        return am;
      }(),
      q1);
  double mp = square_mass(positive_part(mu), q1);

  EstimateReport rep;
  rep.name = "errorentropy";
  rep.grid = grid_tag(g);
  rep.lhs = lhs;
  rep.rhs_raw = std::pow(1.0 + abs_mu, 0.2) * std::pow(mp, 1.0 / 64.0);
  rep.params = {{"mu_abs", abs_mu}, {"mu_plus", mp}, {"L", p.lipschitz_x}};
  const double L = p.lipschitz_x;
  double tol = 10.0 * g.mesh() * (1.0 + L) * (1.0 + L);
  if (mp == 0.0) {
    if (lhs > tol) {
      rep.inconsistent = true;
      rep.notes = "mu_+ = 0 but u deviates from the entropy solution";
    } else {
      rep.empirical_constant = 0.0;
      rep.notes = "mu_+ = 0 and u matches the entropy solution within mesh tolerance";
    }
  }
  rep.finalize();
  return rep;
}

EstimateReport quartic_compactness(const ScalarField& u, double r,
                                   const DiscreteMeasure& mu) {
  const GridSpec& g = u.spec;
  require_centered_q1(g, "quartic_compactness");
  if (!(r > 0.0) || !(r < 0.125))
    throw PreconditionError("quartic_compactness", "r must lie in (0, 1/8)");
  const double dt = g.dt(), dx = g.dx();
  long kt_max = static_cast<long>(std::floor(r / 4.0 / dt + 1e-12));
  long kx_max = static_cast<long>(std::floor(r / 4.0 / dx + 1e-12));
  if (kt_max < 1 && kx_max < 1)
    throw PreconditionError("quartic_compactness", "shift set empty (r below 4*mesh)");

  // subsampled shift lattice including 0 and the extreme shifts
  auto axis_shifts = [](long kmax) {
    std::vector<long> ks{0};
    for (double f : {1.0, 2.0 / 3.0, 1.0 / 3.0}) {
      long k = static_cast<long>(std::llround(f * static_cast<double>(kmax)));
      if (k >= 1) {
        ks.push_back(k);
        ks.push_back(-k);
      }
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
  };
  auto kts = axis_shifts(kt_max);
  auto kxs = axis_shifts(kx_max);

  Window w = window_for(g, Rect{-0.75, 0.75, -0.75, 0.75});
  double lhs = 0.0;
  double best_xt = 0.0, best_xx = 0.0;
  for (long kt : kts) {
    for (long kx : kxs) {
      if (kt == 0 && kx == 0) continue;
      double val = trapz_window(g, w, [&](std::size_t i, std::size_t j) {
        double d = u.at(static_cast<std::size_t>(static_cast<long>(i) + kt),
                        static_cast<std::size_t>(static_cast<long>(j) + kx)) -
                   u.at(i, j);
        double d2 = d * d;
        return d2 * d2;
      });
      if (val > lhs) {
        lhs = val;
        best_xt = kt * dt;
        best_xx = kx * dx;
      }
    }
  }

  Square q1{Point{0.0, 0.0}, 1.0};
  DiscreteMeasure am;
  am.bounding = mu.bounding;
  for (const auto& a : mu.atoms) am.atoms.push_back({a.t, a.x, std::abs(a.weight)});
  for (const auto& s : mu.segments) am.segments.push_back({s.a, s.b, std::abs(s.density)});
  double abs_mu = square_mass(am, q1);
  double mp = square_mass(positive_part(mu), q1);

  EstimateReport rep;
  rep.name = "quartic_compactness";
  rep.grid = grid_tag(g);
  rep.lhs = lhs;
  rep.rhs_raw = r * (1.0 + abs_mu) + std::pow(mp, 1.0 / 8.0) / r;
  rep.params = {{"r", r},        {"mu_abs", abs_mu},  {"mu_plus", mp},
                {"xi_t", best_xt}, {"xi_x", best_xx}};
  rep.finalize();
  return rep;
}

double oleinik_defect(const ScalarField& zeta, double t_origin) {
  const GridSpec& g = zeta.spec;
  const double dx = g.dx();
  const double min_sep = 4.0 * g.mesh();
  long jsep = std::max<long>(1, static_cast<long>(std::ceil(min_sep / dx - 1e-12)));
  bool any = false;
  std::vector<double> row_best(g.nt, -std::numeric_limits<double>::infinity());
  parallel_for(g.nt, [&](std::size_t i) {
    double t = g.t(i);
    if (!(t > t_origin)) return;
    double slope_max = -std::numeric_limits<double>::infinity();
    for (std::size_t j1 = 0; j1 + static_cast<std::size_t>(jsep) < g.nx; ++j1) {
      for (std::size_t j2 = j1 + static_cast<std::size_t>(jsep); j2 < g.nx; ++j2) {
        double s = (zeta.at(i, j2) - zeta.at(i, j1)) /
                   (static_cast<double>(j2 - j1) * dx);
        slope_max = std::max(slope_max, s);
      }
    }
    row_best[i] = slope_max - 1.0 / (t - t_origin);
  });
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.nt; ++i) {
    if (g.t(i) > t_origin) any = true;
    best = std::max(best, row_best[i]);
  }
  if (!any)
    throw PreconditionError("oleinik_defect", "no rows after t_origin");
  return best;
}

DecayReport campanato_decay(const ScalarField& u, const DiscreteMeasure& mu,
                            Point z, const std::vector<double>& radii,
                            double front_dist) {
  const GridSpec& g = u.spec;
  if (radii.size() < 4)
    throw PreconditionError("campanato_decay", "need at least 4 radii");
  std::vector<double> rs = radii;
  std::sort(rs.begin(), rs.end(), std::greater<double>());
  for (double r : rs) {
    Rect qr = Square(z, r).rect();
    if (qr.t_min < g.t_min - 1e-12 || qr.t_max > g.t_max + 1e-12 ||
        qr.x_min < g.x_min - 1e-12 || qr.x_max > g.x_max + 1e-12)
      throw PreconditionError("campanato_decay", "Q_r(z) leaves the grid");
  }

  DecayReport rep;
  rep.name = "campanato";
  rep.resolution_limited = front_dist < 4.0 * g.mesh();
  const double osc_floor = 1e-13 * (1.0 + u.max_abs());

  for (double r : rs) {
    // node-mean oscillation over the open square
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < g.nt; ++i) {
      double t = g.t(i);
      if (t <= z.t - r || t >= z.t + r) continue;
      for (std::size_t j = 0; j < g.nx; ++j) {
        double x = g.x(j);
        if (x <= z.x - r || x >= z.x + r) continue;
        idx.push_back(i * g.nx + j);
      }
    }
    double osc = 0.0;
    if (!idx.empty()) {
      KahanSum s;
      for (std::size_t k : idx) s.add(u.values[k]);
      double mean = s.value() / static_cast<double>(idx.size());
      KahanSum a;
      for (std::size_t k : idx) a.add(std::abs(u.values[k] - mean));
      osc = a.value() / static_cast<double>(idx.size());
    }
    rep.samples.emplace_back(r, osc);
  }

  DensityFitReport fit = density_fit(mu, z, rs);
  rep.alpha_hat = fit.alpha_hat;
  rep.K_hat = fit.K_hat;
  rep.member_all = fit.all_zero;
  rep.slope_floor = fit.all_zero ? 0.0 : fit.alpha_hat / 256.0;

  std::vector<double> fr, fo;
  for (const auto& rv : rep.samples)
    if (rv.second > osc_floor) {
      fr.push_back(rv.first);
      fo.push_back(rv.second);
    }
  if (fr.size() < 2) {
    rep.zero_oscillation = true;
    rep.fitted_slope = std::numeric_limits<double>::infinity();
    rep.pass = true;
    return rep;
  }
  rep.fitted_slope = loglog_slope(fr, fo);
  rep.pass = rep.fitted_slope >= rep.slope_floor - 0.02;
  return rep;
}

namespace {

inline double bump_profile(double s) {
  double w = 1.0 - s * s;
  return w > 0.0 ? std::exp(-1.0 / w) : 0.0;
}

}  // namespace

EstimateReport time_transfer_check(const ScalarField& u, double r) {
  const GridSpec& g = u.spec;
  if (!(r >= 8.0 * g.mesh()))
    throw PreconditionError("time_transfer_check", "r must be at least 8*mesh");
  const double dt = g.dt(), dx = g.dx();

  // normalized bump: eta_r(x) = eta(x/r)/(r * I1) with unit integral
  static const double I1 = adaptive_simpson([](double s) { return bump_profile(s); },
                                            -1.0, 1.0, 1e-13);

  // window centers on an interior 5x5 lattice
  std::vector<double> tcs, xcs;
  for (int k = 0; k < 5; ++k) {
    double ft = static_cast<double>(k + 1) / 6.0;
    double tc = g.t_min + r + ft * (g.rect().t_extent() - 2.0 * r);
    double xc = g.x_min + r + ft * (g.rect().x_extent() - 2.0 * r);
    if (tc - r >= g.t_min - 1e-12 && tc + r <= g.t_max + 1e-12) tcs.push_back(tc);
    if (xc - r >= g.x_min - 1e-12 && xc + r <= g.x_max + 1e-12) xcs.push_back(xc);
  }
  std::sort(tcs.begin(), tcs.end());
  tcs.erase(std::unique(tcs.begin(), tcs.end()), tcs.end());
  std::sort(xcs.begin(), xcs.end());
  xcs.erase(std::unique(xcs.begin(), xcs.end()), xcs.end());

  double lhs = 0.0, rhs_at_max = 0.0, worst_const = 0.0;
  const double dfloor = 1e-14 * (1.0 + u.max_abs());
  for (double tc : tcs) {
    std::size_t i0 = static_cast<std::size_t>(std::ceil((tc - r - g.t_min) / dt - 1e-12));
    std::size_t i1 = static_cast<std::size_t>(std::floor((tc + r - g.t_min) / dt + 1e-12));
    i1 = std::min(i1, g.nt - 1);
    for (double xc : xcs) {
      std::size_t j0 = static_cast<std::size_t>(std::ceil((xc - r - g.x_min) / dx - 1e-12));
      std::size_t j1 = static_cast<std::size_t>(std::floor((xc + r - g.x_min) / dx + 1e-12));
      j1 = std::min(j1, g.nx - 1);

      // moments M(t_i) = ∫ u(t_i, x) eta_r(x - xc) dx (trapezoid)
      std::vector<double> moments;
      moments.reserve(i1 - i0 + 1);
      for (std::size_t i = i0; i <= i1; ++i) {
        KahanSum s;
        for (std::size_t j = j0; j <= j1; ++j) {
          double wj = (j == j0 || j == j1) ? 0.5 : 1.0;
          double e = bump_profile((g.x(j) - xc) / r) / (r * I1);
          s.add(wj * u.at(i, j) * e);
        }
        moments.push_back(s.value() * dx);
      }
      double mmin = *std::min_element(moments.begin(), moments.end());
      double mmax = *std::max_element(moments.begin(), moments.end());
      double local_lhs = mmax - mmin;

      // D(r): mean over rows and node pairs of |u(t,x) - u(t,y)|
      KahanSum dsum;
      std::size_t terms = 0;
      for (std::size_t i = i0; i <= i1; ++i) {
        for (std::size_t ja = j0; ja <= j1; ++ja)
          for (std::size_t jb = ja + 1; jb <= j1; ++jb)
            dsum.add(std::abs(u.at(i, ja) - u.at(i, jb)));
        terms += (j1 - j0 + 1) * (j1 - j0) / 2;
      }
      double D = terms ? dsum.value() / static_cast<double>(terms) : 0.0;

      worst_const = std::max(worst_const, local_lhs / std::max(D, dfloor));
      if (local_lhs > lhs) {
        lhs = local_lhs;
        rhs_at_max = D;
      }
    }
  }

  EstimateReport rep;
  rep.name = "time_transfer";
  rep.grid = grid_tag(g);
  rep.lhs = lhs;
  rep.rhs_raw = rhs_at_max;
  rep.params = {{"r", r}};
  // empirical constant over all windows (max of windowed ratios)
  rep.empirical_constant = lhs == 0.0 ? 0.0 : worst_const;
  rep.finalize();
  return rep;
}

}  // namespace burgers
