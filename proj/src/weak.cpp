#include "burgers/weak.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace burgers {

Front::Front(double ts, double te, double xs, double ul, double ur, bool open)
    : t_start(ts),
      t_end(te),
      x_start(xs),
      speed(shock_speed(ul, ur)),
      left_state(ul),
      right_state(ur),
      open_end(open) {
  if (!(te > ts)) throw PreconditionError("Front", "t_end must exceed t_start");
}

double shock_speed(double u_l, double u_r) {
  if (u_l == u_r)
    throw PreconditionError("shock_speed", "equal states give a degenerate front");
  return 0.5 * (u_l + u_r);
}

namespace {

constexpr double kOnFrontTol = 1e-12;

struct Interface {
  double pos;
  double left, right;  // one-sided values (fans use their edge values)
  bool jump;           // true for a genuine front (trace-average on hit)
};

}  // namespace

double PiecewiseSolution::eval(double t, double x) const {
  // Fan interiors first: values there are continuous.
  for (const auto& f : fans) {
    if (t > f.center.t) {
      double lo_x = f.center.x + f.lo * (t - f.center.t);
      double hi_x = f.center.x + f.hi * (t - f.center.t);
      if (x > lo_x && x < hi_x)
        return (x - f.center.x) / (t - f.center.t);
    } else if (t == f.center.t && x == f.center.x) {
      return 0.5 * (f.lo + f.hi);  // multi-valued center: trace average
    }
  }
  std::vector<Interface> ifs;
  ifs.reserve(fronts.size() + 2 * fans.size());
  for (const auto& f : fronts)
    if (f.active_at(t))
      ifs.push_back(Interface{f.x_at(t), f.left_state, f.right_state, true});
  for (const auto& f : fans) {
    if (t >= f.center.t) {
      double dt = t - f.center.t;
      ifs.push_back(Interface{f.center.x + f.lo * dt, f.lo, f.lo, false});
      ifs.push_back(Interface{f.center.x + f.hi * dt, f.hi, f.hi, false});
    }
  }
  if (ifs.empty()) return left_background;
  std::sort(ifs.begin(), ifs.end(),
            [](const Interface& a, const Interface& b) { return a.pos < b.pos; });
  double scale = std::max(1.0, std::abs(x));
  for (const auto& itf : ifs) {
    if (itf.jump && std::abs(x - itf.pos) <= kOnFrontTol * scale)
      return 0.5 * (itf.left + itf.right);
  }
  double state = ifs.front().left;
  for (const auto& itf : ifs) {
    if (x < itf.pos) break;
    state = itf.right;
  }
  return state;
}

double PiecewiseSolution::bound() const {
  double b = std::abs(left_background);
  for (const auto& f : fronts)
    b = std::max({b, std::abs(f.left_state), std::abs(f.right_state)});
  for (const auto& f : fans) b = std::max({b, std::abs(f.lo), std::abs(f.hi)});
  return b;
}

double PiecewiseSolution::front_distance(const Point& z) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : fronts) {
    // inf-norm distance from z to {(t, f.x_at(t)) : t in [t_start, t_end]}
    double lo = f.t_start, hi = f.t_end;
    // ternary search is overkill; the distance in t is piecewise monotone,
    // sample densely plus endpoints (fronts are short line segments).
    const int kSamples = 64;
    for (int k = 0; k <= kSamples; ++k) {
      double t = lo + (hi - lo) * k / kSamples;
      double d = std::max(std::abs(z.t - t), std::abs(z.x - f.x_at(t)));
      best = std::min(best, d);
    }
  }
  return best;
}

PiecewiseSolution PiecewiseSolution::affine(double scale, double t_shift,
                                            double x_shift) const {
  if (!(scale > 0.0)) throw PreconditionError("PiecewiseSolution::affine", "scale > 0");
  PiecewiseSolution out;
  out.domain = Rect{scale * domain.t_min + t_shift, scale * domain.t_max + t_shift,
                    scale * domain.x_min + x_shift, scale * domain.x_max + x_shift};
  out.left_background = left_background;
  out.interactions = interactions;
  for (const auto& f : fronts) {
    Front g = f;
    g.t_start = scale * f.t_start + t_shift;
    g.t_end = scale * f.t_end + t_shift;
    g.x_start = scale * f.x_start + x_shift;
    out.fronts.push_back(g);
  }
  for (const auto& f : fans)
    out.fans.push_back(Fan{{scale * f.center.t + t_shift, scale * f.center.x + x_shift},
                           f.lo, f.hi});
  return out;
}

PiecewiseSolution PiecewiseSolution::galilean(double c) const {
  PiecewiseSolution out;
  double xs[4] = {domain.x_min - c * domain.t_min, domain.x_min - c * domain.t_max,
                  domain.x_max - c * domain.t_min, domain.x_max - c * domain.t_max};
  out.domain = Rect{domain.t_min, domain.t_max, std::min({xs[0], xs[1]}),
                    std::max({xs[2], xs[3]})};
  out.left_background = left_background - c;
  out.interactions = interactions;
  for (const auto& f : fronts) {
    Front g = f;
    g.x_start = f.x_start - c * f.t_start;
    g.speed = f.speed - c;
    g.left_state = f.left_state - c;
    g.right_state = f.right_state - c;
    out.fronts.push_back(g);
  }
  for (const auto& f : fans)
    out.fans.push_back(Fan{{f.center.t, f.center.x - c * f.center.t}, f.lo - c, f.hi - c});
  return out;
}

PiecewiseSolution riemann_solution(double u_l, double u_r,
                                   AdmissibilityPolicy policy, Point center,
                                   Rect domain) {
  PiecewiseSolution sol;
  sol.domain = domain;
  sol.left_background = u_l;
  if (u_l == u_r) return sol;
  if (u_l > u_r || policy != AdmissibilityPolicy::entropic) {
    sol.fronts.emplace_back(center.t, domain.t_max, center.x, u_l, u_r);
  } else {
    sol.fans.push_back(Fan{center, u_l, u_r});
  }
  return sol;
}

namespace {

struct LiveFront {
  double t0, x0, speed;
  double left, right;
  double born;  // t_start for the emitted Front
};

double crossing_time(const LiveFront& a, const LiveFront& b, double now) {
  // positions: a.x0 + a.speed*(t - a.t0), same for b; a is left of b.
  double rel = a.speed - b.speed;
  if (rel <= 0.0) return std::numeric_limits<double>::infinity();
  double gap = (b.x0 + b.speed * (now - b.t0)) - (a.x0 + a.speed * (now - a.t0));
  if (gap < 0.0) gap = 0.0;
  return now + gap / rel;
}

}  // namespace

PiecewiseSolution front_tracking(const std::vector<double>& states,
                                 const std::vector<double>& breaks,
                                 AdmissibilityPolicy policy, Rect domain,
                                 FrontTrackingOptions opts) {
  if (states.empty()) throw PreconditionError("front_tracking", "no states");
  if (breaks.size() + 1 != states.size())
    throw PreconditionError("front_tracking", "breaks must be states-1 long");
  if (!std::is_sorted(breaks.begin(), breaks.end()))
    throw PreconditionError("front_tracking", "breaks must be increasing");
  if (!(opts.fan_step > 0.0))
    throw PreconditionError("front_tracking", "fan_step must be positive");
  for (double s : states)
    if (!std::isfinite(s)) throw PreconditionError("front_tracking", "unbounded state");

  const double t0 = domain.t_min;
  const double horizon = domain.t_max;

  PiecewiseSolution sol;
  sol.domain = domain;
  sol.left_background = states.front();

  std::vector<LiveFront> live;
  auto emit_waves = [&](double t, double x, double ul, double ur,
                        std::vector<LiveFront>& dst) {
    if (ul == ur) return;
    if (ul > ur || policy != AdmissibilityPolicy::entropic) {
      dst.push_back(LiveFront{t, x, shock_speed(ul, ur), ul, ur, t});
    } else {
      // fan of small jumps with increasing speeds
      int n = static_cast<int>(std::ceil((ur - ul) / opts.fan_step));
      double step = (ur - ul) / n;
      for (int k = 0; k < n; ++k) {
        double a = ul + k * step, b = ul + (k + 1) * step;
        dst.push_back(LiveFront{t, x, shock_speed(a, b), a, b, t});
      }
    }
  };

  for (std::size_t i = 0; i < breaks.size(); ++i)
    emit_waves(t0, breaks[i], states[i], states[i + 1], live);

  double now = t0;
  std::size_t count = 0;
  while (true) {
    // earliest adjacent crossing; ties broken by ascending x
    double best_t = std::numeric_limits<double>::infinity();
    double best_x = 0.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i + 1 < live.size(); ++i) {
      double tc = crossing_time(live[i], live[i + 1], now);
      if (tc >= horizon) continue;
      double xc = live[i].x0 + live[i].speed * (tc - live[i].t0);
      if (tc < best_t - 1e-15 ||
          (std::abs(tc - best_t) <= 1e-15 && xc < best_x)) {
        best_t = tc;
        best_x = xc;
        best_i = i;
      }
    }
    if (!std::isfinite(best_t)) break;
    if (++count > opts.max_interactions)
      throw NumericError("front_tracking", "interaction budget exceeded");

    // Merge every consecutive front meeting (best_t, best_x).
    std::size_t lo = best_i, hi = best_i + 1;
    auto meets = [&](std::size_t k) {
      double xk = live[k].x0 + live[k].speed * (best_t - live[k].t0);
      return std::abs(xk - best_x) <= 1e-12 * (1.0 + std::abs(best_x));
    };
    while (lo > 0 && meets(lo - 1)) --lo;
    while (hi + 1 < live.size() && meets(hi + 1)) ++hi;

    double ul = live[lo].left, ur = live[hi].right;
    for (std::size_t k = lo; k <= hi; ++k) {
      const auto& f = live[k];
      if (best_t > f.born)
        sol.fronts.emplace_back(f.born, best_t, f.x0 + f.speed * (f.born - f.t0),
                                f.left, f.right, /*open=*/true);
    }
    std::vector<LiveFront> outgoing;
    emit_waves(best_t, best_x, ul, ur, outgoing);
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(lo),
               live.begin() + static_cast<std::ptrdiff_t>(hi + 1));
    live.insert(live.begin() + static_cast<std::ptrdiff_t>(lo), outgoing.begin(),
                outgoing.end());
    now = best_t;
  }

  for (const auto& f : live)
    sol.fronts.emplace_back(f.born, horizon, f.x0 + f.speed * (f.born - f.t0),
                            f.left, f.right, /*open=*/false);
  sol.interactions = count;
  return sol;
}

ScalarField sample_field(const PiecewiseSolution& sol, const GridSpec& spec) {
  const double slack = 1e-9 * (1.0 + std::max(sol.domain.t_extent(), sol.domain.x_extent()));
  if (spec.t_min < sol.domain.t_min - slack || spec.t_max > sol.domain.t_max + slack ||
      spec.x_min < sol.domain.x_min - slack || spec.x_max > sol.domain.x_max + slack)
    throw PreconditionError("sample_field", "grid rectangle outside solution domain");
  ScalarField out(spec);
  parallel_for(spec.nt, [&](std::size_t i) {
    double t = spec.t(i);
    for (std::size_t j = 0; j < spec.nx; ++j) out.at(i, j) = sol.eval(t, spec.x(j));
  });
  return out;
}

namespace {

// C-infinity bump on (-1,1).
inline double bump(double s) {
  double w = 1.0 - s * s;
  return w > 0.0 ? std::exp(-1.0 / w) : 0.0;
}
inline double bump_deriv(double s) {
  double w = 1.0 - s * s;
  if (w <= 0.0) return 0.0;
  return bump(s) * (-2.0 * s / (w * w));
}

}  // namespace

double weak_residual(const ScalarField& u) {
  const GridSpec& g = u.spec;
  if (g.nt < 8 || g.nx < 8)
    throw PreconditionError("weak_residual", "grid must be at least 8x8");

  const double dt = g.dt(), dx = g.dx();
  double worst = 0.0;
  for (int scale = 0; scale < 3; ++scale) {
    double rt = g.rect().t_extent() * 0.25 / (1 << scale);
    double rx = g.rect().x_extent() * 0.25 / (1 << scale);
    if (rt < 3.0 * dt || rx < 3.0 * dx) continue;  // unresolved scale
    // translate centers on a lattice with stride = radius; supports keep a
    // two-node margin so the summed discrete gradients telescope to zero
    std::vector<double> tcs, xcs;
    for (double tc = g.t_min + rt + 2 * dt; tc <= g.t_max - rt - 2 * dt + 1e-12; tc += rt)
      tcs.push_back(tc);
    for (double xc = g.x_min + rx + 2 * dx; xc <= g.x_max - rx - 2 * dx + 1e-12; xc += rx)
      xcs.push_back(xc);
    for (double tc : tcs) {
      for (double xc : xcs) {
        // node window covering the support plus two nodes of zero padding
        auto lo_idx = [](double c, double r, double o, double d) {
          return static_cast<long>(std::ceil((c - r - o) / d)) - 2;
        };
        auto hi_idx = [](double c, double r, double o, double d) {
          return static_cast<long>(std::floor((c + r - o) / d)) + 2;
        };
        long i0 = std::max(0L, lo_idx(tc, rt, g.t_min, dt));
        long i1 = std::min<long>(static_cast<long>(g.nt) - 1, hi_idx(tc, rt, g.t_min, dt));
        long j0 = std::max(0L, lo_idx(xc, rx, g.x_min, dx));
        long j1 = std::min<long>(static_cast<long>(g.nx) - 1, hi_idx(xc, rx, g.x_min, dx));
        long wn = i1 - i0 + 1, wm = j1 - j0 + 1;
        std::vector<double> phi(static_cast<std::size_t>(wn * wm));
        for (long i = i0; i <= i1; ++i)
          for (long j = j0; j <= j1; ++j)
            phi[static_cast<std::size_t>((i - i0) * wm + (j - j0))] =
                bump((g.t(static_cast<std::size_t>(i)) - tc) / rt) *
                bump((g.x(static_cast<std::size_t>(j)) - xc) / rx);
        // discrete gradients of the sampled bump: the weak form telescopes
        // to exactly zero on constant fields
        KahanSum form, norm;
        for (long i = i0 + 1; i < i1; ++i) {
          for (long j = j0 + 1; j < j1; ++j) {
            auto at = [&](long a, long b) {
              return phi[static_cast<std::size_t>((a - i0) * wm + (b - j0))];
            };
            double phi_t = (at(i + 1, j) - at(i - 1, j)) / (2.0 * dt);
            double phi_x = (at(i, j + 1) - at(i, j - 1)) / (2.0 * dx);
            if (phi_t == 0.0 && phi_x == 0.0) continue;
            double uu = u.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            form.add(uu * phi_t + 0.5 * uu * uu * phi_x);
            norm.add(std::hypot(phi_t, phi_x));
          }
        }
        double nrm = norm.value() * dt * dx;
        if (nrm <= 0.0) continue;
        worst = std::max(worst, std::abs(form.value() * dt * dx) / nrm);
      }
    }
  }
  return worst;
}

}  // namespace burgers
