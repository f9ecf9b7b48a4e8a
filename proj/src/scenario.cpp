#include "burgers/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace burgers {

namespace fs = std::filesystem;

bool VerifierSpec::has(const std::string& key) const {
  for (const auto& kv : params)
    if (kv.first == key) return true;
  return false;
}

double VerifierSpec::get(const std::string& key, double fallback) const {
  for (const auto& kv : params)
    if (kv.first == key && !kv.second.empty()) return kv.second.front();
  return fallback;
}

std::vector<double> VerifierSpec::get_list(const std::string& key) const {
  for (const auto& kv : params)
    if (kv.first == key) return kv.second;
  return {};
}

namespace {

VerifierSpec vspec(std::string name,
                   std::vector<std::pair<std::string, std::vector<double>>> params) {
  VerifierSpec v;
  v.name = std::move(name);
  v.params = std::move(params);
  return v;
}

ScenarioConfig jump_scenario(double amplitude) {
  ScenarioConfig c;
  std::ostringstream id;
  id << "nonentropic-jump-a";
  if (amplitude == static_cast<long>(amplitude))
    id << static_cast<long>(amplitude);
  else
    id << amplitude;
  c.id = id.str();
  char desc[96];
  std::snprintf(desc, sizeof desc,
                "stationary non-entropic jump -a|+a at x=1/2, a=%g", amplitude);
  c.description = desc;
  c.states = {-amplitude, amplitude};
  c.breaks = {0.5};
  c.policy = AdmissibilityPolicy::keep_jump;
  c.verifiers = {
      vspec("errorvisc", {{"t1", {0.75}}, {"ceiling", {1.0}}}),
      vspec("errorentropy", {{"ceiling", {2.0}}}),
      vspec("oleinik", {{"t_origin", {0.0}}}),
      vspec("quartic", {{"r", {0.0625}}, {"ceiling", {4.0}}}),
      vspec("time_transfer", {{"r", {0.125}}, {"ceiling", {8.0}}}),
      vspec("campanato",
            {{"points", {0.3, 0.2, 0.6, 0.8, 0.8, 0.2, 0.5, 0.5}},
             {"radii", {0.15, 0.12, 0.09, 0.06}}}),
      vspec("supconv", {{"rho", {0.05}}}),
  };
  if (amplitude == 1.0) {
    c.verifiers.push_back(vspec("divcurl", {{"eta", {0.04}},
                                            {"delta", {0.6}},
                                            {"r", {0.4}},
                                            {"rho", {0.45}},
                                            {"center", {0.5, 0.5}},
                                            {"ceiling", {1.0}}}));
  }
  return c;
}

std::vector<ScenarioConfig> make_catalog() {
  std::vector<ScenarioConfig> cat;

  {
    ScenarioConfig c;
    c.id = "constant";
    c.description = "constant state u = 1/2";
    c.states = {0.5};
    c.verifiers = {
        vspec("errorvisc", {{"t1", {0.75}}, {"ceiling", {1.0}}}),
        vspec("errorentropy", {{"ceiling", {2.0}}}),
        vspec("oleinik", {{"t_origin", {0.0}}}),
        vspec("quartic", {{"r", {0.0625}}, {"ceiling", {4.0}}}),
        vspec("time_transfer", {{"r", {0.125}}, {"ceiling", {8.0}}}),
        vspec("campanato",
              {{"points", {0.3, 0.3, 0.5, 0.7, 0.75, 0.5}},
               {"radii", {0.15, 0.12, 0.09, 0.06}}}),
        vspec("supconv", {{"rho", {0.05}}}),
    };
    cat.push_back(c);
  }
  {
    ScenarioConfig c;
    c.id = "entropic-shock";
    c.description = "stationary entropic shock +1|-1 at x=1/2";
    c.states = {1.0, -1.0};
    c.breaks = {0.5};
    c.verifiers = {
        vspec("errorvisc", {{"t1", {0.75}}, {"ceiling", {1.0}}}),
        vspec("errorentropy", {{"ceiling", {2.0}}}),
        vspec("oleinik", {{"t_origin", {0.0}}}),
        vspec("quartic", {{"r", {0.0625}}, {"ceiling", {4.0}}}),
        vspec("time_transfer", {{"r", {0.125}}, {"ceiling", {8.0}}}),
        vspec("campanato",
              {{"points", {0.3, 0.2, 0.6, 0.8, 0.8, 0.2}},
               {"radii", {0.15, 0.12, 0.09, 0.06}}}),
        vspec("supconv", {{"rho", {0.05}}}),
    };
    cat.push_back(c);
  }
  {
    ScenarioConfig c;
    c.id = "rarefaction";
    c.description = "centered rarefaction -1|+1 opening at (0, 1/2)";
    c.states = {-1.0, 1.0};
    c.breaks = {0.5};
    c.policy = AdmissibilityPolicy::entropic;
    c.verifiers = {
        vspec("errorvisc", {{"t1", {0.75}}, {"ceiling", {1.0}}}),
        vspec("errorentropy", {{"ceiling", {2.0}}}),
        vspec("oleinik", {{"t_origin", {0.0}}}),
        vspec("quartic", {{"r", {0.0625}}, {"ceiling", {4.0}}}),
        vspec("time_transfer", {{"r", {0.125}}, {"ceiling", {8.0}}}),
        vspec("campanato",
              {{"points", {0.8, 0.5, 0.8, 0.35, 0.85, 0.6}},
               {"radii", {0.12, 0.1, 0.08, 0.06}}}),
        vspec("supconv", {{"rho", {0.05}}}),
    };
    cat.push_back(c);
  }
  cat.push_back(jump_scenario(1.0));
  cat.push_back(jump_scenario(0.5));
  cat.push_back(jump_scenario(0.25));
  cat.push_back(jump_scenario(0.125));
  {
    ScenarioConfig c;
    c.id = "three-state-merge";
    c.description = "shocks 1|0 and 0|-1 merging at (1/2, 1/2)";
    c.states = {1.0, 0.0, -1.0};
    c.breaks = {0.25, 0.75};
    c.verifiers = {
        vspec("errorvisc", {{"t1", {0.75}}, {"ceiling", {1.0}}}),
        vspec("errorentropy", {{"ceiling", {2.0}}}),
        vspec("oleinik", {{"t_origin", {0.0}}}),
        vspec("quartic", {{"r", {0.0625}}, {"ceiling", {4.0}}}),
        vspec("time_transfer", {{"r", {0.125}}, {"ceiling", {8.0}}}),
        vspec("campanato",
              {{"points", {0.7, 0.1, 0.7, 0.9, 0.25, 0.06}},
               {"radii", {0.05, 0.04, 0.03, 0.02}}}),
        vspec("supconv", {{"rho", {0.05}}}),
    };
    cat.push_back(c);
  }
  {
    ScenarioConfig c;
    c.id = "mixed-fronts";
    c.description = "non-entropic 0.5|1 catching entropic 1|-1 (keep_jump)";
    c.states = {0.5, 1.0, -1.0};
    c.breaks = {0.2, 0.6};
    c.policy = AdmissibilityPolicy::keep_jump;
    c.verifiers = {
        vspec("errorvisc", {{"t1", {0.75}}, {"ceiling", {1.0}}}),
        vspec("errorentropy", {{"ceiling", {2.0}}}),
        vspec("oleinik", {{"t_origin", {0.0}}}),
        vspec("quartic", {{"r", {0.0625}}, {"ceiling", {4.0}}}),
        vspec("time_transfer", {{"r", {0.125}}, {"ceiling", {8.0}}}),
        vspec("campanato",
              {{"points", {0.3, 0.9, 0.85, 0.2, 0.85, 0.9}},
               {"radii", {0.1, 0.08, 0.06, 0.045}}}),
        vspec("supconv", {{"rho", {0.05}}}),
    };
    cat.push_back(c);
  }
  std::sort(cat.begin(), cat.end(),
            [](const ScenarioConfig& a, const ScenarioConfig& b) { return a.id < b.id; });
  return cat;
}

}  // namespace

std::vector<ScenarioConfig> builtin_catalog() { return make_catalog(); }

const ScenarioConfig* find_builtin(const std::string& id) {
  static const std::vector<ScenarioConfig> cat = make_catalog();
  for (const auto& c : cat)
    if (c.id == id) return &c;
  return nullptr;
}

std::string catalog_listing() {
  std::ostringstream os;
  for (const auto& c : make_catalog()) os << c.id << "  " << c.description << "\n";
  return os.str();
}

namespace {

std::vector<double> parse_list(const std::string& raw, const std::string& where,
                               int line_no) {
  std::string s = raw;
  auto strip = [](std::string& t) {
    while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.erase(t.begin());
    while (!t.empty() && (t.back() == ' ' || t.back() == '\t' || t.back() == '\r'))
      t.pop_back();
  };
  strip(s);
  if (!s.empty() && s.front() == '[') s.erase(s.begin());
  if (!s.empty() && s.back() == ']') s.pop_back();
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    strip(item);
    if (item.empty()) continue;
    char* end = nullptr;
    double v = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0')
      throw PreconditionError("parse_config", where + " line " +
                                                  std::to_string(line_no) +
                                                  ": bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

ScenarioConfig parse_config(std::istream& is, const std::string& source_name) {
  ScenarioConfig cfg;
  cfg.verifiers.clear();
  std::string line;
  std::string section;
  VerifierSpec* current_verifier = nullptr;
  int line_no = 0;

  auto fail = [&](const std::string& msg) {
    throw PreconditionError("parse_config",
                            source_name + " line " + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(is, line)) {
    ++line_no;
    std::string s = line;
    auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
      s.pop_back();
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') fail("unterminated section header");
      section = s.substr(1, s.size() - 2);
      current_verifier = nullptr;
      if (section.rfind("verifier:", 0) == 0) {
        cfg.verifiers.push_back(VerifierSpec{section.substr(9), {}});
        current_verifier = &cfg.verifiers.back();
      } else if (section != "scenario" && section != "solution" && section != "grid") {
        fail("unknown section [" + section + "]");
      }
      continue;
    }

    auto eq = s.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    std::string key = s.substr(0, eq);
    std::string value = s.substr(eq + 1);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    while (!value.empty() && (value.front() == ' ' || value.front() == '\t'))
      value.erase(value.begin());

    if (section == "scenario") {
      if (key == "id")
        cfg.id = value;
      else if (key == "description")
        cfg.description = value;
      else
        fail("unknown key '" + key + "' in [scenario]");
    } else if (section == "solution") {
      if (key == "states")
        cfg.states = parse_list(value, source_name, line_no);
      else if (key == "breaks")
        cfg.breaks = parse_list(value, source_name, line_no);
      else if (key == "policy") {
        if (value == "entropic")
          cfg.policy = AdmissibilityPolicy::entropic;
        else if (value == "keep_jump")
          cfg.policy = AdmissibilityPolicy::keep_jump;
        else if (value == "anti_entropic")
          cfg.policy = AdmissibilityPolicy::anti_entropic;
        else
          fail("unknown policy '" + value + "'");
      } else if (key == "horizon")
        cfg.horizon = parse_list(value, source_name, line_no).at(0);
      else if (key == "fan_step")
        cfg.fan_step = parse_list(value, source_name, line_no).at(0);
      else
        fail("unknown key '" + key + "' in [solution]");
    } else if (section == "grid") {
      if (key == "nt")
        cfg.nt = static_cast<std::size_t>(parse_list(value, source_name, line_no).at(0));
      else if (key == "nx")
        cfg.nx = static_cast<std::size_t>(parse_list(value, source_name, line_no).at(0));
      else
        fail("unknown key '" + key + "' in [grid]");
    } else if (current_verifier != nullptr) {
      current_verifier->params.emplace_back(key, parse_list(value, source_name, line_no));
    } else {
      fail("key '" + key + "' outside any section");
    }
  }
  if (cfg.id.empty()) throw PreconditionError("parse_config", source_name + ": missing scenario id");
  return cfg;
}

PiecewiseSolution build_solution(const ScenarioConfig& cfg) {
  Rect unit{0.0, std::max(1.0, cfg.horizon), 0.0, 1.0};
  if (cfg.states.size() == 1) {
    PiecewiseSolution sol;
    sol.domain = unit;
    sol.left_background = cfg.states[0];
    return sol;
  }
  if (cfg.states.size() == 2) {
    if (cfg.breaks.size() != 1)
      throw PreconditionError("build_solution", "two states need one break");
    return riemann_solution(cfg.states[0], cfg.states[1], cfg.policy,
                            Point{0.0, cfg.breaks[0]}, unit);
  }
  FrontTrackingOptions opts;
  opts.fan_step = cfg.fan_step;
  return front_tracking(cfg.states, cfg.breaks, cfg.policy, unit, opts);
}

namespace {

GridSpec unit_grid(const ScenarioConfig& cfg) {
  return GridSpec(0.0, 1.0, 0.0, 1.0, cfg.nt, cfg.nx);
}

GridSpec centered_grid(const ScenarioConfig& cfg) {
  return GridSpec(-1.0, 1.0, -1.0, 1.0, cfg.nt, cfg.nx);
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  ScenarioResult result;
  result.id = cfg.id;

  PiecewiseSolution sol = build_solution(cfg);
  const EntropyPair quad = builtin_entropy("quadratic");
  GridSpec gu = unit_grid(cfg);
  ScalarField u = sample_field(sol, gu);
  DiscreteMeasure mu = production_exact(sol, quad);

  // centered-frame objects built on demand
  PiecewiseSolution sol_c = sol.affine(2.0, -1.0, -1.0);
  ScalarField u_c;
  DiscreteMeasure mu_c;
  bool have_centered = false;
  auto ensure_centered = [&]() {
    if (have_centered) return;
    u_c = sample_field(sol_c, centered_grid(cfg));
    mu_c = production_exact(sol_c, quad);
    have_centered = true;
  };

  for (const auto& v : cfg.verifiers) {
    if (v.name == "errorvisc") {
      EstimateReport rep = verify_errorvisc(u, v.get("t1", 0.75), mu);
      rep.scenario = cfg.id;
      rep.ceiling = v.get("ceiling", rep.ceiling);
      rep.finalize();
      result.estimates.push_back(rep);
    } else if (v.name == "errorentropy") {
      ensure_centered();
      EstimateReport rep = verify_errorentropy(u_c, mu_c);
      rep.scenario = cfg.id;
      rep.ceiling = v.get("ceiling", rep.ceiling);
      rep.finalize();
      result.estimates.push_back(rep);
    } else if (v.name == "quartic") {
      ensure_centered();
      EstimateReport rep = quartic_compactness(u_c, v.get("r", 0.0625), mu_c);
      rep.scenario = cfg.id;
      rep.ceiling = v.get("ceiling", rep.ceiling);
      rep.finalize();
      result.estimates.push_back(rep);
    } else if (v.name == "oleinik") {
      double t0 = v.get("t_origin", 0.0);
      double defect = oleinik_defect(u, t0);
      double mp = total_variation(positive_part(mu));
      double tol = 8.0 * gu.mesh() * (1.0 + u.max_abs()) * (1.0 + u.max_abs());
      EstimateReport rep;
      rep.name = "oleinik";
      rep.scenario = cfg.id;
      rep.grid = std::to_string(gu.nt) + "x" + std::to_string(gu.nx);
      rep.lhs = defect;
      rep.rhs_raw = 0.0;
      rep.params = {{"t_origin", t0}, {"mu_plus", mp}, {"tol", tol}};
      rep.empirical_constant = 0.0;
      bool entropic_side = defect <= tol;
      rep.pass = (mp == 0.0) ? entropic_side : !entropic_side;
      rep.inconsistent = !rep.pass;
      rep.notes = mp == 0.0 ? "mu_+ = 0: one-sided slope bound must hold"
                            : "mu_+ > 0: Oleinik bound must fail across the jump";
      result.estimates.push_back(rep);
    } else if (v.name == "time_transfer") {
      EstimateReport rep = time_transfer_check(u, v.get("r", 0.125));
      rep.scenario = cfg.id;
      rep.ceiling = v.get("ceiling", rep.ceiling);
      rep.finalize();
      result.estimates.push_back(rep);
    } else if (v.name == "campanato") {
      auto pts = v.get_list("points");
      auto radii = v.get_list("radii");
      if (pts.size() % 2 != 0 || pts.empty())
        throw PreconditionError("campanato", "points must be (t,x) pairs");
      for (std::size_t k = 0; k + 1 < pts.size(); k += 2) {
        Point z{pts[k], pts[k + 1]};
        DecayReport rep = campanato_decay(u, mu, z, radii, sol.front_distance(z));
        rep.scenario = cfg.id;
        result.decays.push_back(rep);
      }
    } else if (v.name == "supconv") {
      double rho = v.get("rho", 0.05);
      Potential p = reconstruct_potential(u);
      ScalarField hr = sup_convolution(p.h, rho);
      double defect = semiconvexity_defect(hr, rho);
      double scale = 1.0 + hr.max_abs();
      EstimateReport rep;
      rep.name = "supconv_semiconvex";
      rep.scenario = cfg.id;
      rep.grid = std::to_string(gu.nt) + "x" + std::to_string(gu.nx);
      rep.lhs = defect;
      rep.rhs_raw = 1e-10 * scale;
      rep.params = {{"rho", rho}};
      rep.empirical_constant = 0.0;
      rep.pass = defect <= 1e-10 * scale;
      rep.notes = "semiconvexity defect of the sup-convolved potential";
      result.estimates.push_back(rep);
    } else if (v.name == "divcurl") {
      Potential p = reconstruct_potential(u);
      Point center{v.get_list("center").at(0), v.get_list("center").at(1)};
      ProbeConfig pc;
      pc.eta = v.get("eta", 0.04);
      pc.delta = v.get("delta", 0.6);
      pc.r = v.get("r", 0.4);
      pc.rho = v.get("rho", 0.45);
      pc.center = center;
      // affine comparison touching h at the probe center, slope -delta in t
      std::size_t ci = static_cast<std::size_t>(std::llround((center.t - gu.t_min) / gu.dt()));
      std::size_t cj = static_cast<std::size_t>(std::llround((center.x - gu.x_min) / gu.dx()));
      AffineFn za{p.h.at(ci, cj), -pc.delta, 0.0, Point{gu.t(ci), gu.x(cj)}};
      OmegaRegion reg = omega_eta_region(p, za, pc);
      double mp_local = square_mass(positive_part(mu), Square(reg.center, pc.rho));
      DivCurlResult dc = div_curl_probe(p, u, reg.nodes, pc.eta, pc.delta, pc.r, mp_local);
      EstimateReport rep;
      rep.name = "divcurl";
      rep.scenario = cfg.id;
      rep.grid = std::to_string(gu.nt) + "x" + std::to_string(gu.nx);
      rep.lhs = dc.lhs;
      rep.rhs_raw = dc.rhs;
      rep.ceiling = v.get("ceiling", 1.0);
      rep.params = {{"eta", pc.eta},
                    {"delta", pc.delta},
                    {"r", pc.r},
                    {"rho", pc.rho},
                    {"mu_plus_local", mp_local},
                    {"region_nodes", static_cast<double>(reg.nodes.size())}};
      rep.finalize();
      if (!reg.lower_inclusion_ok || !reg.upper_inclusion_ok) {
        rep.pass = false;
        rep.notes = "omega_eta inclusion bounds violated";
      } else {
        rep.notes = "omega_eta inclusions hold";
      }
      result.estimates.push_back(rep);
    } else {
      throw PreconditionError("run_scenario", "unknown verifier '" + v.name + "'");
    }
  }

  for (const auto& r : result.estimates) result.all_pass = result.all_pass && r.pass;
  for (const auto& r : result.decays) result.all_pass = result.all_pass && r.pass;
  return result;
}

ScenarioResult run_and_write(const ScenarioConfig& cfg, const std::string& out_root) {
  ScenarioResult res = run_scenario(cfg);

  fs::path dir = fs::path(out_root) / cfg.id;
  fs::create_directories(dir);

  {
    std::ofstream os(dir / "reports.jsonl");
    for (const auto& r : res.estimates) os << r.to_json() << "\n";
    for (const auto& r : res.decays) os << r.to_json() << "\n";
  }
  {
    std::size_t k = 0;
    for (const auto& r : res.decays) {
      std::ofstream os(dir / ("campanato_" + std::to_string(k++) + ".csv"));
      r.write_csv(os);
    }
  }
  {
    PiecewiseSolution sol = build_solution(cfg);
    ScalarField u = sample_field(sol, GridSpec(0.0, 1.0, 0.0, 1.0, cfg.nt, cfg.nx));
    std::ofstream os(dir / "u.csv");
    u.write_csv(os);
    Potential p = reconstruct_potential(u);
    ViscositySolution vs = hopf_lax(boundary_from(p.h));
    std::ofstream hb(dir / "hbar.csv");
    vs.write_csv(hb);
  }
  {
    // wall clock isolated here; reports.jsonl stays bit-stable across runs
    std::ofstream os(dir / "meta.json");
    os << "{\"scenario\":\"" << cfg.id << "\",\"timestamp\":" << std::time(nullptr)
       << "}\n";
  }
  return res;
}

std::string render_summary(const std::vector<ScenarioResult>& results) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-24s %-22s %12s %12s %10s %8s\n", "scenario",
                "verifier", "lhs", "rhs_raw", "constant", "status");
  os << buf;
  for (const auto& res : results) {
    for (const auto& r : res.estimates) {
      std::snprintf(buf, sizeof buf, "%-24s %-22s %12.5g %12.5g %10.4g %8s\n",
                    r.scenario.c_str(), r.name.c_str(), r.lhs, r.rhs_raw,
                    r.empirical_constant, r.pass ? "pass" : "FAIL");
      os << buf;
    }
    for (const auto& r : res.decays) {
      std::snprintf(buf, sizeof buf, "%-24s %-22s %12.5g %12.5g %10.4g %8s\n",
                    r.scenario.c_str(),
                    (r.name + (r.resolution_limited ? "(res-lim)" : "")).c_str(),
                    r.fitted_slope, r.slope_floor, r.alpha_hat,
                    r.pass ? "pass" : "FAIL");
      os << buf;
    }
  }
  return os.str();
}

std::string summarize_directory(const std::string& dir) {
  std::ostringstream os;
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().filename() == "reports.jsonl")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-24s %-22s %12s %12s %10s %8s\n", "scenario",
                "verifier", "lhs", "rhs_raw", "constant", "status");
  os << buf;
  for (const auto& f : files) {
    std::ifstream is(f);
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      auto j = nlohmann::json::parse(line);
      auto num = [](const nlohmann::json& v) {
        return v.is_number() ? v.get<double>() : std::numeric_limits<double>::infinity();
      };
      if (j["type"] == "estimate") {
        std::snprintf(buf, sizeof buf, "%-24s %-22s %12.5g %12.5g %10.4g %8s\n",
                      j["scenario"].get<std::string>().c_str(),
                      j["name"].get<std::string>().c_str(), num(j["lhs"]),
                      num(j["rhs_raw"]), num(j["empirical_constant"]),
                      j["pass"].get<bool>() ? "pass" : "FAIL");
      } else {
        std::snprintf(buf, sizeof buf, "%-24s %-22s %12.5g %12.5g %10.4g %8s\n",
                      j["scenario"].get<std::string>().c_str(),
                      j["name"].get<std::string>().c_str(), num(j["fitted_slope"]),
                      num(j["slope_floor"]), num(j["alpha_hat"]),
                      j["pass"].get<bool>() ? "pass" : "FAIL");
      }
      os << buf;
    }
  }
  return os.str();
}

}  // namespace burgers
