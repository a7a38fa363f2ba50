#include "wpi/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wpi/decay.hpp"
#include "wpi/ends.hpp"
#include "wpi/errors.hpp"
#include "wpi/io.hpp"
#include "wpi/report.hpp"
#include "wpi/rho_metric.hpp"
#include "wpi/rigidity.hpp"
#include "wpi/spectral.hpp"

namespace wpi {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spec file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // translate the byte offset into a 1-based line for the message
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i) {
      if (text[i] == '\n') ++line;
    }
    std::ostringstream os;
    os << path << ":" << line << ": " << e.what();
    throw std::invalid_argument(os.str());
  }
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

GridSpec log_grid(double a, double b, int nodes) {
  GridSpec g;
  g.node_count = nodes;
  g.interval = Interval::closed(a, b);
  if (a > 0.0 && b / a > 4.0) {
    g.grading = GridSpec::Grading::geometric;
    g.ratio = std::pow(b / a, 1.0 / (nodes - 1));
  }
  return g;
}

TailPolicy policy_from(const RunConfig& cfg) {
  TailPolicy p;
  if (cfg.horizon > 0.0) p.horizon_cap = cfg.horizon;
  return p;
}

WeightProfile resolve_weight(const RunConfig& cfg, const WarpedModel* model) {
  if (!cfg.weight_spec.empty()) {
    return weight_from_json(load_json(cfg.weight_spec), model);
  }
  if (cfg.weight_name == "hardy") {
    if (cfg.n < 3) throw std::invalid_argument("--weight hardy needs --n >= 3");
    return hardy_weight(cfg.n);
  }
  if (cfg.weight_name == "cartan_hadamard") {
    if (cfg.n < 2) throw std::invalid_argument("--weight cartan_hadamard needs --n >= 2");
    return cartan_hadamard_weight(cfg.n);
  }
  if (cfg.weight_name == "green") {
    if (!model) throw std::invalid_argument("--weight green needs --model");
    return green_weight_model(*model, policy_from(cfg));
  }
  if (cfg.weight_name == "natural") {
    if (!model) throw std::invalid_argument("--weight natural needs --model");
    return natural_weight(*model);
  }
  throw std::invalid_argument("no weight given: use --weight-spec or --weight NAME");
}

std::string out_path(const RunConfig& cfg, const std::string& file) {
  return (std::filesystem::path(cfg.output_dir) / file).string();
}

const char* source_name(WeightSource s) {
  switch (s) {
    case WeightSource::hardy: return "hardy";
    case WeightSource::cartan_hadamard: return "cartan_hadamard";
    case WeightSource::green_model: return "green_model";
    case WeightSource::minimal_extrinsic: return "minimal_extrinsic";
    case WeightSource::natural_warp: return "natural_warp";
    case WeightSource::user: return "user";
  }
  return "user";
}

int cmd_curvature(const RunConfig& cfg, std::vector<std::string>& findings) {
  WarpedModel m = model_from_json(load_json(cfg.model_spec));
  const int nodes = cfg.grid_nodes > 0 ? cfg.grid_nodes : 201;
  const Interval dom = m.eta.domain();
  const double margin = 1e-3 * std::max(1.0, dom.length());
  const double lo = (m.kind == DomainKind::pole_model ? dom.lo + margin : dom.lo + margin);
  const double hi = dom.hi - margin;

  std::vector<double> ts, sec_r, ric_r, rho_nat;
  std::vector<double> sec_f, ric_f;
  const bool has_k = m.fiber.sectional.has_value();
  const bool has_ric = m.fiber.ricci_value.has_value();
  WeightProfile nat = natural_weight(m);
  for (int i = 0; i < nodes; ++i) {
    const double t = lo + (hi - lo) * i / (nodes - 1);
    ts.push_back(t);
    sec_r.push_back(sectional_radial(m, t));
    ric_r.push_back(ricci_radial(m, t));
    rho_nat.push_back(nat.rho(t));
    if (has_k) sec_f.push_back(sectional_fiber(m, t));
    if (has_ric) ric_f.push_back(ricci_fiber(m, t));
  }
  std::vector<std::string> header{"t", "sectional_radial", "ricci_radial", "rho_natural"};
  std::vector<std::vector<double>> cols{ts, sec_r, ric_r, rho_nat};
  if (has_k) {
    header.push_back("sectional_fiber");
    cols.push_back(sec_f);
  }
  if (has_ric) {
    header.push_back("ricci_fiber");
    cols.push_back(ric_f);
  }
  write_csv(out_path(cfg, "curvature.csv"), header, cols);
  if (cfg.emit_svg) write_svg_sparkline(out_path(cfg, "curvature_rho.svg"), ts, rho_nat);

  json j;
  j["n"] = m.n;
  j["natural_weight_valid"] = nat.valid_as_weight;
  if (cfg.format == "json") {
    j["t"] = ts;
    j["rho_natural"] = rho_nat;
  }
  if (!nat.valid_as_weight) {
    j["natural_weight_note"] = nat.note;
    findings.push_back("natural weight invalid: " + nat.note);
  }
  j["samples"] = nodes;
  write_json(out_path(cfg, "curvature.json"), j);
  return 0;
}

int cmd_weight(const RunConfig& cfg, std::vector<std::string>& findings) {
  std::optional<WarpedModel> model;
  if (!cfg.model_spec.empty()) model = model_from_json(load_json(cfg.model_spec));
  WeightProfile w = resolve_weight(cfg, model ? &*model : nullptr);

  const Interval dom = w.rho.domain();
  double a = cfg.a > 0.0 ? cfg.a : std::max(dom.lo, 1e-2);
  double b = cfg.b > 0.0 ? cfg.b : std::min(dom.hi, 100.0);
  if (!(a < b)) throw std::invalid_argument("weight: need a < b sampling window");
  const int nodes = cfg.grid_nodes > 0 ? cfg.grid_nodes : 200;
  const bool log_spaced = a > 0.0 && b / a > 4.0;
  std::vector<double> rs, vals;
  for (int i = 0; i < nodes; ++i) {
    const double r = log_spaced ? a * std::pow(b / a, double(i) / (nodes - 1))
                                : a + (b - a) * double(i) / (nodes - 1);
    rs.push_back(r);
    vals.push_back(w.rho(r));
  }
  write_csv(out_path(cfg, "weight.csv"), {"r", "rho"}, {rs, vals});
  if (cfg.emit_svg) write_svg_sparkline(out_path(cfg, "weight.svg"), rs, vals);
  json j;
  j["source"] = source_name(w.source);
  j["valid_as_weight"] = w.valid_as_weight;
  j["note"] = w.note;
  j["window"] = {a, b};
  if (cfg.format == "json") {
    j["r"] = rs;
    j["rho"] = vals;
  }
  write_json(out_path(cfg, "weight.json"), j);
  if (!w.valid_as_weight) findings.push_back("weight invalid: " + w.note);
  return 0;
}

int cmd_rho_metric(const RunConfig& cfg, std::vector<std::string>& findings) {
  std::optional<WarpedModel> model;
  if (!cfg.model_spec.empty()) model = model_from_json(load_json(cfg.model_spec));
  WeightProfile w = resolve_weight(cfg, model ? &*model : nullptr);
  const int n = cfg.n >= 3 ? cfg.n : (model ? model->n : 0);
  if (n < 3) throw std::invalid_argument("rho-metric: need --n >= 3 (or a model)");

  const Interval dom = w.rho.domain();
  const double a = cfg.a > 0.0 ? cfg.a : std::max(dom.lo, 1e-2);
  double b = cfg.b;
  if (!(b > a)) {
    b = radius_for_rho_distance(w, cfg.r0, cfg.r_max + 1.5, 1e9);
  }
  const int nodes = cfg.grid_nodes > 0 ? cfg.grid_nodes : 1200;
  RhoDistanceTable table = build_rho_distance(w, cfg.r0, log_grid(a, b, nodes), policy_from(cfg));

  CriterionReport crit = growth_criterion(table, w, n, cfg.r_max);
  write_csv(out_path(cfg, "rho_distance.csv"), {"r", "r_rho"},
            {table.grid(), table.distances()});
  json j;
  j["r0"] = cfg.r0;
  j["n"] = n;
  auto comp_name = [](CompletenessVerdict::Status s) {
    switch (s) {
      case CompletenessVerdict::Status::complete: return "complete";
      case CompletenessVerdict::Status::incomplete: return "incomplete";
      default: return "inconclusive";
    }
  };
  j["completeness_upper"] = comp_name(table.completeness(EndSelector::upper).status);
  j["growth_criterion"] = {{"R", crit.R_values},
                           {"S", crit.S_values},
                           {"gauge", crit.gauge_values},
                           {"ratio", crit.ratios},
                           {"running_min", crit.running_min},
                           {"threshold", crit.threshold},
                           {"satisfied_on_horizon", crit.satisfied_on_horizon},
                           {"caveat", crit.caveat}};
  write_json(out_path(cfg, "rho_metric.json"), j);
  if (cfg.emit_svg) write_svg_sparkline(out_path(cfg, "growth_ratio.svg"), crit.R_values, crit.ratios);
  if (table.completeness(EndSelector::upper).status ==
      CompletenessVerdict::Status::incomplete) {
    findings.push_back("rho-metric incomplete toward the upper end");
  }
  return 0;
}

int cmd_spectral(const RunConfig& cfg, std::vector<std::string>& findings) {
  WarpedModel m = model_from_json(load_json(cfg.model_spec));
  json j;
  if (cfg.mode == "bottom") {
    const int nodes = cfg.grid_nodes > 0 ? cfg.grid_nodes : 10000;
    BottomSpectrumResult r = bottom_spectrum(m, cfg.radii, nodes);
    j["estimate"] = r.estimate;
    j["radii"] = r.radii;
    j["lambdas"] = r.lambdas;
    write_json(out_path(cfg, "bottom_spectrum.json"), j);
    return 0;
  }

  const Interval dom = m.eta.domain();
  const double a = cfg.a > 0.0 || m.kind != DomainKind::pole_model
                       ? (cfg.a != 0.0 ? cfg.a : std::max(dom.lo, -10.0))
                       : 1e-2;
  const double b = cfg.b != 0.0 ? cfg.b : std::min(dom.hi, 100.0);
  const int nodes = cfg.grid_nodes > 0 ? cfg.grid_nodes : 2001;
  GridSpec grid = a > 0.0 ? log_grid(a, b, nodes)
                          : GridSpec{nodes, GridSpec::Grading::uniform, 1.0, Interval::closed(a, b)};
  grid.interval = Interval::closed(a, b);

  if (cfg.mode == "poincare") {
    WeightProfile w = resolve_weight(cfg, &m);
    VerificationReport rep =
        verify_weighted_poincare(w, m, Interval::closed(a, b), grid,
                                 cfg.tol > 0.0 ? cfg.tol : 1e-8);
    j["minimum"] = rep.minimum;
    j["minimum_coarse"] = rep.minimum_coarse;
    j["tolerance"] = rep.tolerance;
    j["pass"] = rep.pass;
    j["grid_size"] = rep.grid_size;
    j["caveat"] = rep.caveat;
    write_json(out_path(cfg, "poincare.json"), j);
    write_csv(out_path(cfg, "minimizer.csv"), {"r", "phi"}, {rep.nodes, rep.minimizer});
    if (!rep.pass) {
      findings.push_back("weighted Poincare verification FAILED: minimum " +
                         format_double(rep.minimum));
    }
    return 0;
  }

  DirichletProblem p{m, std::nullopt, std::nullopt, Interval::closed(a, b), grid};
  if (cfg.mode == "schrodinger") {
    p.weight = resolve_weight(cfg, &m);
  } else if (cfg.mode != "lambda1") {
    throw std::invalid_argument("spectral: --mode must be lambda1|schrodinger|poincare|bottom");
  }
  EigenResult e = principal_eigenvalue(
      p, cfg.mode == "schrodinger" ? OperatorKind::schrodinger : OperatorKind::laplacian);
  j["lambda1"] = e.lambda1;
  j["residual"] = e.residual;
  j["grid"] = e.grid_size;
  write_json(out_path(cfg, "spectral.json"), j);
  write_csv(out_path(cfg, "eigenvector.csv"), {"r", "u"}, {e.nodes, e.eigenvector});
  return 0;
}

int cmd_decay(const RunConfig& cfg, std::vector<std::string>& findings) {
  WarpedModel m = model_from_json(load_json(cfg.model_spec));
  WeightProfile w = resolve_weight(cfg, &m);
  const double R_max = cfg.r_max;
  const double hi = radius_for_rho_distance(w, cfg.r0, R_max + 1.5,
                                            m.eta.domain().hi_kind == EndpointKind::finite
                                                ? m.eta.domain().hi
                                                : 1e9);
  const int nodes = cfg.grid_nodes > 0 ? cfg.grid_nodes : 1400;
  std::optional<ScalarProfile> V;
  if (cfg.mu != 0.0) V = profile_constant(cfg.mu, m.eta.domain());
  EndModel end = make_end_model(m, w, V, cfg.r0, log_grid(cfg.r0, hi, nodes), policy_from(cfg));

  BVSpec bv;
  ScalarProfile f = solve_schrodinger_radial(end, bv, policy_from(cfg));
  AnnulusSeries series = annulus_integrals(end, f, R_max);
  DecayFit fit = fit_decay_rate(series, 1.0, R_max);
  GrowthReport growth = growth_condition_check(end, f, R_max);
  std::vector<double> logs;
  for (double I : series.integrals) logs.push_back(I > 0 ? std::log(I) : 0.0);
  write_csv(out_path(cfg, "decay_series.csv"), {"R", "I", "log_I"},
            {series.R_values, series.integrals, logs});

  json j;
  j["rate"] = fit.rate;
  j["C"] = fit.C;
  j["residual"] = fit.residual;
  j["points"] = fit.points;
  if (cfg.format == "json") {
    j["R"] = series.R_values;
    j["I"] = series.integrals;
  }
  j["growth_condition"] = {{"trend", growth.trend},
                           {"verdict", growth.verdict == GrowthReport::Verdict::satisfied
                                           ? "satisfied"
                                           : (growth.verdict == GrowthReport::Verdict::boundary_theta
                                                  ? "boundary_theta"
                                                  : "not_satisfied")},
                           {"certificate_emitted", growth.certificate_emitted}};
  write_json(out_path(cfg, "decay_fit.json"), j);
  if (cfg.emit_svg) {
    write_svg_sparkline(out_path(cfg, "decay_logI.svg"), series.R_values, logs);
  }
  if (!growth.certificate_emitted) {
    findings.push_back("growth condition not satisfied: no decay certificate emitted");
  }
  return 0;
}

int cmd_classify(const RunConfig& cfg, std::vector<std::string>&) {
  EndProfile e = end_from_json(load_json(cfg.end_spec));
  Classification c = classify_end(e, policy_from(cfg));
  json j;
  j["label"] = e.label;
  j["status"] = c.status == Classification::Status::parabolic
                    ? "parabolic"
                    : (c.status == Classification::Status::nonparabolic ? "nonparabolic"
                                                                        : "inconclusive");
  j["evidence"] = {{"note", c.evidence.note},
                   {"horizons", c.evidence.horizons},
                   {"partials", c.evidence.partials}};
  write_json(out_path(cfg, "classification.json"), j);
  return 0;
}

json verdict_json(const ConditionVerdict& v) {
  json j;
  j["holds"] = v.holds;
  j["margin"] = v.margin;
  if (v.violating_t) j["violating_t"] = *v.violating_t;
  return j;
}

int cmd_rigidity(const RunConfig& cfg, std::vector<std::string>& findings) {
  json j;
  if (cfg.rigidity_action == "check") {
    WarpedModel m = model_from_json(load_json(cfg.model_spec));
    RigidityReport rep = condition_check(m);
    j["convexity_condition"] = verdict_json(rep.convexity_condition);
    j["fiber_ricci_condition"] = verdict_json(rep.fiber_ricci_condition);
    j["residuals"] = rep.residuals;
    write_json(out_path(cfg, "rigidity_check.json"), j);
    if (!rep.convexity_condition.holds) findings.push_back("condition (eta'' > 0) fails");
    if (!rep.fiber_ricci_condition.holds) findings.push_back("fiber Ricci condition fails");
    return 0;
  }
  if (cfg.rigidity_action == "cosh-power") {
    CoshPowerWarping ex = cosh_power_warping(cfg.alpha, cfg.c1, cfg.big_c, cfg.n >= 3 ? cfg.n : 4);
    j["fitted_exponent"] = ex.fitted_exponent;
    j["expected_exponent"] = ex.expected_exponent;
    j["convexity_condition"] = verdict_json(ex.report.convexity_condition);
    j["fiber_ricci_condition"] = verdict_json(ex.report.fiber_ricci_condition);
    j["residuals"] = ex.report.residuals;
    // eta samples where cosh(u) stays representable
    const double safe_u = 300.0;
    double t_hi = 5.0;
    while (t_hi < 100.0 && std::abs(ex.u(t_hi)) < safe_u) t_hi += 1.0;
    std::vector<double> ts, etas;
    for (int i = 0; i <= 400; ++i) {
      const double t = -t_hi + 2.0 * t_hi * i / 400;
      ts.push_back(t);
      etas.push_back(ex.model.eta(t));
    }
    write_json(out_path(cfg, "cosh_power.json"), j);
    write_csv(out_path(cfg, "cosh_power_eta.csv"), {"t", "eta"}, {ts, etas});
    if (!ex.report.convexity_condition.holds || !ex.report.fiber_ricci_condition.holds) {
      findings.push_back("cosh-power warping: warp conditions fail on the grid");
    }
    return 0;
  }
  if (cfg.rigidity_action == "ode") {
    WarpBuilder b;
    b.tau = profile_constant(cfg.tau_const, Interval::closed(0.0, cfg.t_max));
    b.eta0 = cfg.eta0;
    b.deta0 = cfg.deta0;
    b.domain = Interval::closed(0.0, cfg.t_max);
    b.step = cfg.step;
    ScalarProfile eta = integrate_warp(b);
    std::vector<double> ts, etas;
    for (int i = 0; i <= 500; ++i) {
      const double t = cfg.t_max * i / 500.0;
      ts.push_back(t);
      etas.push_back(eta(t));
    }
    write_csv(out_path(cfg, "warp_eta.csv"), {"t", "eta"}, {ts, etas});
    j["eta_end"] = etas.back();
    j["step"] = cfg.step;
    write_json(out_path(cfg, "warp_ode.json"), j);
    return 0;
  }
  if (cfg.rigidity_action == "comparison") {
    std::optional<WarpedModel> model;
    if (!cfg.model_spec.empty()) model = model_from_json(load_json(cfg.model_spec));
    WeightProfile w = resolve_weight(cfg, model ? &*model : nullptr);
    const int n = cfg.n >= 4 ? cfg.n : 4;
    const double b = cfg.b > cfg.r0 ? cfg.b : cfg.r0 + 99.0;
    RhoDistanceTable table =
        build_rho_distance(w, cfg.r0, log_grid(std::max(cfg.r0 * 0.5, 1e-3), b, 800),
                           policy_from(cfg));
    ComparisonReport rep = comparison_function_check(w, n, cfg.r0, table);
    j["hypothesis_ok"] = rep.hypothesis_ok;
    j["hypothesis_margin"] = rep.hypothesis_margin;
    j["inequality_ok"] = rep.inequality_ok;
    j["inequality_margin"] = rep.inequality_margin;
    j["rho_bounded_trend"] = rep.rho_bounded_trend;
    j["nonexistence_flag"] = rep.nonexistence_flag;
    j["narrative"] = rep.narrative;
    write_json(out_path(cfg, "comparison.json"), j);
    if (rep.nonexistence_flag) findings.push_back("comparison check: " + rep.narrative);
    return 0;
  }
  if (cfg.rigidity_action == "rigid-case") {
    WarpedModel m = model_from_json(load_json(cfg.model_spec));
    WeightProfile w = cfg.weight_spec.empty() && cfg.weight_name.empty()
                          ? natural_weight(m)
                          : resolve_weight(cfg, &m);
    ResidualReport rep = rigid_case_residual(m, w);
    j["identity_max"] = rep.identity_max;
    j["residual_max"] = rep.residual_max;
    j["rho_constant"] = rep.rho_constant;
    j["rho_value"] = rep.rho_value;
    j["log_eta_affine"] = rep.log_eta_affine;
    j["log_eta_slope"] = rep.log_eta_slope;
    j["rigid_case"] = rep.rigid_case;
    j["narrative"] = rep.narrative;
    write_json(out_path(cfg, "rigid_case.json"), j);
    return 0;
  }
  throw std::invalid_argument("rigidity: unknown action '" + cfg.rigidity_action + "'");
}

int cmd_report(const RunConfig& cfg, std::vector<std::string>& findings) {
  std::vector<CheckResult> checks = run_reproduction();
  json j = json::array();
  bool all_pass = true;
  for (const auto& c : checks) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
    j.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    all_pass = all_pass && c.pass;
  }
  write_json(out_path(cfg, "report.json"), j);
  if (!all_pass) findings.push_back("reproduction checks failed");
  return 0;
}

}  // namespace

int run(const RunConfig& config) {
  std::vector<std::string> findings;
  try {
    if (config.format != "json" && config.format != "csv") {
      std::cerr << "error: --format must be json or csv\n";
      return 1;
    }
    std::filesystem::create_directories(config.output_dir);
    int rc = 0;
    if (config.command == "curvature") {
      rc = cmd_curvature(config, findings);
    } else if (config.command == "weight") {
      rc = cmd_weight(config, findings);
    } else if (config.command == "rho-metric") {
      rc = cmd_rho_metric(config, findings);
    } else if (config.command == "spectral") {
      rc = cmd_spectral(config, findings);
    } else if (config.command == "decay") {
      rc = cmd_decay(config, findings);
    } else if (config.command == "classify") {
      rc = cmd_classify(config, findings);
    } else if (config.command == "rigidity") {
      rc = cmd_rigidity(config, findings);
    } else if (config.command == "report") {
      rc = cmd_report(config, findings);
    } else {
      std::cerr << "unknown command: " << config.command << "\n";
      return 1;
    }
    if (rc != 0) return rc;
    if (!findings.empty()) {
      for (const auto& f : findings) std::cerr << "finding: " << f << "\n";
      return 2;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"numerical workbench for weighted Poincare inequalities on model manifolds"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--out", cfg.output_dir, "output directory");
    sub->add_option("--format", cfg.format, "primary artifact format: json|csv");
    sub->add_flag("--svg", cfg.emit_svg, "emit sparkline SVGs");
    sub->add_option("--tol", cfg.tol, "tolerance override");
    sub->add_option("--grid", cfg.grid_nodes, "grid node count override");
    sub->add_option("--horizon", cfg.horizon, "improper-integral horizon cap override");
  };
  auto add_model = [&cfg](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--model", cfg.model_spec, "model JSON spec");
    if (required) opt->required();
  };
  auto add_weight = [&cfg](CLI::App* sub) {
    sub->add_option("--weight-spec", cfg.weight_spec, "weight JSON spec");
    sub->add_option("--weight", cfg.weight_name,
                    "builtin weight: hardy|cartan_hadamard|green|natural");
    sub->add_option("--n", cfg.n, "dimension for builtin weights");
  };

  CLI::App* curvature = app.add_subcommand("curvature", "curvature sweep of a warped model");
  add_common(curvature);
  add_model(curvature, true);

  CLI::App* weight = app.add_subcommand("weight", "construct and sample a weight function");
  add_common(weight);
  add_model(weight, false);
  add_weight(weight);
  weight->add_option("-a", cfg.a, "sampling window start");
  weight->add_option("-b", cfg.b, "sampling window end");

  CLI::App* rho = app.add_subcommand("rho-metric", "rho-distance table, S(R), growth criterion");
  add_common(rho);
  add_model(rho, false);
  add_weight(rho);
  rho->add_option("--r0", cfg.r0, "base point of the rho-distance");
  rho->add_option("--rmax", cfg.r_max,
                  "rho-distance horizon; the growth verdict is satisfied-on-horizon when "
                  "the running minimum of S(R)/F(R) drops below 1% of its initial value");
  rho->add_option("-a", cfg.a, "table start");
  rho->add_option("-b", cfg.b, "table end (default: reach rmax)");

  CLI::App* spectral = app.add_subcommand("spectral", "eigenvalues and Poincare verification");
  add_common(spectral);
  add_model(spectral, true);
  add_weight(spectral);
  spectral->add_option("--mode", cfg.mode, "lambda1|schrodinger|poincare|bottom");
  spectral->add_option("-a", cfg.a, "interval start");
  spectral->add_option("-b", cfg.b, "interval end");
  spectral->add_option("--radii", cfg.radii, "exhaustion radii for --mode bottom");

  CLI::App* decay = app.add_subcommand("decay", "decaying solution, annulus series, rate fit");
  add_common(decay);
  add_model(decay, true);
  add_weight(decay);
  decay->add_option("--r0", cfg.r0, "end base radius");
  decay->add_option("--rmax", cfg.r_max, "rho-annulus horizon");
  decay->add_option("--mu", cfg.mu, "constant Schrodinger potential");

  CLI::App* classify = app.add_subcommand("classify", "parabolic/nonparabolic end classification");
  add_common(classify);
  classify->add_option("--end", cfg.end_spec, "end JSON spec")->required();

  CLI::App* rigidity = app.add_subcommand("rigidity", "warp ODE and rigidity checkers");
  add_common(rigidity);
  rigidity->fallthrough();
  CLI::App* r_check = rigidity->add_subcommand("check", "verify warp weight conditions");
  r_check->fallthrough();
  r_check->add_option("--model", cfg.model_spec)->required();
  CLI::App* r_ex = rigidity->add_subcommand("cosh-power", "generate the cosh-power warping");
  r_ex->fallthrough();
  r_ex->add_option("--alpha", cfg.alpha, "power exponent (>= 1)");
  r_ex->add_option("--c1", cfg.c1, "linear coefficient");
  r_ex->add_option("--C", cfg.big_c, "fiber Ricci lower-bound magnitude");
  r_ex->add_option("--n", cfg.n, "dimension");
  CLI::App* r_ode = rigidity->add_subcommand("ode", "integrate eta'' = tau eta");
  r_ode->fallthrough();
  r_ode->add_option("--tau", cfg.tau_const, "constant tau");
  r_ode->add_option("--eta0", cfg.eta0, "eta at 0");
  r_ode->add_option("--deta0", cfg.deta0, "eta' at 0");
  r_ode->add_option("--tmax", cfg.t_max, "integration end");
  r_ode->add_option("--step", cfg.step, "RK4 step");
  CLI::App* r_81 = rigidity->add_subcommand("comparison", "comparison-function boundedness check");
  r_81->fallthrough();
  r_81->add_option("--weight-spec", cfg.weight_spec);
  r_81->add_option("--weight", cfg.weight_name);
  r_81->add_option("--model", cfg.model_spec);
  r_81->add_option("--n", cfg.n, "dimension (>= 4)");
  r_81->add_option("--r0", cfg.r0, "hypothesis base radius");
  r_81->add_option("-b", cfg.b, "horizon");
  CLI::App* r_82 = rigidity->add_subcommand("rigid-case", "warped rigid-case residual");
  r_82->fallthrough();
  r_82->add_option("--model", cfg.model_spec)->required();
  r_82->add_option("--weight-spec", cfg.weight_spec);
  r_82->add_option("--weight", cfg.weight_name);
  r_82->add_option("--n", cfg.n);

  CLI::App* report = app.add_subcommand("report", "run the bundled reproduction suite");
  add_common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  for (auto* sub : app.get_subcommands()) {
    cfg.command = sub->get_name();
    if (cfg.command == "rigidity") {
      auto subs = sub->get_subcommands();
      if (subs.empty()) {
        std::cerr << "rigidity: need an action (check|cosh-power|ode|comparison|rigid-case)\n";
        return 1;
      }
      cfg.rigidity_action = subs.front()->get_name();
    }
  }
  return run(cfg);
}

}  // namespace wpi
