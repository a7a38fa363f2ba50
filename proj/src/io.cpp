#include "wpi/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wpi {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ScalarProfile read_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open csv file: " + path);
  std::vector<double> ts, vs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed = line;
    while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' ')) {
      trimmed.pop_back();
    }
    if (trimmed.empty()) continue;
    for (char& c : trimmed) {
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    }
    std::istringstream ls(trimmed);
    double t, v;
    if (!(ls >> t >> v)) {
      if (lineno == 1) continue;  // header row
      std::ostringstream os;
      os << path << ":" << lineno << ": expected two numeric columns";
      throw std::invalid_argument(os.str());
    }
    if (!ts.empty() && !(t > ts.back())) {
      std::ostringstream os;
      os << path << ":" << lineno << ": t column must be strictly increasing";
      throw std::invalid_argument(os.str());
    }
    ts.push_back(t);
    vs.push_back(v);
  }
  if (ts.size() < 2) {
    throw std::invalid_argument(path + ": need at least two sample rows");
  }
  return ScalarProfile::from_samples(std::move(ts), std::move(vs));
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  if (columns.empty() || header.size() != columns.size()) {
    throw std::invalid_argument("write_csv: header/column mismatch");
  }
  const std::size_t rows = columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw std::invalid_argument("write_csv: ragged columns");
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open for writing: " + path);
  for (std::size_t j = 0; j < header.size(); ++j) {
    out << (j ? "," : "") << header[j];
  }
  out << "\n";
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      out << (j ? "," : "") << format_double(columns[j][i]);
    }
    out << "\n";
  }
}

void write_svg_sparkline(const std::string& path, const std::vector<double>& xs,
                         const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("write_svg_sparkline: need matching series of length >= 2");
  }
  double xmin = xs.front(), xmax = xs.front(), ymin = ys.front(), ymax = ys.front();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xmin = std::min(xmin, xs[i]);
    xmax = std::max(xmax, xs[i]);
    ymin = std::min(ymin, ys[i]);
    ymax = std::max(ymax, ys[i]);
  }
  const double w = 480.0, h = 120.0, pad = 6.0;
  const double xspan = xmax > xmin ? xmax - xmin : 1.0;
  const double yspan = ymax > ymin ? ymax - ymin : 1.0;
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open for writing: " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << w << " " << h
      << "\">\n<polyline fill=\"none\" stroke=\"#205080\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double px = pad + (w - 2 * pad) * (xs[i] - xmin) / xspan;
    const double py = h - pad - (h - 2 * pad) * (ys[i] - ymin) / yspan;
    out << (i ? " " : "") << format_double(px) << "," << format_double(py);
  }
  out << "\"/>\n</svg>\n";
}

namespace {

Interval domain_from_json(const nlohmann::json& j, Interval fallback,
                          const std::string& context) {
  if (!j.contains("domain")) return fallback;
  const auto& d = j.at("domain");
  Interval iv = fallback;
  if (d.contains("t_lo")) iv.lo = d.at("t_lo").get<double>();
  if (d.contains("t_hi")) iv.hi = d.at("t_hi").get<double>();
  if (d.contains("lo_infinite")) {
    iv.lo_kind = d.at("lo_infinite").get<bool>() ? EndpointKind::truncated_infinite
                                                 : EndpointKind::finite;
  }
  if (d.contains("hi_infinite")) {
    iv.hi_kind = d.at("hi_infinite").get<bool>() ? EndpointKind::truncated_infinite
                                                 : EndpointKind::finite;
  }
  if (!(iv.lo < iv.hi)) {
    throw std::invalid_argument(context + ".domain: t_lo must be < t_hi");
  }
  return iv;
}

double require_number(const nlohmann::json& j, const std::string& key,
                      const std::string& context) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw std::invalid_argument(context + ": missing numeric field '" + key + "'");
  }
  return j.at(key).get<double>();
}

}  // namespace

ScalarProfile profile_from_json(const nlohmann::json& spec, const std::string& context) {
  if (!spec.is_object()) {
    throw std::invalid_argument(context + ": expected an object spec");
  }
  if (spec.contains("csv")) {
    return read_profile_csv(spec.at("csv").get<std::string>());
  }
  if (!spec.contains("builtin")) {
    throw std::invalid_argument(context + ": need 'builtin' or 'csv'");
  }
  const std::string name = spec.at("builtin").get<std::string>();
  if (name == "constant") {
    const double c = require_number(spec, "value", context);
    return profile_constant(c, domain_from_json(spec, Interval::ray(0.0, 1e9), context));
  }
  if (name == "identity") {
    return profile_identity(domain_from_json(spec, Interval::ray(0.0, 1e9), context));
  }
  if (name == "linear") {
    return profile_linear(require_number(spec, "intercept", context),
                          require_number(spec, "slope", context),
                          domain_from_json(spec, Interval::ray(0.0, 1e9), context));
  }
  if (name == "power") {
    return profile_power(require_number(spec, "coeff", context),
                         require_number(spec, "exponent", context),
                         domain_from_json(spec, Interval::ray(0.0, 1e9), context));
  }
  if (name == "exp") {
    const double coeff = spec.contains("coeff") ? spec.at("coeff").get<double>() : 1.0;
    return profile_exp(require_number(spec, "rate", context), coeff,
                       domain_from_json(spec, Interval::line(-50.0, 50.0), context));
  }
  if (name == "cosh") {
    return profile_cosh(domain_from_json(spec, Interval::line(-50.0, 50.0), context));
  }
  if (name == "sinh") {
    return profile_sinh(domain_from_json(spec, Interval::ray(0.0, 50.0), context));
  }
  throw std::invalid_argument(context + ": unknown builtin '" + name + "'");
}

WarpedModel model_from_json(const nlohmann::json& spec) {
  if (!spec.is_object()) throw std::invalid_argument("model: expected a JSON object");
  const int n = static_cast<int>(require_number(spec, "n", "model"));
  if (!spec.contains("domain") || !spec.at("domain").contains("kind")) {
    throw std::invalid_argument("model.domain: missing 'kind'");
  }
  const std::string kind_name = spec.at("domain").at("kind").get<std::string>();
  DomainKind kind;
  if (kind_name == "full_line") {
    kind = DomainKind::full_line;
  } else if (kind_name == "pole_model") {
    kind = DomainKind::pole_model;
  } else {
    throw std::invalid_argument("model.domain.kind: expected 'full_line' or 'pole_model'");
  }
  Interval fallback = kind == DomainKind::pole_model ? Interval::ray(0.0, 1e6)
                                                     : Interval::line(-50.0, 50.0);
  Interval dom = domain_from_json(spec, fallback, "model");

  nlohmann::json eta_spec = spec.at("eta");
  if (!eta_spec.contains("domain")) {
    eta_spec["domain"] = {{"t_lo", dom.lo},
                          {"t_hi", dom.hi},
                          {"lo_infinite", dom.lo_kind == EndpointKind::truncated_infinite},
                          {"hi_infinite", dom.hi_kind == EndpointKind::truncated_infinite}};
  }
  ScalarProfile eta = profile_from_json(eta_spec, "model.eta");

  // exponential-type warpings get a log companion so curvature queries stay
  // finite far out
  std::optional<ScalarProfile> log_eta;
  if (eta_spec.contains("builtin")) {
    const std::string name = eta_spec.at("builtin").get<std::string>();
    const Interval edom = eta.domain();
    if (name == "sinh") {
      log_eta = profile_log_sinh(edom);
    } else if (name == "cosh") {
      log_eta = profile_log_cosh(edom);
    } else if (name == "exp") {
      const double rate = eta_spec.at("rate").get<double>();
      const double coeff = eta_spec.contains("coeff") ? eta_spec.at("coeff").get<double>() : 1.0;
      log_eta = profile_linear(std::log(coeff), rate, edom);
    }
  }

  FiberData fiber;
  if (spec.contains("fiber")) {
    const auto& f = spec.at("fiber");
    if (f.contains("C_N")) fiber.ricci_lower = f.at("C_N").get<double>();
    if (f.contains("V_N")) fiber.volume = f.at("V_N").get<double>();
    if (f.contains("K_bar")) fiber.sectional = f.at("K_bar").get<double>();
    if (f.contains("ric_bar")) fiber.ricci_value = f.at("ric_bar").get<double>();
    if (f.contains("compact")) fiber.compact = f.at("compact").get<bool>();
  }
  return make_warped_model(n, kind, std::move(eta), fiber, std::move(log_eta));
}

WeightProfile weight_from_json(const nlohmann::json& spec, const WarpedModel* model) {
  if (!spec.is_object() || !spec.contains("source")) {
    throw std::invalid_argument("weight: expected an object with 'source'");
  }
  const std::string source = spec.at("source").get<std::string>();
  if (source == "hardy") {
    return hardy_weight(static_cast<int>(require_number(spec, "n", "weight")));
  }
  if (source == "cartan_hadamard") {
    return cartan_hadamard_weight(static_cast<int>(require_number(spec, "n", "weight")));
  }
  if (source == "green_model") {
    if (!model) throw std::invalid_argument("weight: green_model needs a --model");
    return green_weight_model(*model);
  }
  if (source == "minimal") {
    const int n = static_cast<int>(require_number(spec, "n", "weight"));
    if (!spec.contains("rbar")) throw std::invalid_argument("weight: minimal needs 'rbar'");
    return minimal_weight(n, profile_from_json(spec.at("rbar"), "weight.rbar"));
  }
  if (source == "natural_warp") {
    if (!model) throw std::invalid_argument("weight: natural_warp needs a --model");
    return natural_weight(*model);
  }
  if (source == "user") {
    if (!spec.contains("rho")) throw std::invalid_argument("weight: user needs 'rho'");
    return user_weight(profile_from_json(spec.at("rho"), "weight.rho"));
  }
  throw std::invalid_argument("weight.source: unknown '" + source + "'");
}

EndProfile end_from_json(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("A")) {
    throw std::invalid_argument("end: expected an object with 'A'");
  }
  EndProfile e;
  e.area = profile_from_json(spec.at("A"), "end.A");
  e.r0 = spec.contains("r0") ? spec.at("r0").get<double>() : 1.0;
  e.label = spec.contains("label") ? spec.at("label").get<std::string>() : "";
  return e;
}

}  // namespace wpi
