#pragma once

// Command implementations behind the sleeptop CLI. Each run_* function
// evaluates one command, writes its datasets plus a run manifest into the
// output directory, and returns the computed payload so tests can exercise
// the same surface in-process. Exit-code policy and flag parsing live in
// the binary (tools/sleeptop.cpp).

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sleeptop/io.hpp"
#include "sleeptop/simulate.hpp"
#include "sleeptop/transitions.hpp"
#include "sleeptop/version.hpp"

namespace sleeptop {

struct RunContext {
  TopParameters params;
  double tol = 1e-9;
  std::filesystem::path out_dir = ".";
};

inline SampleRange parse_range(const std::string& text, const char* what) {
  const auto first = text.find(':');
  const auto second = text.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw invalid_parameters(std::string(what) + ": expected min:max:count, got '" + text + "'");
  }
  SampleRange r;
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, first);
    const std::string b = text.substr(first + 1, second - first - 1);
    const std::string c = text.substr(second + 1);
    r.min = std::stod(a, &used);
    if (used != a.size()) throw invalid_parameters("");
    r.max = std::stod(b, &used);
    if (used != b.size()) throw invalid_parameters("");
    r.count = static_cast<int>(std::stol(c, &used));
    if (used != c.size()) throw invalid_parameters("");
  } catch (const std::exception&) {
    throw invalid_parameters(std::string(what) + ": expected min:max:count, got '" + text + "'");
  }
  validate(r, what);
  return r;
}

inline std::string range_to_string(const SampleRange& r) {
  return format_full(r.min) + ":" + format_full(r.max) + ":" + std::to_string(r.count);
}

inline Scheme parse_scheme(const std::string& text) {
  if (text == "lierk4") return Scheme::lie_rk4;
  if (text == "liemidpoint") return Scheme::lie_midpoint;
  throw invalid_parameters("invalid scheme '" + text + "' (expected lierk4|liemidpoint)");
}

namespace detail {

inline json common_parameters(const RunContext& ctx) {
  return json{{"m", ctx.params.m},   {"g", ctx.params.g},   {"l", ctx.params.l},
              {"i1", ctx.params.I1}, {"i3", ctx.params.I3}, {"tol", ctx.tol}};
}

class RunWriter {
 public:
  RunWriter(const RunContext& ctx, std::string command, json parameters)
      : dir_(ctx.out_dir),
        command_(std::move(command)),
        parameters_(std::move(parameters)),
        started_(utc_timestamp()) {
    std::filesystem::create_directories(dir_);
  }

  void write(const std::string& name, const std::string& content) {
    write_text_file(dir_ / name, content);
    outputs_.push_back({{"file", name}, {"fnv1a64", fnv1a64_hex(content)}});
  }

  void finish() {
    const json manifest = {{"tool", "sleeptop"},          {"version", SLEEPTOP_VERSION},
                           {"command", command_},         {"parameters", parameters_},
                           {"started_utc", started_},     {"finished_utc", utc_timestamp()},
                           {"outputs", outputs_}};
    write_text_file(dir_ / "manifest.json", manifest.dump(2) + "\n");
  }

 private:
  std::filesystem::path dir_;
  std::string command_;
  json parameters_;
  std::string started_;
  json outputs_ = json::array();
};

inline json spectrum_to_json(const Spectrum& s) {
  json out = json::array();
  for (const auto& v : s) out.push_back({v.real(), v.imag()});
  return out;
}

inline json mat4_to_json(const Mat4& m) {
  json out = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

}  // namespace detail

struct LinearizeOptions {
  double lambda = 0;
  std::optional<double> eta;  // explicit value wins over the rule
  EtaRule rule = EtaRule::lewis();
};

inline json run_linearize(const RunContext& ctx, const LinearizeOptions& opt) {
  validate(ctx.params);
  const double eta = opt.eta ? *opt.eta : opt.rule.eta(ctx.params, opt.lambda);

  const HessianCoefficients c = hessian_coefficients(ctx.params, opt.lambda, eta);
  const SpectrumReport report = spectrum_report(ctx.params, opt.lambda, eta, ctx.tol);
  const Mat4 l = linearization(ctx.params, opt.lambda, eta);

  json payload = detail::common_parameters(ctx);
  payload["lambda"] = opt.lambda;
  payload["eta"] = eta;
  payload["eta_rule"] = opt.eta ? json(nullptr) : json(opt.rule.name());
  payload["A"] = c.A;
  payload["B"] = c.B;
  payload["C"] = c.C;
  payload["E"] = report.invariants.E;
  payload["F"] = report.invariants.F;
  payload["omega_n"] = detail::mat4_to_json(slice_symplectic(ctx.params, opt.lambda));
  payload["omega_n_inv"] = detail::mat4_to_json(slice_symplectic_inverse(ctx.params, opt.lambda));
  payload["L"] = detail::mat4_to_json(l);
  payload["eigenvalues_closed_form"] = detail::spectrum_to_json(report.eigenvalues);
  payload["eigenvalues_numeric"] = detail::spectrum_to_json(eigenvalues_numeric(l));
  payload["class"] = to_string(report.cls);
  payload["boundary"] = report.boundary;

  json parameters = detail::common_parameters(ctx);
  parameters["lambda"] = opt.lambda;
  parameters["eta"] = eta;
  parameters["eta_rule"] = opt.eta ? json(nullptr) : json(opt.rule.name());
  detail::RunWriter writer(ctx, "linearize", parameters);
  writer.write("linearize.json", payload.dump(2) + "\n");
  writer.finish();
  return payload;
}

inline json transitions_to_json(const std::vector<TransitionEvent>& events) {
  json list = json::array();
  for (const auto& t : events) {
    list.push_back({{"lambda", t.lambda},
                    {"kind", to_string(t.kind)},
                    {"class_before", to_string(t.before)},
                    {"class_at", to_string(t.at)},
                    {"class_after", to_string(t.after)}});
  }
  return json{{"transitions", list}};
}

inline SweepResult run_sweep(const RunContext& ctx, const EtaRule& rule,
                             const SampleRange& range) {
  validate(ctx.params);
  const SweepResult result =
      sweep_eigenvalue_paths(ctx.params, rule, range.min, range.max, range.count, ctx.tol);

  CsvBuilder csv{"lambda", "eta", "E",   "F",   "re1", "im1", "re2",
                 "im2",    "re3", "im3", "re4", "im4", "class"};
  for (const auto& rec : result.records) {
    csv.value(rec.lambda).value(rec.eta).value(rec.E).value(rec.F);
    for (const auto& v : rec.eigenvalues) csv.value(v.real()).value(v.imag());
    csv.value(to_string(rec.cls)).end_row();
  }

  json parameters = detail::common_parameters(ctx);
  parameters["lambda"] = range_to_string(range);
  parameters["eta_rule"] = rule.name();
  detail::RunWriter writer(ctx, "sweep", parameters);
  writer.write("sweep.csv", csv.str());
  writer.write("transitions.json", transitions_to_json(result.transitions).dump(2) + "\n");
  writer.finish();
  return result;
}

inline ChartResult run_chart(const RunContext& ctx, const SampleRange& lambda_range,
                             const SampleRange& eta_range) {
  const ChartResult result = plane_chart(ctx.params, lambda_range, eta_range, ctx.tol);

  CsvBuilder grid{"lambda", "eta", "E", "F", "class"};
  for (const auto& node : result.grid) {
    grid.value(node.lambda).value(node.eta).value(node.E).value(node.F);
    grid.value(to_string(node.cls)).end_row();
  }
  auto series_csv = [](const std::vector<ChartPoint>& pts) {
    CsvBuilder csv{"lambda", "eta"};
    for (const auto& pt : pts) csv.value(pt.lambda).value(pt.eta).end_row();
    return csv.str();
  };

  json parameters = detail::common_parameters(ctx);
  parameters["lambda"] = range_to_string(lambda_range);
  parameters["eta_range"] = range_to_string(eta_range);
  detail::RunWriter writer(ctx, "chart", parameters);
  writer.write("chart_grid.csv", grid.str());
  writer.write("hyperbola_upper.csv", series_csv(result.hyperbola_upper));
  writer.write("hyperbola_lower.csv", series_csv(result.hyperbola_lower));
  writer.write("line_l1.csv", series_csv(result.line_lewis));
  writer.write("line_l2.csv", series_csv(result.line_zero_e));
  writer.finish();
  return result;
}

inline json run_transitions(const RunContext& ctx) {
  validate(ctx.params);
  const TransitionPoints points = transition_points(ctx.params);
  json payload = detail::common_parameters(ctx);
  payload["tau_fs"] = points.tau_fast_slow;
  payload["tau_fsf_lewis"] = points.tau_fast_superfast_lewis
                                 ? json(*points.tau_fast_superfast_lewis)
                                 : json(nullptr);
  payload["hyperbola_parametrization"] =
      "eta(lambda) = ((I3 - I1)*lambda +- sqrt(F)) / (2*I1) with "
      "F = I3^2*lambda^2 - 4*m*g*l*I1; real branches exist iff F >= 0";

  detail::RunWriter writer(ctx, "transitions", detail::common_parameters(ctx));
  writer.write("transitions.json", payload.dump(2) + "\n");
  writer.finish();
  return payload;
}

struct SimulateOptions {
  double lambda = 0;
  double tilt = 0;
  IntegratorConfig config;
};

inline ConservationReport run_simulate(const RunContext& ctx, const SimulateOptions& opt) {
  validate(ctx.params);
  const PhasePoint z0 = opt.tilt == 0
                            ? sleeping_point(ctx.params, opt.lambda)
                            : PhasePoint{exp_so3({opt.tilt, 0, 0}), {0, 0, opt.lambda * ctx.params.I3}};
  const Trajectory traj = integrate(ctx.params, z0, opt.config);
  const ConservationReport report = conservation_report(ctx.params, traj);

  CsvBuilder csv{"t",   "r11", "r12", "r13", "r21",    "r22", "r23", "r31",
                 "r32", "r33", "pix", "piy", "piz",    "energy", "j1", "j2"};
  for (const auto& s : traj.samples) {
    csv.value(s.t);
    for (double v : s.state.attitude.a) csv.value(v);
    csv.value(s.state.momentum.x).value(s.state.momentum.y).value(s.state.momentum.z);
    csv.value(s.energy).value(s.momentum.j1).value(s.momentum.j2).end_row();
  }
  const json conservation = {{"max_relative_energy_drift", report.max_relative_energy_drift},
                             {"max_j1_drift", report.max_j1_drift},
                             {"max_j2_drift", report.max_j2_drift},
                             {"max_orthogonality_defect", report.max_orthogonality_defect}};

  json parameters = detail::common_parameters(ctx);
  parameters["lambda"] = opt.lambda;
  parameters["tilt"] = opt.tilt;
  parameters["dt"] = opt.config.dt;
  parameters["t_end"] = opt.config.t_end;
  parameters["scheme"] = to_string(opt.config.scheme);
  detail::RunWriter writer(ctx, "simulate", parameters);
  writer.write("trajectory.csv", csv.str());
  writer.write("conservation.json", conservation.dump(2) + "\n");
  writer.finish();
  return report;
}

}  // namespace sleeptop
