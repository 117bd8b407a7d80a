// sleeptop: sleeping-top stability analysis CLI.
//
// Commands: linearize, sweep, chart, transitions, simulate.
// Exit codes: 0 success, 2 usage/validation error, 3 runtime numerical
// failure. Flags override values from an optional flat key=value config
// file (--config); --out falls back to $SLEEPTOP_OUT_DIR, then ".".

#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sleeptop/cli.hpp"

namespace {

using sleeptop::invalid_parameters;

constexpr const char* kUsage = R"(usage: sleeptop <command> [--flag value ...]

commands
  linearize    slice data and eigenvalues at one (lambda, eta)
  sweep        eigenvalue paths over a lambda range, with detected transitions
  chart        (lambda, eta)-plane grid plus hyperbola/L1/L2 curves
  transitions  closed-form fast-slow and fast-superfast thresholds
  simulate     nonlinear trajectory with conservation diagnostics

model flags (all commands)
  --m --g --l --i1 --i3   body parameters    (defaults 1 1 1 1 1.5)
  --tol X                 classification tolerance (default 1e-9)
  --out DIR               output directory ($SLEEPTOP_OUT_DIR, else ".")
  --config FILE           flat key=value file; command-line flags override

command flags
  linearize:   --lambda X  [--eta X | --eta-rule RULE]
  sweep:       --lambda min:max:count  [--eta-rule RULE]
  chart:       [--lambda min:max:count] [--eta-range min:max:count]
  simulate:    --lambda X [--tilt X] [--dt X] [--t-end X]
               [--scheme lierk4|liemidpoint]

RULE is one of: lewis | star | zero-e | linear:a,b | const:c
)";

using Options = std::map<std::string, std::string>;

Options parse_config_file(const std::string& path) {
  Options out;
  std::istringstream in(sleeptop::read_text_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw invalid_parameters("config: expected key=value, got '" + line + "'");
    }
    out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

Options parse_flags(int argc, char** argv) {
  Options cli;
  for (int i = 2; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg.rfind("--", 0) != 0) {
      throw invalid_parameters("unexpected argument '" + arg + "'");
    }
    arg.erase(0, 2);
    const auto eq = arg.find('=');
    if (eq != std::string::npos) {
      cli[arg.substr(0, eq)] = arg.substr(eq + 1);
      continue;
    }
    if (i + 1 >= argc) throw invalid_parameters("flag --" + arg + " needs a value");
    cli[arg] = argv[++i];
  }
  Options merged;
  if (auto it = cli.find("config"); it != cli.end()) merged = parse_config_file(it->second);
  for (const auto& [k, v] : cli) merged[k] = v;
  merged.erase("config");
  return merged;
}

double to_double(const Options& opt, const std::string& key, double fallback) {
  const auto it = opt.find(key);
  if (it == opt.end()) return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw invalid_parameters("");
    return v;
  } catch (const std::exception&) {
    throw invalid_parameters("flag --" + key + ": invalid number '" + it->second + "'");
  }
}

std::string require(const Options& opt, const std::string& key) {
  const auto it = opt.find(key);
  if (it == opt.end()) throw invalid_parameters("missing required flag --" + key);
  return it->second;
}

void reject_unknown(const Options& opt, std::initializer_list<const char*> known) {
  for (const auto& [k, v] : opt) {
    bool ok = false;
    for (const char* name : known) {
      if (k == name) {
        ok = true;
        break;
      }
    }
    if (!ok) throw invalid_parameters("unknown flag --" + k);
  }
}

sleeptop::RunContext make_context(const Options& opt) {
  sleeptop::RunContext ctx;
  ctx.params.m = to_double(opt, "m", 1.0);
  ctx.params.g = to_double(opt, "g", 1.0);
  ctx.params.l = to_double(opt, "l", 1.0);
  ctx.params.I1 = to_double(opt, "i1", 1.0);
  ctx.params.I3 = to_double(opt, "i3", 1.5);
  ctx.tol = to_double(opt, "tol", 1e-9);
  if (!(ctx.tol > 0)) throw invalid_parameters("flag --tol must be positive");
  if (auto it = opt.find("out"); it != opt.end()) {
    ctx.out_dir = it->second;
  } else if (const char* env = std::getenv("SLEEPTOP_OUT_DIR")) {
    ctx.out_dir = env;
  }
  sleeptop::validate(ctx.params);
  return ctx;
}

int dispatch(const std::string& command, const Options& opt) {
  using namespace sleeptop;
  if (command == "linearize") {
    reject_unknown(opt, {"m", "g", "l", "i1", "i3", "tol", "out", "lambda", "eta", "eta-rule"});
    const RunContext ctx = make_context(opt);
    LinearizeOptions lin;
    if (!opt.count("lambda")) throw invalid_parameters("missing required flag --lambda");
    lin.lambda = to_double(opt, "lambda", 0.0);
    if (opt.count("eta")) lin.eta = to_double(opt, "eta", 0.0);
    if (opt.count("eta-rule")) lin.rule = EtaRule::parse(opt.at("eta-rule"));
    run_linearize(ctx, lin);
    return 0;
  }
  if (command == "sweep") {
    reject_unknown(opt, {"m", "g", "l", "i1", "i3", "tol", "out", "lambda", "eta-rule"});
    const RunContext ctx = make_context(opt);
    const SampleRange range = parse_range(require(opt, "lambda"), "lambda");
    const EtaRule rule =
        opt.count("eta-rule") ? EtaRule::parse(opt.at("eta-rule")) : EtaRule::lewis();
    run_sweep(ctx, rule, range);
    return 0;
  }
  if (command == "chart") {
    reject_unknown(opt, {"m", "g", "l", "i1", "i3", "tol", "out", "lambda", "eta-range"});
    const RunContext ctx = make_context(opt);
    // Default window: lambda in [0, 2*tau_fs], eta in +-2*max(1, tau_fs).
    const double tau = fast_slow_threshold(ctx.params);
    SampleRange lambda_range{0, 2 * tau, 201};
    SampleRange eta_range{-2 * std::max(1.0, tau), 2 * std::max(1.0, tau), 201};
    if (opt.count("lambda")) lambda_range = parse_range(opt.at("lambda"), "lambda");
    if (opt.count("eta-range")) eta_range = parse_range(opt.at("eta-range"), "eta-range");
    run_chart(ctx, lambda_range, eta_range);
    return 0;
  }
  if (command == "transitions") {
    reject_unknown(opt, {"m", "g", "l", "i1", "i3", "tol", "out"});
    run_transitions(make_context(opt));
    return 0;
  }
  if (command == "simulate") {
    reject_unknown(opt, {"m", "g", "l", "i1", "i3", "tol", "out", "lambda", "tilt", "dt",
                         "t-end", "scheme"});
    const RunContext ctx = make_context(opt);
    SimulateOptions sim;
    if (!opt.count("lambda")) throw invalid_parameters("missing required flag --lambda");
    sim.lambda = to_double(opt, "lambda", 0.0);
    sim.tilt = to_double(opt, "tilt", 0.0);
    sim.config.dt = to_double(opt, "dt", 1e-3);
    sim.config.t_end = to_double(opt, "t-end", 100.0);
    if (opt.count("scheme")) sim.config.scheme = parse_scheme(opt.at("scheme"));
    run_simulate(ctx, sim);
    return 0;
  }
  throw invalid_parameters("unknown command '" + command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2 || std::string(argv[1]) == "--help" || std::string(argv[1]) == "help") {
    std::cout << kUsage;
    return argc < 2 ? 2 : 0;
  }
  if (std::string(argv[1]) == "--version") {
    std::cout << "sleeptop " << SLEEPTOP_VERSION << "\n";
    return 0;
  }
  try {
    return dispatch(argv[1], parse_flags(argc, argv));
  } catch (const invalid_parameters& e) {
    std::cerr << "sleeptop: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "sleeptop: " << e.what() << "\n";
    return 3;
  }
}
