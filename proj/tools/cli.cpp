#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fejer/control.hpp"
#include "fejer/errors.hpp"
#include "fejer/extremal.hpp"
#include "fejer/oracle.hpp"
#include "fejer/schur.hpp"
#include "fejer/trigpoly.hpp"

namespace fejer::cli {

using json = nlohmann::ordered_json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

namespace {

json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_number(v));
}

json nums(std::span<const double> v) {
  json arr = json::array();
  for (double x : v) arr.push_back(num(x));
  return arr;
}

enum class Format { json, csv };

// One command's output. `params` is echoed in both formats; `result` is the
// JSON payload, `header`/`rows` the CSV payload. `notes` and `trailer` are
// emitted as '#' lines before and after the CSV table.
struct Envelope {
  std::string command;
  json params = json::object();
  json result = json::object();
  std::vector<std::string> notes;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> trailer;
};

void emit(const Envelope& e, Format f, std::ostream& out) {
  if (f == Format::json) {
    json env;
    env["command"] = e.command;
    env["params"] = e.params;
    env["result"] = e.result;
    out << env.dump(2) << '\n';
    return;
  }
  out << "# command=" << e.command << '\n';
  for (const auto& [k, v] : e.params.items()) {
    out << "# " << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
  for (const auto& n : e.notes) out << "# " << n << '\n';
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(e.header);
  for (const auto& r : e.rows) line(r);
  for (const auto& t : e.trailer) out << "# " << t << '\n';
}

std::string join_numbers(std::span<const double> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + format_number(v[i]);
  return s;
}

std::size_t require_positive(int n, const char* name) {
  if (n < 1) throw std::invalid_argument(std::string(name) + " must be >= 1");
  return std::size_t(n);
}

// --- coeffs -----------------------------------------------------------------

struct CoeffsArgs {
  int n = 0;
};

Envelope cmd_coeffs(const CoeffsArgs& args) {
  const std::size_t n = require_positive(args.n, "--n");
  const ExtremalSolution sol = optimal_coeffs(n);
  Envelope e;
  e.command = "coeffs";
  e.params["n"] = args.n;
  e.result["n"] = n;
  e.result["a0"] = nums(sol.a0.values());
  e.result["gamma0"] = nums(sol.g0.values());
  e.result["extremal_value"] = num(sol.value);
  e.result["max_k2_bound"] = num(max_k2_bound(n));
  e.result["abs_sum"] = num(sol.a0.abs_sum());
  e.notes = {"extremal_value=" + format_number(sol.value), "max_k2_bound=" + format_number(max_k2_bound(n)),
             "abs_sum=" + format_number(sol.a0.abs_sum())};
  e.header = {"j", "a0", "gamma0"};
  for (std::size_t j = 0; j < n; ++j) {
    e.rows.push_back({std::to_string(j + 1), format_number(sol.a0[j]), format_number(sol.g0[j])});
  }
  return e;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
  int n = 0;
  long long samples = 100000;
  int iters = 50;
  std::uint64_t seed = 42;
};

Envelope cmd_verify(const VerifyArgs& args, bool& all_pass) {
  const std::size_t n = require_positive(args.n, "--n");
  if (args.samples < 1000) throw std::invalid_argument("--samples must be >= 1000");
  if (args.iters < 0) throw std::invalid_argument("--iters must be >= 0");
  const oracle::Theorem1Report rep =
      oracle::verify_theorem1(n, std::size_t(args.samples), std::size_t(args.iters), args.seed);
  all_pass = rep.all_pass();
  Envelope e;
  e.command = "verify";
  e.params["n"] = args.n;
  e.params["samples"] = args.samples;
  e.params["iters"] = args.iters;
  e.params["seed"] = args.seed;
  e.result["n"] = n;
  e.result["extremal_value"] = num(extremal_value(n));
  e.result["checks"] = json::array();
  e.header = {"check", "measured", "threshold", "pass"};
  for (const auto& r : rep.rows) {
    e.result["checks"].push_back(
        {{"check", r.check}, {"measured", num(r.measured)}, {"threshold", num(r.threshold)}, {"pass", r.pass}});
    e.rows.push_back({r.check, format_number(r.measured), format_number(r.threshold), r.pass ? "true" : "false"});
  }
  e.result["all_pass"] = all_pass;
  return e;
}

// --- schur ------------------------------------------------------------------

struct SchurArgs {
  std::vector<double> coeffs;
  int optimal_n = 0;
  double k_cap = 1e6;
  double tol = 1e-10;
};

json margin_json(const GainMargin& m) { return m.capped ? json(nullptr) : num(m.value); }

Envelope cmd_schur(const SchurArgs& args) {
  if (args.coeffs.empty() == (args.optimal_n == 0)) {
    throw std::invalid_argument("schur: give exactly one of --coeffs or --optimal-n");
  }
  std::vector<double> a;
  if (!args.coeffs.empty()) {
    double s = 0.0;
    for (double v : args.coeffs) s += v;
    if (!(std::abs(s - 1.0) <= 1e-9)) {
      throw std::invalid_argument("schur: coefficients must sum to 1 (sum = " + format_number(s) + ")");
    }
    for (double v : args.coeffs) a.push_back(v / s);
  } else {
    a = optimal_coeffs(require_positive(args.optimal_n, "--optimal-n")).a0.vec();
  }
  const CoeffVector cv(a);
  const StabilityInterval si = stability_interval(cv, args.k_cap, args.tol);
  const std::vector<double> gains = critical_gains(cv);

  Envelope e;
  e.command = "schur";
  e.params["coeffs"] = nums(args.coeffs);
  e.params["optimal_n"] = args.optimal_n;
  e.params["k_cap"] = num(args.k_cap);
  e.params["tol"] = num(args.tol);
  e.result["coeffs"] = nums(cv.values());
  e.result["k1"] = margin_json(si.k1);
  e.result["k1_at_least"] = si.k1.capped ? num(si.k1.value) : json(nullptr);
  e.result["k2"] = margin_json(si.k2);
  e.result["k2_at_least"] = si.k2.capped ? num(si.k2.value) : json(nullptr);
  e.result["phi"] = si.phi() ? num(*si.phi()) : json(nullptr);
  e.result["critical_gains"] = nums(gains);

  auto margin_cell = [](const GainMargin& m) { return (m.capped ? ">=" : "") + format_number(m.value); };
  e.header = {"quantity", "value"};
  e.rows.push_back({"k1", margin_cell(si.k1)});
  e.rows.push_back({"k2", margin_cell(si.k2)});
  e.rows.push_back({"phi", si.phi() ? format_number(*si.phi()) : ""});
  for (double g : gains) e.rows.push_back({"critical_gain", format_number(g)});
  return e;
}

// --- synthesize -------------------------------------------------------------

struct SynthArgs {
  double mu_star = 0.0;
};

Envelope cmd_synthesize(const SynthArgs& args) {
  const control::Controller c = control::synthesize(args.mu_star);
  const double probe = -args.mu_star + 1e-6;
  std::vector<double> moduli;
  for (const auto& z : control::closed_loop_multipliers(probe, c)) moduli.push_back(std::abs(z));
  std::sort(moduli.begin(), moduli.end(), std::greater<>());

  Envelope e;
  e.command = "synthesize";
  e.params["mu_star"] = num(args.mu_star);
  e.result["depth"] = c.depth();
  e.result["taps"] = c.taps();
  e.result["eps"] = nums(c.gains());
  e.result["gain_budget"] = num(control::gain_budget(c));
  e.result["probe_mu"] = num(probe);
  e.result["root_moduli"] = nums(moduli);
  e.notes = {"depth=" + std::to_string(c.depth()), "taps=" + std::to_string(c.taps()),
             "gain_budget=" + format_number(control::gain_budget(c)), "probe_mu=" + format_number(probe)};
  e.header = {"j", "eps", "root_modulus"};
  for (std::size_t j = 0; j < c.taps(); ++j) {
    e.rows.push_back({std::to_string(j + 1), format_number(c[j]), format_number(moduli[j])});
  }
  return e;
}

// --- simulate / sweep -------------------------------------------------------

control::MapSpec make_map(const std::string& name, double h) {
  if (name != "logistic") throw std::invalid_argument("unknown map '" + name + "' (supported: logistic)");
  return control::logistic_map(h);
}

// "none", "auto" (synthesized from the multiplier at x*) or explicit gains.
std::optional<control::Controller> make_controller(const std::string& spec, const control::MapSpec& map) {
  if (spec == "none") return std::nullopt;
  if (spec == "auto") {
    const auto eq = control::equilibrium_and_multiplier(map);
    if (!eq || std::abs(eq->mu) < 1.0) return std::nullopt;
    return control::synthesize(std::abs(eq->mu) + 1e-9);
  }
  std::vector<double> eps;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      eps.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("--control expects none, auto or a comma-separated gain list");
    }
  }
  return control::Controller(std::move(eps));
}

struct SimArgs {
  std::string map = "logistic";
  double h = 0.0;
  double x0 = 0.0;
  long long steps = 1000;
  std::string control = "none";
  double conv_tol = 1e-8;
};

Envelope cmd_simulate(const SimArgs& args) {
  if (args.steps < 1) throw std::invalid_argument("--steps must be >= 1");
  const control::MapSpec map = make_map(args.map, args.h);
  const auto c = make_controller(args.control, map);
  const control::SimulationTrace tr = control::simulate(map, c, args.x0, std::size_t(args.steps), args.conv_tol);

  Envelope e;
  e.command = "simulate";
  e.params["map"] = args.map;
  e.params["h"] = num(args.h);
  e.params["x0"] = num(args.x0);
  e.params["steps"] = args.steps;
  e.params["control"] = args.control;
  e.params["conv_tol"] = num(args.conv_tol);
  e.result["target"] = tr.target ? num(*tr.target) : json(nullptr);
  e.result["eps"] = c ? nums(c->gains()) : json(nullptr);
  e.result["status"] = control::to_string(tr.status);
  e.result["converged"] = tr.converged;
  e.result["settling_index"] = tr.settling_index ? json(*tr.settling_index) : json(nullptr);
  json trace = json::array();
  e.header = {"step", "x", "abs_err"};
  for (std::size_t i = 0; i < tr.states.size(); ++i) {
    const double x = tr.states[i];
    if (tr.target) {
      const double err = std::abs(x - *tr.target);
      trace.push_back({i, num(x), num(err)});
      e.rows.push_back({std::to_string(i), format_number(x), format_number(err)});
    } else {
      trace.push_back({i, num(x), nullptr});
      e.rows.push_back({std::to_string(i), format_number(x), ""});
    }
  }
  e.result["columns"] = {"step", "x", "abs_err"};
  e.result["trace"] = std::move(trace);
  if (c) e.notes.push_back("eps=" + join_numbers(c->gains()));
  e.trailer.push_back(std::string("summary status=") + control::to_string(tr.status) +
                      " converged=" + (tr.converged ? "true" : "false") + " settling_index=" +
                      (tr.settling_index ? std::to_string(*tr.settling_index) : ""));
  return e;
}

struct SweepArgs {
  std::string map = "logistic";
  double h_min = 2.8;
  double h_max = 4.0;
  long long h_steps = 600;
  long long transient = 500;
  long long keep = 100;
  double x0 = 0.5;
  std::string control = "none";
};

Envelope cmd_sweep(const SweepArgs& args) {
  if (!(args.h_min < args.h_max)) throw std::invalid_argument("sweep: need h-min < h-max");
  if (args.h_min < 0.0 || args.h_max > 4.0) throw std::invalid_argument("sweep: h range must lie in [0, 4]");
  if (args.h_steps < 2) throw std::invalid_argument("--h-steps must be >= 2");
  if (args.transient < 0 || args.keep < 1) throw std::invalid_argument("sweep: need transient >= 0, keep >= 1");
  if (args.control != "none" && args.control != "auto") throw std::invalid_argument("sweep: --control is none or auto");

  Envelope e;
  e.command = "sweep";
  e.params["map"] = args.map;
  e.params["h_min"] = num(args.h_min);
  e.params["h_max"] = num(args.h_max);
  e.params["h_steps"] = args.h_steps;
  e.params["transient"] = args.transient;
  e.params["keep"] = args.keep;
  e.params["x0"] = num(args.x0);
  e.params["control"] = args.control;
  e.header = {"h", "x", "status"};
  json rows = json::array();
  const std::size_t skip = std::size_t(args.transient), keep = std::size_t(args.keep);
  for (long long i = 0; i < args.h_steps; ++i) {
    const double h = args.h_min + (args.h_max - args.h_min) * double(i) / double(args.h_steps - 1);
    const control::MapSpec map = make_map(args.map, h);
    const auto c = make_controller(args.control, map);
    const control::SimulationTrace tr = control::simulate(map, c, args.x0, skip + keep);
    if (tr.status == control::TraceStatus::escaped) {
      const double last = tr.states.back();
      rows.push_back({num(h), num(last), "escaped"});
      e.rows.push_back({format_number(h), format_number(last), "escaped"});
      continue;
    }
    for (std::size_t k = skip + 1; k < tr.states.size(); ++k) {
      rows.push_back({num(h), num(tr.states[k]), "ok"});
      e.rows.push_back({format_number(h), format_number(tr.states[k]), "ok"});
    }
  }
  e.result["columns"] = {"h", "x", "status"};
  e.result["rows"] = std::move(rows);
  return e;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extremal Fejer polynomials, Schur stability margins and delayed feedback control"};
  app.name("fejer");
  app.require_subcommand(1);
  // -h would clash with the logistic parameter --h.
  app.set_help_flag("--help", "Print this help message and exit");

  std::string format = "json";
  auto add_format = [&format](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };

  CoeffsArgs coeffs;
  auto* s_coeffs = app.add_subcommand("coeffs", "Optimal coefficients, gamma sums and extremal value");
  s_coeffs->add_option("--n", coeffs.n, "Degree n >= 1")->required();
  add_format(s_coeffs);

  VerifyArgs verify;
  auto* s_verify = app.add_subcommand("verify", "Check the extremal value against closed forms and a brute-force search");
  s_verify->add_option("--n", verify.n, "Degree, 1..4")->required();
  s_verify->add_option("--samples", verify.samples, "Coarse samples for the search");
  s_verify->add_option("--iters", verify.iters, "Golden-section polish passes");
  s_verify->add_option("--seed", verify.seed, "Sampling seed");
  add_format(s_verify);

  SchurArgs schur;
  auto* s_schur = app.add_subcommand("schur", "Robust Schur-stability gain interval");
  s_schur->add_option("--coeffs", schur.coeffs, "Comma-separated a_1..a_n summing to 1")->delimiter(',');
  s_schur->add_option("--optimal-n", schur.optimal_n, "Use the optimal coefficients of degree N");
  s_schur->add_option("--k-cap", schur.k_cap, "Largest gain scanned");
  s_schur->add_option("--tol", schur.tol, "Bisection width");
  add_format(s_schur);

  SynthArgs synth;
  auto* s_synth = app.add_subcommand("synthesize", "Minimal-depth delayed feedback gains");
  s_synth->add_option("--mu-star", synth.mu_star, "Multiplier bound mu* > 1")->required();
  add_format(s_synth);

  SimArgs sim;
  auto* s_sim = app.add_subcommand("simulate", "Iterate the open or closed loop");
  s_sim->add_option("--map", sim.map, "Map family");
  s_sim->add_option("--h", sim.h, "Logistic parameter h in [0, 4]")->required();
  s_sim->add_option("--x0", sim.x0, "Initial state")->required();
  s_sim->add_option("--steps", sim.steps, "Number of iterations");
  s_sim->add_option("--control", sim.control, "none, auto, or comma-separated gains");
  s_sim->add_option("--conv-tol,--tol", sim.conv_tol, "Convergence threshold on |x - x*|");
  add_format(s_sim);

  SweepArgs sweep;
  auto* s_sweep = app.add_subcommand("sweep", "Bifurcation-diagram data over h");
  s_sweep->add_option("--map", sweep.map, "Map family");
  s_sweep->add_option("--h-min", sweep.h_min, "Smallest h");
  s_sweep->add_option("--h-max", sweep.h_max, "Largest h");
  s_sweep->add_option("--h-steps", sweep.h_steps, "Number of h values");
  s_sweep->add_option("--transient", sweep.transient, "Iterations discarded per h");
  s_sweep->add_option("--keep", sweep.keep, "States emitted per h");
  s_sweep->add_option("--x0", sweep.x0, "Initial state");
  s_sweep->add_option("--control", sweep.control, "none or auto");
  add_format(s_sweep);

  std::vector<std::string> argv_store{"fejer"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const Format fmt = format == "csv" ? Format::csv : Format::json;
  try {
    int status = kExitOk;
    Envelope env;
    if (s_coeffs->parsed()) {
      env = cmd_coeffs(coeffs);
    } else if (s_verify->parsed()) {
      bool pass = false;
      env = cmd_verify(verify, pass);
      if (!pass) status = kExitNumerical;
    } else if (s_schur->parsed()) {
      env = cmd_schur(schur);
    } else if (s_synth->parsed()) {
      env = cmd_synthesize(synth);
    } else if (s_sim->parsed()) {
      env = cmd_simulate(sim);
    } else {
      env = cmd_sweep(sweep);
    }
    env.params["format"] = format;
    emit(env, fmt, out);
    return status;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace fejer::cli
