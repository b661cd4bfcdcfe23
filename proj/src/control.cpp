#include "fejer/control.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fejer/errors.hpp"
#include "fejer/extremal.hpp"
#include "fejer/oracle.hpp"

namespace fejer::control {

MapSpec logistic_map(double h) {
  if (!(h >= 0.0 && h <= 4.0)) throw std::invalid_argument("logistic map: h must lie in [0, 4]");
  MapSpec m;
  m.family = "logistic";
  m.params = {h};
  m.lo = 0.0;
  m.hi = 1.0;
  m.f = [h](double x) { return h * x * (1.0 - x); };
  m.df = [h](double x) { return h * (1.0 - 2.0 * x); };
  m.fixed_point = [h]() -> std::optional<double> {
    if (h <= 1.0) return std::nullopt;
    return 1.0 - 1.0 / h;
  };
  return m;
}

MapSpec custom_map(std::string name, double lo, double hi, std::function<double(double)> f,
                   std::function<double(double)> df, std::function<std::optional<double>()> fixed_point) {
  if (!(lo < hi)) throw std::invalid_argument("custom map: empty domain");
  if (!f || !df || !fixed_point) throw std::invalid_argument("custom map: missing rule");
  return {std::move(name), {}, lo, hi, std::move(f), std::move(df), std::move(fixed_point)};
}

Controller::Controller(std::vector<double> eps) : eps_(std::move(eps)) {
  if (eps_.empty()) throw std::invalid_argument("controller needs at least one gain");
  const double s = std::accumulate(eps_.begin(), eps_.end(), 0.0);
  if (std::abs(s) > 1e-12) throw std::invalid_argument("controller gains must sum to 0");
  for (double e : eps_) {
    if (!(std::abs(e) < 1.0)) throw std::invalid_argument("controller gains must satisfy |e_j| < 1");
  }
}

namespace {

constexpr double kSnap = 1e-10;

void require_unstable_range(double mu_star) {
  if (!(mu_star > 1.0) || !std::isfinite(mu_star)) {
    throw std::invalid_argument("mu_star must be a finite value > 1");
  }
}

}  // namespace

std::size_t depth_floor_formula(double mu_star) {
  require_unstable_range(mu_star);
  const double x = kPi / (2.0 * std::atan(1.0 / std::sqrt(mu_star)));
  const double r = std::round(x);
  const double snapped = std::abs(x - r) <= kSnap * x ? r : x;
  return std::size_t(std::floor(snapped)) - 1;
}

std::size_t min_depth(double mu_star) {
  require_unstable_range(mu_star);
  std::size_t taps = 1;
  for (;; ++taps) {
    const double t = std::tan(kPi / (2.0 * double(taps + 1)));
    const double bound = 1.0 / (t * t);
    // A bound equal to mu_star (up to rounding) does not cover it.
    if (bound > mu_star * (1.0 + 2.0 * kSnap)) break;
  }
  const std::size_t depth = taps - 1;
  if (depth != depth_floor_formula(mu_star)) {
    throw NumericalError("min_depth: minimal-N and floor formula disagree at mu* = " +
                         std::to_string(mu_star));
  }
  return depth;
}

Controller synthesize(double mu_star) {
  const std::size_t taps = min_depth(mu_star) + 1;
  std::vector<double> eps = optimal_coeffs(taps).a0.vec();
  eps[0] -= 1.0;
  // Remove the rounding residue of sum a0 = 1 from the first gain.
  eps[0] -= std::accumulate(eps.begin(), eps.end(), 0.0);
  return Controller(std::move(eps));
}

std::vector<double> closed_loop_polynomial(double mu, const Controller& c) {
  std::vector<double> p(c.taps() + 1);
  p[0] = 1.0;
  for (std::size_t j = 0; j < c.taps(); ++j) p[j + 1] = -mu * (c[j] + (j == 0 ? 1.0 : 0.0));
  return p;
}

std::vector<std::complex<double>> closed_loop_multipliers(double mu, const Controller& c) {
  const std::vector<double> p = closed_loop_polynomial(mu, c);
  oracle::RootResult r = oracle::poly_roots(p);
  if (!r.converged) throw NumericalError("closed_loop_multipliers: root finder did not converge");
  return std::move(r.roots);
}

double gain_budget(const Controller& c) {
  double s = 0.0;
  for (double e : c.gains()) s += std::abs(e);
  return s;
}

std::optional<Equilibrium> equilibrium_and_multiplier(const MapSpec& map) {
  const std::optional<double> x = map.fixed_point();
  if (!x || *x < map.lo || *x > map.hi) return std::nullopt;
  return Equilibrium{*x, map.df(*x)};
}

double closed_loop_step(const MapSpec& map, const Controller& c, std::span<const double> history) {
  if (history.size() < c.taps()) throw std::invalid_argument("closed_loop_step: history too short");
  double x = map.f(history[0]);
  for (std::size_t j = 0; j < c.taps(); ++j) x += c[j] * map.f(history[j]);
  return x;
}

const char* to_string(TraceStatus s) {
  switch (s) {
    case TraceStatus::converged:
      return "converged";
    case TraceStatus::not_converged:
      return "not_converged";
    case TraceStatus::escaped:
      return "escaped";
    case TraceStatus::no_equilibrium:
      return "no_equilibrium";
  }
  return "?";
}

SimulationTrace simulate(const MapSpec& map, const std::optional<Controller>& c, double x0,
                         std::size_t steps, double conv_tol) {
  if (steps < 1) throw std::invalid_argument("simulate: steps must be >= 1");
  if (!(conv_tol > 0.0)) throw std::invalid_argument("simulate: conv_tol must be positive");
  if (!(x0 >= map.lo && x0 <= map.hi)) throw std::invalid_argument("simulate: x0 outside the map domain");

  SimulationTrace tr;
  if (auto eq = equilibrium_and_multiplier(map)) tr.target = eq->x;

  // f values of x_n, x_{n-1}, ... newest first; the prehistory repeats x0.
  const std::size_t taps = c ? c->taps() : 1;
  std::vector<double> fhist(taps, map.f(x0));
  tr.states.reserve(steps + 1);
  tr.states.push_back(x0);
  for (std::size_t n = 0; n < steps; ++n) {
    double x = fhist[0];
    if (c) {
      for (std::size_t j = 0; j < taps; ++j) x += (*c)[j] * fhist[j];
    }
    if (!std::isfinite(x) || x < map.lo || x > map.hi) {
      tr.status = TraceStatus::escaped;
      return tr;
    }
    tr.states.push_back(x);
    for (std::size_t j = taps - 1; j > 0; --j) fhist[j] = fhist[j - 1];
    fhist[0] = map.f(x);
  }

  if (!tr.target) {
    tr.status = TraceStatus::no_equilibrium;
    return tr;
  }
  const std::size_t T = steps;
  const std::size_t tail = T - T / 10;  // first index of the final 10%
  std::size_t settle = T + 1;
  for (std::size_t n = T + 1; n-- > 0;) {
    if (!(std::abs(tr.states[n] - *tr.target) < conv_tol)) break;
    settle = n;
  }
  tr.converged = settle <= tail;
  if (tr.converged) tr.settling_index = settle;
  tr.status = tr.converged ? TraceStatus::converged : TraceStatus::not_converged;
  return tr;
}

}  // namespace fejer::control
