#pragma once

// Delayed feedback stabilization of a fixed point of a scalar map
//   x_{n+1} = (1 + e_1) f(x_n) + sum_{j=2..N} e_j f(x_{n-j+1}),  sum e_j = 0.

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fejer::control {

struct Equilibrium {
  double x = 0.0;
  double mu = 0.0;  // f'(x)
};

// A one-dimensional map on the interval [lo, hi].
struct MapSpec {
  std::string family;
  std::vector<double> params;
  double lo = 0.0;
  double hi = 1.0;
  std::function<double(double)> f;
  std::function<double(double)> df;
  // Interior fixed point, if there is one for these parameters.
  std::function<std::optional<double>()> fixed_point;
};

// f(x) = h x (1 - x) on [0, 1], h in [0, 4]; x* = 1 - 1/h for h > 1.
MapSpec logistic_map(double h);

MapSpec custom_map(std::string name, double lo, double hi, std::function<double(double)> f,
                   std::function<double(double)> df, std::function<std::optional<double>()> fixed_point);

class Controller {
 public:
  // Requires |sum e_j| <= 1e-12 and |e_j| < 1.
  explicit Controller(std::vector<double> eps);

  std::size_t taps() const { return eps_.size(); }     // N
  std::size_t depth() const { return eps_.size() - 1; }  // N* = N - 1
  std::span<const double> gains() const { return eps_; }
  double operator[](std::size_t i) const { return eps_[i]; }

 private:
  std::vector<double> eps_;
};

// Smallest N* whose N = N* + 1 satisfies cot^2(pi/(2(N+1))) > mu_star.
// Checked against floor(pi / (2 arccot sqrt(mu_star))) - 1.
std::size_t min_depth(double mu_star);

// floor(pi / (2 arccot sqrt(mu_star))) - 1 with arccot x = atan(1/x); values
// within 1e-10 (relative) of an integer are taken as that integer.
std::size_t depth_floor_formula(double mu_star);

// Gains from the extremal coefficients of degree N = min_depth + 1:
// e_1 = a0_1 - 1, e_j = a0_j.
Controller synthesize(double mu_star);

// Characteristic polynomial of the linearized closed loop, descending:
// z^N - mu ((1 + e_1) z^{N-1} + e_2 z^{N-2} + ... + e_N).
std::vector<double> closed_loop_polynomial(double mu, const Controller& c);

std::vector<std::complex<double>> closed_loop_multipliers(double mu, const Controller& c);

double gain_budget(const Controller& c);

std::optional<Equilibrium> equilibrium_and_multiplier(const MapSpec& map);

// One closed-loop update. history[0] = x_n, history[1] = x_{n-1}, ...;
// needs at least N entries.
double closed_loop_step(const MapSpec& map, const Controller& c, std::span<const double> history);

enum class TraceStatus { converged, not_converged, escaped, no_equilibrium };

const char* to_string(TraceStatus s);

struct SimulationTrace {
  std::vector<double> states;  // x_0 .. x_T, shorter when the orbit escaped
  std::optional<double> target;
  bool converged = false;
  std::optional<std::size_t> settling_index;
  TraceStatus status = TraceStatus::not_converged;
};

// Iterates the closed loop (or the bare map when c is empty) from x0 with the
// prehistory x_{-1} = ... = x_{-(N-1)} = x0. Converged when |x_n - x*| <
// conv_tol over the final 10% of the trace. Leaving [lo, hi] truncates the
// trace with status escaped.
SimulationTrace simulate(const MapSpec& map, const std::optional<Controller>& c, double x0,
                         std::size_t steps, double conv_tol = 1e-8);

}  // namespace fejer::control
