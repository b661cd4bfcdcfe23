#include "fejer/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fejer {

namespace {

void require_degree(std::size_t n, const char* who) {
  if (n == 0) throw std::invalid_argument(std::string(who) + ": n must be >= 1");
}

}  // namespace

double extremal_value(std::size_t n) {
  require_degree(n, "extremal_value");
  const double t = std::tan(kPi / (2.0 * double(n + 1)));
  return -t * t;
}

GammaVector optimal_gamma(std::size_t n) {
  require_degree(n, "optimal_gamma");
  const double np1 = double(n + 1);
  const double w = kPi / np1;
  const double scale = 1.0 / (2.0 * np1 * std::sin(w) * (1.0 + std::cos(w)));
  std::vector<double> g(n);
  for (std::size_t j = 1; j <= n; ++j) {
    const double jd = double(j);
    g[j - 1] = scale * ((np1 - jd + 2.0) * std::sin(w * jd) - (np1 - jd) * std::sin(w * (jd - 2.0)));
  }
  return GammaVector(std::move(g));
}

ExtremalSolution optimal_coeffs(std::size_t n) {
  require_degree(n, "optimal_coeffs");
  const double np1 = double(n + 1);
  const double half_tan = std::tan(kPi / (2.0 * np1));
  std::vector<double> a(n);
  for (std::size_t j = 1; j <= n; ++j) {
    a[j - 1] = 2.0 * half_tan * (1.0 - double(j) / np1) * std::sin(kPi * double(j) / np1);
  }
  ExtremalSolution sol;
  sol.n = n;
  sol.a0 = CoeffVector(std::move(a));
  sol.g0 = optimal_gamma(n);
  sol.value = extremal_value(n);
  const CoeffVector from_gamma = gamma_inverse(sol.g0);
  for (std::size_t j = 0; j < n; ++j) {
    sol.transform_gap = std::max(sol.transform_gap, std::abs(sol.a0[j] - from_gamma[j]));
  }
  return sol;
}

double fejer_kernel_series(std::size_t n, double t) {
  return sine_quotient(optimal_gamma(n), t);
}

double fejer_kernel_value(std::size_t n, double t) {
  require_degree(n, "fejer_kernel_value");
  const double np1 = double(n + 1);
  const double t0 = kPi / np1;
  const double d = t - t0;
  if (std::abs(d) < 1e-8) return fejer_kernel_series(n, t);
  // cos((n+1)t/2) = -sin((n+1)(t-t0)/2) and cos t - cos t0 = -2 sin((t+t0)/2) sin((t-t0)/2),
  // written in the offset from t0 so both vanish to full relative precision.
  const double num = std::sin(0.5 * np1 * d);
  const double den = 2.0 * std::sin(0.5 * (t + t0)) * std::sin(0.5 * d);
  return (1.0 - std::cos(t0)) / np1 * 2.0 * num * num / (den * den);
}

CoeffVector epsilon_family(std::size_t n, double eps) {
  require_degree(n, "epsilon_family");
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon_family: eps must be positive");
  const ExtremalSolution sol = optimal_coeffs(n);
  std::vector<double> a(sol.a0.vec());
  a[0] += eps;
  for (double& v : a) v /= 1.0 + eps;
  return CoeffVector(std::move(a));
}

}  // namespace fejer
