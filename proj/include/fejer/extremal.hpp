#pragma once

// Closed-form extremal pair for the problem
//   sup over normalized a of min { C(t) : S(t) = 0 } = -tan^2(pi / (2(n+1))).

#include <cstddef>

#include "fejer/trigpoly.hpp"

namespace fejer {

struct ExtremalSolution {
  std::size_t n = 0;
  CoeffVector a0{1.0};
  GammaVector g0{1.0};
  double value = 0.0;
  // max_j |a0_j - (g0_j - g0_{j+2})| between the two closed forms.
  double transform_gap = 0.0;
};

// a0_j = 2 tan(pi/(2(n+1))) (1 - j/(n+1)) sin(pi j/(n+1)).
ExtremalSolution optimal_coeffs(std::size_t n);

// Parity sums of the optimal coefficients from their own closed form.
GammaVector optimal_gamma(std::size_t n);

double extremal_value(std::size_t n);

// S0(t)/sin t in closed form (a scaled Fejer kernel). Falls back to the
// cosine series within 1e-8 of the removable singularity at pi/(n+1).
double fejer_kernel_value(std::size_t n, double t);

// Same quantity summed as g1 + 2 sum_{j>=2} g_j cos((j-1) t).
double fejer_kernel_series(std::size_t n, double t);

// ((a0_1 + eps), a0_2, ..., a0_n) / (1 + eps).
CoeffVector epsilon_family(std::size_t n, double eps);

}  // namespace fejer
