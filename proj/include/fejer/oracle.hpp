#pragma once

// Independent numerical checks: a simultaneous-iteration root finder and a
// seeded brute-force search for the extremal value.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fejer/trigpoly.hpp"

namespace fejer::oracle {

struct RootResult {
  std::vector<std::complex<double>> roots;
  std::vector<double> residuals;  // |p(root)| per root
  bool converged = false;
  int iterations = 0;
};

// Roots of p[0] x^d + p[1] x^{d-1} + ... + p[d] by Durand-Kerner iteration.
// Initial guesses sit on the circle of radius 1 + max |coeff| (monic form),
// rotated by 0.4 rad. Stops when every correction is below 1e-13 (relative
// to max(1, |root|)) or every residual is at rounding level, else after 500
// sweeps with converged = false.
RootResult poly_roots(std::span<const double> p);

double max_modulus(const std::vector<std::complex<double>>& roots);

struct SearchReport {
  std::size_t n = 0;
  double best_value = 0.0;
  CoeffVector best_coeffs{1.0};
  std::size_t samples_evaluated = 0;
  std::size_t refinement_iterations = 0;
};

inline constexpr double kSampleBox = 3.0;

// Maximizes rho1 over sum a_j = 1: uniform samples of the box |a_j| <= 3 on
// that hyperplane, then `refine_iters` passes of golden-section line search
// along the in-plane directions e_i - e_j and n seeded random in-plane
// directions, with a step that shrinks each pass. Sample k is drawn from its own
// generator seeded by (seed, k), so the result does not depend on evaluation
// order or thread count.
SearchReport brute_force_sup(std::size_t n, std::size_t coarse_samples = 100000,
                             std::size_t refine_iters = 50, std::uint64_t seed = 42);

inline constexpr std::size_t kMaxDeskDegree = 4;

struct CheckRow {
  std::string check;
  double measured = 0.0;   // the gap or margin that was measured
  double threshold = 0.0;  // pass iff measured <= threshold
  bool pass = false;
};

struct Theorem1Report {
  std::size_t n = 0;
  std::vector<CheckRow> rows;
  bool all_pass() const;
};

// Four checks: closed-form rho1(a0) vs the extremal value, the brute-force
// gap, nonnegativity of S0 on a 1e5-point grid, and the Fejer equality for
// the optimal gamma.
Theorem1Report verify_theorem1(std::size_t n, std::size_t samples = 100000,
                               std::size_t refine_iters = 50, std::uint64_t seed = 42);

}  // namespace fejer::oracle
