#pragma once

// Schur stability of the gain family f(z) = z^n + k (a_1 z^{n-1} + ... + a_n).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fejer/trigpoly.hpp"

namespace fejer {

enum class Stability { stable, unstable, boundary };

const char* to_string(Stability s);

inline constexpr double kSchurBand = 1e-10;

// Schur-Cohn recursion on a monic polynomial given in descending powers
// (p[0] == 1). Each step takes the reflection coefficient r = p(0) and
// reduces the degree by one. stable iff every |r| < 1 - tol; boundary iff
// the first |r| >= 1 - tol lies within tol of 1.
Stability is_schur_stable(std::span<const double> p, double tol = kSchurBand);

// Descending coefficients [1, k a_1, ..., k a_n].
std::vector<double> gain_polynomial(const CoeffVector& a, double k);

// A stability margin, or the cap when no loss of stability was found below it.
struct GainMargin {
  double value = 0.0;
  bool capped = false;
};

struct StabilityInterval {
  GainMargin k1;  // stable on (-k1, k2)
  GainMargin k2;
  // k1 + k2 when both sides are finite.
  std::optional<double> phi() const;
};

// Doubling scan from k = 1e-6 on each side, then bisection to width tol.
// Both unstable and boundary verdicts count as loss of stability.
StabilityInterval stability_interval(const CoeffVector& a, double k_cap = 1e6, double tol = 1e-10);

// {-1 / C(t) : t a zero of S, |C(t)| > 1e-12}, sorted, merged within 1e-9.
std::vector<double> critical_gains(const CoeffVector& a);

// cot^2(pi / (2(n+1))), the largest k2 achievable at degree n.
double max_k2_bound(std::size_t n);

}  // namespace fejer
