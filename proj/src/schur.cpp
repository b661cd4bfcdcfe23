#include "fejer/schur.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fejer/extremal.hpp"

namespace fejer {

const char* to_string(Stability s) {
  switch (s) {
    case Stability::stable:
      return "stable";
    case Stability::unstable:
      return "unstable";
    case Stability::boundary:
      return "boundary";
  }
  return "?";
}

Stability is_schur_stable(std::span<const double> p, double tol) {
  if (p.size() < 2) throw std::invalid_argument("is_schur_stable: degree must be >= 1");
  if (p[0] != 1.0) throw std::invalid_argument("is_schur_stable: polynomial must be monic");
  if (!(tol > 0.0)) throw std::invalid_argument("is_schur_stable: tol must be positive");

  std::vector<double> c(p.begin(), p.end());
  while (c.size() > 1) {
    const std::size_t m = c.size() - 1;
    const double r = c[m];
    const double ar = std::abs(r);
    if (ar >= 1.0 - tol) return ar <= 1.0 + tol ? Stability::boundary : Stability::unstable;
    const double scale = 1.0 - r * r;
    std::vector<double> next(m);
    for (std::size_t i = 0; i < m; ++i) next[i] = (c[i] - r * c[m - i]) / scale;
    next[0] = 1.0;
    c = std::move(next);
  }
  return Stability::stable;
}

std::vector<double> gain_polynomial(const CoeffVector& a, double k) {
  std::vector<double> p(a.size() + 1);
  p[0] = 1.0;
  for (std::size_t j = 0; j < a.size(); ++j) p[j + 1] = k * a[j];
  return p;
}

std::optional<double> StabilityInterval::phi() const {
  if (k1.capped || k2.capped) return std::nullopt;
  return k1.value + k2.value;
}

namespace {

bool stable_at(const CoeffVector& a, double k) {
  return is_schur_stable(gain_polynomial(a, k)) == Stability::stable;
}

// First loss of stability along k = sign * s, s > 0.
GainMargin first_failure(const CoeffVector& a, double sign, double k_cap, double tol) {
  double lo = 0.0, hi = 0.0;
  double s = 1e-6;
  for (;;) {
    if (s >= k_cap) {
      if (stable_at(a, sign * k_cap)) return {k_cap, true};
      hi = k_cap;
      break;
    }
    if (!stable_at(a, sign * s)) {
      hi = s;
      break;
    }
    lo = s;
    s *= 2.0;
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (stable_at(a, sign * mid) ? lo : hi) = mid;
  }
  return {0.5 * (lo + hi), false};
}

}  // namespace

StabilityInterval stability_interval(const CoeffVector& a, double k_cap, double tol) {
  if (!a.is_normalized()) throw std::invalid_argument("stability_interval: coefficients must sum to 1");
  if (!(k_cap > 0.0)) throw std::invalid_argument("stability_interval: k_cap must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("stability_interval: tol must be positive");
  return {first_failure(a, -1.0, k_cap, tol), first_failure(a, 1.0, k_cap, tol)};
}

std::vector<double> critical_gains(const CoeffVector& a) {
  std::vector<double> k;
  for (double t : zero_set(a).zeros) {
    const double c = eval_C(a, t);
    if (std::abs(c) > 1e-12) k.push_back(-1.0 / c);
  }
  std::sort(k.begin(), k.end());
  std::vector<double> out;
  for (double v : k) {
    if (out.empty() || v - out.back() > 1e-9) out.push_back(v);
  }
  return out;
}

double max_k2_bound(std::size_t n) { return -1.0 / extremal_value(n); }

}  // namespace fejer
