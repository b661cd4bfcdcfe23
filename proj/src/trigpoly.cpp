#include "fejer/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fejer {

CoeffVector::CoeffVector(std::vector<double> a) : a_(std::move(a)) {
  if (a_.empty()) throw std::invalid_argument("coefficient vector must have n >= 1");
}

double CoeffVector::sum() const { return std::accumulate(a_.begin(), a_.end(), 0.0); }

double CoeffVector::abs_sum() const {
  double s = 0.0;
  for (double v : a_) s += std::abs(v);
  return s;
}

bool CoeffVector::is_normalized(double tol) const { return std::abs(sum() - 1.0) <= tol; }

GammaVector::GammaVector(std::vector<double> g) : g_(std::move(g)) {
  if (g_.empty()) throw std::invalid_argument("gamma vector must have n >= 1");
}

double eval_C(const CoeffVector& a, double t) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * std::cos(double(j + 1) * t);
  return s;
}

double eval_S(const CoeffVector& a, double t) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * std::sin(double(j + 1) * t);
  return s;
}

namespace {

// sum_{k=0..n-1} c_k T_k(x) with c_0 = g_1, c_k = 2 g_{k+1}.
double clenshaw(const GammaVector& g, double x) {
  const std::size_t n = g.size();
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = n - 1; k >= 1; --k) {
    const double b0 = 2.0 * g[k] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return g[0] + x * b1 - b2;
}

}  // namespace

double sine_quotient(const GammaVector& g, double t) { return clenshaw(g, std::cos(t)); }

std::size_t default_grid_points(std::size_t n) { return std::max<std::size_t>(1024, 64 * n); }

namespace {

constexpr double kAbscissaTol = 1e-12;

double sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Bisection on a bracket with q(lo) q(hi) < 0, finished by one secant step.
double refine_bracket(const GammaVector& g, double lo, double hi, double qlo) {
  double qhi = sine_quotient(g, hi);
  while (hi - lo > kAbscissaTol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double qm = sine_quotient(g, mid);
    if (qm == 0.0) return mid;
    if (sign_of(qm) == sign_of(qlo)) {
      lo = mid;
      qlo = qm;
    } else {
      hi = mid;
      qhi = qm;
    }
  }
  if (qhi == qlo) return 0.5 * (lo + hi);
  const double t = lo - qlo * (hi - lo) / (qhi - qlo);
  return std::clamp(t, lo, hi);
}

// d/dt of S/sin t.
double sine_quotient_slope(const GammaVector& g, double t) {
  double s = 0.0;
  for (std::size_t j = 1; j < g.size(); ++j) s += double(j) * g[j] * std::sin(double(j) * t);
  return -2.0 * s;
}

// Minimizer of sigma * q on [lo, hi]: bisection on the slope when it brackets
// a minimum, golden-section search otherwise.
double minimize_signed(const GammaVector& g, double sigma, double lo, double hi) {
  if (sigma * sine_quotient_slope(g, lo) < 0.0 && sigma * sine_quotient_slope(g, hi) > 0.0) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double d = sigma * sine_quotient_slope(g, mid);
      if (d == 0.0) return mid;
      (d < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  auto f = [&](double t) { return sigma * sine_quotient(g, t); };
  double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > kAbscissaTol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

struct Candidate {
  double t;
  bool crossing;  // came from a strict sign-change bracket of grid samples
};

struct GridSamples {
  double h = 0.0;
  std::vector<double> q;  // S/sin t at t_i = i h
  double max_abs_s = 0.0;
};

GridSamples sample_grid(const GammaVector& g, std::size_t G) {
  GridSamples s;
  s.h = kPi / double(G - 1);
  s.q.resize(G);
  for (std::size_t i = 0; i < G; ++i) {
    const double x = i == G - 1 ? -1.0 : std::cos(double(i) * s.h);
    s.q[i] = clenshaw(g, x);
    s.max_abs_s = std::max(s.max_abs_s, std::abs(s.q[i]) * std::sqrt(std::max(0.0, 1.0 - x * x)));
  }
  return s;
}

ZeroSet zero_set_on(const GammaVector& g, const GridSamples& grid, double tol) {
  const std::size_t G = grid.q.size();
  const double h = grid.h;
  const std::vector<double>& q = grid.q;
  auto grid_t = [&](std::size_t i) { return i == G - 1 ? kPi : double(i) * h; };

  // Rounding level of the Clenshaw sum; samples below it carry no sign.
  double coeff_mass = std::abs(g[0]);
  for (std::size_t j = 1; j < g.size(); ++j) coeff_mass += 2.0 * std::abs(g[j]);
  const double noise = 16.0 * double(g.size()) * std::numeric_limits<double>::epsilon() * coeff_mass;

  std::vector<Candidate> cand;
  for (std::size_t i = 0; i + 1 < G; ++i) {
    if (q[i] != 0.0 && q[i + 1] != 0.0 && sign_of(q[i]) != sign_of(q[i + 1])) {
      cand.push_back({refine_bracket(g, grid_t(i), grid_t(i + 1), q[i]), true});
    } else if (q[i + 1] == 0.0 && i + 1 < G - 1) {
      cand.push_back({grid_t(i + 1), true});
    }
  }
  for (std::size_t i = 1; i + 1 < G; ++i) {
    const double m = std::abs(q[i]);
    if (m == 0.0 || sign_of(q[i - 1]) != sign_of(q[i]) || sign_of(q[i + 1]) != sign_of(q[i])) continue;
    if (m > std::abs(q[i - 1]) || m >= std::abs(q[i + 1])) continue;
    // Skip minima the parabola through the three samples keeps well away
    // from zero; a double zero makes that parabola dip to ~0.
    const double l = std::abs(q[i - 1]), r = std::abs(q[i + 1]);
    const double curv = l - 2.0 * m + r;
    const double vertex = curv > 0.0 ? m - (r - l) * (r - l) / (8.0 * curv) : m;
    if (vertex > 0.5 * m && m * std::sin(grid_t(i)) >= 2.0 * tol) continue;
    // Polish the extremum of q itself: a dip through zero inside one grid
    // cell gives two crossings, a dip to zero a touching zero.
    const double sigma = sign_of(q[i]);
    const double t = minimize_signed(g, sigma, grid_t(i - 1), grid_t(i + 1));
    const double qt = sine_quotient(g, t);
    if (sigma * qt < -noise) {
      cand.push_back({refine_bracket(g, grid_t(i - 1), t, q[i - 1]), true});
      cand.push_back({refine_bracket(g, t, grid_t(i + 1), qt), true});
    } else if (std::abs(qt) * std::sin(t) < tol) {
      cand.push_back({t, false});
    }
  }
  std::sort(cand.begin(), cand.end(), [](const Candidate& x, const Candidate& y) { return x.t < y.t; });

  // A touching candidate within a quarter grid step of another candidate is
  // the same zero (a crossing wins). Candidates next to an endpoint are that
  // endpoint.
  constexpr double kEndpoint = 1e-7;
  constexpr double kSame = 1e-10;
  const double merge = 0.25 * h;
  std::vector<Candidate> interior;
  for (const Candidate& c : cand) {
    if (c.t < kEndpoint || c.t > kPi - kEndpoint) continue;
    if (!interior.empty()) {
      Candidate& prev = interior.back();
      const double d = c.t - prev.t;
      if (d < kSame || (d < merge && !(prev.crossing && c.crossing))) {
        if (c.crossing && !prev.crossing) prev = c;
        continue;
      }
    }
    interior.push_back(c);
  }

  ZeroSet out;
  out.zeros.push_back(0.0);
  for (std::size_t k = 0; k < interior.size(); ++k) {
    const double t = interior[k].t;
    const double left = k == 0 ? t : t - interior[k - 1].t;
    const double right = k + 1 == interior.size() ? kPi - t : interior[k + 1].t - t;
    const double delta = std::min({0.25 * h, 0.5 * left, 0.5 * right});
    const double ql = sine_quotient(g, t - delta), qr = sine_quotient(g, t + delta);
    out.zeros.push_back(t);
    if (interior[k].crossing && std::abs(ql) > noise && std::abs(qr) > noise && sign_of(ql) != sign_of(qr)) {
      out.sign_changes.push_back(t);
    }
  }
  out.zeros.push_back(kPi);
  return out;
}

}  // namespace

ZeroSet zero_set(const CoeffVector& a, std::size_t grid_points, double tol) {
  if (grid_points < 2) throw std::invalid_argument("zero_set: grid_points must be >= 2");
  if (!(tol > 0.0)) throw std::invalid_argument("zero_set: tol must be positive");
  const GammaVector g = gamma_transform(a);
  return zero_set_on(g, sample_grid(g, grid_points), tol);
}

ZeroSet zero_set(const CoeffVector& a) {
  const GammaVector g = gamma_transform(a);
  const GridSamples grid = sample_grid(g, default_grid_points(a.size()));
  const double tol = grid.max_abs_s > 0.0 ? 1e-9 * grid.max_abs_s : std::numeric_limits<double>::min();
  return zero_set_on(g, grid, tol);
}

namespace {

void require_normalized(const CoeffVector& a, const char* who) {
  if (!a.is_normalized()) {
    throw std::invalid_argument(std::string(who) + ": coefficients must sum to 1 (sum = " +
                                std::to_string(a.sum()) + ")");
  }
}

}  // namespace

double rho(const CoeffVector& a) {
  require_normalized(a, "rho");
  const ZeroSet z = zero_set(a);
  double m = std::numeric_limits<double>::infinity();
  for (double t : z.zeros) m = std::min(m, eval_C(a, t));
  return m;
}

double rho1(const CoeffVector& a) {
  require_normalized(a, "rho1");
  const ZeroSet z = zero_set(a);
  double m = eval_C(a, kPi);
  for (double t : z.sign_changes) m = std::min(m, eval_C(a, t));
  return m;
}

GammaVector gamma_transform(const CoeffVector& a) {
  const std::size_t n = a.size();
  std::vector<double> g(n);
  for (std::size_t s = n; s-- > 0;) g[s] = a[s] + (s + 2 < n ? g[s + 2] : 0.0);
  return GammaVector(std::move(g));
}

CoeffVector gamma_inverse(const GammaVector& g) {
  const std::size_t n = g.size();
  std::vector<double> a(n);
  for (std::size_t j = 0; j < n; ++j) a[j] = g[j] - (j + 2 < n ? g[j + 2] : 0.0);
  return CoeffVector(std::move(a));
}

bool fejer_bound_holds(const GammaVector& g) {
  const std::size_t n = g.size();
  if (n < 2) return true;
  return std::abs(g[1]) <= std::cos(kPi / double(n + 1)) * std::abs(g[0]) + 1e-12;
}

CoeffVector times_cos_difference(std::span<const double> b, double t1) {
  const double c = std::cos(t1);
  const std::size_t m = b.size();
  auto at = [&](std::size_t j) { return j >= 1 && j <= m ? b[j - 1] : 0.0; };  // 1-based
  std::vector<double> a(m + 1);
  for (std::size_t k = 1; k <= m + 1; ++k) a[k - 1] = 0.5 * at(k - 1) - c * at(k) + 0.5 * at(k + 1);
  return CoeffVector(std::move(a));
}

double default_zero_residual(const CoeffVector& a) { return 1e-9 * std::max(1.0, a.abs_sum()); }

ReducedCoeffs factor_out_zero(const CoeffVector& a, double t1) {
  return factor_out_zero(a, t1, default_zero_residual(a));
}

ReducedCoeffs factor_out_zero(const CoeffVector& a, double t1, double residual_tol) {
  const std::size_t n = a.size();
  if (n < 2) throw std::invalid_argument("factor_out_zero: need n >= 2 to remove a zero");
  if (!(t1 > 0.0 && t1 < kPi)) throw std::invalid_argument("factor_out_zero: t1 must lie in (0, pi)");
  const double res = std::abs(eval_S(a, t1));
  if (!(res <= residual_tol)) {
    throw std::invalid_argument("factor_out_zero: |S(t1)| = " + std::to_string(res) +
                                " exceeds the residual tolerance");
  }
  // Back-substitution from a_n = b_{n-1}/2 upward; the equation for a_1 is
  // the consistency condition S(t1) = 0 and is not used.
  const double c = std::cos(t1);
  std::vector<double> b(n + 1, 0.0);  // b[j] = b_j, 1-based, b[n] = 0
  double next = 0.0;                   // b_{k+1}
  for (std::size_t k = n; k >= 2; --k) {
    const double bk = k <= n - 1 ? b[k] : 0.0;
    b[k - 1] = 2.0 * (a[k - 1] + c * bk) - next;
    next = bk;
  }
  ReducedCoeffs r;
  r.level = 1;
  r.coeffs.assign(b.begin() + 1, b.begin() + long(n));
  r.zeros = {t1};
  return r;
}

ReducedCoeffs reduce_zeros(const CoeffVector& a, std::span<const double> zeros) {
  return reduce_zeros(a, zeros, default_zero_residual(a));
}

ReducedCoeffs reduce_zeros(const CoeffVector& a, std::span<const double> zeros, double residual_tol) {
  const std::size_t m = zeros.size();
  if (m >= a.size()) throw std::invalid_argument("reduce_zeros: need fewer zeros than coefficients");
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (std::abs(zeros[i] - zeros[j]) <= 1e-9) {
        throw std::invalid_argument("reduce_zeros: zeros must be pairwise distinct");
      }
    }
  }
  ReducedCoeffs r;
  r.coeffs = a.vec();
  for (std::size_t j = 0; j < m; ++j) {
    // The residual at the next zero is scaled by the factors already removed.
    double scale = 1.0;
    for (std::size_t i = 0; i < j; ++i) scale *= std::abs(std::cos(zeros[j]) - std::cos(zeros[i]));
    const ReducedCoeffs step =
        factor_out_zero(CoeffVector(r.coeffs), zeros[j], residual_tol / std::max(scale, 1e-300));
    r.coeffs = step.coeffs;
  }
  r.level = m;
  r.zeros.assign(zeros.begin(), zeros.end());
  return r;
}

CoeffVector recompose(const ReducedCoeffs& r) {
  std::vector<double> b = r.coeffs;
  for (std::size_t j = r.zeros.size(); j-- > 0;) b = times_cos_difference(b, r.zeros[j]).vec();
  return CoeffVector(std::move(b));
}

}  // namespace fejer
