#include "fejer/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "fejer/extremal.hpp"

namespace fejer::oracle {

namespace {

using cplx = std::complex<double>;

cplx horner(std::span<const double> c, cplx z) {
  cplx v = c[0];
  for (std::size_t i = 1; i < c.size(); ++i) v = v * z + c[i];
  return v;
}

// Running-error bound for Horner evaluation: |p(z)| below this is noise.
double horner_noise(std::span<const double> c, double r) {
  double v = std::abs(c[0]);
  for (std::size_t i = 1; i < c.size(); ++i) v = v * r + std::abs(c[i]);
  return 8.0 * double(c.size()) * std::numeric_limits<double>::epsilon() * v;
}

}  // namespace

RootResult poly_roots(std::span<const double> p) {
  if (p.size() < 2) throw std::invalid_argument("poly_roots: degree must be >= 1");
  if (p[0] == 0.0) throw std::invalid_argument("poly_roots: leading coefficient must be nonzero");

  std::vector<double> c(p.begin(), p.end());
  for (double& v : c) v /= p[0];

  RootResult out;
  while (c.size() > 1 && c.back() == 0.0) {
    out.roots.emplace_back(0.0, 0.0);
    c.pop_back();
  }
  const std::size_t d = c.size() - 1;
  if (d > 0) {
    double radius = 0.0;
    for (std::size_t i = 1; i < c.size(); ++i) radius = std::max(radius, std::abs(c[i]));
    radius += 1.0;
    std::vector<cplx> z(d);
    for (std::size_t k = 0; k < d; ++k) {
      z[k] = std::polar(radius, 2.0 * kPi * double(k) / double(d) + 0.4);
    }
    for (out.iterations = 1; out.iterations <= 500; ++out.iterations) {
      double max_corr = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        cplx den = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
          if (j != k) den *= z[k] - z[j];
        }
        if (den == cplx(0.0)) den = 1e-300;
        const cplx w = horner(c, z[k]) / den;
        z[k] -= w;
        max_corr = std::max(max_corr, std::abs(w) / std::max(1.0, std::abs(z[k])));
      }
      bool at_noise = true;
      for (const cplx& r : z) {
        if (std::abs(horner(c, r)) > horner_noise(c, std::abs(r))) {
          at_noise = false;
          break;
        }
      }
      if (max_corr < 1e-13 || at_noise) {
        out.converged = true;
        break;
      }
    }
    out.iterations = std::min(out.iterations, 500);
    out.roots.insert(out.roots.end(), z.begin(), z.end());
  } else {
    out.converged = true;
  }
  for (const cplx& r : out.roots) out.residuals.push_back(std::abs(horner(p, r)));
  return out;
}

double max_modulus(const std::vector<std::complex<double>>& roots) {
  double m = 0.0;
  for (const auto& r : roots) m = std::max(m, std::abs(r));
  return m;
}

namespace {

// Candidate k of the coarse search, from its own generator.
std::vector<double> draw_sample(std::size_t n, std::uint64_t seed, std::uint64_t k) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(k),
                    std::uint32_t(k >> 32)};
  std::mt19937_64 gen(seq);
  std::uniform_real_distribution<double> box(-kSampleBox, kSampleBox);
  std::vector<double> a(n);
  for (;;) {
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      a[j] = box(gen);
      s += a[j];
    }
    a[n - 1] = 1.0 - s;
    if (std::abs(a[n - 1]) <= kSampleBox) return a;
  }
}

struct Best {
  double value = -std::numeric_limits<double>::infinity();
  std::uint64_t index = 0;
  bool better_than(const Best& o) const {
    return value > o.value || (value == o.value && index < o.index);
  }
};

Best scan_range(std::size_t n, std::uint64_t seed, std::uint64_t begin, std::uint64_t end) {
  Best best;
  for (std::uint64_t k = begin; k < end; ++k) {
    const Best cand{rho1(CoeffVector(draw_sample(n, seed, k))), k};
    if (cand.better_than(best)) best = cand;
  }
  return best;
}

Best coarse_search(std::size_t n, std::size_t samples, std::uint64_t seed) {
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, samples / 1000));
  if (workers == 1) return scan_range(n, seed, 0, samples);
  std::vector<Best> partial(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      partial[w] = scan_range(n, seed, samples * w / workers, samples * (w + 1) / workers);
    });
  }
  for (auto& t : pool) t.join();
  Best best;
  for (const Best& b : partial) {
    if (b.better_than(best)) best = b;
  }
  return best;
}

double rho1_of(std::vector<double> a) {
  // Keep the point on the hyperplane despite accumulated rounding.
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < a.size(); ++j) s += a[j];
  a.back() = 1.0 - s;
  return rho1(CoeffVector(std::move(a)));
}

// Maximizes rho1(a + s d) for s in [-w, w] along a direction with sum d = 0.
// Returns the best s found and its value; s = 0 wins ties.
std::pair<double, double> line_search(const std::vector<double>& a, const std::vector<double>& d,
                                      double w, double current) {
  auto phi = [&](double s) {
    std::vector<double> b = a;
    for (std::size_t k = 0; k < b.size(); ++k) b[k] += s * d[k];
    return rho1_of(std::move(b));
  };
  constexpr int kCoarse = 8;
  double best_s = 0.0, best_v = current;
  for (int k = 0; k <= kCoarse; ++k) {
    const double s = -w + 2.0 * w * k / kCoarse;
    if (s == 0.0) continue;
    const double v = phi(s);
    if (v > best_v) {
      best_v = v;
      best_s = s;
    }
  }
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = best_s - 2.0 * w / kCoarse, hi = best_s + 2.0 * w / kCoarse;
  double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
  double f1 = phi(x1), f2 = phi(x2);
  for (int it = 0; it < 30; ++it) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = phi(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = phi(x2);
    }
  }
  if (f1 > best_v) {
    best_v = f1;
    best_s = x1;
  }
  if (f2 > best_v) {
    best_v = f2;
    best_s = x2;
  }
  return {best_s, best_v};
}

}  // namespace

SearchReport brute_force_sup(std::size_t n, std::size_t coarse_samples, std::size_t refine_iters,
                             std::uint64_t seed) {
  if (n < 1 || n > kMaxDeskDegree) {
    throw std::invalid_argument("brute_force_sup: n must lie in 1.." + std::to_string(kMaxDeskDegree));
  }
  SearchReport rep;
  rep.n = n;
  if (n == 1) {
    rep.best_coeffs = CoeffVector{1.0};
    rep.best_value = rho1(rep.best_coeffs);
    rep.samples_evaluated = 1;
    return rep;
  }
  if (coarse_samples < 1000) throw std::invalid_argument("brute_force_sup: need at least 1000 samples");

  const Best coarse = coarse_search(n, coarse_samples, seed);
  std::vector<double> a = draw_sample(n, seed, coarse.index);
  double value = coarse.value;

  // In-plane directions: every e_i - e_j, plus n seeded random directions per
  // pass so the search can follow ridges that are not axis aligned.
  std::vector<std::vector<double>> axes;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<double> d(n, 0.0);
      d[i] = 1.0;
      d[j] = -1.0;
      axes.push_back(std::move(d));
    }
  }
  std::seed_seq dir_seq{std::uint32_t(seed), std::uint32_t(seed >> 32), 0xd1u};
  std::mt19937_64 dir_gen(dir_seq);
  std::normal_distribution<double> normal;
  auto random_direction = [&] {
    std::vector<double> d(n);
    double mean = 0.0;
    for (double& v : d) mean += (v = normal(dir_gen));
    mean /= double(n);
    double norm = 0.0;
    for (double& v : d) {
      v -= mean;
      norm += v * v;
    }
    norm = std::sqrt(norm / 2.0);
    for (double& v : d) v /= norm;
    return d;
  };

  double w = 0.25;
  for (std::size_t pass = 0; pass < refine_iters; ++pass) {
    std::vector<std::vector<double>> dirs = axes;
    for (std::size_t k = 0; k < n; ++k) dirs.push_back(random_direction());
    for (const auto& d : dirs) {
      const auto [s, v] = line_search(a, d, w, value);
      if (v > value) {
        for (std::size_t k = 0; k < n; ++k) a[k] += s * d[k];
        value = v;
      }
    }
    w *= 0.85;
    ++rep.refinement_iterations;
  }
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) s += a[j];
  a.back() = 1.0 - s;
  rep.best_coeffs = CoeffVector(std::move(a));
  rep.best_value = rho1(rep.best_coeffs);
  rep.samples_evaluated = coarse_samples;
  return rep;
}

bool Theorem1Report::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

Theorem1Report verify_theorem1(std::size_t n, std::size_t samples, std::size_t refine_iters,
                               std::uint64_t seed) {
  if (n < 1 || n > kMaxDeskDegree) {
    throw std::invalid_argument("verify: n must lie in 1.." + std::to_string(kMaxDeskDegree));
  }
  const ExtremalSolution sol = optimal_coeffs(n);
  Theorem1Report rep;
  rep.n = n;

  const double closed_gap = std::abs(rho1(sol.a0) - sol.value);
  rep.rows.push_back({"closed_form_rho1", closed_gap, 1e-9, closed_gap <= 1e-9});

  const SearchReport search = brute_force_sup(n, samples, refine_iters, seed);
  const double oracle_gap = sol.value - search.best_value;
  rep.rows.push_back({"oracle_sup_gap", oracle_gap, 1e-3, oracle_gap >= -1e-6 && oracle_gap <= 1e-3});

  constexpr std::size_t kGrid = 100000;
  double min_s = 0.0;
  for (std::size_t i = 0; i <= kGrid; ++i) {
    min_s = std::min(min_s, eval_S(sol.a0, kPi * double(i) / double(kGrid)));
  }
  rep.rows.push_back({"nonnegativity", -min_s, 1e-10, -min_s <= 1e-10});

  const double g2 = n >= 2 ? sol.g0[1] : 0.0;
  const double fejer_gap = std::abs(g2 - std::cos(kPi / double(n + 1)) * sol.g0[0]);
  rep.rows.push_back({"fejer_equality", fejer_gap, 1e-12, fejer_gap <= 1e-12});
  return rep;
}

}  // namespace fejer::oracle
