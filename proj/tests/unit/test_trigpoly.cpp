#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fejer/trigpoly.hpp"
#include "generators.hpp"

using namespace fejer;

namespace {

// Sine coefficients of an odd trigonometric polynomial of degree < M from
// its samples, by the discrete sine transform.
std::vector<double> dst_coeffs(double (*s)(double), std::size_t degree, std::size_t M = 64) {
  std::vector<double> a(degree, 0.0);
  for (std::size_t k = 1; k <= degree; ++k) {
    double acc = 0.0;
    for (std::size_t i = 1; i < M; ++i) {
      const double t = kPi * double(i) / double(M);
      acc += s(t) * std::sin(double(k) * t);
    }
    a[k - 1] = 2.0 * acc / double(M);
  }
  return a;
}

double product_form(const std::vector<double>& zeros, const std::vector<double>& b, double t) {
  double p = 1.0;
  for (double z : zeros) p *= std::cos(t) - std::cos(z);
  double s = 0.0;
  for (std::size_t j = 0; j < b.size(); ++j) s += b[j] * std::sin(double(j + 1) * t);
  return p * s;
}

double max_grid_residual(const CoeffVector& a, const std::vector<double>& zeros,
                         const std::vector<double>& b, std::size_t points = 1000) {
  double worst = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double t = kPi * double(i) / double(points - 1);
    worst = std::max(worst, std::abs(eval_S(a, t) - product_form(zeros, b, t)));
  }
  return worst;
}

}  // namespace

TEST(CoeffVector, RejectsEmpty) {
  EXPECT_THROW(CoeffVector(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(GammaVector(std::vector<double>{}), std::invalid_argument);
}

TEST(CoeffVector, Normalization) {
  EXPECT_TRUE((CoeffVector{2.0 / 3.0, 1.0 / 3.0}.is_normalized()));
  EXPECT_FALSE((CoeffVector{0.5, 0.4}.is_normalized()));
  EXPECT_DOUBLE_EQ((CoeffVector{0.5, -0.5}.abs_sum()), 1.0);
}

TEST(Eval, CosineExamples) {
  EXPECT_NEAR(eval_C(CoeffVector{1.0}, kPi), -1.0, 1e-15);
  EXPECT_NEAR(eval_C(CoeffVector{2.0 / 3.0, 1.0 / 3.0}, kPi), -1.0 / 3.0, 1e-15);
  EXPECT_NEAR(eval_C(CoeffVector{2.0 / 3.0, 1.0 / 3.0}, 0.0), 1.0, 1e-15);
}

TEST(Eval, SineExamples) {
  EXPECT_NEAR(eval_S(CoeffVector{1.0}, kPi / 2), 1.0, 1e-15);
  EXPECT_NEAR(eval_S(CoeffVector{0.0, 1.0}, kPi / 4), 1.0, 1e-15);
  EXPECT_NEAR(eval_S(CoeffVector{2.0 / 3.0, 1.0 / 3.0}, kPi / 2), 2.0 / 3.0, 1e-15);
}

TEST(Eval, SineVanishesAtEndpoints) {
  gen::Rng rng(1);
  for (std::size_t n = 1; n <= 16; ++n) {
    for (int rep = 0; rep < 50; ++rep) {
      const CoeffVector a(gen::vector(rng, n, -10.0, 10.0));
      const double bound = 1e-12 * a.abs_sum();
      EXPECT_LE(std::abs(eval_S(a, 0.0)), bound);
      EXPECT_LE(std::abs(eval_S(a, kPi)), bound);
    }
  }
}

TEST(Eval, SineQuotientMatchesDivision) {
  gen::Rng rng(2);
  for (std::size_t n = 1; n <= 10; ++n) {
    const CoeffVector a(gen::vector(rng, n, -2.0, 2.0));
    const GammaVector g = gamma_transform(a);
    for (double t = 0.05; t < kPi; t += 0.1) {
      EXPECT_NEAR(sine_quotient(g, t), eval_S(a, t) / std::sin(t), 1e-12);
    }
    double at_zero = 0.0;
    for (std::size_t j = 0; j < n; ++j) at_zero += double(j + 1) * a[j];
    EXPECT_NEAR(sine_quotient(g, 0.0), at_zero, 1e-12);
  }
}

TEST(ZeroSet, Sin2t) {
  const ZeroSet z = zero_set(CoeffVector{0.0, 1.0});
  ASSERT_EQ(z.zeros.size(), 3u);
  EXPECT_EQ(z.zeros.front(), 0.0);
  EXPECT_NEAR(z.zeros[1], kPi / 2, 1e-12);
  EXPECT_EQ(z.zeros.back(), kPi);
  ASSERT_EQ(z.sign_changes.size(), 1u);
  EXPECT_NEAR(z.sign_changes[0], kPi / 2, 1e-12);
}

TEST(ZeroSet, NonnegativeSineHasOnlyEndpoints) {
  for (const CoeffVector& a : {CoeffVector{2.0 / 3.0, 1.0 / 3.0}, CoeffVector{1.0}}) {
    const ZeroSet z = zero_set(a);
    ASSERT_EQ(z.zeros.size(), 2u);
    EXPECT_EQ(z.zeros[0], 0.0);
    EXPECT_EQ(z.zeros[1], kPi);
    EXPECT_TRUE(z.sign_changes.empty());
  }
}

TEST(ZeroSet, TouchingZeroIsNotASignChange) {
  // S = sin t (cos t - 0.3)^2 has a double interior zero.
  const double c = 0.3;
  const CoeffVector a = times_cos_difference(times_cos_difference(std::vector<double>{1.0}, std::acos(c)).vec(),
                                             std::acos(c));
  const ZeroSet z = zero_set(a);
  ASSERT_EQ(z.zeros.size(), 3u);
  EXPECT_NEAR(z.zeros[1], std::acos(c), 1e-6);
  EXPECT_TRUE(z.sign_changes.empty());
}

TEST(ZeroSet, CloseSignChangesInsideOneGridCell) {
  // Two simple zeros 1e-4 apart; the default grid step is about 3e-3.
  const double t1 = 1.0, t2 = 1.0 + 1e-4;
  const CoeffVector a =
      times_cos_difference(times_cos_difference(std::vector<double>{1.0}, t1).vec(), t2);
  const ZeroSet z = zero_set(a);
  ASSERT_EQ(z.sign_changes.size(), 2u);
  EXPECT_NEAR(z.sign_changes[0], t1, 1e-9);
  EXPECT_NEAR(z.sign_changes[1], t2, 1e-9);
}

TEST(ZeroSet, Invariants) {
  gen::Rng rng(3);
  for (std::size_t n = 1; n <= 12; ++n) {
    for (int rep = 0; rep < 100; ++rep) {
      const CoeffVector a = gen::normalized(rng, n, 3.0);
      const ZeroSet z = zero_set(a);
      ASSERT_GE(z.zeros.size(), 2u);
      EXPECT_EQ(z.zeros.front(), 0.0);
      EXPECT_EQ(z.zeros.back(), kPi);
      EXPECT_TRUE(std::is_sorted(z.zeros.begin(), z.zeros.end()));
      EXPECT_LE(z.zeros.size(), n + 1);
      for (double t : z.sign_changes) {
        EXPECT_GT(t, 0.0);
        EXPECT_LT(t, kPi);
        EXPECT_NE(std::find(z.zeros.begin(), z.zeros.end(), t), z.zeros.end());
        EXPECT_LE(std::abs(eval_S(a, t)), 1e-9 * a.abs_sum());
      }
    }
  }
}

TEST(ZeroSet, RejectsBadArguments) {
  const CoeffVector a{1.0};
  EXPECT_THROW(zero_set(a, 1, 1e-9), std::invalid_argument);
  EXPECT_THROW(zero_set(a, 100, 0.0), std::invalid_argument);
  EXPECT_THROW(zero_set(a, 100, -1.0), std::invalid_argument);
  EXPECT_NO_THROW(zero_set(a, 2, 1e-9));
}

TEST(Rho, Examples) {
  EXPECT_NEAR(rho(CoeffVector{1.0}), -1.0, 1e-15);
  EXPECT_NEAR(rho(CoeffVector{0.0, 1.0}), -1.0, 1e-12);
  EXPECT_NEAR(rho(CoeffVector{2.0 / 3.0, 1.0 / 3.0}), -1.0 / 3.0, 1e-15);
  EXPECT_NEAR(rho1(CoeffVector{0.0, 1.0}), -1.0, 1e-12);
  EXPECT_NEAR(rho1(CoeffVector{2.0 / 3.0, 1.0 / 3.0}), -1.0 / 3.0, 1e-15);
  EXPECT_NEAR(rho1(CoeffVector{1.0}), -1.0, 1e-15);
}

TEST(Rho, RequiresNormalization) {
  EXPECT_THROW(rho(CoeffVector{0.5, 0.4}), std::invalid_argument);
  EXPECT_THROW(rho1(CoeffVector{0.5, 0.4}), std::invalid_argument);
}

TEST(Rho, AlwaysNegative) {
  gen::Rng rng(4);
  for (std::size_t n = 1; n <= 8; ++n) {
    int failures = 0;
    for (int rep = 0; rep < 10000; ++rep) {
      const CoeffVector a = gen::normalized(rng, n, 10.0);
      if (!(rho(a) < 0.0)) ++failures;
    }
    EXPECT_EQ(failures, 0) << "n=" << n;
  }
}

TEST(Rho, BoundedByRho1AndEndpoint) {
  gen::Rng rng(5);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int rep = 0; rep < 500; ++rep) {
      const CoeffVector a = gen::normalized(rng, n, 3.0);
      const double r = rho(a);
      EXPECT_LE(r, rho1(a));
      EXPECT_LE(r, eval_C(a, kPi) + 1e-15);
    }
  }
}

TEST(Gamma, Examples) {
  const GammaVector g2 = gamma_transform(CoeffVector{2.0 / 3.0, 1.0 / 3.0});
  EXPECT_DOUBLE_EQ(g2[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(g2[1], 1.0 / 3.0);

  const GammaVector g3 = gamma_transform(CoeffVector{0.439340, 0.414214, 0.146447});
  EXPECT_NEAR(g3[0], 0.585787, 1e-12);
  EXPECT_NEAR(g3[1], 0.414214, 1e-12);
  EXPECT_NEAR(g3[2], 0.146447, 1e-12);

  const GammaVector g4 = gamma_transform(CoeffVector{1.0, 0.0, 0.0, 0.0});
  EXPECT_EQ(std::vector<double>(g4.values().begin(), g4.values().end()), (std::vector<double>{1, 0, 0, 0}));
}

TEST(Gamma, InverseExamples) {
  const CoeffVector a3 = gamma_inverse(GammaVector{0.585786, 0.414214, 0.146447});
  EXPECT_NEAR(a3[0], 0.439339, 1e-12);
  EXPECT_NEAR(a3[1], 0.414214, 1e-12);
  EXPECT_NEAR(a3[2], 0.146447, 1e-12);
  EXPECT_EQ(gamma_inverse(GammaVector{1.0, 1.0, 1.0}), (CoeffVector{0.0, 1.0, 1.0}));
  EXPECT_EQ(gamma_inverse(GammaVector{2.0 / 3.0, 1.0 / 3.0}), (CoeffVector{2.0 / 3.0, 1.0 / 3.0}));
}

TEST(Gamma, Bijection) {
  gen::Rng rng(6);
  for (std::size_t n = 1; n <= 20; ++n) {
    for (int rep = 0; rep < 50; ++rep) {
      // Dyadic values keep every partial sum exact.
      std::vector<double> v(n);
      for (double& x : v) x = std::ldexp(double(std::int64_t(gen::uniform(rng, -1024, 1024))), -6);
      const CoeffVector a(v);
      EXPECT_EQ(gamma_inverse(gamma_transform(a)), a);
    }
  }
}

TEST(Gamma, NormalizationIsFirstTwoSums) {
  gen::Rng rng(7);
  for (std::size_t n = 2; n <= 10; ++n) {
    const CoeffVector a = gen::normalized(rng, n, 3.0);
    const GammaVector g = gamma_transform(a);
    EXPECT_NEAR(g[0] + g[1], 1.0, 1e-12);
  }
}

TEST(FejerBound, Examples) {
  EXPECT_TRUE((fejer_bound_holds(GammaVector{2.0 / 3.0, 1.0 / 3.0})));
  EXPECT_FALSE((fejer_bound_holds(GammaVector{0.5, 0.5})));
  EXPECT_TRUE((fejer_bound_holds(GammaVector{1.0, 0.0})));
  EXPECT_TRUE((fejer_bound_holds(GammaVector{-7.0})));
}

TEST(FactorOutZero, Examples) {
  const ReducedCoeffs r = factor_out_zero(CoeffVector{0.0, 1.0}, kPi / 2);
  ASSERT_EQ(r.coeffs.size(), 1u);
  EXPECT_NEAR(r.coeffs[0], 2.0, 1e-15);
  EXPECT_NEAR(eval_C(CoeffVector{0.0, 1.0}, kPi / 2), -r.coeffs[0] / 2, 1e-15);

  const ReducedCoeffs h = factor_out_zero(CoeffVector{0.5, 0.5}, 2 * kPi / 3);
  ASSERT_EQ(h.coeffs.size(), 1u);
  EXPECT_NEAR(h.coeffs[0], 1.0, 1e-15);
  EXPECT_EQ(h.level, 1u);
  const CoeffVector back = recompose(h);
  EXPECT_NEAR(back[0], 0.5, 1e-15);
  EXPECT_NEAR(back[1], 0.5, 1e-15);
}

TEST(FactorOutZero, RejectsBadArguments) {
  const CoeffVector a{0.0, 1.0};
  EXPECT_THROW(factor_out_zero(a, 0.0), std::invalid_argument);
  EXPECT_THROW(factor_out_zero(a, kPi), std::invalid_argument);
  EXPECT_THROW(factor_out_zero(a, 1.0), std::invalid_argument);
  EXPECT_THROW(factor_out_zero(CoeffVector{1.0}, 1.0), std::invalid_argument);
}

TEST(FactorOutZero, RandomZerosRecompose) {
  gen::Rng rng(8);
  int checked = 0;
  for (std::size_t n = 2; n <= 8; ++n) {
    for (int rep = 0; rep < 200; ++rep) {
      const CoeffVector a = gen::normalized(rng, n, 3.0);
      for (double t1 : zero_set(a).sign_changes) {
        const ReducedCoeffs r = factor_out_zero(a, t1);
        EXPECT_LT(max_grid_residual(a, {t1}, r.coeffs), 1e-9);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(FactorOutZero, ValueAtZeroAndAtPi) {
  gen::Rng rng(9);
  for (std::size_t n = 2; n <= 8; ++n) {
    for (int rep = 0; rep < 200; ++rep) {
      const CoeffVector a = gen::normalized(rng, n, 3.0);
      for (double t1 : zero_set(a).sign_changes) {
        const ReducedCoeffs r = factor_out_zero(a, t1);
        EXPECT_NEAR(eval_C(a, t1), -r.coeffs[0] / 2, 1e-8);
        double alt = 0.0;
        for (std::size_t j = 0; j < r.coeffs.size(); ++j) alt += (j % 2 == 0 ? -1.0 : 1.0) * r.coeffs[j];
        EXPECT_NEAR(eval_C(a, kPi), -r.coeffs[0] / 2 - (1 + std::cos(t1)) * alt, 1e-8);
      }
    }
  }
}

TEST(ReduceZeros, SingleZeroIsFactorOutZero) {
  const CoeffVector a{0.2, 0.5, 0.3};
  const double t1 = zero_set(CoeffVector{0.0, 1.0}).sign_changes[0];
  const CoeffVector b = times_cos_difference(a.vec(), t1);
  const std::vector<double> zs{t1};
  EXPECT_EQ(reduce_zeros(b, zs).coeffs, factor_out_zero(b, t1).coeffs);
}

TEST(ReduceZeros, TwoKnownZeros) {
  const std::vector<double> a = dst_coeffs(
      [](double t) { return (std::cos(t) - std::cos(1.0)) * (std::cos(t) - std::cos(2.0)) * std::sin(t); }, 3);
  const std::vector<double> zs{1.0, 2.0};
  const ReducedCoeffs r = reduce_zeros(CoeffVector(a), zs);
  EXPECT_EQ(r.level, 2u);
  ASSERT_EQ(r.coeffs.size(), 1u);
  EXPECT_NEAR(r.coeffs[0], 1.0, 1e-12);
  EXPECT_EQ(r.zeros, zs);
}

TEST(ReduceZeros, EmptyListIsIdentity) {
  const CoeffVector a{0.3, 0.7};
  const ReducedCoeffs r = reduce_zeros(a, std::vector<double>{});
  EXPECT_EQ(r.level, 0u);
  EXPECT_EQ(r.coeffs, a.vec());
  EXPECT_EQ(recompose(r), a);
}

TEST(ReduceZeros, RejectsBadArguments) {
  const CoeffVector a = times_cos_difference(times_cos_difference(std::vector<double>{1.0}, 1.0).vec(), 2.0);
  EXPECT_THROW(reduce_zeros(a, std::vector<double>{1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(reduce_zeros(a, std::vector<double>{1.0, 2.0, 3.0}), std::invalid_argument);
  EXPECT_THROW(reduce_zeros(a, std::vector<double>{1.0, 2.5}), std::invalid_argument);
  EXPECT_NO_THROW(reduce_zeros(a, std::vector<double>{2.0, 1.0}));
}

TEST(ReduceZeros, RoundTrip) {
  gen::Rng rng(10);
  for (std::size_t n = 3; n <= 8; ++n) {
    for (std::size_t m = 1; m < n; ++m) {
      for (int rep = 0; rep < 30; ++rep) {
        const std::vector<double> b = gen::vector(rng, n - m, -1.0, 1.0);
        const std::vector<double> zs = gen::angles(rng, m, 0.05, 0.05);
        ReducedCoeffs src;
        src.level = m;
        src.coeffs = b;
        src.zeros = zs;
        const CoeffVector a = recompose(src);
        ASSERT_EQ(a.size(), n);
        EXPECT_LT(max_grid_residual(a, zs, b), 1e-9);
        const ReducedCoeffs r = reduce_zeros(a, zs);
        ASSERT_EQ(r.coeffs.size(), n - m);
        for (std::size_t j = 0; j < b.size(); ++j) EXPECT_NEAR(r.coeffs[j], b[j], 1e-9);
      }
    }
  }
}

TEST(ReduceZeros, EqualCosineValuesAtZeros) {
  // With a_1..a_{m-1} of the reduced vector zero, C takes one value at every
  // listed zero, and C(pi) follows from the reduced coefficients.
  gen::Rng rng(11);
  for (std::size_t n = 3; n <= 8; ++n) {
    for (std::size_t m = 1; 2 * m <= n; ++m) {
      for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> b = gen::vector(rng, n - m, -1.0, 1.0);
        for (std::size_t j = 0; j + 1 < m; ++j) b[j] = 0.0;
        const std::vector<double> zs = gen::angles(rng, m, 0.1, 0.1);
        ReducedCoeffs src;
        src.level = m;
        src.coeffs = b;
        src.zeros = zs;
        const CoeffVector a = recompose(src);
        const ReducedCoeffs r = reduce_zeros(a, zs);
        for (std::size_t j = 0; j + 1 < m; ++j) EXPECT_NEAR(r.coeffs[j], 0.0, 1e-9);
        const double am = r.coeffs[m - 1];
        const double level_value = -am / std::ldexp(1.0, int(m));
        for (double t : zs) EXPECT_NEAR(eval_C(a, t), level_value, 1e-8);
        double prod = 1.0;
        for (double t : zs) prod *= 1.0 + std::cos(t);
        double alt = 0.0;
        for (std::size_t j = m; j <= n - m; ++j) alt += (j % 2 == 0 ? 1.0 : -1.0) * r.coeffs[j - 1];
        const double sign = m % 2 == 0 ? 1.0 : -1.0;
        EXPECT_NEAR(eval_C(a, kPi), level_value + sign * prod * alt, 1e-8) << "n=" << n << " m=" << m;
      }
    }
  }
}

TEST(Multiplicity, FactorAtPiGivesDoubleZero) {
  gen::Rng rng(12);
  const double h = 1e-4;
  for (std::size_t n = 1; n <= 7; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      const std::vector<double> b = gen::vector(rng, n, -1.0, 1.0);
      const CoeffVector a = times_cos_difference(b, kPi);
      const double slope = (eval_S(a, kPi + h) - eval_S(a, kPi - h)) / (2 * h);
      EXPECT_LT(std::abs(slope), 1e-6);
    }
  }
  // Without the factor the slope at pi is generically nonzero.
  const CoeffVector plain{0.7, 0.3};
  EXPECT_GT(std::abs((eval_S(plain, kPi + h) - eval_S(plain, kPi - h)) / (2 * h)), 0.1);
}

TEST(TimesCosDifference, MatchesProduct) {
  gen::Rng rng(13);
  for (std::size_t n = 1; n <= 8; ++n) {
    const std::vector<double> b = gen::vector(rng, n, -1.0, 1.0);
    const double t1 = gen::uniform(rng, 0.1, 3.0);
    const CoeffVector a = times_cos_difference(b, t1);
    EXPECT_EQ(a.size(), n + 1);
    EXPECT_LT(max_grid_residual(a, {t1}, b), 1e-13);
  }
}
