#pragma once

// Conjugate trigonometric polynomial pairs
//
//   C(t) = sum_{j=1..n} a_j cos(j t),   S(t) = sum_{j=1..n} a_j sin(j t)
//
// with evaluation, zero location on [0, pi], the min-over-zeros functionals
// rho / rho1, the parity-sum (gamma) transform and the factorization of S
// through its interior zeros.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fejer {

inline constexpr double kPi = 3.14159265358979323846;

// Tolerance on |sum a_j - 1| for a vector to count as normalized.
inline constexpr double kNormalizationTol = 1e-12;

// Coefficients a_1..a_n. Element 0 holds a_1.
class CoeffVector {
 public:
  explicit CoeffVector(std::vector<double> a);
  CoeffVector(std::initializer_list<double> a) : CoeffVector(std::vector<double>(a)) {}

  std::size_t size() const { return a_.size(); }
  double operator[](std::size_t i) const { return a_[i]; }
  std::span<const double> values() const { return a_; }
  const std::vector<double>& vec() const { return a_; }

  double sum() const;
  double abs_sum() const;
  bool is_normalized(double tol = kNormalizationTol) const;

  friend bool operator==(const CoeffVector&, const CoeffVector&) = default;

 private:
  std::vector<double> a_;
};

// Parity partial sums gamma_s = a_s + a_{s+2} + a_{s+4} + ...
class GammaVector {
 public:
  explicit GammaVector(std::vector<double> g);
  GammaVector(std::initializer_list<double> g) : GammaVector(std::vector<double>(g)) {}

  std::size_t size() const { return g_.size(); }
  double operator[](std::size_t i) const { return g_[i]; }
  std::span<const double> values() const { return g_; }

 private:
  std::vector<double> g_;
};

// Zeros of S on [0, pi]. `zeros` always contains 0 and pi; `sign_changes`
// is the subset of interior zeros where S strictly changes sign.
struct ZeroSet {
  std::vector<double> zeros;
  std::vector<double> sign_changes;
};

// Result of dividing S by prod_j (cos t - cos t_j):
//   S(t) = prod_{j=1..m} (cos t - cos t_j) * sum_{i=1..n-m} coeffs_i sin(i t)
struct ReducedCoeffs {
  std::size_t level = 0;
  std::vector<double> coeffs;
  std::vector<double> zeros;
};

double eval_C(const CoeffVector& a, double t);
double eval_S(const CoeffVector& a, double t);

// S(t) / sin(t) = g_1 + 2 sum_{j>=2} g_j cos((j-1) t), a cosine polynomial
// that is finite at both endpoints. Evaluated by Clenshaw recurrence.
double sine_quotient(const GammaVector& g, double t);

std::size_t default_grid_points(std::size_t n);

// Grid scan of S/sin t on `grid_points` uniform samples of [0, pi]. Brackets
// are bisected to abscissa width 1e-12. At a grid-local minimum of |S/sin t|
// without a sign change the extremum is located; a dip through zero gives two
// sign changes, otherwise it is a touching zero when |S| < tol there.
ZeroSet zero_set(const CoeffVector& a, std::size_t grid_points, double tol);

// grid_points = max(1024, 64 n), tol = 1e-9 * max |S| over the grid.
ZeroSet zero_set(const CoeffVector& a);

// min C over all zeros of S (including touching zeros and both endpoints).
double rho(const CoeffVector& a);
// min C over the sign-change set and pi.
double rho1(const CoeffVector& a);

GammaVector gamma_transform(const CoeffVector& a);
CoeffVector gamma_inverse(const GammaVector& g);

// |g_2| <= cos(pi/(n+1)) |g_1|, the necessary condition on the first two
// coefficients of a nonnegative cosine polynomial of degree n-1.
bool fejer_bound_holds(const GammaVector& g);

// Multiplies sum b_j sin(j t) by (cos t - cos t1); the result has one more
// coefficient. This is the forward direction of the factorization.
CoeffVector times_cos_difference(std::span<const double> b, double t1);

// Default residual bound |S(t1)| <= 1e-9 * max(1, sum |a_j|).
double default_zero_residual(const CoeffVector& a);

ReducedCoeffs factor_out_zero(const CoeffVector& a, double t1);
ReducedCoeffs factor_out_zero(const CoeffVector& a, double t1, double residual_tol);

ReducedCoeffs reduce_zeros(const CoeffVector& a, std::span<const double> zeros);
ReducedCoeffs reduce_zeros(const CoeffVector& a, std::span<const double> zeros,
                           double residual_tol);

// Multiplies the reduced coefficients back through every stored zero.
CoeffVector recompose(const ReducedCoeffs& r);

}  // namespace fejer
