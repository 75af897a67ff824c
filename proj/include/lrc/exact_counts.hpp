#pragma once

#include <utility>
#include <vector>

#include "lrc/scalar_kernels.hpp"

namespace lrc {

/// Univariate polynomial with exact nonnegative integer coefficients, index = degree.
class CountPolynomial {
 public:
  CountPolynomial() : coeffs_{1} {}
  explicit CountPolynomial(std::vector<BigInt> coeffs);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coefficients() const noexcept { return coeffs_; }
  /// [x^k]; zero beyond the degree.
  BigInt coefficient(int k) const;
  /// Sum of [x^k] for k <= kmax.
  BigInt prefix_sum(int kmax) const;

  friend CountPolynomial operator*(const CountPolynomial& a, const CountPolynomial& b);
  CountPolynomial pow(int exponent) const;

  friend bool operator==(const CountPolynomial&, const CountPolynomial&) = default;

 private:
  std::vector<BigInt> coeffs_;
};

/// Per-repair-group enumerator 1 + sum_{i=1..t} C(r+1, i) x^i; with `refined`
/// the x^t coefficient is halved when r is odd (C(2t, t) is even, so this is exact).
CountPolynomial repair_group_factor(Locality r, bool refined);

/// Number of words of weight <= kmax whose support meets each of the n/(r+1)
/// repair groups in at most t coordinates (refined: one representative per
/// middle-weight pair). Throws InvalidParameter unless (r+1) | n and 0 <= kmax <= n.
BigInt gf_count(int n, Locality r, int kmax, bool refined);

/// The refined group enumerator raised to n/(r+1).
CountPolynomial group_enumerator(int n, Locality r, bool refined);

struct CoefficientRate {
  double sum_rate = 0.0;  // log2(sum_{k<=floor(rho n)} [x^k] g) / n
  double max_rate = 0.0;  // max_{k<=floor(rho n)} log2([x^k] g) / n
};

CoefficientRate coeff_rate(int n, Locality r, double rho);

}  // namespace lrc
