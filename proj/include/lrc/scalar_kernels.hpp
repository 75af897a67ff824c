#pragma once

#include <span>

#include <boost/multiprecision/cpp_int.hpp>

namespace lrc {

using BigInt = boost::multiprecision::cpp_int;

/// Relative minimum distance d/n, validated to lie in [0, 1].
class RelativeDistance {
 public:
  explicit RelativeDistance(double delta);
  double value() const noexcept { return delta_; }

 private:
  double delta_;
};

/// Locality r: every coordinate is repairable from at most r others.
class Locality {
 public:
  explicit Locality(int r);
  int value() const noexcept { return r_; }
  /// Per-repair-group support cap t = floor((r+1)/2).
  int cap() const noexcept { return (r_ + 1) / 2; }

 private:
  int r_;
};

/// Binary entropy in bits, with 0 log 0 = 0. Throws DomainError outside [0,1].
double entropy(double p);

/// Shannon entropy (bits) of a probability vector; entries must be >= 0 and sum to 1 within 1e-12.
double entropy_of_distribution(std::span<const double> p);

/// rho(delta) = 1/2 - sqrt(delta (1 - delta)), the covering radius fraction used by the
/// coset-counting bounds. Returns 0 for delta >= 1/2.
double rho_of_delta(double delta);

/// h(1/2 - sqrt(1 - x)/2) for x in [0,1].
double h_hat(double x);

/// C(n, k); zero when k < 0 or k > n.
BigInt binomial(int n, int k);

/// Number of binary words of length n and weight at most t.
BigInt ball_volume(int n, int t);

/// floor(rho * n) with a 1e-9 guard against products like 0.15 * 60 landing just below an integer.
int floor_radius(double rho, int n);

/// Conversion of a (possibly huge) nonnegative integer to log2, exact to double precision.
double log2_big(const BigInt& v);

}  // namespace lrc
