#include "lrc/scalar_kernels.hpp"

#include <cmath>
#include <string>

#include "lrc/errors.hpp"

namespace lrc {

RelativeDistance::RelativeDistance(double delta) : delta_(delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw DomainError("relative distance must lie in [0,1], got " + std::to_string(delta));
  }
}

Locality::Locality(int r) : r_(r) {
  if (r < 1) throw InvalidParameter("locality r must be >= 1, got " + std::to_string(r));
}

namespace {

// -p log2 p with the 0 log 0 = 0 convention.
double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

double entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("entropy: p outside [0,1]");
  return plogp(p) + plogp(1.0 - p);
}

double entropy_of_distribution(std::span<const double> p) {
  double total = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw DomainError("entropy_of_distribution: negative or NaN mass");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("entropy_of_distribution: masses do not sum to 1");
  double h = 0.0;
  for (double v : p) h += plogp(v);
  return h;
}

double rho_of_delta(double delta) {
  if (delta >= 0.5) return 0.0;
  if (delta <= 0.0) return 0.5;
  return std::max(0.0, 0.5 - std::sqrt(delta * (1.0 - delta)));
}

double h_hat(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("h_hat: x outside [0,1]");
  return entropy(0.5 - 0.5 * std::sqrt(1.0 - x));
}

BigInt binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt c = 1;
  for (int i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c;
}

BigInt ball_volume(int n, int t) {
  if (t < 0 || n < 0) return 0;
  if (t > n) t = n;
  BigInt sum = 0;
  BigInt term = 1;  // C(n, 0)
  for (int i = 0; i <= t; ++i) {
    sum += term;
    term *= n - i;
    term /= i + 1;
  }
  return sum;
}

int floor_radius(double rho, int n) {
  if (rho <= 0.0) return 0;
  const int k = static_cast<int>(std::floor(rho * n + 1e-9));
  return std::min(k, n);
}

double log2_big(const BigInt& v) {
  if (v <= 0) throw DomainError("log2 of a nonpositive integer");
  const auto top = static_cast<long>(boost::multiprecision::msb(v));
  if (top < 900) return std::log2(static_cast<double>(v));
  const long shift = top - 64;
  const BigInt head = v >> shift;
  return std::log2(static_cast<double>(head)) + static_cast<double>(shift);
}

}  // namespace lrc
