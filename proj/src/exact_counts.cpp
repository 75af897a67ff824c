#include "lrc/exact_counts.hpp"

#include <algorithm>
#include <string>

#include "lrc/errors.hpp"

namespace lrc {

CountPolynomial::CountPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0);
  for (const auto& c : coeffs_) {
    if (c < 0) throw DomainError("CountPolynomial coefficients must be nonnegative");
  }
  while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt CountPolynomial::coefficient(int k) const {
  if (k < 0 || k > degree()) return 0;
  return coeffs_[k];
}

BigInt CountPolynomial::prefix_sum(int kmax) const {
  BigInt s = 0;
  const int top = std::min(kmax, degree());
  for (int k = 0; k <= top; ++k) s += coeffs_[k];
  return s;
}

CountPolynomial operator*(const CountPolynomial& a, const CountPolynomial& b) {
  std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return CountPolynomial(std::move(out));
}

CountPolynomial CountPolynomial::pow(int exponent) const {
  if (exponent < 0) throw InvalidParameter("CountPolynomial::pow: negative exponent");
  CountPolynomial result;
  CountPolynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

CountPolynomial repair_group_factor(Locality r, bool refined) {
  const int t = r.cap();
  std::vector<BigInt> c(t + 1);
  for (int i = 0; i <= t; ++i) c[i] = binomial(r.value() + 1, i);
  if (refined && r.value() % 2 == 1) {
    if (c[t] % 2 != 0) throw NumericError("middle binomial unexpectedly odd");
    c[t] /= 2;
  }
  return CountPolynomial(std::move(c));
}

namespace {

int group_count(int n, Locality r) {
  const int group = r.value() + 1;
  if (n < 0 || n % group != 0) {
    throw InvalidParameter("repair groups of size " + std::to_string(group) +
                           " do not divide n=" + std::to_string(n));
  }
  return n / group;
}

}  // namespace

CountPolynomial group_enumerator(int n, Locality r, bool refined) {
  return repair_group_factor(r, refined).pow(group_count(n, r));
}

BigInt gf_count(int n, Locality r, int kmax, bool refined) {
  const int groups = group_count(n, r);
  if (kmax < 0 || kmax > n) throw InvalidParameter("gf_count: kmax must lie in [0, n]");
  return repair_group_factor(r, refined).pow(groups).prefix_sum(kmax);
}

CoefficientRate coeff_rate(int n, Locality r, double rho) {
  if (n <= 0) throw InvalidParameter("coeff_rate: n must be positive");
  const CountPolynomial g = group_enumerator(n, r, true);
  const int kmax = floor_radius(rho, n);
  BigInt sum = 0;
  double best = 0.0;  // [x^0] = 1 contributes log 1 = 0
  for (int k = 0; k <= std::min(kmax, g.degree()); ++k) {
    const BigInt& c = g.coefficients()[k];
    sum += c;
    if (c > 0) best = std::max(best, log2_big(c));
  }
  return {log2_big(sum) / n, best / n};
}

}  // namespace lrc
