// Primal solver for the per-repair-group weight-profile program:
//   maximize  (1/(r+1)) [ H(p) + sum_i p_i log2 c_i ]
//   s.t.      sum_i p_i = 1,  sum_i i p_i <= (r+1) rho,  p >= 0
// with p = (r+1) alpha and c_i the (halved at i = t for odd r) group weights.
// Deliberately avoids the exponential-family closed form used by thm2_rate.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lrc/errors.hpp"
#include "lrc/rate_bounds.hpp"

namespace lrc {

namespace {

constexpr double kLn2 = 0.6931471805599453;

std::vector<double> log_weights(Locality r) {
  const int t = r.cap();
  std::vector<double> lc(t + 1);
  for (int i = 0; i <= t; ++i) lc[i] = log2_big(binomial(r.value() + 1, i));
  if (r.value() % 2 == 1) lc[t] -= 1.0;
  return lc;
}

double phi(const std::vector<double>& p, const std::vector<double>& lc) {
  double v = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) v += p[i] * (lc[i] - std::log2(p[i]));
  }
  return v;
}

std::vector<double> gradient(const std::vector<double>& p, const std::vector<double>& lc) {
  std::vector<double> g(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) g[i] = lc[i] - std::log2(p[i]) - 1.0 / kLn2;
  return g;
}

struct Multipliers {
  double sum = 0.0;   // for sum p = 1
  double mean = 0.0;  // for sum i p = m (zero when inactive)
  double residual = 0.0;
};

// Least-squares multipliers with g + nu_sum 1 + nu_mean i ~ 0 and the resulting residual.
Multipliers fit_multipliers(const std::vector<double>& g, bool mean_active) {
  const auto k = static_cast<double>(g.size());
  Multipliers m;
  if (!mean_active) {
    m.sum = -std::accumulate(g.begin(), g.end(), 0.0) / k;
  } else {
    double si = 0, sii = 0, sg = 0, sig = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      si += i;
      sii += static_cast<double>(i * i);
      sg += g[i];
      sig += i * g[i];
    }
    const double det = k * sii - si * si;
    if (det == 0.0) {
      m.sum = -sg / k;
    } else {
      m.sum = -(sii * sg - si * sig) / det;
      m.mean = -(k * sig - si * sg) / det;
    }
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    m.residual = std::max(m.residual, std::abs(g[i] + m.sum + m.mean * static_cast<double>(i)));
  }
  return m;
}

// Strictly positive point with sum 1 and mean exactly `target` (0 < target < t).
std::vector<double> feasible_start(int t, double target) {
  std::vector<double> p(t + 1, 1.0 / (t + 1));
  const double half = t / 2.0;
  if (target <= half) {
    const double theta = target / half;
    for (auto& v : p) v *= theta;
    p[0] += 1.0 - theta;
  } else {
    const double theta = (target - half) / half;
    for (auto& v : p) v *= 1.0 - theta;
    p[t] += theta;
  }
  return p;
}

}  // namespace

double concave_objective(const std::vector<double>& alpha, Locality r) {
  const auto lc = log_weights(r);
  if (alpha.size() != lc.size()) throw InvalidParameter("concave_objective: alpha must have t+1 entries");
  std::vector<double> p(alpha.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = (r.value() + 1) * alpha[i];
  return phi(p, lc) / (r.value() + 1);
}

RateBoundResult concave_oracle_at_rho(double rho, Locality r) {
  const int t = r.cap();
  const double group = r.value() + 1.0;
  const double target = group * rho;
  const auto lc = log_weights(r);
  RateBoundResult out;
  out.convention_note = "primal Newton solve of the weight-profile program";

  std::vector<double> p(t + 1, 0.0);
  double residual = 0.0;
  if (rho <= 0.0) {
    p[0] = 1.0;
  } else {
    // Unconstrained maximizer: p proportional to c.
    double z = 0.0;
    for (int i = 0; i <= t; ++i) z += std::exp2(lc[i]);
    double mean = 0.0;
    for (int i = 0; i <= t; ++i) {
      p[i] = std::exp2(lc[i]) / z;
      mean += i * p[i];
    }
    if (mean <= target) {
      residual = fit_multipliers(gradient(p, lc), false).residual;
    } else {
      p = feasible_start(t, target);
      bool converged = false;
      for (int iter = 0; iter < 200; ++iter) {
        const auto g = gradient(p, lc);
        std::vector<double> dinv(t + 1);  // (-H)^{-1} diagonal
        for (int i = 0; i <= t; ++i) dinv[i] = p[i] * kLn2;
        // Solve (A D A^T) nu = -A D g for the two equality constraints.
        double a00 = 0, a01 = 0, a11 = 0, b0 = 0, b1 = 0;
        for (int i = 0; i <= t; ++i) {
          a00 += dinv[i];
          a01 += i * dinv[i];
          a11 += static_cast<double>(i) * i * dinv[i];
          b0 -= dinv[i] * g[i];
          b1 -= i * dinv[i] * g[i];
        }
        const double det = a00 * a11 - a01 * a01;
        if (det <= 0.0) break;
        const double nu0 = (b0 * a11 - a01 * b1) / det;
        const double nu1 = (a00 * b1 - a01 * b0) / det;
        std::vector<double> step(t + 1);
        double decrement = 0.0;
        double slope = 0.0;
        for (int i = 0; i <= t; ++i) {
          step[i] = dinv[i] * (g[i] + nu0 + nu1 * i);
          decrement += step[i] * step[i] / dinv[i];
          slope += g[i] * step[i];
        }
        if (decrement < 1e-26) {
          converged = true;
          break;
        }
        double s = 1.0;
        for (int i = 0; i <= t; ++i) {
          while (p[i] + s * step[i] <= 0.0) s *= 0.5;
        }
        const double f0 = phi(p, lc);
        std::vector<double> trial(t + 1);
        for (int halvings = 0; halvings < 60; ++halvings) {
          for (int i = 0; i <= t; ++i) trial[i] = p[i] + s * step[i];
          if (phi(trial, lc) >= f0 + 0.25 * s * slope) break;
          s *= 0.5;
        }
        p = trial;
      }
      const auto fit = fit_multipliers(gradient(p, lc), true);
      residual = fit.residual;
      // nu_mean = -lambda, and lambda >= 0 is dual feasibility for the <= constraint.
      if (!converged && residual > 1e-9) {
        std::ostringstream msg;
        msg << "concave oracle did not converge: stationarity residual " << residual;
        throw NumericError(msg.str());
      }
      if (fit.mean > 1e-9) {
        std::ostringstream msg;
        msg << "concave oracle: negative multiplier on the mean constraint (" << -fit.mean << ")";
        throw NumericError(msg.str());
      }
    }
  }

  std::vector<double> alpha(t + 1);
  for (int i = 0; i <= t; ++i) alpha[i] = p[i] / group;
  out.value = std::clamp(phi(p, lc) / group, 0.0, 1.0);
  out.witness_alpha = std::move(alpha);
  out.kkt_residual = residual;
  return out;
}

RateBoundResult concave_oracle_rate(RelativeDistance delta, Locality r) {
  return concave_oracle_at_rho(rho_of_delta(delta.value()), r);
}

}  // namespace lrc
