#include "lrc/rate_bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "lrc/errors.hpp"
#include "lrc/optimize.hpp"

namespace lrc {

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::gopalan: return "gopalan";
    case BoundKind::mrrw: return "mrrw";
    case BoundKind::cm_shortening: return "cm_shortening";
    case BoundKind::thm1: return "thm1";
    case BoundKind::thm2: return "thm2";
    case BoundKind::concave_oracle: return "concave_oracle";
  }
  return "?";
}

std::string to_string(MrrwForm form) {
  switch (form) {
    case MrrwForm::first: return "first";
    case MrrwForm::eq4: return "eq4";
    case MrrwForm::best: return "best";
    case MrrwForm::eq4_printed: return "eq4_printed";
  }
  return "?";
}

std::string to_string(MuConvention convention) {
  return convention == MuConvention::paper ? "paper" : "stationary";
}

std::optional<BoundKind> parse_bound_kind(const std::string& s) {
  for (auto k : {BoundKind::gopalan, BoundKind::mrrw, BoundKind::cm_shortening, BoundKind::thm1,
                 BoundKind::thm2, BoundKind::concave_oracle}) {
    if (to_string(k) == s) return k;
  }
  if (s == "cm" || s == "cm_mrrw") return BoundKind::cm_shortening;
  if (s == "concave") return BoundKind::concave_oracle;
  return std::nullopt;
}

std::optional<MrrwForm> parse_mrrw_form(const std::string& s) {
  for (auto f : {MrrwForm::first, MrrwForm::eq4, MrrwForm::best, MrrwForm::eq4_printed}) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

std::optional<MuConvention> parse_mu_convention(const std::string& s) {
  if (s == "paper") return MuConvention::paper;
  if (s == "stationary") return MuConvention::stationary;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

void check_distance(int n, int d) {
  if (n < 1 || d < 1 || d > n) {
    throw InvalidParameter("need 1 <= d <= n, got n=" + std::to_string(n) + " d=" + std::to_string(d));
  }
}

int floor_log2(unsigned long long v) { return static_cast<int>(std::bit_width(v)) - 1; }

int ceil_log2(const BigInt& v) {
  if (v <= 1) return 0;
  return static_cast<int>(boost::multiprecision::msb(BigInt(v - 1))) + 1;
}

int hamming_k(int n, int d) {
  const int radius = (d - 1) / 2;
  return std::max(0, n - ceil_log2(ball_volume(n, radius)));
}

// Plotkin: for even d, A(n,d) <= 2 floor(d/(2d-n)) when 2d > n and
// A(n,d) <= 2^(n-2d) A(2d,d) = 2^(n-2d) 4d otherwise; odd d via A(n,d) = A(n+1,d+1).
int plotkin_k(int n, int d) {
  int m = n;
  int e = d;
  if (e % 2 == 1) {
    ++m;
    ++e;
  }
  int k;
  if (2 * e > m) {
    const auto a = 2ULL * static_cast<unsigned long long>(e / (2 * e - m));
    k = floor_log2(a);
  } else {
    k = (m - 2 * e) + floor_log2(4ULL * static_cast<unsigned long long>(e));
  }
  return std::clamp(k, 0, n);
}

}  // namespace

int gopalan_dimension(int n, int d, Locality r) {
  check_distance(n, d);
  const int m = n - d + 1;
  return m - m / (r.value() + 1);
}

KoptOracle KoptOracle::singleton() {
  return {Kind::singleton, [](int n, int d) { return n - d + 1; }};
}

KoptOracle KoptOracle::hamming() { return {Kind::hamming, hamming_k}; }

KoptOracle KoptOracle::plotkin() { return {Kind::plotkin, plotkin_k}; }

KoptOracle KoptOracle::from_table(std::map<std::pair<int, int>, int> table) {
  for (const auto& [key, k] : table) {
    if (k < 0 || k > key.first) {
      throw InvalidParameter("k_opt table entry (" + std::to_string(key.first) + "," +
                             std::to_string(key.second) + ") must lie in [0,n]");
    }
  }
  return {Kind::custom_table, [table = std::move(table)](int n, int d) {
            const auto it = table.find({n, d});
            if (it == table.end()) {
              throw InvalidParameter("k_opt table has no entry for n=" + std::to_string(n) +
                                     " d=" + std::to_string(d));
            }
            return it->second;
          }};
}

int KoptOracle::operator()(int n, int d) const {
  check_distance(n, d);
  return eval_(n, d);
}

int cm_dimension(int n, int d, Locality r, const KoptOracle& oracle) {
  check_distance(n, d);
  const int group = r.value() + 1;
  int best = oracle(n, d);
  for (int t = 1; n - t * group >= d; ++t) {
    best = std::min(best, t * r.value() + oracle(n - t * group, d));
  }
  return best;
}

// ---------------------------------------------------------------------------

double gopalan_rate(RelativeDistance delta, Locality r) {
  const double v = (1.0 - delta.value()) * r.value() / (r.value() + 1.0);
  return std::clamp(v, 0.0, 1.0);
}

namespace {

double lp_second_bound(double delta, double scale, int grid_points) {
  // 1 + h_hat(a^2) - h_hat(a^2 + s a + s), s = scale * delta, a in [0, 1 - s].
  const double s = scale * delta;
  const double hi = 1.0 - s;
  auto f = [s](double a) {
    const double inner = std::min(1.0, a * a + s * a + s);
    return 1.0 + h_hat(std::min(1.0, a * a)) - h_hat(inner);
  };
  return std::clamp(minimize_on_interval(f, 0.0, hi, grid_points, 1e-12).value, 0.0, 1.0);
}

}  // namespace

double mrrw_rate(RelativeDistance delta, MrrwForm form, int grid_points) {
  const double d = delta.value();
  if (d >= 0.5) return 0.0;
  const double first = entropy(rho_of_delta(d));
  switch (form) {
    case MrrwForm::first: return first;
    case MrrwForm::eq4: return lp_second_bound(d, 2.0, grid_points);
    case MrrwForm::best: return std::min(first, lp_second_bound(d, 2.0, grid_points));
    case MrrwForm::eq4_printed: return d < 0.25 ? lp_second_bound(d, 4.0, grid_points) : first;
  }
  return first;
}

RateBoundResult cm_shortening_rate(RelativeDistance delta, Locality r, const InnerBound& inner,
                                   const BoundOptions& options) {
  const double d = delta.value();
  const double rr = r.value();
  const double x_max = rr / (rr + 1.0);
  RateBoundResult out;
  if (d >= 0.5) {
    out.value = 0.0;
    out.witness_x = 0.0;
    return out;
  }
  auto objective = [&](double x) {
    const double remaining = 1.0 - x * (1.0 + 1.0 / rr);
    if (remaining <= 1e-15) return x;
    const double shortened = d / remaining;
    if (shortened >= 0.5) return x;
    return x + remaining * inner(shortened);
  };
  const Minimum m = minimize_on_interval(objective, 0.0, x_max, options.grid_points, options.x_tolerance);
  out.value = std::clamp(m.value, 0.0, 1.0);
  out.witness_x = m.x;
  return out;
}

double c_exponent(int w, double rho) {
  if (w < 2) throw InvalidParameter("c_exponent: w must be >= 2");
  if (!(rho >= 0.0 && rho <= 0.5)) throw DomainError("c_exponent: rho outside [0,1/2]");
  const double log2e = 1.0 / std::log(2.0);
  return log2e / (8.0 * w * w) * std::pow(std::pow(rho, w) / 2.0, w + 1);
}

double r1_rate(RelativeDistance delta, Locality r) {
  const double rho = rho_of_delta(delta.value());
  if (rho <= 0.0) return 0.0;
  return std::max(0.0, entropy(rho) - c_exponent(r.value() + 1, rho));
}

RateBoundResult thm1_rate(RelativeDistance delta, Locality r, const BoundOptions& options) {
  InnerBound inner = [r](double d) { return r1_rate(RelativeDistance(d), r); };
  return cm_shortening_rate(delta, r, inner, options);
}

// ---------------------------------------------------------------------------

namespace {

// c_i = C(r+1, i) for i < t and C(r+1, t) / 2^(r mod 2) for i = t.
std::vector<double> group_weights(Locality r, bool halve_middle) {
  const int t = r.cap();
  std::vector<double> c(t + 1);
  for (int i = 0; i <= t; ++i) c[i] = static_cast<double>(binomial(r.value() + 1, i));
  if (halve_middle && r.value() % 2 == 1) c[t] /= 2.0;
  return c;
}

// Mean of i under p_i proportional to c_i y^i.
double tilted_mean(const std::vector<double>& c, double y) {
  double num = 0.0;
  double den = 0.0;
  double yi = 1.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    num += static_cast<double>(i) * c[i] * yi;
    den += c[i] * yi;
    yi *= y;
  }
  return num / den;
}

}  // namespace

double beta(int i, double x, Locality r) {
  const int t = r.cap();
  if (i < 0 || i > t) throw std::out_of_range("beta: index outside [0, t]");
  if (!(x > 0.0)) throw DomainError("beta: x must be positive");
  double v = static_cast<double>(binomial(r.value() + 1, i)) / std::pow(x, i);
  if (i == t && r.value() % 2 == 1) v /= 2.0;
  return v;
}

double mu_defining_function(double x, double rho, Locality r, MuConvention convention) {
  const int t = r.cap();
  const double target = (r.value() + 1) * rho;
  if (convention == MuConvention::paper) {
    double v = 0.0;
    for (int i = 0; i <= t; ++i) {
      const double c = static_cast<double>(binomial(r.value() + 1, i));
      v += (target - i) * c * std::pow(x, t - i);
    }
    return v;
  }
  return tilted_mean(group_weights(r, true), 1.0 / x) - target;
}

double mu(double rho, Locality r, MuConvention convention) {
  if (!(rho > 0.0 && rho <= 0.5)) throw DomainError("mu: rho must lie in (0, 1/2]");
  const double target = (r.value() + 1) * rho;
  if (tilted_mean(group_weights(r, true), 1.0) <= target) return 1.0;

  auto f = [&](double x) { return mu_defining_function(x, rho, r, convention); };
  double lo = 1.0;
  double hi = 2.0;
  const double f_lo = f(lo);
  const double two64 = std::ldexp(1.0, 64);
  while (std::signbit(f(hi)) == std::signbit(f_lo)) {
    hi *= 2.0;
    if (hi > two64) {
      throw NumericError("mu: no sign change on [1, 2^64] for rho=" + std::to_string(rho) +
                         " r=" + std::to_string(r.value()));
    }
  }
  for (int iter = 0; iter < 500 && hi - lo > 1e-12 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (std::signbit(f(mid)) == std::signbit(f_lo)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

RateBoundResult thm2_rate_at_rho(double rho, Locality r, MuConvention convention) {
  RateBoundResult out;
  out.convention_note =
      convention == MuConvention::stationary
          ? "mu=stationary: exact minimizer over x>=1 (middle beta term halved for odd r)"
          : "mu=paper: root of the unhalved stationarity polynomial; valid but looser for odd r";
  if (rho <= 0.0) {
    out.value = 0.0;
    return out;
  }
  const double m = mu(rho, r, convention);
  const int t = r.cap();
  double sum = 0.0;
  for (int i = 0; i <= t; ++i) sum += beta(i, m, r);
  out.value = std::clamp(rho * std::log2(m) + std::log2(sum) / (r.value() + 1), 0.0, 1.0);
  out.witness_mu = m;
  return out;
}

RateBoundResult thm2_rate(RelativeDistance delta, Locality r, MuConvention convention) {
  if (delta.value() == 0.0) {
    RateBoundResult out = thm2_rate_at_rho(0.5, r, convention);
    out.value = r.value() / (r.value() + 1.0);
    return out;
  }
  return thm2_rate_at_rho(rho_of_delta(delta.value()), r, convention);
}

// ---------------------------------------------------------------------------

RateBoundResult evaluate(const BoundQuery& q) {
  const auto& opt = q.options;
  switch (q.kind) {
    case BoundKind::gopalan: {
      RateBoundResult out;
      out.value = gopalan_rate(q.delta, q.r);
      return out;
    }
    case BoundKind::mrrw: {
      RateBoundResult out;
      out.value = mrrw_rate(q.delta, opt.mrrw_form, opt.grid_points);
      out.convention_note = "mrrw form=" + to_string(opt.mrrw_form);
      return out;
    }
    case BoundKind::cm_shortening: {
      const MrrwForm form = opt.mrrw_form;
      const int grid = opt.grid_points;
      InnerBound inner = [form, grid](double d) { return mrrw_rate(RelativeDistance(d), form, grid); };
      RateBoundResult out = cm_shortening_rate(q.delta, q.r, inner, opt);
      out.convention_note = "inner bound: mrrw form=" + to_string(form);
      return out;
    }
    case BoundKind::thm1: return thm1_rate(q.delta, q.r, opt);
    case BoundKind::thm2: return thm2_rate(q.delta, q.r, opt.mu_convention);
    case BoundKind::concave_oracle: return concave_oracle_rate(q.delta, q.r);
  }
  throw InvalidParameter("unknown bound kind");
}

}  // namespace lrc
