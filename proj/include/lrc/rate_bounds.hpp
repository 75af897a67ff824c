#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lrc/scalar_kernels.hpp"

namespace lrc {

enum class BoundKind { gopalan, mrrw, cm_shortening, thm1, thm2, concave_oracle };

/// `first`: h(rho(delta)). `eq4`: the second linear-programming bound
/// min_{0<a<=1-2delta} 1 + h_hat(a^2) - h_hat(a^2 + 2 delta a + 2 delta).
/// `best`: min of the two. `eq4_printed`: the same expression with 4 delta in place
/// of 2 delta, kept for comparison only; it is not a valid upper bound.
enum class MrrwForm { first, eq4, best, eq4_printed };

/// Where the disjoint-repair-group bound evaluates its free parameter x >= 1.
/// `paper`: root of the stationarity polynomial without halving the middle term.
/// `stationary`: true minimizer over x >= 1 (halved middle term for odd r).
enum class MuConvention { paper, stationary };

struct BoundOptions {
  int grid_points = 2048;
  double x_tolerance = 1e-9;
  MrrwForm mrrw_form = MrrwForm::best;  // form used by kind=mrrw and as the cm_shortening inner bound
  MuConvention mu_convention = MuConvention::stationary;
};

struct BoundQuery {
  RelativeDistance delta;
  Locality r;
  BoundKind kind;
  BoundOptions options{};
};

struct RateBoundResult {
  double value = 0.0;
  std::optional<double> witness_x;
  std::optional<double> witness_mu;
  std::optional<std::vector<double>> witness_alpha;
  std::optional<double> kkt_residual;
  std::string convention_note;
};

std::string to_string(BoundKind kind);
std::string to_string(MrrwForm form);
std::string to_string(MuConvention convention);
std::optional<BoundKind> parse_bound_kind(const std::string& s);
std::optional<MrrwForm> parse_mrrw_form(const std::string& s);
std::optional<MuConvention> parse_mu_convention(const std::string& s);

// ---------------------------------------------------------------------------
// Finite-length dimension bounds

/// k <= m - floor(m/(r+1)), m = n - d + 1.
int gopalan_dimension(int n, int d, Locality r);

/// Upper bound on the dimension k_opt(n, d) of an unrestricted binary linear code.
class KoptOracle {
 public:
  enum class Kind { singleton, hamming, plotkin, custom_table };

  static KoptOracle singleton();
  static KoptOracle hamming();
  static KoptOracle plotkin();
  /// Table keyed by (n, d). Lookups outside the table throw InvalidParameter.
  static KoptOracle from_table(std::map<std::pair<int, int>, int> table);

  Kind kind() const noexcept { return kind_; }
  int operator()(int n, int d) const;

 private:
  KoptOracle(Kind kind, std::function<int(int, int)> eval) : kind_(kind), eval_(std::move(eval)) {}
  Kind kind_;
  std::function<int(int, int)> eval_;
};

/// min over t >= 0 with n - t(r+1) >= d of t r + k_opt(n - t(r+1), d).
int cm_dimension(int n, int d, Locality r, const KoptOracle& oracle);

// ---------------------------------------------------------------------------
// Asymptotic rate bounds

/// (1 - delta) r / (r+1).
double gopalan_rate(RelativeDistance delta, Locality r);

double mrrw_rate(RelativeDistance delta, MrrwForm form, int grid_points = 2048);

/// Rate bound for unrestricted binary codes, evaluated at relative distances in [0, 1/2).
using InnerBound = std::function<double(double)>;

/// min_{0 <= x <= r/(r+1)} x + (1 - x(1+1/r)) inner(delta / (1 - x(1+1/r))).
RateBoundResult cm_shortening_rate(RelativeDistance delta, Locality r, const InnerBound& inner,
                                   const BoundOptions& options = {});

/// (log2 e)/(8 w^2) (rho^w / 2)^(w+1).
double c_exponent(int w, double rho);

double r1_rate(RelativeDistance delta, Locality r);

RateBoundResult thm1_rate(RelativeDistance delta, Locality r, const BoundOptions& options = {});

/// beta_i(x) = C(r+1,i)/x^i, with the i = t term halved when r is odd.
double beta(int i, double x, Locality r);

/// Evaluation point of the disjoint-repair-group bound (>= 1).
double mu(double rho, Locality r, MuConvention convention);

/// The quantity whose root defines mu (polynomial for `paper`, mean equation for
/// `stationary`), exposed for residual checks.
double mu_defining_function(double x, double rho, Locality r, MuConvention convention);

RateBoundResult thm2_rate(RelativeDistance delta, Locality r,
                          MuConvention convention = MuConvention::stationary);
RateBoundResult thm2_rate_at_rho(double rho, Locality r,
                                 MuConvention convention = MuConvention::stationary);

/// Direct numeric solution of the entropy-maximization program over the
/// per-group weight profile alpha_0..alpha_t (sum 1/(r+1), mean <= rho).
/// Independent of mu(): solved by feasible-start Newton on the primal.
RateBoundResult concave_oracle_rate(RelativeDistance delta, Locality r);
RateBoundResult concave_oracle_at_rho(double rho, Locality r);

/// Objective of the concave program at a given alpha (for tests and KKT checks).
double concave_objective(const std::vector<double>& alpha, Locality r);

RateBoundResult evaluate(const BoundQuery& query);

}  // namespace lrc
