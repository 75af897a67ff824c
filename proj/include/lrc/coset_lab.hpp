#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lrc/scalar_kernels.hpp"

namespace lrc {

/// Binary word of length <= 24; bit i holds coordinate i+1.
using Word = std::uint32_t;
inline constexpr int kMaxLength = 24;

Word parse_word(std::string_view bits);
std::string format_word(Word w, int n);
/// 1-based coordinates of the support, ascending.
std::vector<int> support(Word w);

/// A code as written in a code-description file: the parity rows generate the
/// dual C-perp; `repair_rows` (0-based) designate the disjoint repair-group rows.
struct CodeDescription {
  int n = 0;
  int r = 1;
  std::vector<Word> rows;
  std::vector<int> repair_rows;
};

/// Parses `key: value` lines with keys n, r, rows, repair_rows (each exactly once).
/// Blank lines and lines starting with '#' are ignored; trailing whitespace is ignored.
CodeDescription parse_code_description(std::string_view text);
CodeDescription load_code_file(const std::filesystem::path& path);
std::string to_text(const CodeDescription& code);

/// Validated, row-reduced code. Immutable once built by canonicalize().
class BinaryLinearCode {
 public:
  int length() const noexcept { return n_; }
  int locality() const noexcept { return r_; }
  /// dim C = n - rank(rows).
  int dimension() const noexcept { return n_ - static_cast<int>(dual_basis_.size()); }
  const std::vector<Word>& rows() const noexcept { return rows_; }
  const std::vector<int>& repair_rows() const noexcept { return repair_rows_; }
  std::vector<Word> repair_groups() const;
  bool has_repair_structure() const noexcept { return !repair_rows_.empty(); }
  /// Reduced row-echelon basis of C-perp.
  const std::vector<Word>& dual_basis() const noexcept { return dual_basis_; }
  /// Basis of C (null space of the rows).
  const std::vector<Word>& generator() const noexcept { return generator_; }
  /// Syndrome of v with respect to the generator of C; its kernel is C-perp,
  /// so syndromes index the cosets of C-perp.
  std::uint32_t syndrome(Word v) const;
  /// Syndrome of the unit vector at 0-based coordinate i.
  std::uint32_t unit_syndrome(int i) const { return columns_[i]; }

 private:
  friend BinaryLinearCode canonicalize(const CodeDescription& code);
  int n_ = 0;
  int r_ = 1;
  std::vector<Word> rows_;
  std::vector<int> repair_rows_;
  std::vector<Word> dual_basis_;
  std::vector<Word> generator_;
  std::vector<std::uint32_t> columns_;
};

/// Row-reduces and validates. Throws InvariantViolation naming the first failed
/// invariant: "row length", "locality", "repair index", "disjointness violated",
/// "repair-group size", "coverage gap".
BinaryLinearCode canonicalize(const CodeDescription& code);

/// Leader weight of every coset of C-perp, computed by breadth-first search from
/// the zero coset along the n unit-vector steps. Requires dim C <= 22.
class CosetLeaderTable {
 public:
  explicit CosetLeaderTable(const BinaryLinearCode& code);

  const BinaryLinearCode& code() const noexcept { return *code_; }
  std::size_t num_cosets() const noexcept { return weight_.size(); }
  int leader_weight(std::uint32_t syndrome) const { return weight_[syndrome]; }
  /// True when v has minimum weight within its coset (ties count).
  bool is_leader(Word v) const;

 private:
  const BinaryLinearCode* code_;
  std::vector<std::uint8_t> weight_;
};

inline constexpr int kMaxCosetDimension = 22;
inline constexpr int kMaxExhaustiveLength = 22;
inline constexpr int kMaxSpectrumDimension = 10;
inline constexpr int kMaxCodewordDimension = 24;

struct CosetSummary {
  std::vector<BigInt> leader_weight_histogram;  // index = leader weight
  BigInt num_cosets;
  std::optional<int> min_distance_of_c;  // empty when C = {0}
  std::optional<bool> spectrum_match;    // set when dim C <= 10
  /// Number of minimum-weight vectors (all leaders) per weight; empty when n > 22.
  std::vector<std::uint64_t> leader_vectors_by_weight;
  int n = 0;

  /// sum_w N_w rho^w (1-rho)^(n-w). Requires leader_vectors_by_weight.
  double exact_leader_prob(double rho) const;
};

CosetSummary coset_leader_weights(const BinaryLinearCode& code);

/// Number of cosets of C-perp whose leader has weight <= floor(rho n).
BigInt count_clo(const BinaryLinearCode& code, double rho);
BigInt count_clo(const CosetSummary& summary, double rho);

struct SInclusionReport {
  int radius = 0;
  int cap = 0;  // t
  BigInt clo;
  BigInt gf_bound;
  std::vector<Word> violating_leaders;
  bool count_ok = false;
  bool membership_ok = false;
  bool pass() const { return count_ok && membership_ok; }
};

/// Checks that every minimum-weight vector of weight <= rho n meets each repair
/// group in at most t coordinates, and that count_clo <= gf_count(n, r, floor(rho n), refined).
SInclusionReport verify_S_inclusion(const BinaryLinearCode& code, double rho);

struct SpectrumReport {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> expected;     // n - 2 wt(c), ascending
  double max_deviation = 0.0;
  bool match = false;
};

/// Dense eigensolve of the coset-leader multigraph (one edge per coordinate,
/// loops and multi-edges kept) against the codeword weights of C. dim C <= 10.
SpectrumReport spectrum_check(const BinaryLinearCode& code, double tolerance = 1e-6);

std::vector<Word> codewords(const BinaryLinearCode& code);

/// Minimum nonzero weight of C; empty when C = {0}. dim C <= 24.
std::optional<int> min_distance(const BinaryLinearCode& code);

double exact_leader_prob(const BinaryLinearCode& code, double rho);

struct LeaderProbEstimate {
  double estimate = 0.0;
  double sigma = 0.0;  // binomial standard error at the estimate
  double lower = 0.0;  // estimate - 3 sigma, clipped to [0,1]
  double upper = 0.0;
  std::uint64_t samples = 0;
};

/// Monte Carlo estimate with iid Bernoulli(rho) coordinates. Bit-identical for a
/// fixed seed on every platform (mt19937_64 with explicit 53-bit uniforms).
LeaderProbEstimate estimate_leader_prob(const BinaryLinearCode& code, double rho,
                                        std::uint64_t samples, std::uint64_t seed);
LeaderProbEstimate estimate_leader_prob(const CosetLeaderTable& table, double rho,
                                        std::uint64_t samples, std::uint64_t seed);

struct PartitionTuple {
  int j = 0;
  int l = 0;           // 1-based index within I_j
  Word coords = 0;
  int source_row = 0;  // 0-based
};

struct PartitionResult {
  int n = 0;
  int w = 0;
  std::map<int, Word> parts;  // j -> I_j, for j = 1..w
  std::vector<PartitionTuple> tuples;
  /// A k with |I_k| >= n/w (exists whenever the rows cover [n]).
  std::optional<int> pigeonhole_k;

  Word part(int j) const;
};

/// Greedy partition of the coordinates: for j = w down to 1, scan rows in order and
/// claim every residual support (outside I_w..I_{j+1} and the partial I_j) of size
/// exactly j. Throws InvalidParameter for non-uniform row weights or a coverage gap.
PartitionResult partition_coords(const std::vector<Word>& rows, int n, int w);

struct LemmaReport {
  double a = 0.0;  // 2 / rho^w
  double b = 0.0;  // n / (2 w A^w)
  std::optional<int> k;
};

/// Searches for k with |I_k| >= max(A sum_{j>k} |I_j|, B). Informational only.
LemmaReport partition_lemma(const PartitionResult& partition, double rho);

}  // namespace lrc
