#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lrc/rate_bounds.hpp"

namespace lrc {

/// Named rate-bound series usable as sweep columns:
/// gopalan, mrrw (best form), mrrw_first, cm_mrrw (shortening with the best MRRW form),
/// cm_mrrw_first, r1, thm1, thm2 (options.mu_convention), thm2_paper, thm2_stationary, concave.
const std::vector<std::string>& known_series();
bool is_known_series(const std::string& name);
double evaluate_series(const std::string& name, double delta, Locality r, const BoundOptions& options);

struct SweepSpec {
  int r = 2;
  double delta_min = 0.005;
  double delta_max = 0.5;
  double step = 0.005;
  std::vector<std::string> bounds{"gopalan", "mrrw", "cm_mrrw", "thm1", "thm2"};
  BoundOptions options{};
};

/// Throws InvalidParameter unless 0 <= delta_min < delta_max <= 1/2, step > 0, r >= 1
/// and every bound name is known.
void validate(const SweepSpec& spec);
std::vector<double> delta_grid(const SweepSpec& spec);

struct SweepTable {
  std::vector<std::string> columns;
  std::vector<double> deltas;
  std::vector<std::vector<double>> rows;  // rows[i][c] for deltas[i], columns[c]
};

/// Evaluates every (delta, series) cell; rows are computed on `workers` threads
/// (0 = hardware concurrency) and returned in delta order.
SweepTable run_sweep(const SweepSpec& spec, unsigned workers = 0);

struct Crossover {
  double lower = 0.0;  // last grid delta with diff < 0
  double upper = 0.0;  // next grid delta
  double delta = 0.0;  // linear interpolation of the zero
};

/// Smallest delta* such that diff > 0 on the grid from delta* onwards (exact zeros,
/// e.g. at delta = 1/2, are ignored): brackets the last negative-to-positive change.
std::optional<Crossover> find_crossover(const std::vector<double>& deltas, const std::vector<double>& diff);

std::string to_csv(const SweepTable& table);
std::string to_svg(const SweepTable& table, const std::string& title);

}  // namespace lrc
