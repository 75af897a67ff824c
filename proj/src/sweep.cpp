#include "lrc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "lrc/errors.hpp"

namespace lrc {

const std::vector<std::string>& known_series() {
  static const std::vector<std::string> names{"gopalan", "mrrw",       "mrrw_first",      "cm_mrrw",
                                              "cm_mrrw_first", "r1",  "thm1",            "thm2",
                                              "thm2_paper",    "thm2_stationary", "concave"};
  return names;
}

bool is_known_series(const std::string& name) {
  const auto& names = known_series();
  return std::find(names.begin(), names.end(), name) != names.end();
}

double evaluate_series(const std::string& name, double delta, Locality r, const BoundOptions& options) {
  const RelativeDistance d(delta);
  auto shortening = [&](MrrwForm form) {
    const int grid = options.grid_points;
    InnerBound inner = [form, grid](double x) { return mrrw_rate(RelativeDistance(x), form, grid); };
    return cm_shortening_rate(d, r, inner, options).value;
  };
  if (name == "gopalan") return gopalan_rate(d, r);
  if (name == "mrrw") return mrrw_rate(d, MrrwForm::best, options.grid_points);
  if (name == "mrrw_first") return mrrw_rate(d, MrrwForm::first);
  if (name == "cm_mrrw") return shortening(MrrwForm::best);
  if (name == "cm_mrrw_first") return shortening(MrrwForm::first);
  if (name == "r1") return r1_rate(d, r);
  if (name == "thm1") return thm1_rate(d, r, options).value;
  if (name == "thm2") return thm2_rate(d, r, options.mu_convention).value;
  if (name == "thm2_paper") return thm2_rate(d, r, MuConvention::paper).value;
  if (name == "thm2_stationary") return thm2_rate(d, r, MuConvention::stationary).value;
  if (name == "concave") return concave_oracle_rate(d, r).value;
  throw InvalidParameter("unknown bound series '" + name + "'");
}

void validate(const SweepSpec& spec) {
  if (spec.r < 1) throw InvalidParameter("sweep: r must be >= 1");
  if (!(spec.delta_min >= 0.0 && spec.delta_min < spec.delta_max && spec.delta_max <= 0.5)) {
    throw InvalidParameter("sweep: need 0 <= delta_min < delta_max <= 0.5");
  }
  if (!(spec.step > 0.0)) throw InvalidParameter("sweep: step must be positive");
  if (spec.bounds.empty()) throw InvalidParameter("sweep: no bounds requested");
  for (const auto& b : spec.bounds) {
    if (!is_known_series(b)) throw InvalidParameter("sweep: unknown bound '" + b + "'");
  }
}

std::vector<double> delta_grid(const SweepSpec& spec) {
  validate(spec);
  std::vector<double> grid;
  for (long k = 0;; ++k) {
    // Snap to 1e-12 so that e.g. 0.005 * 76 prints and compares as 0.38.
    double d = std::round((spec.delta_min + k * spec.step) * 1e12) / 1e12;
    if (d > spec.delta_max + 1e-12) break;
    grid.push_back(std::min(d, spec.delta_max));
  }
  return grid;
}

SweepTable run_sweep(const SweepSpec& spec, unsigned workers) {
  SweepTable table;
  table.deltas = delta_grid(spec);
  table.columns = spec.bounds;
  table.rows.assign(table.deltas.size(), std::vector<double>(spec.bounds.size(), 0.0));
  const Locality r(spec.r);

  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(table.deltas.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < table.deltas.size(); i = next++) {
      for (std::size_t c = 0; c < spec.bounds.size(); ++c) {
        table.rows[i][c] = evaluate_series(spec.bounds[c], table.deltas[i], r, spec.options);
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return table;
}

std::optional<Crossover> find_crossover(const std::vector<double>& deltas, const std::vector<double>& diff) {
  std::optional<std::size_t> last_negative;
  for (std::size_t i = 0; i < diff.size(); ++i) {
    if (diff[i] < 0.0) last_negative = i;
  }
  if (!last_negative) return std::nullopt;
  const std::size_t i = *last_negative;
  for (std::size_t j = i + 1; j < diff.size(); ++j) {
    if (diff[j] > 0.0) {
      Crossover c{deltas[i], deltas[j], deltas[j]};
      if (j == i + 1) c.delta = deltas[i] + (deltas[j] - deltas[i]) * (-diff[i]) / (diff[j] - diff[i]);
      return c;
    }
  }
  return std::nullopt;
}

namespace {

std::string fixed9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v == 0.0 ? 0.0 : v);  // no "-0.000000000"
  return buf;
}

}  // namespace

std::string to_csv(const SweepTable& table) {
  std::ostringstream out;
  out << "delta";
  for (const auto& c : table.columns) out << ',' << c;
  out << '\n';
  for (std::size_t i = 0; i < table.deltas.size(); ++i) {
    out << fixed9(table.deltas[i]);
    for (double v : table.rows[i]) out << ',' << fixed9(v);
    out << '\n';
  }
  return out.str();
}

std::string to_svg(const SweepTable& table, const std::string& title) {
  constexpr double kWidth = 720, kHeight = 480, kLeft = 60, kRight = 150, kTop = 40, kBottom = 50;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  const double x0 = table.deltas.empty() ? 0.0 : table.deltas.front();
  const double x1 = table.deltas.empty() ? 1.0 : std::max(table.deltas.back(), x0 + 1e-9);
  double ymax = 0.0;
  for (const auto& row : table.rows) {
    for (double v : row) ymax = std::max(ymax, v);
  }
  ymax = ymax > 0.0 ? std::ceil(ymax * 10.0) / 10.0 : 1.0;
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - y / ymax) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"14\">" << title << "</text>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << py(0) << "\" x2=\"" << kLeft + pw << "\" y2=\"" << py(0)
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << py(0)
      << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double xv = x0 + (x1 - x0) * k / 5.0;
    const double yv = ymax * k / 5.0;
    svg << "<line x1=\"" << px(xv) << "\" y1=\"" << py(0) << "\" x2=\"" << px(xv) << "\" y2=\"" << py(0) + 5
        << "\" stroke=\"black\"/><text x=\"" << px(xv) - 14 << "\" y=\"" << py(0) + 20 << "\">"
        << fixed9(xv).substr(0, 5) << "</text>\n";
    svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << kLeft << "\" y2=\"" << py(yv)
        << "\" stroke=\"black\"/><text x=\"" << kLeft - 40 << "\" y=\"" << py(yv) + 4 << "\">"
        << fixed9(yv).substr(0, 4) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10 << "\">delta</text>\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    const char* color = kColors[c % std::size(kColors)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < table.deltas.size(); ++i) {
      svg << (i ? " " : "") << px(table.deltas[i]) << ',' << py(table.rows[i][c]);
    }
    svg << "\"/>\n";
    const double ly = kTop + 18.0 * c;
    svg << "<line x1=\"" << kLeft + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw + 30 << "\" y2=\""
        << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/><text x=\"" << kLeft + pw + 36
        << "\" y=\"" << ly + 4 << "\">" << table.columns[c] << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace lrc
