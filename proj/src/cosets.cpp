#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <random>

#include "lrc/coset_lab.hpp"
#include "lrc/errors.hpp"
#include "lrc/exact_counts.hpp"

namespace lrc {

CosetLeaderTable::CosetLeaderTable(const BinaryLinearCode& code) : code_(&code) {
  const int k = code.dimension();
  if (k > kMaxCosetDimension) {
    throw SizeError("coset enumeration needs dim C <= " + std::to_string(kMaxCosetDimension) +
                    ", got " + std::to_string(k));
  }
  constexpr std::uint8_t kUnseen = 0xFF;
  weight_.assign(std::size_t{1} << k, kUnseen);
  std::vector<std::uint32_t> frontier{0};
  weight_[0] = 0;
  for (std::uint8_t depth = 1; !frontier.empty(); ++depth) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t s : frontier) {
      for (int i = 0; i < code.length(); ++i) {
        const std::uint32_t t = s ^ code.unit_syndrome(i);
        if (weight_[t] == kUnseen) {
          weight_[t] = depth;
          next.push_back(t);
        }
      }
    }
    frontier = std::move(next);
  }
}

bool CosetLeaderTable::is_leader(Word v) const {
  return std::popcount(v) == weight_[code_->syndrome(v)];
}

namespace {

template <typename F>
void for_each_word(int n, F&& visit) {
  // Gray-code walk so the syndrome is updated with one XOR per step.
  if (n > kMaxExhaustiveLength) {
    throw SizeError("exhaustive enumeration needs n <= " + std::to_string(kMaxExhaustiveLength));
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  Word v = 0;
  visit(v);
  for (std::uint64_t i = 1; i < total; ++i) {
    const int bit = std::countr_zero(i);
    v ^= Word{1} << bit;
    visit(v, bit);
  }
}

}  // namespace

double CosetSummary::exact_leader_prob(double rho) const {
  if (leader_vectors_by_weight.empty()) {
    throw SizeError("exact leader probability needs n <= " + std::to_string(kMaxExhaustiveLength));
  }
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("leader probability: rho outside [0,1]");
  double p = 0.0;
  for (std::size_t w = 0; w < leader_vectors_by_weight.size(); ++w) {
    if (leader_vectors_by_weight[w] == 0) continue;
    p += static_cast<double>(leader_vectors_by_weight[w]) * std::pow(rho, static_cast<double>(w)) *
         std::pow(1.0 - rho, static_cast<double>(n - static_cast<int>(w)));
  }
  return p;
}

CosetSummary coset_leader_weights(const BinaryLinearCode& code) {
  const CosetLeaderTable table(code);
  const int n = code.length();
  CosetSummary out;
  out.n = n;
  out.leader_weight_histogram.assign(n + 1, 0);
  std::vector<std::uint64_t> hist(n + 1, 0);
  for (std::size_t s = 0; s < table.num_cosets(); ++s) ++hist[table.leader_weight(static_cast<std::uint32_t>(s))];
  while (hist.size() > 1 && hist.back() == 0) hist.pop_back();
  out.leader_weight_histogram.assign(hist.begin(), hist.end());
  out.num_cosets = BigInt(1) << code.dimension();
  out.min_distance_of_c = min_distance(code);

  if (n <= kMaxExhaustiveLength) {
    out.leader_vectors_by_weight.assign(n + 1, 0);
    std::uint32_t syn = 0;
    for_each_word(n, [&](Word v, int flipped = -1) {
      if (flipped >= 0) syn ^= code.unit_syndrome(flipped);
      const int wt = std::popcount(v);
      if (wt == table.leader_weight(syn)) ++out.leader_vectors_by_weight[wt];
    });
  }
  if (code.dimension() <= kMaxSpectrumDimension) out.spectrum_match = spectrum_check(code).match;
  return out;
}

BigInt count_clo(const CosetSummary& summary, double rho) {
  const int radius = floor_radius(rho, summary.n);
  BigInt total = 0;
  for (int w = 0; w <= radius && w < static_cast<int>(summary.leader_weight_histogram.size()); ++w) {
    total += summary.leader_weight_histogram[w];
  }
  return total;
}

BigInt count_clo(const BinaryLinearCode& code, double rho) {
  const CosetLeaderTable table(code);
  const int radius = floor_radius(rho, code.length());
  BigInt total = 0;
  for (std::size_t s = 0; s < table.num_cosets(); ++s) {
    if (table.leader_weight(static_cast<std::uint32_t>(s)) <= radius) ++total;
  }
  return total;
}

SInclusionReport verify_S_inclusion(const BinaryLinearCode& code, double rho) {
  if (!code.has_repair_structure()) {
    throw InvariantViolation("repair structure", "S-inclusion needs designated repair rows");
  }
  const int n = code.length();
  const Locality r(code.locality());
  if (n % (r.value() + 1) != 0) {
    throw InvalidParameter("S-inclusion needs (r+1) | n; n=" + std::to_string(n) +
                           " r=" + std::to_string(r.value()));
  }
  const CosetLeaderTable table(code);
  const auto groups = code.repair_groups();
  SInclusionReport report;
  report.radius = floor_radius(rho, n);
  report.cap = r.cap();

  std::uint32_t syn = 0;
  for_each_word(n, [&](Word v, int flipped = -1) {
    if (flipped >= 0) syn ^= code.unit_syndrome(flipped);
    const int wt = std::popcount(v);
    if (wt > report.radius || wt != table.leader_weight(syn)) return;
    for (Word g : groups) {
      if (std::popcount(v & g) > report.cap) {
        report.violating_leaders.push_back(v);
        break;
      }
    }
  });
  for (std::size_t s = 0; s < table.num_cosets(); ++s) {
    if (table.leader_weight(static_cast<std::uint32_t>(s)) <= report.radius) ++report.clo;
  }
  report.gf_bound = gf_count(n, r, report.radius, true);
  report.membership_ok = report.violating_leaders.empty();
  report.count_ok = report.clo <= report.gf_bound;
  return report;
}

std::vector<Word> codewords(const BinaryLinearCode& code) {
  const auto& gen = code.generator();
  if (static_cast<int>(gen.size()) > kMaxCodewordDimension) {
    throw SizeError("codeword enumeration needs dim C <= " + std::to_string(kMaxCodewordDimension));
  }
  const std::uint64_t total = std::uint64_t{1} << gen.size();
  std::vector<Word> out;
  out.reserve(total);
  Word c = 0;
  out.push_back(c);
  for (std::uint64_t i = 1; i < total; ++i) {
    c ^= gen[std::countr_zero(i)];
    out.push_back(c);
  }
  return out;
}

std::optional<int> min_distance(const BinaryLinearCode& code) {
  const auto& gen = code.generator();
  if (static_cast<int>(gen.size()) > kMaxCodewordDimension) {
    throw SizeError("min_distance needs dim C <= " + std::to_string(kMaxCodewordDimension));
  }
  if (gen.empty()) return std::nullopt;
  const std::uint64_t total = std::uint64_t{1} << gen.size();
  int best = code.length();
  Word c = 0;
  for (std::uint64_t i = 1; i < total; ++i) {
    c ^= gen[std::countr_zero(i)];
    best = std::min(best, std::popcount(c));
  }
  return best;
}

double exact_leader_prob(const BinaryLinearCode& code, double rho) {
  if (code.length() > kMaxExhaustiveLength) {
    throw SizeError("exact leader probability needs n <= " + std::to_string(kMaxExhaustiveLength));
  }
  return coset_leader_weights(code).exact_leader_prob(rho);
}

LeaderProbEstimate estimate_leader_prob(const CosetLeaderTable& table, double rho,
                                        std::uint64_t samples, std::uint64_t seed) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("leader probability: rho outside [0,1]");
  if (samples == 0) throw InvalidParameter("Monte Carlo needs at least one sample");
  const int n = table.code().length();
  std::mt19937_64 rng(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    Word v = 0;
    for (int i = 0; i < n; ++i) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < rho) v |= Word{1} << i;
    }
    if (table.is_leader(v)) ++hits;
  }
  LeaderProbEstimate out;
  out.samples = samples;
  out.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  out.sigma = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(samples));
  out.lower = std::max(0.0, out.estimate - 3.0 * out.sigma);
  out.upper = std::min(1.0, out.estimate + 3.0 * out.sigma);
  return out;
}

LeaderProbEstimate estimate_leader_prob(const BinaryLinearCode& code, double rho,
                                        std::uint64_t samples, std::uint64_t seed) {
  return estimate_leader_prob(CosetLeaderTable(code), rho, samples, seed);
}

}  // namespace lrc
