#include <bit>
#include <cmath>
#include <limits>

#include "lrc/coset_lab.hpp"
#include "lrc/errors.hpp"

namespace lrc {

Word PartitionResult::part(int j) const {
  const auto it = parts.find(j);
  return it == parts.end() ? Word{0} : it->second;
}

PartitionResult partition_coords(const std::vector<Word>& rows, int n, int w) {
  if (n < 1 || n > kMaxLength) throw InvalidParameter("partition: n must lie in 1..24");
  if (w < 1 || w > n) throw InvalidParameter("partition: w must lie in 1..n");
  if (rows.empty()) throw InvalidParameter("partition: no rows given");
  const Word full = (Word{1} << n) - 1;
  Word covered_by_rows = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] & ~full) throw InvalidParameter("partition: row " + std::to_string(i) + " longer than n");
    if (std::popcount(rows[i]) != w) {
      throw InvalidParameter("partition: row " + std::to_string(i) + " has weight " +
                             std::to_string(std::popcount(rows[i])) + ", expected uniform weight " +
                             std::to_string(w));
    }
    covered_by_rows |= rows[i];
  }
  if (covered_by_rows != full) throw InvalidParameter("partition: row supports leave a coverage gap");

  PartitionResult out;
  out.n = n;
  out.w = w;
  Word claimed = 0;  // I_w | ... | I_j (including the partial I_j)
  for (int j = w; j >= 1; --j) {
    Word part = 0;
    int l = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Word residual = rows[i] & ~claimed;
      if (std::popcount(residual) == j) {
        part |= residual;
        claimed |= residual;
        out.tuples.push_back({j, ++l, residual, static_cast<int>(i)});
      }
    }
    out.parts[j] = part;
  }
  if (claimed != full) throw NumericError("partition: coordinates left unclaimed despite row coverage");

  for (int j = w; j >= 1; --j) {
    if (static_cast<double>(std::popcount(out.part(j))) * w >= n) {
      out.pigeonhole_k = j;
      break;
    }
  }
  return out;
}

LemmaReport partition_lemma(const PartitionResult& partition, double rho) {
  if (!(rho > 0.0 && rho <= 0.5)) throw DomainError("partition lemma: rho must lie in (0, 1/2]");
  LemmaReport out;
  const int w = partition.w;
  out.a = 2.0 / std::pow(rho, w);
  out.b = partition.n / (2.0 * w * std::pow(out.a, w));
  double above = 0.0;  // sum_{j>k} |I_j|
  for (int k = w; k >= 1; --k) {
    const double size = std::popcount(partition.part(k));
    if (size >= std::max(out.a * above, out.b)) {
      out.k = k;
      break;
    }
    above += size;
  }
  return out;
}

}  // namespace lrc
