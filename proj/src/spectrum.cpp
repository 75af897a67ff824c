#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>

#include "lrc/coset_lab.hpp"
#include "lrc/errors.hpp"

namespace lrc {

SpectrumReport spectrum_check(const BinaryLinearCode& code, double tolerance) {
  const int k = code.dimension();
  if (k > kMaxSpectrumDimension) {
    throw SizeError("spectrum check needs dim C <= " + std::to_string(kMaxSpectrumDimension));
  }
  const Eigen::Index vertices = Eigen::Index{1} << k;
  // Cayley multigraph of F2^n / C-perp on the unit vectors: coordinate i joins
  // coset s to s + syndrome(e_i). A zero syndrome is a loop (one unit of degree).
  Eigen::MatrixXd adjacency = Eigen::MatrixXd::Zero(vertices, vertices);
  for (Eigen::Index s = 0; s < vertices; ++s) {
    for (int i = 0; i < code.length(); ++i) {
      adjacency(s, static_cast<Eigen::Index>(static_cast<std::uint32_t>(s) ^ code.unit_syndrome(i))) += 1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("eigensolver failed on the coset-leader graph");

  SpectrumReport out;
  out.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + vertices);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  for (Word c : codewords(code)) out.expected.push_back(code.length() - 2.0 * std::popcount(c));
  std::sort(out.expected.begin(), out.expected.end());
  for (std::size_t i = 0; i < out.expected.size(); ++i) {
    out.max_deviation = std::max(out.max_deviation, std::abs(out.eigenvalues[i] - out.expected[i]));
  }
  out.match = out.max_deviation <= tolerance;
  return out;
}

}  // namespace lrc
