#include "tripartite/entanglement_measures.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <functional>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tripartite {

StateVector dicke_state(const DickeSpec& spec) {
  if (spec.n < 1 || spec.n > 24) throw std::invalid_argument("dicke_state: n must be in [1, 24]");
  if (spec.k < 0 || spec.k > spec.n) throw std::invalid_argument("dicke_state: k out of range");
  const auto dim = Eigen::Index{1} << spec.n;
  StateVector psi = StateVector::Zero(dim);
  Eigen::Index count = 0;
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    if (std::popcount(static_cast<std::uint64_t>(idx)) == spec.k) {
      psi(idx) = 1.0;
      ++count;
    }
  }
  return psi / std::sqrt(static_cast<double>(count));
}

double wootters_concurrence(const DensityMatrix& rho) {
  if (rho.n_qubits() != 2) throw std::invalid_argument("concurrence needs a two-qubit state");
  DenseOperator yy(4, 4);
  yy.setZero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const DenseOperator flipped = yy * rho.entries().conjugate() * yy;

  // Square roots of eig(rho rho~) are the singular values of sqrt(rho) sqrt(rho~),
  // obtained here from the Hermitian form sqrt(rho) rho~ sqrt(rho).
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(rho.entries());
  const Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const DenseOperator sqrt_rho = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
  DenseOperator m = sqrt_rho * flipped * sqrt_rho;
  m = 0.5 * (m + m.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<DenseOperator> ms(m, Eigen::EigenvaluesOnly);
  std::array<double, 4> l{};
  for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(0.0, ms.eigenvalues()(i)));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double dicke_concurrence(int n, double jz) {
  const double two_jz = 2.0 * jz;
  if (n < 2) throw std::invalid_argument("dicke_concurrence: n must be at least 2");
  if (std::abs(two_jz) > n || two_jz != std::round(two_jz) ||
      (static_cast<long>(std::round(two_jz)) - n) % 2 != 0)
    throw std::invalid_argument("dicke_concurrence: invalid J_z " + std::to_string(jz) +
                                " for N = " + std::to_string(n));
  const double nn = n;
  const double a = nn * nn - two_jz * two_jz;
  const double b = (nn - 2.0) * (nn - 2.0) - two_jz * two_jz;
  const double root = std::sqrt(std::max(0.0, a * b));
  return (a - root) / (2.0 * nn * (nn - 1.0));
}

DensityMatrix dicke_pair_rdm(int n, int k) {
  if (n < 2) throw std::invalid_argument("dicke_pair_rdm: n must be at least 2");
  if (k < 0 || k > n) throw std::invalid_argument("dicke_pair_rdm: k out of range");
  const double nn = n;
  const double two_jz = 2.0 * k - nn;
  const double denom = 4.0 * nn * (nn - 1.0);
  DenseOperator rho = DenseOperator::Zero(4, 4);
  rho(0, 0) = (nn - two_jz) * (nn - 2.0 - two_jz) / denom;
  rho(3, 3) = (nn + two_jz) * (nn - 2.0 + two_jz) / denom;
  const double mid = (nn * nn - two_jz * two_jz) / denom;
  rho(1, 1) = rho(2, 2) = rho(1, 2) = rho(2, 1) = mid;
  return DensityMatrix(std::move(rho));
}

}  // namespace tripartite
