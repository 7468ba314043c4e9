#include "tripartite/qubit_algebra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tripartite {

namespace {

int qubits_for_dim(Eigen::Index dim) {
  switch (dim) {
    case 2: return 1;
    case 4: return 2;
    case 8: return 3;
    default: return 0;
  }
}

void check_sites(std::span<const int> keep, int n_qubits) {
  if (keep.empty()) throw std::invalid_argument("partial trace: empty site list");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= n_qubits)
      throw std::out_of_range("partial trace: site " + std::to_string(keep[i]) + " out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw std::invalid_argument("partial trace: sites must be strictly increasing");
  }
}

// Bit mask (in basis-index convention) of the given sites.
std::uint64_t site_mask(std::span<const int> sites, int n_qubits) {
  std::uint64_t mask = 0;
  for (int s : sites) mask |= std::uint64_t{1} << (n_qubits - 1 - s);
  return mask;
}

// Places the bits of `local` (|sites| bits, site order) at the sites' positions.
std::uint64_t scatter(std::uint64_t local, std::span<const int> sites, int n_qubits) {
  std::uint64_t out = 0;
  const int k = static_cast<int>(sites.size());
  for (int q = 0; q < k; ++q) {
    if ((local >> (k - 1 - q)) & 1u) out |= std::uint64_t{1} << (n_qubits - 1 - sites[q]);
  }
  return out;
}

std::vector<int> complement(std::span<const int> keep, int n_qubits) {
  std::vector<int> rest;
  for (int s = 0; s < n_qubits; ++s) {
    if (std::find(keep.begin(), keep.end(), s) == keep.end()) rest.push_back(s);
  }
  return rest;
}

double standard_normal(std::mt19937_64& rng) {
  // Fresh distribution per draw: a shared one would carry its cached second
  // variate across engines and break seed reproducibility.
  std::normal_distribution<double> normal(0.0, 1.0);
  return normal(rng);
}

Complex complex_normal(std::mt19937_64& rng) {
  const double re = standard_normal(rng);
  const double im = standard_normal(rng);
  return {re, im};
}

}  // namespace

DensityMatrix::DensityMatrix(DenseOperator entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols())
    throw std::invalid_argument("density matrix must be square");
  n_qubits_ = qubits_for_dim(entries_.rows());
  if (n_qubits_ == 0)
    throw std::invalid_argument("density matrix dimension must be 2, 4 or 8, got " +
                                std::to_string(entries_.rows()));

  const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTolerance)
    throw std::invalid_argument("density matrix is not Hermitian (deviation " +
                                std::to_string(asym) + ")");

  const Complex tr = entries_.trace();
  if (std::abs(tr.real() - 1.0) > kTraceTolerance || std::abs(tr.imag()) > kTraceTolerance)
    throw std::invalid_argument("density matrix trace is " + std::to_string(tr.real()) + ", not 1");

  // Symmetrise exactly before the spectral check so round-off asymmetry below
  // the tolerance cannot leak into later Hermitian solvers.
  entries_ = 0.5 * (entries_ + entries_.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<DenseOperator> solver(entries_, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -kPsdTolerance)
    throw std::invalid_argument("density matrix is not positive semidefinite (min eigenvalue " +
                                std::to_string(min_eig) + ")");
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  const auto dim = Eigen::Index{1} << n_qubits;
  return DensityMatrix(identity(n_qubits) / static_cast<double>(dim));
}

DenseOperator identity(int n_qubits) {
  const auto dim = Eigen::Index{1} << n_qubits;
  return DenseOperator::Identity(dim, dim);
}

DenseOperator pauli_x() {
  DenseOperator m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

DenseOperator pauli_y() {
  DenseOperator m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

DenseOperator pauli_z() {
  DenseOperator m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

DenseOperator permutation_operator(std::span<const int> source) {
  const int n = static_cast<int>(source.size());
  if (n < 1 || n > 20) throw std::invalid_argument("permutation operator: bad qubit count");
  std::vector<bool> seen(n, false);
  for (int s : source) {
    if (s < 0 || s >= n || seen[s]) throw std::invalid_argument("permutation operator: not a permutation");
    seen[s] = true;
  }
  const auto dim = Eigen::Index{1} << n;
  DenseOperator op = DenseOperator::Zero(dim, dim);
  for (Eigen::Index in = 0; in < dim; ++in) {
    Eigen::Index out = 0;
    for (int q = 0; q < n; ++q) {
      const auto bit = (in >> (n - 1 - source[q])) & 1;
      out |= bit << (n - 1 - q);
    }
    op(out, in) = 1.0;
  }
  return op;
}

DenseOperator swap_operator(int i, int j, int n_qubits) {
  if (i == j) throw std::invalid_argument("swap operator: i and j must differ");
  if (i < 0 || j < 0 || i >= n_qubits || j >= n_qubits)
    throw std::out_of_range("swap operator: site index out of range");
  std::vector<int> source(n_qubits);
  for (int q = 0; q < n_qubits; ++q) source[q] = q;
  std::swap(source[i], source[j]);
  return permutation_operator(source);
}

const DenseOperator& RBasis::operator[](std::size_t k) const {
  switch (k) {
    case 0: return r_plus;
    case 1: return r_zero;
    case 2: return r_one;
    case 3: return r_two;
    case 4: return r_three;
    default: throw std::out_of_range("RBasis index");
  }
}

RBasis build_r_basis() {
  const DenseOperator one = identity(3);
  const DenseOperator v12 = swap_operator(0, 1, 3);
  const DenseOperator v23 = swap_operator(1, 2, 3);
  const DenseOperator v13 = swap_operator(0, 2, 3);
  const DenseOperator v123 = v12 * v23;
  const DenseOperator v321 = v23 * v12;
  const double sqrt3 = std::sqrt(3.0);
  const Complex i_unit(0.0, 1.0);

  RBasis basis;
  basis.r_plus = (one + v12 + v23 + v13 + v123 + v321) / 6.0;
  basis.r_zero = (2.0 * one - v123 - v321) / 3.0;
  basis.r_one = (2.0 * v23 - v13 - v12) / 3.0;
  basis.r_two = (v12 - v13) / sqrt3;
  basis.r_three = i_unit * (v123 - v321) / sqrt3;
  return basis;
}

const RBasis& r_basis() {
  static const RBasis basis = build_r_basis();
  return basis;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int n = rho.n_qubits();
  check_sites(keep, n);
  const std::vector<int> traced = complement(keep, n);
  const auto kept_dim = Eigen::Index{1} << keep.size();
  const auto traced_dim = Eigen::Index{1} << traced.size();

  DenseOperator out = DenseOperator::Zero(kept_dim, kept_dim);
  for (Eigen::Index a = 0; a < kept_dim; ++a) {
    const auto row_base = scatter(a, keep, n);
    for (Eigen::Index b = 0; b < kept_dim; ++b) {
      const auto col_base = scatter(b, keep, n);
      Complex sum = 0.0;
      for (Eigen::Index t = 0; t < traced_dim; ++t) {
        const auto rest = scatter(t, traced, n);
        sum += rho(row_base | rest, col_base | rest);
      }
      out(a, b) = sum;
    }
  }
  return DensityMatrix(std::move(out));
}

DensityMatrix reduce_pure(const StateVector& psi, int n_qubits, std::span<const int> keep) {
  if (n_qubits < 1 || n_qubits > 30 || psi.size() != (Eigen::Index{1} << n_qubits))
    throw std::invalid_argument("reduce_pure: vector size does not match qubit count");
  check_sites(keep, n_qubits);
  if (keep.size() > 3) throw std::invalid_argument("reduce_pure: at most three sites may be kept");

  const std::uint64_t keep_mask = site_mask(keep, n_qubits);
  const auto kept_dim = Eigen::Index{1} << keep.size();
  std::vector<std::uint64_t> offsets(kept_dim);
  for (Eigen::Index a = 0; a < kept_dim; ++a) offsets[a] = scatter(a, keep, n_qubits);

  DenseOperator out = DenseOperator::Zero(kept_dim, kept_dim);
  for (Eigen::Index idx = 0; idx < psi.size(); ++idx) {
    if (static_cast<std::uint64_t>(idx) & keep_mask) continue;
    for (Eigen::Index a = 0; a < kept_dim; ++a) {
      const Complex amp_a = psi(static_cast<Eigen::Index>(idx | offsets[a]));
      if (amp_a == 0.0) continue;
      for (Eigen::Index b = 0; b < kept_dim; ++b)
        out(a, b) += amp_a * std::conj(psi(static_cast<Eigen::Index>(idx | offsets[b])));
    }
  }
  return DensityMatrix(std::move(out));
}

StateVector haar_state(Eigen::Index dim, std::mt19937_64& rng) {
  StateVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = complex_normal(rng);
  return v / v.norm();
}

Eigen::Matrix2cd haar_unitary(std::mt19937_64& rng) {
  Eigen::Matrix2cd z;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) z(i, j) = complex_normal(rng);
  Eigen::HouseholderQR<Eigen::Matrix2cd> qr(z);
  Eigen::Matrix2cd q = qr.householderQ();
  const Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase freedom of QR so that q is Haar distributed.
  for (int j = 0; j < 2; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

DensityMatrix random_density(int n_qubits, std::mt19937_64& rng) {
  const auto dim = Eigen::Index{1} << n_qubits;
  DenseOperator g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = complex_normal(rng);
  DenseOperator rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

StateVector random_product_vector(Partition split, std::mt19937_64& rng) {
  const StateVector single = haar_state(2, rng);
  const StateVector pair = haar_state(4, rng);
  // Single qubit first, then the pair, then move the single qubit into place.
  StateVector v(8);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 4; ++b) v(4 * a + b) = single(a) * pair(b);

  static const int to_site1[] = {1, 0, 2};
  static const int to_site2[] = {1, 2, 0};
  switch (split) {
    case Partition::Split1_23: return v;
    case Partition::Split2_13: return permutation_operator(to_site1) * v;
    case Partition::Split3_12: return permutation_operator(to_site2) * v;
    case Partition::Mixture: break;
  }
  throw std::invalid_argument("random_product_vector needs a single bipartition");
}

DensityMatrix sample_biseparable(Partition partition, std::uint64_t seed, int terms) {
  if (terms < 1) throw std::invalid_argument("sample_biseparable: terms must be positive");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> weight_dist(1.0);
  std::uniform_int_distribution<int> split_dist(0, 2);

  DenseOperator rho = DenseOperator::Zero(8, 8);
  double total = 0.0;
  for (int t = 0; t < terms; ++t) {
    Partition split = partition;
    if (partition == Partition::Mixture) split = static_cast<Partition>(split_dist(rng));
    const StateVector v = random_product_vector(split, rng);
    const double w = terms == 1 ? 1.0 : weight_dist(rng);
    rho += w * (v * v.adjoint());
    total += w;
  }
  rho /= total;
  return DensityMatrix(std::move(rho));
}

}  // namespace tripartite
