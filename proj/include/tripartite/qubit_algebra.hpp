#pragma once

// Elementary qubit operators, validated density matrices, partial traces and
// seeded random-state samplers.
//
// Tensor-product convention: qubit 0 is the most significant bit of a basis
// index, so |a b c> has index 4a + 2b + c.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace tripartite {

using Complex = std::complex<double>;
using DenseOperator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;

/// Hermitian, unit-trace, positive-semidefinite matrix on one to three qubits.
/// Construction validates; an invalid matrix throws std::invalid_argument and
/// is never repaired.
class DensityMatrix {
 public:
  explicit DensityMatrix(DenseOperator entries);

  /// |psi><psi| for a normalised vector of dimension 2, 4 or 8.
  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return entries_.rows(); }
  const DenseOperator& entries() const { return entries_; }
  Complex operator()(Eigen::Index row, Eigen::Index col) const { return entries_(row, col); }

 private:
  DenseOperator entries_;
  int n_qubits_ = 0;
};

DenseOperator identity(int n_qubits);
DenseOperator pauli_x();
DenseOperator pauli_y();
DenseOperator pauli_z();

/// Operator that relabels tensor factors: output factor q carries input factor
/// source[q]. `source` must be a permutation of 0..n-1.
DenseOperator permutation_operator(std::span<const int> source);

/// V_ij on n qubits: exchanges tensor factors i and j (0-based, i < j).
DenseOperator swap_operator(int i, int j, int n_qubits);

/// The five 8x8 operators spanning the SU(2)-invariant operators of three
/// qubits. Index order for operator[]: +, 0, 1, 2, 3.
struct RBasis {
  DenseOperator r_plus;
  DenseOperator r_zero;
  DenseOperator r_one;
  DenseOperator r_two;
  DenseOperator r_three;

  const DenseOperator& operator[](std::size_t k) const;
  static constexpr std::size_t size() { return 5; }
};

RBasis build_r_basis();

/// Process-wide immutable copy of build_r_basis().
const RBasis& r_basis();

/// Reduced state on the strictly increasing site list `keep`.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

/// Reduced state of the pure state `psi` on `n_qubits` qubits, keeping one to
/// three sites. Works for registers far larger than DensityMatrix allows.
DensityMatrix reduce_pure(const StateVector& psi, int n_qubits, std::span<const int> keep);

// Random sampling. All samplers draw from the caller's engine, so a fixed seed
// gives bit-identical results within one build.

StateVector haar_state(Eigen::Index dim, std::mt19937_64& rng);
Eigen::Matrix2cd haar_unitary(std::mt19937_64& rng);

/// Ginibre-distributed random mixed state (full rank with probability one).
DensityMatrix random_density(int n_qubits, std::mt19937_64& rng);

enum class Partition { Split1_23, Split2_13, Split3_12, Mixture };

/// Pure product vector across `split`: a Haar qubit on the single site times
/// a Haar (generally entangled) two-qubit vector on the other pair.
StateVector random_product_vector(Partition split, std::mt19937_64& rng);

/// Convex mixture of `terms` random product vectors across `partition`
/// (Mixture draws the bipartition of every term at random). The result lies in
/// the biseparable set by construction.
DensityMatrix sample_biseparable(Partition partition, std::uint64_t seed, int terms = 4);

}  // namespace tripartite
