#pragma once

// Exact diagonalisation of the open spin-1/2 XXZ chain
//
//   H = sum_{i=0}^{N-2} [ J (sx_i sx_{i+1} + sy_i sy_{i+1}) + lambda sz_i sz_{i+1} ]
//
// restricted to a fixed-magnetisation sector. Site i is bit N-1-i of a basis
// word, so words read left to right as sites 0..N-1; a set bit is spin up.
// Ground states are real; amplitudes are stored as real vectors.

#include "tripartite/qubit_algebra.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tripartite {

struct XxzParams {
  int n_sites = 2;
  double lambda = 0.0;
  /// Flip-flop coupling J. The sign is a gauge choice on bipartite chains.
  double coupling = 1.0;
};

void validate(const XxzParams& params);

/// All N-bit words with `n_up` set bits, in increasing numeric order.
class SectorBasis {
 public:
  SectorBasis(int n_sites, int n_up);

  int n_sites() const { return n_sites_; }
  int n_up() const { return n_up_; }
  std::size_t size() const { return words_.size(); }
  std::uint32_t word(std::size_t i) const { return words_[i]; }
  const std::vector<std::uint32_t>& words() const { return words_; }

  bool contains(std::uint32_t word) const;

  /// Position of `word` in the enumeration (combinatorial-number-system rank).
  /// Precondition: contains(word).
  std::size_t index_of(std::uint32_t word) const;

 private:
  int n_sites_;
  int n_up_;
  std::vector<std::uint32_t> words_;
  // binomial_[n * (n_up + 1) + k] = C(n, k) for n <= n_sites, k <= n_up.
  std::vector<std::size_t> binomial_;
};

SectorBasis build_basis(int n_sites, int n_up);

/// out = H in, matrix-free. Each output entry is a pure gather, so disjoint
/// index ranges may be computed concurrently.
void apply_hamiltonian(const XxzParams& params, const SectorBasis& basis,
                       std::span<const double> in, std::span<double> out);
Eigen::VectorXd apply_hamiltonian(const XxzParams& params, const SectorBasis& basis,
                                  const Eigen::VectorXd& v);

Eigen::MatrixXd dense_hamiltonian(const XxzParams& params, const SectorBasis& basis);

struct SolverOptions {
  int max_iterations = 2000;  // cap on Hamiltonian applications
  double tolerance = 1e-9;    // on the residual norm |H psi - E psi|
  std::uint64_t seed = 0x2545F4914F6CDD1DULL;
  std::size_t dense_threshold = 2000;  // sectors up to this size use the dense solver
  std::size_t max_krylov = 120;
  std::size_t memory_budget_bytes = std::size_t{512} << 20;
  double degeneracy_gap = 1e-6;
};

struct SectorState {
  SectorState(SectorBasis basis_, Eigen::VectorXd amplitudes_, double energy_)
      : basis(std::move(basis_)), amplitudes(std::move(amplitudes_)), energy(energy_) {}

  SectorBasis basis;
  Eigen::VectorXd amplitudes;
  double energy = 0.0;
  /// Estimate of the next eigenvalue in the sector (+inf for one-dimensional sectors).
  double next_energy = std::numeric_limits<double>::infinity();
  bool degenerate = false;
  double residual = 0.0;
  int iterations = 0;
  bool dense = false;
  /// Lowest Ritz value after each Lanczos step (empty for the dense path).
  std::vector<double> ritz_history;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lowest eigenpair of H in the sector with `n_up` up spins. Throws SolverError
/// if the residual tolerance is not met within the iteration cap.
SectorState ground_state(const XxzParams& params, int n_up, const SolverOptions& options = {});

/// Reduced density matrix on one to three strictly increasing sites.
DensityMatrix reduced_density(const SectorState& state, std::span<const int> sites);

/// The sector state as a dense 2^N vector (for cross-checks at small N).
StateVector embed(const SectorState& state);

}  // namespace tripartite
