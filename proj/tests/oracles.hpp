#pragma once

// Test-only reference computations. Nothing here calls the library routine it
// is used to check.

#include "tripartite/qubit_algebra.hpp"

#include <Eigen/Eigenvalues>

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using tripartite::Complex;
using tripartite::DenseOperator;

inline DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline DenseOperator pauli(char which) {
  DenseOperator m(2, 2);
  switch (which) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'z': m << 1, 0, 0, -1; break;
    default: m = DenseOperator::Identity(2, 2);
  }
  return m;
}

/// Full 2^N XXZ Hamiltonian: each bond term is a 4x4 Pauli block padded with
/// identities by Kronecker products.
inline DenseOperator xxz_full(int n, double lambda, double coupling = 1.0) {
  const DenseOperator bond = coupling * (kron(pauli('x'), pauli('x')) + kron(pauli('y'), pauli('y'))) +
                             lambda * kron(pauli('z'), pauli('z'));
  const auto dim = Eigen::Index{1} << n;
  DenseOperator h = DenseOperator::Zero(dim, dim);
  for (int i = 0; i + 1 < n; ++i) {
    const DenseOperator left = DenseOperator::Identity(Eigen::Index{1} << i, Eigen::Index{1} << i);
    const DenseOperator right = DenseOperator::Identity(Eigen::Index{1} << (n - 2 - i), Eigen::Index{1} << (n - 2 - i));
    h += kron(kron(left, bond), right);
  }
  return h;
}

/// Block of `h` on the basis states with `n_up` set bits, in increasing index order.
inline Eigen::MatrixXd sector_block(const DenseOperator& h, int n_up) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    if (std::popcount(static_cast<std::uint64_t>(i)) == n_up) idx.push_back(i);
  Eigen::MatrixXd out(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) out(a, b) = h(idx[a], idx[b]).real();
  return out;
}

/// Partial trace by decoding every basis index into its bit string.
inline DenseOperator partial_trace(const DenseOperator& rho, int n, const std::vector<int>& keep) {
  const auto dim = Eigen::Index{1} << n;
  const auto kdim = Eigen::Index{1} << keep.size();
  DenseOperator out = DenseOperator::Zero(kdim, kdim);
  auto bits = [n](Eigen::Index idx) {
    std::vector<int> b(n);
    for (int q = 0; q < n; ++q) b[q] = static_cast<int>((idx >> (n - 1 - q)) & 1);
    return b;
  };
  for (Eigen::Index r = 0; r < dim; ++r) {
    const auto br = bits(r);
    for (Eigen::Index c = 0; c < dim; ++c) {
      const auto bc = bits(c);
      bool traced_equal = true;
      for (int q = 0; q < n && traced_equal; ++q) {
        bool kept = false;
        for (int k : keep) kept = kept || k == q;
        if (!kept && br[q] != bc[q]) traced_equal = false;
      }
      if (!traced_equal) continue;
      Eigen::Index a = 0, b = 0;
      for (int k : keep) {
        a = 2 * a + br[k];
        b = 2 * b + bc[k];
      }
      out(a, b) += rho(r, c);
    }
  }
  return out;
}

/// Reduction of a pure state: reshape psi into (kept bits) x (other bits), then M M^dagger.
inline DenseOperator reduce_pure(const tripartite::StateVector& psi, int n, const std::vector<int>& keep) {
  const auto dim = Eigen::Index{1} << n;
  const int nk = static_cast<int>(keep.size());
  DenseOperator m = DenseOperator::Zero(Eigen::Index{1} << nk, dim >> nk);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    Eigen::Index k = 0, rest = 0;
    for (int q = 0; q < n; ++q) {
      const int bit = static_cast<int>((idx >> (n - 1 - q)) & 1);
      bool kept = false;
      for (int s : keep) kept = kept || s == q;
      if (kept)
        k = 2 * k + bit;
      else
        rest = 2 * rest + bit;
    }
    m(k, rest) = psi(idx);
  }
  return m * m.adjoint();
}

/// Haar samples per Monte-Carlo twirl. The estimate's trace-distance error
/// falls as 1/sqrt(samples); at 1e5 the worst of 20 random states is ~4e-3.
inline constexpr int kTwirlSamples = 100000;

/// Monte-Carlo average of (U x U x U) rho (U x U x U)^dagger over Haar U.
inline DenseOperator haar_twirl(const DenseOperator& rho, int samples, std::mt19937_64& rng) {
  DenseOperator acc = DenseOperator::Zero(8, 8);
  for (int s = 0; s < samples; ++s) {
    const DenseOperator u = tripartite::haar_unitary(rng);
    const DenseOperator uuu = kron(kron(u, u), u);
    acc += uuu * rho * uuu.adjoint();
  }
  return acc / static_cast<double>(samples);
}

inline double trace_distance(const DenseOperator& a, const DenseOperator& b) {
  const DenseOperator d = a - b;
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

/// Hilbert-Schmidt inner product tr(a b).
inline Complex hs(const DenseOperator& a, const DenseOperator& b) { return (a * b).trace(); }

/// Singlet on sites (i, j) of three qubits with the remaining qubit in |0>.
inline tripartite::StateVector singlet_with_zero(int i, int j) {
  tripartite::StateVector v = tripartite::StateVector::Zero(8);
  const double h = 1.0 / std::sqrt(2.0);
  auto index = [](int b0, int b1, int b2) { return 4 * b0 + 2 * b1 + b2; };
  int bits_up[3] = {0, 0, 0};
  int bits_dn[3] = {0, 0, 0};
  bits_up[i] = 0;
  bits_up[j] = 1;
  bits_dn[i] = 1;
  bits_dn[j] = 0;
  v(index(bits_up[0], bits_up[1], bits_up[2])) = h;
  v(index(bits_dn[0], bits_dn[1], bits_dn[2])) = -h;
  return v;
}

}  // namespace oracle
