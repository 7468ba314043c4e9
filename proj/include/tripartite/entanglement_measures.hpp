#pragma once

// Two-qubit concurrence and symmetric Dicke states.

#include "tripartite/qubit_algebra.hpp"

namespace tripartite {

/// Symmetric Dicke state with `k` excitations (|1> = spin up) among `n` qubits.
struct DickeSpec {
  int n = 2;
  int k = 1;

  /// Magnetisation J_z = (2k - n) / 2.
  double jz() const { return 0.5 * (2 * k - n); }
};

/// Dense vector over all 2^n basis states; requires 1 <= n <= 24.
StateVector dicke_state(const DickeSpec& spec);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4), where l_i are the
/// decreasing square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).
double wootters_concurrence(const DensityMatrix& rho);

/// Closed-form pairwise concurrence inside the maximal-spin multiplet:
/// [(N^2 - 4Jz^2) - sqrt((N^2 - 4Jz^2)((N-2)^2 - 4Jz^2))] / (2N(N-1)).
/// `jz` must satisfy |2 jz| <= n with 2 jz = n (mod 2).
double dicke_concurrence(int n, double jz);

/// Two-site reduction of dicke_state({n, k}) from its closed-form elements.
/// With J_z = (2k - n)/2:
///   rho_{11,11} = (N + 2Jz)(N - 2 + 2Jz) / (4N(N-1))
///   rho_{00,00} = (N - 2Jz)(N - 2 - 2Jz) / (4N(N-1))
///   rho_{01,01} = rho_{10,10} = rho_{01,10} = rho_{10,01} = (N^2 - 4Jz^2) / (4N(N-1))
DensityMatrix dicke_pair_rdm(int n, int k);

}  // namespace tripartite
