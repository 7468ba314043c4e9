// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "oracles.hpp"

#include "tripartite/entanglement_measures.hpp"
#include "tripartite/invariant_geometry.hpp"
#include "tripartite/sweep.hpp"
#include "tripartite/xxz_ed.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace tripartite;
using oracle::kTwirlSamples;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// 1. Hilbert-Schmidt orthogonality and traces of the R basis.
Outcome r_basis_algebra() {
  const RBasis r = build_r_basis();
  const double traces[5] = {4, 4, 0, 0, 0};
  double worst = 0.0;
  for (std::size_t j = 0; j < 5; ++j) {
    worst = std::max(worst, std::abs(r[j].trace() - Complex(traces[j], 0)));
    for (std::size_t k = 0; k < 5; ++k)
      worst = std::max(worst, std::abs(oracle::hs(r[j], r[k]) - Complex(j == k ? 4.0 : 0.0, 0)));
  }
  return {worst <= 1e-12, "max deviation " + fmt("%.2e", worst)};
}

// 2. Closed-form Dicke concurrence against the element formula and brute force.
Outcome dicke_concurrence_agreement() {
  const bool exact = dicke_concurrence(4, 0) == 1.0 / 3.0 && dicke_concurrence(192, 0) == 1.0 / 191.0;
  double worst = 0.0;
  for (int n = 2; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) {
      const double closed = dicke_concurrence(n, DickeSpec{n, k}.jz());
      const double element = wootters_concurrence(dicke_pair_rdm(n, k));
      const double brute = wootters_concurrence(DensityMatrix(oracle::reduce_pure(dicke_state({n, k}), n, {0, 1})));
      worst = std::max({worst, std::abs(closed - element), std::abs(closed - brute)});
    }
  }
  return {exact && worst <= 1e-10,
          std::string("C(4,0) = 1/3 and C(192,0) = 1/191 ") + (exact ? "exact" : "NOT exact") +
              ", three-way max deviation " + fmt("%.2e", worst)};
}

// 3. No seeded biseparable state gives a negative witness anywhere on the grid.
Outcome witness_soundness() {
  const auto grid = witness_grid();
  std::vector<DenseOperator> transposed;
  for (int o : {0, 1, -1})
    for (double r0 : grid) transposed.push_back(witness_matrix({r0, o}).transpose());
  constexpr int kStates = 10000;
  double worst = 1e300;
  for (int s = 0; s < kStates; ++s) {
    const DensityMatrix rho = sample_biseparable(static_cast<Partition>(s % 4), 1000003ULL * s + 17, 1 + (s / 4) % 4);
    for (const auto& wt : transposed) worst = std::min(worst, wt.cwiseProduct(rho.entries()).sum().real());
  }
  return {worst >= -1e-9, std::to_string(kStates) + " states x " + std::to_string(transposed.size()) +
                              " witnesses, min tr(W rho) = " + fmt("%.3e", worst)};
}

// 4. Detection of the reference invariant state.
Outcome witness_detection() {
  const DensityMatrix rho = invariant_state({0.1, 0.9, 0.9, 0.0, 0.0});
  const double value = witness_value(rho, {0.9, 0});
  const Classification c = witness_minimize(rho);
  const bool pass = std::abs(value + 0.1429) <= 1e-3 && c.label == Label::GenuineTripartite;
  return {pass, "tr(W rho) = " + fmt("%.6f", value) + ", label " + to_string(c) + ", minimum " +
                    fmt("%.6f", c.witness_value)};
}

// 5. Exact twirl against a Monte-Carlo Haar average, and idempotence.
Outcome twirl_correctness() {
  std::mt19937_64 rng(20240601);
  double worst_td = 0.0, worst_idem = 0.0;
  for (int s = 0; s < 20; ++s) {
    const DensityMatrix rho = s % 2 ? random_density(3, rng) : DensityMatrix::from_pure(haar_state(8, rng));
    const DensityMatrix t = twirl(rho);
    worst_td = std::max(worst_td, oracle::trace_distance(oracle::haar_twirl(rho.entries(), kTwirlSamples, rng), t.entries()));
    worst_idem = std::max(worst_idem, (twirl(t).entries() - t.entries()).cwiseAbs().maxCoeff());
  }
  return {worst_td <= 1e-2 && worst_idem <= 1e-12,
          "max trace distance " + fmt("%.4f", worst_td) + ", idempotence " + fmt("%.1e", worst_idem)};
}

// 6. Krylov energies against the dense oracle; two-site analytic spectrum.
Outcome solver_correctness() {
  const double lambdas[] = {-2.0, -0.999, -0.5, 0.0, 0.5, 1.0, 2.0};
  SolverOptions krylov;
  krylov.dense_threshold = 0;
  double worst = 0.0;
  for (int n = 2; n <= 10; ++n) {
    for (double l : lambdas) {
      const Eigen::MatrixXd block = oracle::sector_block(oracle::xxz_full(n, l), n / 2);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block, Eigen::EigenvaluesOnly);
      worst = std::max(worst, std::abs(ground_state({n, l, 1.0}, n / 2, krylov).energy - es.eigenvalues()(0)));
    }
  }
  double worst_two = 0.0;
  for (double l : lambdas) {
    std::vector<double> got;
    for (int n_up = 0; n_up <= 2; ++n_up) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_hamiltonian({2, l, 1.0}, SectorBasis(2, n_up)));
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) got.push_back(es.eigenvalues()(i));
    }
    std::vector<double> want{l, l, 2 - l, -2 - l};
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 4; ++i) worst_two = std::max(worst_two, std::abs(got[i] - want[i]));
  }
  return {worst <= 1e-9 && worst_two <= 1e-12,
          "N <= 10 max |dE| " + fmt("%.2e", worst) + ", two-site spectrum max deviation " + fmt("%.1e", worst_two)};
}

std::vector<double> pair_concurrences(const SectorState& s) {
  std::vector<double> c;
  for (const char* label : {"12", "13", "14", "15", "16"})
    c.push_back(wootters_concurrence(reduced_density(s, resolve_arrangement(label, 16).sites)));
  return c;
}

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

// 7. Concurrence collapse towards 1/(N-1) as lambda -> -1.
Outcome concurrence_collapse() {
  const auto near = pair_concurrences(ground_state({16, -0.999, 1.0}, 8));
  const auto far = pair_concurrences(ground_state({16, -0.9, 1.0}, 8));
  const double target = 1.0 / 15.0;
  bool within = true;
  std::string values;
  for (double c : near) {
    within = within && std::abs(c - target) <= 0.25 * target;
    values += fmt(" %.4f", c);
  }
  const bool shrinks = spread(near) < spread(far);
  return {within && shrinks, "C(r=1..5) at -0.999:" + values + "; spread " + fmt("%.4f", spread(far)) + " -> " +
                                 fmt("%.4f", spread(near))};
}

double triple_minimum(const SectorState& s, const char* label) {
  return witness_minimize(reduced_density(s, resolve_arrangement(label, 16).sites)).witness_value;
}

// 8. Witness detection pattern of the N = 16 chain.
Outcome witness_pattern() {
  bool pass = true;
  std::string detail = "123:";
  for (double l : {-0.9, -0.5, 0.0, 0.5}) {
    const double v = triple_minimum(ground_state({16, l, 1.0}, 8), "123");
    pass = pass && v < kDetectionThreshold;
    detail += fmt(" %.4f", v);
  }
  const SectorState s = ground_state({16, -0.999, 1.0}, 8);
  detail += "; at -0.999 mixed parity:";
  for (const char* label : {"123", "124", "125", "126", "127", "134", "136", "146", "147"}) {
    const double v = triple_minimum(s, label);
    pass = pass && v < kDetectionThreshold;
    detail += std::string(" ") + label + fmt("=%.4f", v);
  }
  const double same = triple_minimum(s, "135");
  pass = pass && same >= kDetectionThreshold;
  detail += fmt("; 135=%.4f", same);
  return {pass, detail};
}

// 9. The ground state approaches the uniform superposition of the sector.
Outcome uniform_limit() {
  const int n = 12;
  // J = -1: the flip-flop term is ferromagnetic and the limit is the plain all-ones vector.
  const SectorState ferro = ground_state({n, -0.999, -1.0}, n / 2);
  // J = +1: same state up to the sublattice gauge sign (-1)^(ups on odd sites).
  const SectorState anti = ground_state({n, -0.999, 1.0}, n / 2);
  const double norm = 1.0 / std::sqrt(static_cast<double>(ferro.basis.size()));
  double plain = 0.0, gauged = 0.0;
  for (std::size_t i = 0; i < ferro.basis.size(); ++i) {
    const double sign = std::popcount(ferro.basis.word(i) & 0xAAAAAAAAu) % 2 ? -1.0 : 1.0;
    plain += norm * ferro.amplitudes(static_cast<Eigen::Index>(i));
    gauged += norm * sign * anti.amplitudes(static_cast<Eigen::Index>(i));
  }
  plain = std::abs(plain);
  gauged = std::abs(gauged);
  return {plain >= 0.99 && gauged >= 0.99,
          "|<psi|u>| = " + fmt("%.6f", plain) + " (J = -1), gauge-signed " + fmt("%.6f", gauged) + " (J = +1)"};
}

// 10. Two identical sweeps write identical bytes.
Outcome determinism() {
  const SweepConfig config = parse_sweep_config(R"({
    "N": 12, "lambdas": [-1.0, -0.999, -0.9, -0.5, 0.0, 0.5, 1.0],
    "arrangements": ["12", "13", "14", "123", "124", "135"], "seed": 3
  })");
  std::ostringstream a, b;
  write_csv(a, run_sweep(config));
  SweepConfig serial = config;
  serial.threads = 1;
  write_csv(b, run_sweep(serial));
  std::ostringstream c;
  write_csv(c, run_sweep(config));
  const bool pass = a.str() == b.str() && a.str() == c.str() && !a.str().empty();
  return {pass, std::to_string(a.str().size()) + " bytes, repeated and single-threaded runs identical: " +
                    (pass ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"R-basis algebra", r_basis_algebra},
      {"Dicke concurrence", dicke_concurrence_agreement},
      {"witness soundness", witness_soundness},
      {"witness detection", witness_detection},
      {"twirl correctness", twirl_correctness},
      {"solver correctness", solver_correctness},
      {"concurrence collapse (N=16)", concurrence_collapse},
      {"witness pattern (N=16)", witness_pattern},
      {"uniform-superposition limit (N=12)", uniform_limit},
      {"sweep determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2zu. %-36s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, secs,
                o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
