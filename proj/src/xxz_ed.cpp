#include "tripartite/xxz_ed.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <random>
#include <string>

namespace tripartite {

namespace {

constexpr int kMaxSites = 24;

void check_vector_size(const SectorBasis& basis, std::size_t size) {
  if (size != basis.size())
    throw std::invalid_argument("vector dimension " + std::to_string(size) +
                                " does not match sector size " + std::to_string(basis.size()));
}

// Flips the largest-magnitude amplitude to be positive so that results do not
// depend on the eigensolver's arbitrary sign.
void fix_sign(Eigen::VectorXd& v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (v(arg) < 0.0) v = -v;
}

double residual_norm(const XxzParams& params, const SectorBasis& basis, const Eigen::VectorXd& psi,
                     double energy) {
  return (apply_hamiltonian(params, basis, psi) - energy * psi).norm();
}

SectorState solve_dense(const XxzParams& params, SectorBasis basis) {
  const Eigen::MatrixXd h = dense_hamiltonian(params, basis);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw SolverError("dense eigensolver failed");

  SectorState state(std::move(basis), es.eigenvectors().col(0), es.eigenvalues()(0));
  state.amplitudes.normalize();
  fix_sign(state.amplitudes);
  if (h.rows() > 1) state.next_energy = es.eigenvalues()(1);
  state.residual = residual_norm(params, state.basis, state.amplitudes, state.energy);
  state.dense = true;
  return state;
}

SectorState solve_lanczos(const XxzParams& params, SectorBasis basis, const SolverOptions& options) {
  const auto dim = static_cast<Eigen::Index>(basis.size());
  const std::size_t by_memory = options.memory_budget_bytes / (sizeof(double) * basis.size());
  const auto krylov = static_cast<Eigen::Index>(
      std::min<std::size_t>({options.max_krylov, std::max<std::size_t>(8, by_memory), basis.size()}));

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Eigen::VectorXd start(dim);
  for (Eigen::Index i = 0; i < dim; ++i) start(i) = uniform(rng);
  start.normalize();

  Eigen::MatrixXd v(dim, krylov);
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> history;
  int applications = 0;

  for (;;) {
    v.col(0) = start;
    alpha.clear();
    beta.clear();
    Eigen::VectorXd ritz;
    double theta0 = 0.0;
    double theta1 = std::numeric_limits<double>::infinity();

    for (Eigen::Index j = 0; j < krylov; ++j) {
      Eigen::VectorXd w = apply_hamiltonian(params, basis, Eigen::VectorXd(v.col(j)));
      ++applications;
      alpha.push_back(v.col(j).dot(w));
      w -= alpha.back() * v.col(j);
      if (j > 0) w -= beta.back() * v.col(j - 1);
      // Full reorthogonalisation, applied twice.
      for (int pass = 0; pass < 2; ++pass) {
        const auto basis_cols = v.leftCols(j + 1);
        w -= basis_cols * (basis_cols.transpose() * w);
      }
      const double b = w.norm();

      const Eigen::Index m = j + 1;
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
      for (Eigen::Index i = 0; i < m; ++i) {
        t(i, i) = alpha[i];
        if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ts(t);
      theta0 = ts.eigenvalues()(0);
      theta1 = m > 1 ? ts.eigenvalues()(1) : std::numeric_limits<double>::infinity();
      ritz = ts.eigenvectors().col(0);
      history.push_back(theta0);

      const double estimate = b * std::abs(ritz(m - 1));
      const bool exhausted = b < 1e-12 || m == dim;
      if (estimate <= 0.5 * options.tolerance || exhausted) {
        Eigen::VectorXd psi = v.leftCols(m) * ritz;
        psi.normalize();
        const double res = residual_norm(params, basis, psi, theta0);
        ++applications;
        if (res <= options.tolerance) {
          fix_sign(psi);
          SectorState state(std::move(basis), std::move(psi), theta0);
          state.next_energy = theta1;
          state.residual = res;
          state.iterations = applications;
          state.ritz_history = std::move(history);
          return state;
        }
        if (exhausted) {
          start = psi;
          break;
        }
      }
      if (applications >= options.max_iterations)
        throw SolverError("Lanczos did not converge within " + std::to_string(options.max_iterations) +
                          " iterations (residual estimate " + std::to_string(estimate) + ")");
      if (m == krylov) {
        // Restart from the current Ritz vector; keeps the Ritz sequence monotone.
        start = v * ritz;
        start.normalize();
        break;
      }
      beta.push_back(b);
      v.col(j + 1) = w / b;
    }
  }
}

}  // namespace

void validate(const XxzParams& params) {
  if (params.n_sites < 2 || params.n_sites > kMaxSites)
    throw std::invalid_argument("chain length must be in [2, 24], got " + std::to_string(params.n_sites));
  if (!std::isfinite(params.lambda) || !std::isfinite(params.coupling))
    throw std::invalid_argument("XXZ parameters must be finite");
}

SectorBasis::SectorBasis(int n_sites, int n_up) : n_sites_(n_sites), n_up_(n_up) {
  if (n_sites < 1 || n_sites > kMaxSites)
    throw std::invalid_argument("sector basis: chain length must be in [1, 24]");
  if (n_up < 0 || n_up > n_sites)
    throw std::out_of_range("sector basis: n_up = " + std::to_string(n_up) + " out of range");

  const int cols = n_up + 1;
  binomial_.assign(static_cast<std::size_t>(n_sites + 1) * cols, 0);
  for (int n = 0; n <= n_sites; ++n) {
    binomial_[n * cols] = 1;
    for (int k = 1; k <= std::min(n, n_up); ++k)
      binomial_[n * cols + k] = binomial_[(n - 1) * cols + k - 1] + (k <= n - 1 ? binomial_[(n - 1) * cols + k] : 0);
  }

  words_.reserve(binomial_[n_sites * cols + n_up]);
  if (n_up == 0) {
    words_.push_back(0);
    return;
  }
  // Gosper's hack walks weight-n_up words in increasing order.
  std::uint64_t w = (std::uint64_t{1} << n_up) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n_sites;
  while (w < limit) {
    words_.push_back(static_cast<std::uint32_t>(w));
    const std::uint64_t c = w & (~w + 1);
    const std::uint64_t r = w + c;
    w = (((r ^ w) >> 2) / c) | r;
  }
}

bool SectorBasis::contains(std::uint32_t word) const {
  return (static_cast<std::uint64_t>(word) >> n_sites_) == 0 && std::popcount(word) == n_up_;
}

std::size_t SectorBasis::index_of(std::uint32_t word) const {
  const int cols = n_up_ + 1;
  std::size_t rank = 0;
  int j = 0;
  while (word != 0) {
    const int pos = std::countr_zero(word);
    ++j;
    if (j <= pos) rank += binomial_[pos * cols + j];
    word &= word - 1;
  }
  return rank;
}

SectorBasis build_basis(int n_sites, int n_up) { return SectorBasis(n_sites, n_up); }

void apply_hamiltonian(const XxzParams& params, const SectorBasis& basis, std::span<const double> in,
                       std::span<double> out) {
  check_vector_size(basis, in.size());
  check_vector_size(basis, out.size());
  const int bonds = params.n_sites - 1;
  if (params.n_sites != basis.n_sites())
    throw std::invalid_argument("Hamiltonian and basis disagree on chain length");
  const std::uint32_t bond_mask = (std::uint32_t{1} << bonds) - 1;
  const double hop = 2.0 * params.coupling;

  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::uint32_t w = basis.word(i);
    // Bit p of `domain` is set when sites at bit positions p and p+1 differ.
    std::uint32_t domain = (w ^ (w >> 1)) & bond_mask;
    const int walls = std::popcount(domain);
    double acc = params.lambda * static_cast<double>(bonds - 2 * walls) * in[i];
    while (domain != 0) {
      const int p = std::countr_zero(domain);
      acc += hop * in[basis.index_of(w ^ (std::uint32_t{3} << p))];
      domain &= domain - 1;
    }
    out[i] = acc;
  }
}

Eigen::VectorXd apply_hamiltonian(const XxzParams& params, const SectorBasis& basis,
                                  const Eigen::VectorXd& v) {
  Eigen::VectorXd out(v.size());
  apply_hamiltonian(params, basis, std::span<const double>(v.data(), static_cast<std::size_t>(v.size())),
                    std::span<double>(out.data(), static_cast<std::size_t>(out.size())));
  return out;
}

Eigen::MatrixXd dense_hamiltonian(const XxzParams& params, const SectorBasis& basis) {
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd h(dim, dim);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    e(j) = 1.0;
    h.col(j) = apply_hamiltonian(params, basis, e);
    e(j) = 0.0;
  }
  return h;
}

SectorState ground_state(const XxzParams& params, int n_up, const SolverOptions& options) {
  validate(params);
  SectorBasis basis(params.n_sites, n_up);
  SectorState state = basis.size() <= options.dense_threshold
                          ? solve_dense(params, std::move(basis))
                          : solve_lanczos(params, std::move(basis), options);
  state.degenerate = state.next_energy - state.energy < options.degeneracy_gap;
  return state;
}

DensityMatrix reduced_density(const SectorState& state, std::span<const int> sites) {
  const SectorBasis& basis = state.basis;
  const int n = basis.n_sites();
  if (sites.empty() || sites.size() > 3) throw std::invalid_argument("reduced_density: keep one to three sites");
  for (std::size_t q = 0; q < sites.size(); ++q) {
    if (sites[q] < 0 || sites[q] >= n)
      throw std::out_of_range("reduced_density: site " + std::to_string(sites[q]) + " outside the chain");
    if (q > 0 && sites[q] <= sites[q - 1])
      throw std::invalid_argument("reduced_density: sites must be strictly increasing");
  }
  const int k = static_cast<int>(sites.size());
  const int local_dim = 1 << k;
  std::array<std::uint32_t, 8> offsets{};
  std::uint32_t mask = 0;
  for (int a = 0; a < local_dim; ++a) {
    for (int q = 0; q < k; ++q)
      if ((a >> (k - 1 - q)) & 1) offsets[a] |= std::uint32_t{1} << (n - 1 - sites[q]);
  }
  mask = offsets[local_dim - 1];

  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(local_dim, local_dim);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double amp = state.amplitudes(static_cast<Eigen::Index>(i));
    if (amp == 0.0) continue;
    const std::uint32_t w = basis.word(i);
    const std::uint32_t rest = w & ~mask;
    int a = 0;
    while (offsets[a] != (w & mask)) ++a;
    for (int b = 0; b < local_dim; ++b) {
      const std::uint32_t partner = rest | offsets[b];
      if (std::popcount(partner) != basis.n_up()) continue;
      rho(a, b) += amp * state.amplitudes(static_cast<Eigen::Index>(basis.index_of(partner)));
    }
  }
  return DensityMatrix(rho.cast<Complex>());
}

StateVector embed(const SectorState& state) {
  const auto dim = Eigen::Index{1} << state.basis.n_sites();
  StateVector psi = StateVector::Zero(dim);
  for (std::size_t i = 0; i < state.basis.size(); ++i)
    psi(state.basis.word(i)) = state.amplitudes(static_cast<Eigen::Index>(i));
  return psi;
}

}  // namespace tripartite
