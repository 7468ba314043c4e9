#include "tripartite/invariant_geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tripartite {

namespace {

constexpr double kTwoThirds = 2.0 / 3.0;
const double kSqrt3 = std::sqrt(3.0);

double orientation_angle(int orientation) {
  return orientation * 2.0 * std::numbers::pi / 3.0;
}

// Square-root argument -1 + 4 r0 - 3 r0^2 = (3 r0 - 1)(1 - r0).
double tangent_radicand(double r0) { return -1.0 + 4.0 * r0 - 3.0 * r0 * r0; }

// Image of the 1|23-separable states under the invariant-coordinate map.
// Fixing qubit 1 to |0> and writing the pair state in the {00, 01, 10, 11}
// basis, the coordinates depend only on the diagonal d and the coherence
// x = <01|s|10>; eliminating them leaves |m| <= 1 together with
//   3 (r2^2 + r3^2) <= (1 - |m|)^2 - ((r1 + r+) - |m|)^2.
bool lobe_one(double r_plus, double r_one, double r_two, double r_three) {
  const double m = 1.0 + r_one - 2.0 * r_plus;
  const double abs_m = std::abs(m);
  if (abs_m > 1.0 + kCoordTolerance) return false;
  const double lhs = 3.0 * (r_two * r_two + r_three * r_three);
  const double shifted = (r_one + r_plus) - abs_m;
  const double rhs = (1.0 - abs_m) * (1.0 - abs_m) - shifted * shifted;
  return lhs <= rhs + kCoordTolerance;
}

}  // namespace

bool is_physical(const InvariantCoords& c, double tol) {
  if (c.r_plus < -tol || c.r_zero < -tol) return false;
  if (std::abs(c.r_plus + c.r_zero - 1.0) > tol) return false;
  const double radius2 = c.r_one * c.r_one + c.r_two * c.r_two + c.r_three * c.r_three;
  return radius2 <= c.r_zero * c.r_zero + tol;
}

InvariantCoords coords_of(const DensityMatrix& rho) {
  if (rho.n_qubits() != 3) throw std::invalid_argument("coords_of needs a three-qubit state");
  const RBasis& basis = r_basis();
  std::array<double, 5> r{};
  for (std::size_t k = 0; k < RBasis::size(); ++k) {
    // tr(rho R) = sum_ij rho_ij R_ji; R is Hermitian so R_ji = conj(R_ij).
    r[k] = (rho.entries().cwiseProduct(basis[k].conjugate())).sum().real();
  }
  return {r[0], r[1], r[2], r[3], r[4]};
}

DensityMatrix invariant_state(const InvariantCoords& c) {
  if (!is_physical(c)) throw std::invalid_argument("coordinates outside the invariant cone");
  const RBasis& basis = r_basis();
  const auto r = c.as_array();
  DenseOperator rho = DenseOperator::Zero(8, 8);
  for (std::size_t k = 0; k < RBasis::size(); ++k) rho += (r[k] / 4.0) * basis[k];
  return DensityMatrix(std::move(rho));
}

DensityMatrix twirl(const DensityMatrix& rho) { return invariant_state(coords_of(rho)); }

bool is_separable_invariant(const InvariantCoords& c) {
  if (c.r_plus < 0.25 - kCoordTolerance || c.r_plus > 1.0 + kCoordTolerance) return false;
  const double lhs = 3.0 * c.r_three * c.r_three + (1.0 - 3.0 * c.r_plus) * (1.0 - 3.0 * c.r_plus);
  const double d = c.r_one - 2.0 * c.r_plus;
  const double rhs = (c.r_one + c.r_plus) * (d * d - 3.0 * c.r_two * c.r_two);
  return lhs <= rhs + kCoordTolerance;
}

std::array<double, 2> rotate_plane(double r_one, double r_two, double angle) {
  const double cs = std::cos(angle);
  const double sn = std::sin(angle);
  return {cs * r_one - sn * r_two, sn * r_one + cs * r_two};
}

bool is_biseparable_lobe(const InvariantCoords& c, int lobe) {
  // B_2 = rotation of B_1 by -2pi/3 and B_3 by +2pi/3, so undo it first.
  double angle = 0.0;
  switch (lobe) {
    case 1: angle = 0.0; break;
    case 2: angle = 2.0 * std::numbers::pi / 3.0; break;
    case 3: angle = -2.0 * std::numbers::pi / 3.0; break;
    default: throw std::invalid_argument("lobe must be 1, 2 or 3");
  }
  const auto [r1, r2] = rotate_plane(c.r_one, c.r_two, angle);
  return lobe_one(c.r_plus, r1, r2, c.r_three);
}

void validate(const WitnessSpec& w) {
  if (!(w.r0 > kTwoThirds && w.r0 < 1.0) || !(tangent_radicand(w.r0) > 0.0))
    throw std::invalid_argument("witness r0 must lie in (2/3, 1), got " + std::to_string(w.r0));
  if (w.orientation < -1 || w.orientation > 1)
    throw std::invalid_argument("witness orientation must be 0, +1 or -1");
}

WitnessCoefficients witness_coefficients(const WitnessSpec& w) {
  validate(w);
  const double s = std::sqrt(tangent_radicand(w.r0));
  WitnessCoefficients k;
  k.a = 1.0 + 0.5 * kSqrt3 * (2.0 - 3.0 * w.r0) / s;
  k.b = kSqrt3 * (1.0 - 2.0 * w.r0) / (2.0 * s) + 0.5;
  const double angle = orientation_angle(w.orientation);
  k.cos_angle = std::cos(angle);
  k.sin_angle = std::sin(angle);
  return k;
}

std::array<double, 3> WitnessPlane::unit_normal() const {
  const double n = std::sqrt(normal[0] * normal[0] + normal[1] * normal[1] + normal[2] * normal[2]);
  return {normal[0] / n, normal[1] / n, normal[2] / n};
}

WitnessPlane witness_plane(const WitnessSpec& w) {
  validate(w);
  const double s = std::sqrt(tangent_radicand(w.r0));
  // Tangent point on the line between B_2 and B_3 and the curve tangent d/dr0.
  const double p_one = (-1.0 + 2.0 * w.r0 + kSqrt3 * s) / 2.0;
  const double slope = 1.0 + 0.5 * kSqrt3 * (2.0 - 3.0 * w.r0) / s;
  // tangent x (0, 0, 1) for the orientation-0 plane.
  const std::array<double, 3> tangent{1.0, slope, 0.0};
  const std::array<double, 3> normal{slope, -1.0, 0.0};

  const double angle = orientation_angle(w.orientation);
  const auto p = rotate_plane(p_one, 0.0, angle);
  const auto t = rotate_plane(tangent[1], tangent[2], angle);
  const auto n = rotate_plane(normal[1], normal[2], angle);

  WitnessPlane plane;
  plane.point = {w.r0, p[0], p[1]};
  plane.tangent = {tangent[0], t[0], t[1]};
  plane.normal = {normal[0], n[0], n[1]};
  return plane;
}

DenseOperator witness_matrix(const WitnessSpec& w) {
  const WitnessCoefficients k = witness_coefficients(w);
  const RBasis& basis = r_basis();
  return k.a * basis.r_zero - (k.cos_angle * basis.r_one + k.sin_angle * basis.r_two) -
         k.b * identity(3);
}

double witness_value(const DensityMatrix& rho, const WitnessSpec& w) {
  if (rho.n_qubits() != 3) throw std::invalid_argument("witness_value needs a three-qubit state");
  const DenseOperator wm = witness_matrix(w);
  return (rho.entries().cwiseProduct(wm.transpose())).sum().real();
}

double witness_value(const InvariantCoords& c, const WitnessSpec& w) {
  const WitnessCoefficients k = witness_coefficients(w);
  return k.a * c.r_zero - (k.cos_angle * c.r_one + k.sin_angle * c.r_two) - k.b;
}

std::array<double, kWitnessGridPoints> witness_grid() {
  std::array<double, kWitnessGridPoints> grid{};
  const double lo = kTwoThirds + kWitnessGridMargin;
  const double hi = 1.0 - kWitnessGridMargin;
  for (int i = 0; i < kWitnessGridPoints; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / (kWitnessGridPoints - 1);
  return grid;
}

WitnessMinimum minimize_witness(const InvariantCoords& c) {
  static const auto grid = witness_grid();
  static constexpr int kOrientations[] = {0, 1, -1};

  WitnessMinimum best{std::numeric_limits<double>::infinity(), {}};
  int best_index = 0;
  for (int i = 0; i < kWitnessGridPoints; ++i) {
    for (int orientation : kOrientations) {
      const WitnessSpec w{grid[i], orientation};
      const double v = witness_value(c, w);
      if (v < best.value) {
        best = {v, w};
        best_index = i;
      }
    }
  }

  // Golden-section search over the neighbouring grid cells.
  const int orientation = best.argmin.orientation;
  auto f = [&](double r0) { return witness_value(c, WitnessSpec{r0, orientation}); };
  double lo = grid[best_index > 0 ? best_index - 1 : 0];
  double hi = grid[best_index + 1 < kWitnessGridPoints ? best_index + 1 : kWitnessGridPoints - 1];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > 1e-8) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  const double r0 = 0.5 * (lo + hi);
  const double refined = f(r0);
  if (refined < best.value) best = {refined, {r0, orientation}};
  return best;
}

std::string to_string(const Classification& c) {
  switch (c.label) {
    case Label::Separable: return "Separable";
    case Label::BiseparableLobe: return "BiseparableLobe(" + std::to_string(c.lobe) + ")";
    case Label::IndeterminateHull: return "IndeterminateHull";
    case Label::GenuineTripartite: return "GenuineTripartite";
  }
  return "?";
}

Classification classify_coords(const InvariantCoords& c) {
  Classification out;
  out.coords = c;
  const WitnessMinimum m = minimize_witness(c);
  out.witness_value = m.value;
  out.witness_argmin = m.argmin;
  if (m.value < kDetectionThreshold) {
    out.label = Label::GenuineTripartite;
    return out;
  }
  if (is_separable_invariant(c)) {
    out.label = Label::Separable;
    return out;
  }
  for (int lobe = 1; lobe <= 3; ++lobe) {
    if (is_biseparable_lobe(c, lobe)) {
      out.label = Label::BiseparableLobe;
      out.lobe = lobe;
      return out;
    }
  }
  out.label = Label::IndeterminateHull;
  return out;
}

Classification witness_minimize(const DensityMatrix& rho) {
  if (rho.n_qubits() != 3) throw std::invalid_argument("witness_minimize needs a three-qubit state");
  return classify_coords(coords_of(rho));
}

}  // namespace tripartite
