#pragma once

// Geometry of SU(2)-invariant three-qubit states: invariant coordinates, the
// twirl, separable/biseparable membership and the rotationally invariant
// witness family for genuine tripartite entanglement.

#include "tripartite/qubit_algebra.hpp"

#include <array>
#include <string>

namespace tripartite {

inline constexpr double kCoordTolerance = 1e-10;
inline constexpr double kDetectionThreshold = -1e-10;

/// Location of a three-qubit state in the invariant cone: r_k = tr(rho R_k).
struct InvariantCoords {
  double r_plus = 0.0;
  double r_zero = 0.0;
  double r_one = 0.0;
  double r_two = 0.0;
  double r_three = 0.0;

  std::array<double, 5> as_array() const { return {r_plus, r_zero, r_one, r_two, r_three}; }
};

/// True when the coordinates describe a legitimate state: r_+, r_0 >= 0,
/// r_+ + r_0 = 1 and r_1^2 + r_2^2 + r_3^2 <= r_0^2 (all to `tol`).
bool is_physical(const InvariantCoords& c, double tol = kCoordTolerance);

InvariantCoords coords_of(const DensityMatrix& rho);

/// (1/4) sum_k r_k R_k. Throws if the coordinates are not physical.
DensityMatrix invariant_state(const InvariantCoords& c);

/// Exact projection onto the SU(2)-invariant subspace.
DensityMatrix twirl(const DensityMatrix& rho);

bool is_separable_invariant(const InvariantCoords& c);

/// Membership in the biseparable lobe B_lobe (lobe in {1, 2, 3}). Lobe 1 is the
/// set separable across 1|23 and sits at 180 degrees in the (r_1, r_2) plane;
/// lobes 2 and 3 are its copies at +60 and -60 degrees.
bool is_biseparable_lobe(const InvariantCoords& c, int lobe);

/// (r_1, r_2) rotated counter-clockwise by `angle` radians.
std::array<double, 2> rotate_plane(double r_one, double r_two, double angle);

/// One member of the witness family. `r0` must lie in (2/3, 1); orientation 0
/// is tangent between B_2 and B_3, +1 and -1 are its rotations by +2pi/3 and
/// -2pi/3 about the r_0 axis.
struct WitnessSpec {
  double r0 = 0.8;
  int orientation = 0;
};

void validate(const WitnessSpec& w);

/// Scalar coefficients of W = a R_0 - (cos t R_1 + sin t R_2) - b 1 with
/// t = orientation * 2pi/3.
struct WitnessCoefficients {
  double a = 0.0;
  double b = 0.0;
  double cos_angle = 1.0;
  double sin_angle = 0.0;
};

WitnessCoefficients witness_coefficients(const WitnessSpec& w);

/// Tangent plane to the biseparable set in (r_0, r_1, r_2) space. `normal` is
/// the unnormalised cross product of the curve tangent with the r_2 direction
/// (rotated for orientations +-1), so normal . (r - point) equals tr(W rho).
struct WitnessPlane {
  std::array<double, 3> point{};
  std::array<double, 3> normal{};
  std::array<double, 3> tangent{};

  std::array<double, 3> unit_normal() const;
};

WitnessPlane witness_plane(const WitnessSpec& w);

DenseOperator witness_matrix(const WitnessSpec& w);

/// tr(W rho), evaluated with the 8x8 witness matrix.
double witness_value(const DensityMatrix& rho, const WitnessSpec& w);

/// The same expectation from invariant coordinates via the plane equation.
double witness_value(const InvariantCoords& c, const WitnessSpec& w);

struct WitnessMinimum {
  double value = 0.0;
  WitnessSpec argmin{};
};

/// Grid search over r0 (256 points on (2/3 + 1e-4, 1 - 1e-4)) and all three
/// orientations, then golden-section refinement inside the winning cell.
/// Ties go to the smaller r0, then orientation 0, +1, -1.
WitnessMinimum minimize_witness(const InvariantCoords& c);

inline constexpr int kWitnessGridPoints = 256;
inline constexpr double kWitnessGridMargin = 1e-4;

/// r0 values of the minimisation grid, ascending.
std::array<double, kWitnessGridPoints> witness_grid();

enum class Label { Separable, BiseparableLobe, IndeterminateHull, GenuineTripartite };

/// Outcome of the witness minimisation. Separable / BiseparableLobe /
/// IndeterminateHull refer to the twirled state; GenuineTripartite certifies
/// the input itself.
struct Classification {
  Label label = Label::IndeterminateHull;
  int lobe = 0;  // 1..3 when label == BiseparableLobe
  double witness_value = 0.0;
  WitnessSpec witness_argmin{};
  InvariantCoords coords{};
};

std::string to_string(const Classification& c);

Classification classify_coords(const InvariantCoords& c);
Classification witness_minimize(const DensityMatrix& rho);

}  // namespace tripartite
