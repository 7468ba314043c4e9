#pragma once

// Horizontal (fixed r_0, r_3 = 0) cuts through the invariant cone.

#include <iosfwd>
#include <string>
#include <vector>

namespace tripartite {

enum class Region { OutsideCone, Separable, Lobe1, Lobe2, Lobe3, WitnessNegative, Indeterminate };

std::string to_string(Region r);

struct SliceCell {
  double r_one = 0.0;
  double r_two = 0.0;
  Region region = Region::OutsideCone;
};

/// resolution x resolution grid on [-r0, r0]^2 in the (r_1, r_2) plane, rows
/// ordered by r_2 then r_1. Requires r0 in (0, 1) and 2 <= resolution <= 2048.
std::vector<SliceCell> geometry_slice(double r0, int resolution);

void write_slice_csv(std::ostream& os, double r0, const std::vector<SliceCell>& cells);

}  // namespace tripartite
