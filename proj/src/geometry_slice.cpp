#include "tripartite/geometry_slice.hpp"

#include "tripartite/invariant_geometry.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tripartite {

std::string to_string(Region r) {
  switch (r) {
    case Region::OutsideCone: return "outside-cone";
    case Region::Separable: return "separable";
    case Region::Lobe1: return "lobe-1";
    case Region::Lobe2: return "lobe-2";
    case Region::Lobe3: return "lobe-3";
    case Region::WitnessNegative: return "witness-negative";
    case Region::Indeterminate: return "indeterminate";
  }
  return "?";
}

std::vector<SliceCell> geometry_slice(double r0, int resolution) {
  if (!(r0 > 0.0 && r0 < 1.0)) throw std::invalid_argument("slice r0 must lie in (0, 1)");
  if (resolution < 2 || resolution > 2048) throw std::invalid_argument("slice resolution must be in [2, 2048]");

  std::vector<SliceCell> cells;
  cells.reserve(static_cast<std::size_t>(resolution) * resolution);
  for (int iy = 0; iy < resolution; ++iy) {
    const double r2 = -r0 + 2.0 * r0 * iy / (resolution - 1);
    for (int ix = 0; ix < resolution; ++ix) {
      const double r1 = -r0 + 2.0 * r0 * ix / (resolution - 1);
      SliceCell cell{r1, r2, Region::OutsideCone};
      const InvariantCoords c{1.0 - r0, r0, r1, r2, 0.0};
      if (!is_physical(c)) {
        cells.push_back(cell);
        continue;
      }
      if (is_separable_invariant(c)) {
        cell.region = Region::Separable;
      } else if (is_biseparable_lobe(c, 1)) {
        cell.region = Region::Lobe1;
      } else if (is_biseparable_lobe(c, 2)) {
        cell.region = Region::Lobe2;
      } else if (is_biseparable_lobe(c, 3)) {
        cell.region = Region::Lobe3;
      } else if (minimize_witness(c).value < kDetectionThreshold) {
        cell.region = Region::WitnessNegative;
      } else {
        cell.region = Region::Indeterminate;
      }
      cells.push_back(cell);
    }
  }
  return cells;
}

void write_slice_csv(std::ostream& os, double r0, const std::vector<SliceCell>& cells) {
  char buf[80];
  os << "r0,r1,r2,region\n";
  for (const auto& c : cells) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,", r0, c.r_one, c.r_two);
    os << buf << to_string(c.region) << '\n';
  }
}

}  // namespace tripartite
