#pragma once

#include <string>
#include <vector>

#include "gq/bs_groupoid.hpp"

namespace gq {

/// CSV listing of a unit window: index, branch encoding, c-values.
std::string units_to_csv(const BsGroupoid& bs, const std::vector<UnitLeaf>& units);

/// SVG figure of the lattice simplex point set for n in {1,2}: the simplex
/// outline with one dot per unit at its c-coordinates.
std::string units_to_svg(const BsGroupoid& bs, const std::vector<UnitLeaf>& units);

} // namespace gq
