#ifndef GEOLOG_RENDER_SVG_HPP
#define GEOLOG_RENDER_SVG_HPP

// SVG pictures of one- and two-dimensional geographies.  Higher cube
// dimensions are drawn through a user-supplied axis-parallel slice that
// pins all but one or two coordinates.

#include "geolog/geography.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace geolog {

// fixed = {(coordinate index, value), ...}; the free coordinates must
// number one or two.  Throws std::domain_error otherwise.
std::string render_geography_svg(const Geography& g,
                                 const std::vector<std::pair<std::size_t, Rat>>& fixed = {});

}  // namespace geolog

#endif
