#ifndef ROYDEN_TOOLS_SVG_HPP
#define ROYDEN_TOOLS_SVG_HPP

#include "royden/sphere.hpp"

#include <string>
#include <vector>

namespace royden::svg {

/// Closed polar curve of r(theta) with dashed rays at the near-singular
/// directions.
std::string polar_plot(const std::vector<SphereSample>& samples);

/// 2x2 panels: r, r', r'', r''' against theta, dashed verticals at the
/// near-singular directions.
std::string derivative_panels(const std::vector<SphereSample>& samples);

} // namespace royden::svg

#endif
