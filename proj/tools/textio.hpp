#ifndef ROYDEN_TOOLS_TEXTIO_HPP
#define ROYDEN_TOOLS_TEXTIO_HPP

#include "royden/poly.hpp"
#include "royden/sphere.hpp"

#include <string>
#include <vector>

namespace royden::textio {

/// Complex literals: "1.5", "-2", "3i", "-i", "1+2i", "1.5e-3-2.25i".
cplx parse_complex(const std::string& text);

/// Comma-separated coefficient list, low degree to high.
std::vector<cplx> parse_coeff_list(const std::string& text);

/// CSV schema: theta,r,d1,d2,d3,near_singular with full precision decimals.
/// Failures are appended as comment lines.
std::string sweep_to_csv(const SweepResult& res);
std::string samples_to_csv(const std::vector<SphereSample>& samples,
                           const std::vector<SweepFailure>& failures);

/// Parses the schema above; comment lines are skipped. Throws
/// std::invalid_argument on malformed rows.
std::vector<SphereSample> samples_from_csv(const std::string& csv);

std::string format_double(double v); // shortest round-trip decimal

} // namespace royden::textio

#endif
