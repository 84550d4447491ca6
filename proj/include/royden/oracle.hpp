#ifndef ROYDEN_ORACLE_HPP
#define ROYDEN_ORACLE_HPP

#include "royden/quaddiff.hpp"

namespace royden {

struct AreaEstimate {
    double value = 0.0;
    double tolerance = 0.0; // observed change under refinement
    long cells_used = 0;
    bool certified = false;
};

struct OracleOptions {
    double tol = 1e-5;               // relative
    double cut_radius_factor = 2.0;  // R = factor * max |root of g*h|
    double pole_exclusion = 0.05;    // fraction of distance to nearest other singular point
    int max_depth = 30;
    // Restrict to the upper half plane Im x >= 0 (for symmetry checks).
    bool upper_half_only = false;
};

/// Direct evaluation of the norm as the area integral of |g/h| over the
/// plane: the disk |x| <= R by adaptive quadtree with local polar treatment
/// of the simple poles, plus the chart u = 1/x over |u| < 1/R where the
/// degree bound makes the transformed integrand smooth.
AreaEstimate direct_norm(const QuadDiff& q, const OracleOptions& opt = {});

/// Area of the intersection of the disk |x| <= R with an axis-aligned
/// rectangle; exact up to rounding. Exposed for tests.
double disk_rect_area(double R, double x0, double x1, double y0, double y1);

} // namespace royden

#endif
