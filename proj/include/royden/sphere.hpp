#ifndef ROYDEN_SPHERE_HPP
#define ROYDEN_SPHERE_HPP

#include "royden/norm.hpp"

#include <limits>
#include <string>
#include <vector>

namespace royden {

/// One point of the unit sphere {(a,b) : ||(a + b x)/h dx^2|| = 1} in polar
/// form: r(theta) = 1/||q_theta|| for the direction (a,b) = (cos,sin)(theta).
struct SphereSample {
    double theta = 0.0;
    double r = 0.0;
    double d1 = 0.0, d2 = 0.0, d3 = 0.0;
    bool has_derivatives = false;
    bool near_singular = false; // closest grid point to a zero-free direction
};

struct SweepFailure {
    double theta;
    std::string stage;
    std::string message;
};

struct SweepResult {
    std::vector<SphereSample> samples;
    std::vector<SweepFailure> failures;
    // Riemann-relation diagnostics aggregated over all period matrices built
    double max_tau_symmetry_rel = 0.0;
    double min_tau_imag_eig = std::numeric_limits<double>::infinity();
};

struct SweepOptions {
    NormOptions norm;
    // Within this angular window of a zero-free direction the shared root is
    // cancelled exactly and the genus drops; outside, the generic cover is
    // used even when branch points nearly collide.
    double singular_window = 1e-6;
    int threads = 0; // 0: hardware default; also capped by ROYDEN_THREADS
};

/// Directions (a,b) with a + b*x0 = 0 for the real roots x0 of h: the
/// differentials with a pole cancelled and no zeros. Angles in [0, pi).
std::vector<double> zero_free_angles(const Poly& h, double real_axis_tol = 1e-9);

/// Uniform sweep of the unit sphere; requires dim Q(X) = 2 (quintic h).
/// Per-sample failures are recorded and do not abort the sweep.
SweepResult sweep(const Poly& h, int samples, const SweepOptions& opt = {});

/// Successive centered difference quotients on the periodic grid, filling
/// d1..d_order. Requires a uniform grid with at least 7 samples.
void finite_difference_derivatives(std::vector<SphereSample>& samples, int order = 3);

} // namespace royden

#endif
