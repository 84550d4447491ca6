#ifndef ROYDEN_NORM_HPP
#define ROYDEN_NORM_HPP

#include "royden/periods.hpp"
#include "royden/quaddiff.hpp"

#include <vector>

namespace royden {

struct NormOptions {
    double quad_tol = 1e-10;
    double root_tol = 1e-12;
    double cluster_tol = 1e-8;
    double cancel_tol = 1e-7;
    double clearance = 0.25;
    double riemann_tol = 1e-6;
    int max_level = 11;
};

struct NormResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int genus = 0;
    bool orientation_flipped = false;
    // Riemann-relation diagnostics of the period matrix behind the value.
    double tau_symmetry_rel = 0.0;
    double tau_min_imag_eig = 0.0;
};

/// Periods of the one-form g dx / z over the symplectic basis: coefficient
/// combination of the basis rows of Pi, scaled by the cover normalization.
std::vector<cplx> omega_periods(const BigPeriodMatrix& bpm, const DoubleCover& c);
std::vector<cplx> omega_periods(const BigPeriodMatrix& bpm, const DoubleCover& c,
                                std::vector<double>* errors_out);

/// sum_j Im(conj(pers_j) * pers_{j+g}); the caller applies |.| and the 1/2.
double norm_from_periods(const std::vector<cplx>& pers);

/// The full pipeline: cover, path system, cycles, periods, period norm,
/// halved. value is the area of the singular flat metric of q.
NormResult royden_norm(const QuadDiff& q, const NormOptions& opt = {});
NormResult royden_norm(const Poly& g, const Poly& h, const NormOptions& opt = {});

} // namespace royden

#endif
