#include "royden/norm.hpp"
#include "royden/errors.hpp"

#include <cmath>

namespace royden {

std::vector<cplx> omega_periods(const BigPeriodMatrix& bpm, const DoubleCover& c) {
    return omega_periods(bpm, c, nullptr);
}

std::vector<cplx> omega_periods(const BigPeriodMatrix& bpm, const DoubleCover& c,
                                std::vector<double>* errors_out) {
    int g = bpm.genus;
    // The cover normalization (scale and square factor) is already carried
    // inside the tracked z the basis rows were integrated against, so the
    // coefficient combination of g / square_factor is the omega period vector.
    const Poly& num = c.omega_numerator;
    if (num.degree() > g - 1)
        throw ValidationError("omega_periods: numerator degree exceeds genus - 1");

    std::vector<cplx> pers(static_cast<size_t>(2 * g), cplx(0.0));
    std::vector<double> errs(static_cast<size_t>(2 * g), 0.0);
    for (int j = 0; j < 2 * g; ++j) {
        cplx acc(0.0);
        double err = 0.0;
        for (int k = 0; k <= num.degree(); ++k) {
            acc += num.coeff(k) * bpm.mat[static_cast<size_t>(k)][static_cast<size_t>(j)];
            err += std::abs(num.coeff(k)) * bpm.err[static_cast<size_t>(k)][static_cast<size_t>(j)];
        }
        pers[static_cast<size_t>(j)] = acc;
        errs[static_cast<size_t>(j)] = err;
    }
    if (errors_out) *errors_out = errs;
    return pers;
}

double norm_from_periods(const std::vector<cplx>& pers) {
    size_t g = pers.size() / 2;
    double s = 0.0;
    for (size_t j = 0; j < g; ++j) s += (std::conj(pers[j]) * pers[j + g]).imag();
    return s;
}

NormResult royden_norm(const QuadDiff& q, const NormOptions& opt) {
    CoverOptions copt{opt.root_tol, opt.cluster_tol};
    DoubleCover cover = build_double_cover(q, copt);
    PathSystem ps = build_path_system(cover, opt.clearance);
    CycleBasis cb = chain_cycles(ps, cover);
    PeriodOptions popt{opt.quad_tol, opt.max_level, opt.riemann_tol};
    BigPeriodMatrix bpm = big_period_matrix(cover, ps, cb, popt);

    std::vector<double> pers_err;
    std::vector<cplx> pers = omega_periods(bpm, cover, &pers_err);
    double raw = norm_from_periods(pers);

    NormResult r;
    r.genus = cover.genus;
    r.orientation_flipped = raw < 0.0;
    r.value = 0.5 * std::abs(raw);
    r.tau_symmetry_rel = bpm.tau_symmetry_rel;
    r.tau_min_imag_eig = bpm.tau_min_imag_eig;

    size_t g = pers.size() / 2;
    double err = 0.0;
    for (size_t j = 0; j < g; ++j)
        err += std::abs(pers[j + g]) * pers_err[j] + std::abs(pers[j]) * pers_err[j + g];
    r.error_estimate = 0.5 * err;
    return r;
}

NormResult royden_norm(const Poly& g, const Poly& h, const NormOptions& opt) {
    ValidateOptions vopt{opt.root_tol, opt.cluster_tol, opt.cancel_tol};
    return royden_norm(validate(g, h, vopt), opt);
}

} // namespace royden
